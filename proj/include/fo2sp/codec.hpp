#pragma once

#include "fo2sp/ca.hpp"
#include "fo2sp/structures.hpp"

namespace fo2sp::codec {

// Geometry of an encoded run: every class has exactly k elements and the
// linear order traverses the classes in k monotone threads.
struct EncodingMeta {
  int k = 0;            // uniform class size, max(1, max over configs of blue+red)
  int threads = 0;      // = k
  int class_count = 0;  // run length + 1
  bool operator==(const EncodingMeta&) const = default;
};

struct Encoded {
  structures::OrderedStructure structure;
  EncodingMeta meta;
};

// Builds the intended model of an accepting run: one class per
// configuration, counter values as color counts, transitions as class-wide
// tags. Thread t occupies linear positions t*(n+1)..t*(n+1)+n, one element
// per class, so every non-last-class element's linear successor sits in the
// next class. Blue elements fill threads from 0 upward, red from k-1
// downward. Throws EncodeError unless the run is accepting with >= 1 step.
Encoded encode(const ca::CounterMachine& m, const ca::Run& run);

// Reads a run back from any structure: classes in order give the
// configurations (color counts as counter values), the unique class tag
// gives the transition. Does not check acceptance; pair with validate_run.
// Throws DecodeError (NoTag, AmbiguousTag, SingleClass) and
// std::invalid_argument when the structure itself is invalid.
ca::Run decode(const ca::CounterMachine& m, const structures::OrderedStructure& s);

std::string serialize_meta(const EncodingMeta& meta);  // '#' comment lines

}  // namespace fo2sp::codec
