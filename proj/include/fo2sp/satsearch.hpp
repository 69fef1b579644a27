#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fo2sp/fo2.hpp"
#include "fo2sp/structures.hpp"

namespace fo2sp::satsearch {

enum class LabelingMode : unsigned char { WellColored, FullPowerset };

constexpr const char* mode_name(LabelingMode m) {
  return m == LabelingMode::WellColored ? "well-colored" : "full";
}

// Bounded brute-force search problem. In well-colored mode every element
// carries at most one tag predicate and at most one color predicate, which
// is complete for compiled reduction sentences (their tag-exclusion and
// color-disjointness conjuncts reject everything else) but a documented
// restriction for arbitrary sentences. Plain predicates always range over
// the full powerset. In full mode every predicate is treated as plain.
struct SearchSpec {
  fo2::FormulaRef sentence;
  std::vector<std::string> tag_preds;
  std::vector<std::string> color_preds;
  std::vector<std::string> plain_preds;
  int max_size = 1;
  LabelingMode mode = LabelingMode::WellColored;
};

// Role assignment by convention: predicates named B or R are colors, the
// rest are tags (well-colored mode) or plain (full mode). Predicates are
// collected from the sentence.
SearchSpec spec_for_sentence(fo2::FormulaRef sentence, int max_size, LabelingMode mode);

using OrderedPartition = std::vector<std::vector<int>>;

// Emits every ordered partition of {0..n-1} exactly once; the count is the
// Fubini number of n. The visitor returns false to stop early.
void enumerate_ordered_partitions(int n, const std::function<bool(const OrderedPartition&)>& visit);

struct UnsatCertificate {
  int max_size = 0;
  LabelingMode mode = LabelingMode::WellColored;
  bool operator==(const UnsatCertificate&) const = default;
};

std::string serialize_certificate(const UnsatCertificate& cert);

// Candidate structures in deterministic order: sizes ascending, the linear
// order fixed to the canonical sequence e0 < .. < e(n-1) (complete up to
// isomorphism), partitions per enumerate_ordered_partitions, labelings as a
// mixed-radix odometer. Visits every model; the visitor returns false to
// stop. Requires a sentence (no free variables).
void for_each_model(const SearchSpec& spec,
                    const std::function<bool(const structures::OrderedStructure&)>& visit);

// First model in enumeration order, or a certificate that no model of size
// <= max_size exists under the spec's labeling mode.
std::variant<structures::OrderedStructure, UnsatCertificate> solve(const SearchSpec& spec);

}  // namespace fo2sp::satsearch
