#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fo2sp/ca.hpp"
#include "fo2sp/fo2.hpp"

namespace fo2sp::reduction {

enum class Color : unsigned char { B, R };

constexpr const char* color_name(Color c) { return c == Color::B ? "B" : "R"; }

// Predicate vocabulary of a compiled sentence: the two color propositions
// plus one tag proposition per transition.
struct Vocabulary {
  std::string color_b = "B";
  std::string color_r = "R";
  std::string counter_b;  // machine counter tracked by the blue proposition
  std::string counter_r;
  std::vector<std::string> tags;  // transition order

  const std::string& counter_of(Color c) const { return c == Color::B ? counter_b : counter_r; }
};

// Maps the machine's two counters onto blue/red: by name when the counters
// are literally B and R, by declaration order otherwise. Throws
// UnsupportedCounters unless the machine has exactly two counters.
Vocabulary make_vocabulary(const ca::CounterMachine& m);

// The class-quantification trick: a formula with free x that holds iff some
// element of x's class satisfies psi, provided the structure has at least
// two classes. Built as phi_prec v phi_succ, each a round trip through an
// adjacent class with the inner quantifier rebinding x.
// psi must have free variables within {x}.
fo2::FormulaRef in_class_exists(const fo2::FormulaRef& psi);

// The structural conditions: tag partition and uniformity (1), start (2) and
// final (3) states at the ends, consistency of consecutive transitions (4),
// existence of matched linear/preorder successors (5).
fo2::FormulaRef build_t(const ca::CounterMachine& m, int i);

// The counter conditions for one color: no color at the ends (1), bijection
// for neutral transitions (2), exactly one new element on increment (3),
// exactly one dropped element on decrement (4), empty predecessor class on
// zero test (5).
fo2::FormulaRef build_counter(const ca::CounterMachine& m, Color color, int i);

// Auxiliary conjuncts: at least two classes (1), color disjointness (2),
// first class untagged (3).
fo2::FormulaRef build_aux(const ca::CounterMachine& m, int i);

// All conjuncts of the compiled sentence in fixed order
// T1..T5, B1..B5, R1..R5, A1..A3, paired with their names.
std::vector<std::pair<std::string, fo2::FormulaRef>> compile_parts(const ca::CounterMachine& m);

// The sentence whose finite models are exactly the encodings of accepting
// runs. Throws TrivialMachine when the machine has no transitions and
// UnsupportedCounters when the counters cannot be mapped onto blue/red.
fo2::FormulaRef compile(const ca::CounterMachine& m);

}  // namespace fo2sp::reduction
