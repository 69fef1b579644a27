#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fo2sp/structures.hpp"

namespace fo2sp::fo2 {

// The two variables of the logic. Quantifiers rebind; there is no third name.
enum class Var : unsigned char { X, Y };

constexpr Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }
constexpr const char* var_name(Var v) { return v == Var::X ? "x" : "y"; }

struct Formula;
using FormulaRef = std::shared_ptr<const Formula>;

// Two-variable first-order formulas over unary predicates, the two successor
// relations and equality. `And`/`Or` are n-ary; the empty conjunction is
// true and the empty disjunction is false.
struct Formula {
  enum class Kind : unsigned char {
    Unary, SuccL, SuccP, Eq, Not, And, Or, Implies, Iff, Exists, Forall
  };

  Kind kind;
  std::string pred;              // Unary only
  Var a = Var::X;                // atom first var; quantifier bound var
  Var b = Var::X;                // binary atom second var
  std::vector<FormulaRef> kids;  // Not/quantifiers: 1, Implies/Iff: 2, And/Or: any
};

FormulaRef unary(std::string pred, Var v);
FormulaRef succ_l(Var u, Var v);
FormulaRef succ_p(Var u, Var v);
FormulaRef eq(Var u, Var v);
FormulaRef negate(FormulaRef f);
FormulaRef conj(std::vector<FormulaRef> fs);
FormulaRef disj(std::vector<FormulaRef> fs);
FormulaRef implies(FormulaRef lhs, FormulaRef rhs);
FormulaRef iff(FormulaRef lhs, FormulaRef rhs);
FormulaRef exists(Var v, FormulaRef f);
FormulaRef forall(Var v, FormulaRef f);

// Structural equality.
bool equal(const Formula& lhs, const Formula& rhs);
inline bool equal(const FormulaRef& lhs, const FormulaRef& rhs) { return equal(*lhs, *rhs); }

std::set<Var> free_vars(const Formula& f);
bool is_sentence(const Formula& f);

// Unary predicate names occurring anywhere in the formula.
std::set<std::string> collect_predicates(const Formula& f);

struct Assignment {
  std::optional<structures::Element> x;
  std::optional<structures::Element> y;
};

// Tarskian evaluation over the structure's derived relations. Quantifiers
// range over the whole universe and shadow any outer binding of the same
// variable. Throws UnboundVariable when an atom consults an unbound
// variable and UnknownElement when the assignment names a foreign element.
bool evaluate(const structures::OrderedStructure& s, const Formula& f, const Assignment& a = {});

// S-expression grammar:
//   atoms        (P x) (succL x y) (succP x y) (= x y)
//   connectives  (not f) (and f...) (or f...) (implies f g) (iff f g)
//   quantifiers  (exists x f) (forall y f)
// Variables are exactly `x` and `y`.
FormulaRef parse_formula(std::string_view text);  // throws ParseError with position

std::string print_formula(const Formula& f);
std::string print_formula_pretty(const Formula& f);

}  // namespace fo2sp::fo2
