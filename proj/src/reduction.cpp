#include "fo2sp/reduction.hpp"

#include <stdexcept>

#include "fo2sp/errors.hpp"

namespace fo2sp::reduction {

using fo2::conj;
using fo2::disj;
using fo2::exists;
using fo2::forall;
using fo2::Formula;
using fo2::FormulaRef;
using fo2::iff;
using fo2::implies;
using fo2::negate;
using fo2::succ_l;
using fo2::succ_p;
using fo2::unary;
using fo2::Var;

Vocabulary make_vocabulary(const ca::CounterMachine& m) {
  if (m.counters.size() != 2)
    throw UnsupportedCounters("reduction needs exactly two counters, machine has " +
                              std::to_string(m.counters.size()));
  Vocabulary voc;
  const std::string& first = m.counters[0];
  const std::string& second = m.counters[1];
  if (first == "R" || second == "B") {
    voc.counter_b = second;
    voc.counter_r = first;
  } else {
    voc.counter_b = first;
    voc.counter_r = second;
  }
  for (const auto& t : m.transitions) voc.tags.push_back(t.tag);
  return voc;
}

namespace {

// x is in the first class: no element's class precedes x's.
FormulaRef first_class(Var v) { return negate(exists(other(v), succ_p(other(v), v))); }
// x is in the last class.
FormulaRef last_class(Var v) { return negate(exists(other(v), succ_p(v, other(v)))); }

// x is in the second class: some predecessor of x sits in the first class.
FormulaRef second_class() {
  return exists(Var::Y,
                conj({succ_p(Var::Y, Var::X), negate(exists(Var::X, succ_p(Var::X, Var::Y)))}));
}

FormulaRef tag_atom(const ca::Transition& t) { return unary(t.tag, Var::X); }

// Effect of a transition on the counter tracked by `color`.
enum class Effect { Neutral, Inc, Dec, Ifz };

Effect effect_on(const Vocabulary& voc, Color color, const ca::Transition& t) {
  if (t.op.counter != voc.counter_of(color)) return Effect::Neutral;
  switch (t.op.kind) {
    case ca::OpKind::Inc: return Effect::Inc;
    case ca::OpKind::Dec: return Effect::Dec;
    case ca::OpKind::Ifz: return Effect::Ifz;
  }
  return Effect::Neutral;
}

// Disjunction over the tags whose transition has the given effect; the empty
// disjunction (no such transition) is false, making the guarded conditions
// vacuous.
FormulaRef tags_with_effect(const ca::CounterMachine& m, const Vocabulary& voc, Color color,
                            Effect effect) {
  std::vector<FormulaRef> tags;
  for (const auto& t : m.transitions)
    if (effect_on(voc, color, t) == effect) tags.push_back(tag_atom(t));
  return disj(std::move(tags));
}

FormulaRef color_atom(const Vocabulary& voc, Color color, Var v) {
  return unary(color == Color::B ? voc.color_b : voc.color_r, v);
}

// (T1) Every element outside the first class carries exactly one tag, and
// tags are uniform within a class: at-least-one + pairwise exclusion +
// no other tag anywhere in the carrier's class.
FormulaRef build_t1(const ca::CounterMachine& m) {
  std::vector<FormulaRef> all_tags;
  for (const auto& t : m.transitions) all_tags.push_back(tag_atom(t));

  FormulaRef at_least_one =
      forall(Var::X, implies(negate(first_class(Var::X)), disj(all_tags)));

  std::vector<FormulaRef> exclusions;
  for (std::size_t i = 0; i < m.transitions.size(); ++i)
    for (std::size_t j = i + 1; j < m.transitions.size(); ++j)
      exclusions.push_back(
          negate(conj({tag_atom(m.transitions[i]), tag_atom(m.transitions[j])})));
  FormulaRef at_most_one = forall(Var::X, conj(std::move(exclusions)));

  std::vector<FormulaRef> uniform;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    std::vector<FormulaRef> others;
    for (std::size_t j = 0; j < m.transitions.size(); ++j)
      if (j != i) others.push_back(tag_atom(m.transitions[j]));
    uniform.push_back(
        implies(tag_atom(m.transitions[i]), negate(in_class_exists(disj(std::move(others))))));
  }
  FormulaRef uniform_in_class = forall(Var::X, conj(std::move(uniform)));

  return conj({at_least_one, at_most_one, uniform_in_class});
}

// (T2) The second class is tagged with a transition leaving the start state.
FormulaRef build_t2(const ca::CounterMachine& m) {
  std::vector<FormulaRef> from_initial;
  for (const auto& t : m.transitions)
    if (t.source == m.initial) from_initial.push_back(tag_atom(t));
  return forall(Var::X, implies(second_class(), disj(std::move(from_initial))));
}

// (T3) The last class is tagged with a transition entering a final state.
FormulaRef build_t3(const ca::CounterMachine& m) {
  std::vector<FormulaRef> into_final;
  for (const auto& t : m.transitions)
    if (m.is_final(t.target)) into_final.push_back(tag_atom(t));
  return forall(Var::X, implies(last_class(Var::X), disj(std::move(into_final))));
}

// (T4) Tags of consecutive classes agree on the shared state.
FormulaRef build_t4(const ca::CounterMachine& m) {
  std::vector<FormulaRef> consistent;
  for (const auto& t : m.transitions)
    for (const auto& u : m.transitions)
      if (t.target != u.source)
        consistent.push_back(negate(conj({unary(t.tag, Var::X), unary(u.tag, Var::Y)})));
  return forall(Var::X, forall(Var::Y, implies(succ_p(Var::X, Var::Y), conj(std::move(consistent)))));
}

// (T5) Matched successors: every non-last element has a successor that is
// both the linear and a preorder successor, and dually for predecessors.
FormulaRef build_t5(const ca::CounterMachine&) {
  FormulaRef fwd = forall(
      Var::X, implies(negate(last_class(Var::X)),
                      exists(Var::Y, conj({succ_l(Var::X, Var::Y), succ_p(Var::X, Var::Y)}))));
  FormulaRef bwd = forall(
      Var::X, implies(negate(first_class(Var::X)),
                      exists(Var::Y, conj({succ_l(Var::Y, Var::X), succ_p(Var::Y, Var::X)}))));
  return conj({fwd, bwd});
}

// (B1)/(R1) No colored elements in the first or last class.
FormulaRef build_c1(const Vocabulary& voc, Color color) {
  return forall(Var::X, implies(disj({first_class(Var::X), last_class(Var::X)}),
                                negate(color_atom(voc, color, Var::X))));
}

// (B2)/(R2) Neutral transitions preserve the color across the matched
// successor pairs; with T5 this is a color-preserving bijection.
FormulaRef build_c2(const ca::CounterMachine& m, const Vocabulary& voc, Color color) {
  FormulaRef neutral = tags_with_effect(m, voc, color, Effect::Neutral);
  return forall(
      Var::X,
      forall(Var::Y, implies(conj({neutral, succ_l(Var::Y, Var::X), succ_p(Var::Y, Var::X)}),
                             iff(color_atom(voc, color, Var::X), color_atom(voc, color, Var::Y)))));
}

// (B3)/(R3) Incrementing transitions: exactly one colored element of the
// class is new. (1) every colored predecessor keeps its color across the
// matching; then one shared witness y serves (2) and (3): y is an uncolored
// predecessor whose linear successor is colored, and every other colored
// element of the current class has a colored linear predecessor.
FormulaRef build_c3(const ca::CounterMachine& m, const Vocabulary& voc, Color color) {
  auto col = [&](Var v) { return color_atom(voc, color, v); };
  FormulaRef inc = tags_with_effect(m, voc, color, Effect::Inc);

  FormulaRef kept = forall(Var::Y, implies(conj({succ_p(Var::Y, Var::X), col(Var::Y)}),
                                           exists(Var::X, conj({succ_l(Var::Y, Var::X), col(Var::X)}))));

  FormulaRef fresh_witness = exists(
      Var::Y,
      conj({succ_p(Var::Y, Var::X), negate(col(Var::Y)),
            exists(Var::X, conj({succ_l(Var::Y, Var::X), col(Var::X)})),
            forall(Var::X,
                   implies(conj({succ_p(Var::Y, Var::X), col(Var::X), negate(succ_l(Var::Y, Var::X))}),
                           exists(Var::Y, conj({succ_l(Var::Y, Var::X), col(Var::Y)}))))}));

  return forall(Var::X, implies(inc, conj({kept, fresh_witness})));
}

// (B4)/(R4) Decrementing transitions, the mirror image: every colored
// element of the current class was colored before, and one witness y is a
// colored predecessor whose linear successor is uncolored while every other
// uncolored element of the current class also had no color before.
FormulaRef build_c4(const ca::CounterMachine& m, const Vocabulary& voc, Color color) {
  auto col = [&](Var v) { return color_atom(voc, color, v); };
  FormulaRef dec = tags_with_effect(m, voc, color, Effect::Dec);

  FormulaRef kept =
      implies(col(Var::X), exists(Var::Y, conj({succ_l(Var::Y, Var::X), col(Var::Y)})));

  FormulaRef dropped_witness = exists(
      Var::Y,
      conj({succ_p(Var::Y, Var::X), col(Var::Y),
            exists(Var::X, conj({succ_l(Var::Y, Var::X), negate(col(Var::X))})),
            forall(Var::X, implies(conj({succ_p(Var::Y, Var::X), negate(col(Var::X)),
                                         negate(succ_l(Var::Y, Var::X))}),
                                   negate(exists(Var::Y, conj({succ_l(Var::Y, Var::X), col(Var::Y)})))))}));

  return forall(Var::X, implies(dec, conj({kept, dropped_witness})));
}

// (B5)/(R5) Zero tests: the predecessor class has no colored element.
FormulaRef build_c5(const ca::CounterMachine& m, const Vocabulary& voc, Color color) {
  FormulaRef ifz = tags_with_effect(m, voc, color, Effect::Ifz);
  return forall(Var::X, implies(ifz, negate(exists(Var::Y, conj({succ_p(Var::Y, Var::X),
                                                                 color_atom(voc, color, Var::Y)})))));
}

// (A1) At least two classes, the standing assumption behind the class trick.
FormulaRef build_a1() { return exists(Var::X, exists(Var::Y, succ_p(Var::X, Var::Y))); }

// (A2) The two colors are disjoint.
FormulaRef build_a2(const Vocabulary& voc) {
  return forall(Var::X, negate(conj({unary(voc.color_b, Var::X), unary(voc.color_r, Var::X)})));
}

// (A3) First-class elements carry no tag.
FormulaRef build_a3(const ca::CounterMachine& m) {
  std::vector<FormulaRef> untagged;
  for (const auto& t : m.transitions) untagged.push_back(negate(tag_atom(t)));
  return forall(Var::X, implies(first_class(Var::X), conj(std::move(untagged))));
}

}  // namespace

fo2::FormulaRef in_class_exists(const fo2::FormulaRef& psi) {
  auto free = fo2::free_vars(*psi);
  free.erase(Var::X);
  if (!free.empty()) throw std::invalid_argument("in_class_exists needs free variables within {x}");

  FormulaRef via_succ =
      exists(Var::Y, conj({succ_p(Var::X, Var::Y), exists(Var::X, conj({succ_p(Var::X, Var::Y), psi}))}));
  FormulaRef via_prec =
      exists(Var::Y, conj({succ_p(Var::Y, Var::X), exists(Var::X, conj({succ_p(Var::Y, Var::X), psi}))}));
  return disj({via_prec, via_succ});
}

fo2::FormulaRef build_t(const ca::CounterMachine& m, int i) {
  switch (i) {
    case 1: return build_t1(m);
    case 2: return build_t2(m);
    case 3: return build_t3(m);
    case 4: return build_t4(m);
    case 5: return build_t5(m);
    default: throw std::invalid_argument("build_t index must be 1..5");
  }
}

fo2::FormulaRef build_counter(const ca::CounterMachine& m, Color color, int i) {
  Vocabulary voc = make_vocabulary(m);
  switch (i) {
    case 1: return build_c1(voc, color);
    case 2: return build_c2(m, voc, color);
    case 3: return build_c3(m, voc, color);
    case 4: return build_c4(m, voc, color);
    case 5: return build_c5(m, voc, color);
    default: throw std::invalid_argument("build_counter index must be 1..5");
  }
}

fo2::FormulaRef build_aux(const ca::CounterMachine& m, int i) {
  Vocabulary voc = make_vocabulary(m);
  switch (i) {
    case 1: return build_a1();
    case 2: return build_a2(voc);
    case 3: return build_a3(m);
    default: throw std::invalid_argument("build_aux index must be 1..3");
  }
}

std::vector<std::pair<std::string, fo2::FormulaRef>> compile_parts(const ca::CounterMachine& m) {
  if (m.transitions.empty()) throw TrivialMachine("machine has no transitions");
  make_vocabulary(m);  // surface UnsupportedCounters before building anything

  std::vector<std::pair<std::string, FormulaRef>> parts;
  for (int i = 1; i <= 5; ++i) parts.emplace_back("T" + std::to_string(i), build_t(m, i));
  for (int i = 1; i <= 5; ++i)
    parts.emplace_back("B" + std::to_string(i), build_counter(m, Color::B, i));
  for (int i = 1; i <= 5; ++i)
    parts.emplace_back("R" + std::to_string(i), build_counter(m, Color::R, i));
  for (int i = 1; i <= 3; ++i) parts.emplace_back("A" + std::to_string(i), build_aux(m, i));
  return parts;
}

fo2::FormulaRef compile(const ca::CounterMachine& m) {
  std::vector<FormulaRef> conjuncts;
  for (auto& [name, part] : compile_parts(m)) conjuncts.push_back(std::move(part));
  return conj(std::move(conjuncts));
}

}  // namespace fo2sp::reduction
