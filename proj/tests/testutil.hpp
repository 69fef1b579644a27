// Shared helpers for the test suites: deterministic random generators for
// structures and formulas, the quantifier-expansion evaluation oracle, and
// the ordered-partition counting recurrence. Everything here is independent
// of the library code paths it is used to check.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fo2sp/fo2.hpp"
#include "fo2sp/structures.hpp"

namespace testutil {

using fo2sp::fo2::Formula;
using fo2sp::fo2::FormulaRef;
using fo2sp::fo2::Var;
using fo2sp::structures::Element;
using fo2sp::structures::OrderedStructure;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool rand_bool(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

// --------------------------------------------------------------------------
// Random inputs

inline std::vector<std::string> default_pred_pool() { return {"B", "R", "P", "t1", "t2"}; }

inline OrderedStructure random_structure(Rng& rng, int max_size,
                                         const std::vector<std::string>& preds = default_pred_pool()) {
  int n = rand_int(rng, 1, max_size);
  std::vector<Element> order;
  for (int i = 0; i < n; ++i) order.push_back("e" + std::to_string(i));

  std::vector<std::vector<Element>> classes;
  classes.push_back({order[0]});
  for (int i = 1; i < n; ++i) {
    if (rand_bool(rng)) classes.push_back({});
    classes.back().push_back(order[i]);
  }

  std::map<std::string, std::set<Element>> labels;
  for (const auto& pred : preds)
    for (const auto& e : order)
      if (rand_bool(rng, 0.3)) labels[pred].insert(e);

  return fo2sp::structures::make_structure(std::move(order), std::move(classes), std::move(labels));
}

inline Var random_var(Rng& rng) { return rand_bool(rng) ? Var::X : Var::Y; }

inline FormulaRef random_formula(Rng& rng, int depth,
                                 const std::vector<std::string>& preds = default_pred_pool()) {
  using namespace fo2sp::fo2;
  if (depth <= 0 || rand_int(rng, 0, 9) == 0) {
    switch (rand_int(rng, 0, 3)) {
      case 0: return unary(preds[rand_int(rng, 0, static_cast<int>(preds.size()) - 1)], random_var(rng));
      case 1: return succ_l(random_var(rng), random_var(rng));
      case 2: return succ_p(random_var(rng), random_var(rng));
      default: return eq(random_var(rng), random_var(rng));
    }
  }
  switch (rand_int(rng, 0, 6)) {
    case 0: return negate(random_formula(rng, depth - 1, preds));
    case 1:
    case 2: {
      std::vector<FormulaRef> kids;
      int arity = rand_int(rng, 0, 3);  // empty connectives exercise the constants
      for (int i = 0; i < arity; ++i) kids.push_back(random_formula(rng, depth - 1, preds));
      return rand_bool(rng) ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case 3:
      return implies(random_formula(rng, depth - 1, preds), random_formula(rng, depth - 1, preds));
    case 4:
      return iff(random_formula(rng, depth - 1, preds), random_formula(rng, depth - 1, preds));
    case 5:
      return exists(random_var(rng), random_formula(rng, depth - 1, preds));
    default:
      return forall(random_var(rng), random_formula(rng, depth - 1, preds));
  }
}

inline FormulaRef random_sentence(Rng& rng, int depth,
                                  const std::vector<std::string>& preds = default_pred_pool()) {
  using namespace fo2sp::fo2;
  return forall(Var::X, forall(Var::Y, random_formula(rng, depth, preds)));
}

// --------------------------------------------------------------------------
// Quantifier-expansion oracle
//
// An independent evaluator: the structure's relations are first derived
// definitionally (successor = smaller and nothing strictly between, scanning
// all intermediate elements), then the formula is expanded into an explicit
// ground and/or/not tree by substituting every element for each quantifier,
// and finally the tree is folded. No environments, no short-circuiting.

struct GroundExpr {
  enum class Op { Leaf, Not, And, Or } op = Op::Leaf;
  bool value = false;
  std::vector<std::unique_ptr<GroundExpr>> kids;
};

struct GroundRelations {
  int n = 0;
  std::set<std::pair<int, int>> succ_l, succ_p;
  std::map<std::string, std::set<int>> preds;

  explicit GroundRelations(const OrderedStructure& s) {
    n = static_cast<int>(s.order.size());
    std::map<Element, int> pos, cls;
    for (int i = 0; i < n; ++i) pos[s.order[i]] = i;
    for (std::size_t c = 0; c < s.classes.size(); ++c)
      for (const auto& e : s.classes[c]) cls[e] = static_cast<int>(c);

    // u <_l v iff pos(u) < pos(v); u <_p v iff cls(u) < cls(v). The successor
    // is "below and nothing strictly between", by scanning every candidate w.
    auto lt_l = [&](int u, int v) { return u < v; };
    auto lt_p = [&](int u, int v) { return cls[s.order[u]] < cls[s.order[v]]; };
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (lt_l(u, v)) {
          bool between = false;
          for (int w = 0; w < n; ++w)
            if (lt_l(u, w) && lt_l(w, v)) between = true;
          if (!between) succ_l.insert({u, v});
        }
        if (lt_p(u, v)) {
          bool between = false;
          for (int w = 0; w < n; ++w)
            if (lt_p(u, w) && lt_p(w, v)) between = true;
          if (!between) succ_p.insert({u, v});
        }
      }

    for (const auto& [pred, elems] : s.labels)
      for (const auto& e : elems)
        if (pos.count(e)) preds[pred].insert(pos[e]);
  }
};

inline std::unique_ptr<GroundExpr> ground_leaf(bool value) {
  auto e = std::make_unique<GroundExpr>();
  e->value = value;
  return e;
}

inline std::unique_ptr<GroundExpr> ground_node(GroundExpr::Op op,
                                               std::vector<std::unique_ptr<GroundExpr>> kids) {
  auto e = std::make_unique<GroundExpr>();
  e->op = op;
  e->kids = std::move(kids);
  return e;
}

// Substitution-based expansion: xv/yv are concrete element positions
// (-1 = unbound; reaching an atom with -1 is a test bug).
inline std::unique_ptr<GroundExpr> expand(const GroundRelations& g, const Formula& f, int xv, int yv) {
  using Kind = Formula::Kind;
  auto value_of = [&](Var v) { return v == Var::X ? xv : yv; };
  std::vector<std::unique_ptr<GroundExpr>> kids;

  switch (f.kind) {
    case Kind::Unary: {
      auto it = g.preds.find(f.pred);
      return ground_leaf(it != g.preds.end() && it->second.count(value_of(f.a)));
    }
    case Kind::SuccL:
      return ground_leaf(g.succ_l.count({value_of(f.a), value_of(f.b)}) > 0);
    case Kind::SuccP:
      return ground_leaf(g.succ_p.count({value_of(f.a), value_of(f.b)}) > 0);
    case Kind::Eq:
      return ground_leaf(value_of(f.a) == value_of(f.b));
    case Kind::Not:
      kids.push_back(expand(g, *f.kids[0], xv, yv));
      return ground_node(GroundExpr::Op::Not, std::move(kids));
    case Kind::And:
    case Kind::Or:
      for (const auto& kid : f.kids) kids.push_back(expand(g, *kid, xv, yv));
      return ground_node(f.kind == Kind::And ? GroundExpr::Op::And : GroundExpr::Op::Or,
                         std::move(kids));
    case Kind::Implies: {
      std::vector<std::unique_ptr<GroundExpr>> not_kid;
      not_kid.push_back(expand(g, *f.kids[0], xv, yv));
      kids.push_back(ground_node(GroundExpr::Op::Not, std::move(not_kid)));
      kids.push_back(expand(g, *f.kids[1], xv, yv));
      return ground_node(GroundExpr::Op::Or, std::move(kids));
    }
    case Kind::Iff: {
      // (a -> b) and (b -> a), each expanded independently.
      auto one_way = [&](const Formula& from, const Formula& to) {
        std::vector<std::unique_ptr<GroundExpr>> inner;
        std::vector<std::unique_ptr<GroundExpr>> not_kid;
        not_kid.push_back(expand(g, from, xv, yv));
        inner.push_back(ground_node(GroundExpr::Op::Not, std::move(not_kid)));
        inner.push_back(expand(g, to, xv, yv));
        return ground_node(GroundExpr::Op::Or, std::move(inner));
      };
      kids.push_back(one_way(*f.kids[0], *f.kids[1]));
      kids.push_back(one_way(*f.kids[1], *f.kids[0]));
      return ground_node(GroundExpr::Op::And, std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall:
      for (int e = 0; e < g.n; ++e)
        kids.push_back(expand(g, *f.kids[0], f.a == Var::X ? e : xv, f.a == Var::Y ? e : yv));
      return ground_node(f.kind == Kind::Exists ? GroundExpr::Op::Or : GroundExpr::Op::And,
                         std::move(kids));
  }
  return ground_leaf(false);
}

inline bool fold(const GroundExpr& e) {
  switch (e.op) {
    case GroundExpr::Op::Leaf:
      return e.value;
    case GroundExpr::Op::Not:
      return !fold(*e.kids[0]);
    case GroundExpr::Op::And: {
      bool all = true;
      for (const auto& kid : e.kids) all = fold(*kid) && all;
      return all;
    }
    case GroundExpr::Op::Or: {
      bool any = false;
      for (const auto& kid : e.kids) any = fold(*kid) || any;
      return any;
    }
  }
  return false;
}

inline bool oracle_evaluate(const OrderedStructure& s, const Formula& f, int xv = -1, int yv = -1) {
  GroundRelations g(s);
  return fold(*expand(g, f, xv, yv));
}

// --------------------------------------------------------------------------
// Ordered-partition counting recurrence: a(n) = sum over k>=1 of C(n,k) * a(n-k).

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) result = result * static_cast<std::uint64_t>(n - i) / (i + 1);
  return result;
}

inline std::uint64_t ordered_partition_count(int n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) a[m] += binomial(m, k) * a[m - k];
  return a[n];
}

}  // namespace testutil
