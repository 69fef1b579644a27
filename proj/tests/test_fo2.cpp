#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fo2sp/errors.hpp"
#include "fo2sp/fo2.hpp"
#include "testutil.hpp"

using namespace fo2sp::fo2;
using fo2sp::structures::make_structure;
using fo2sp::structures::OrderedStructure;

namespace {

OrderedStructure labeled_chain() {
  auto s = make_structure({"e0", "e1", "e2"}, {{"e0"}, {"e1"}, {"e2"}});
  s.labels["B"] = {"e1"};
  return s;
}

}  // namespace

TEST_CASE("free variables") {
  CHECK(free_vars(*unary("B", Var::X)) == std::set<Var>{Var::X});
  CHECK(free_vars(*exists(Var::X, unary("B", Var::X))).empty());
  CHECK(free_vars(*exists(Var::Y, succ_p(Var::X, Var::Y))) == std::set<Var>{Var::X});
  CHECK(is_sentence(*forall(Var::X, exists(Var::Y, succ_l(Var::X, Var::Y)))) == false);
  CHECK(free_vars(*succ_l(Var::X, Var::X)) == std::set<Var>{Var::X});
}

TEST_CASE("evaluation basics") {
  auto s = labeled_chain();
  CHECK(evaluate(s, *exists(Var::X, unary("B", Var::X))));
  CHECK(!evaluate(s, *forall(Var::X, unary("B", Var::X))));

  auto one_class = make_structure({"e0", "e1"}, {{"e0", "e1"}});
  CHECK(!evaluate(one_class, *forall(Var::X, exists(Var::Y, succ_p(Var::X, Var::Y)))));

  // Atoms with both variables on the same element.
  Assignment a;
  a.x = "e1";
  CHECK(!evaluate(s, *succ_l(Var::X, Var::X), a));
  CHECK(evaluate(s, *eq(Var::X, Var::X), a));

  CHECK_THROWS_AS(evaluate(s, *unary("B", Var::Y), a), fo2sp::UnboundVariable);
  Assignment bad;
  bad.x = "zz";
  CHECK_THROWS_AS(evaluate(s, *unary("B", Var::X), bad), fo2sp::UnknownElement);
}

TEST_CASE("empty connectives are the logical constants") {
  auto s = labeled_chain();
  CHECK(evaluate(s, *conj({})));
  CHECK(!evaluate(s, *disj({})));
}

TEST_CASE("quantifiers shadow outer bindings") {
  auto s = labeled_chain();
  Assignment a;
  a.x = "e0";  // B(e0) is false
  CHECK(!evaluate(s, *unary("B", Var::X), a));
  CHECK(evaluate(s, *exists(Var::X, unary("B", Var::X)), a));
  // The paper-style rebinding round trip: from e1's class, reach back to it.
  auto trick = exists(Var::Y, conj({succ_p(Var::X, Var::Y),
                                    exists(Var::X, conj({succ_p(Var::X, Var::Y), unary("B", Var::X)}))}));
  Assignment at_e1;
  at_e1.x = "e1";
  CHECK(evaluate(s, *trick, at_e1));
}

TEST_CASE("negation and quantifier duality on random inputs") {
  testutil::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = testutil::random_structure(rng, 5);
    auto f = testutil::random_formula(rng, 4);
    Assignment a;
    a.x = s.order[testutil::rand_int(rng, 0, static_cast<int>(s.order.size()) - 1)];
    a.y = s.order[testutil::rand_int(rng, 0, static_cast<int>(s.order.size()) - 1)];

    CHECK(evaluate(s, *negate(f), a) == !evaluate(s, *f, a));

    Var v = testutil::random_var(rng);
    CHECK(evaluate(s, *forall(v, f), a) == evaluate(s, *negate(exists(v, negate(f))), a));
  }
}

TEST_CASE("evaluate agrees with the quantifier-expansion oracle") {
  testutil::Rng rng(123456);
  for (int trial = 0; trial < 2000; ++trial) {
    auto s = testutil::random_structure(rng, 5);
    auto f = testutil::random_formula(rng, 6);
    int xi = testutil::rand_int(rng, 0, static_cast<int>(s.order.size()) - 1);
    int yi = testutil::rand_int(rng, 0, static_cast<int>(s.order.size()) - 1);
    Assignment a;
    a.x = s.order[xi];
    a.y = s.order[yi];
    CHECK(evaluate(s, *f, a) == testutil::oracle_evaluate(s, *f, xi, yi));
  }
}

TEST_CASE("parser round-trips the documented examples") {
  auto f = parse_formula("(exists x (B x))");
  CHECK(equal(f, exists(Var::X, unary("B", Var::X))));

  auto g = parse_formula("(forall x (implies (B x) (R x)))");
  CHECK(equal(*parse_formula(print_formula(*g)), *g));

  CHECK(equal(parse_formula("(succL x y)"), succ_l(Var::X, Var::Y)));
  CHECK(equal(parse_formula("(= x y)"), eq(Var::X, Var::Y)));
  CHECK(equal(parse_formula("(and)"), conj({})));
  CHECK(print_formula(*conj({})) == "(and)");
}

TEST_CASE("print then parse is the identity on random formulas") {
  testutil::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = testutil::random_formula(rng, 5);
    CHECK(equal(*parse_formula(print_formula(*f)), *f));
    CHECK(equal(*parse_formula(print_formula_pretty(*f)), *f));
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("(exists z (B z))");
    FAIL("expected a parse error");
  } catch (const fo2sp::ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_formula("(and (B x)"), fo2sp::ParseError);
  CHECK_THROWS_AS(parse_formula("(B x) (R x)"), fo2sp::ParseError);
  CHECK_THROWS_AS(parse_formula(""), fo2sp::ParseError);
}
