#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "fo2sp/codec.hpp"
#include "fo2sp/errors.hpp"
#include "fo2sp/structures.hpp"

using namespace fo2sp;
using codec::decode;
using codec::encode;

TEST_CASE("encode of the two-step run is the minimal three-chain") {
  auto m1 = corpus::load_machine("M1");
  auto run = ca::find_accepting_run(m1, 5);
  REQUIRE(run.has_value());

  auto [structure, meta] = encode(m1, *run);
  CHECK(meta.k == 1);
  CHECK(meta.threads == 1);
  CHECK(meta.class_count == 3);

  auto expected = structures::make_structure(
      {"e0", "e1", "e2"}, {{"e0"}, {"e1"}, {"e2"}},
      {{"B", {"e1"}}, {"t1", {"e1"}}, {"t2", {"e2"}}});
  CHECK(structure == expected);
}

TEST_CASE("class size is the maximum combined counter value") {
  auto m4 = corpus::load_machine("M4");
  auto run = ca::find_accepting_run(m4, 8);
  REQUIRE(run.has_value());
  auto [structure, meta] = encode(m4, *run);
  CHECK(meta.k == 2);  // blue and red are both 1 after the red increment
  for (const auto& cls : structure.classes) CHECK(cls.size() == 2);

  auto m5 = corpus::load_machine("M5");
  auto run5 = ca::find_accepting_run(m5, 8);
  REQUIRE(run5.has_value());
  auto [structure5, meta5] = encode(m5, *run5);
  CHECK(meta5.k == 3);
  for (const auto& cls : structure5.classes) CHECK(cls.size() == 3);
  CHECK(structure5.order.size() == 3 * 7);
}

TEST_CASE("encode output is valid, disjointly colored, and thread aligned") {
  for (const auto& name : corpus::nonempty_names()) {
    auto m = corpus::load_machine(name);
    auto run = ca::find_accepting_run(m, 8);
    REQUIRE(run.has_value());
    auto [s, meta] = encode(m, *run);

    CHECK_MESSAGE(structures::validate(s).empty(), name);

    for (const auto& cls : s.classes) CHECK(static_cast<int>(cls.size()) == meta.k);

    auto blue = s.labels.count("B") ? s.labels.at("B") : std::set<structures::Element>{};
    auto red = s.labels.count("R") ? s.labels.at("R") : std::set<structures::Element>{};
    for (const auto& e : blue) CHECK_MESSAGE(!red.count(e), name);

    // Thread property: outside the last class, the linear successor lives in
    // the immediately next class.
    for (std::size_t p = 0; p + 1 < s.order.size(); ++p) {
      auto cls = structures::class_index(s, s.order[p]);
      if (cls + 1 < s.classes.size())
        CHECK(structures::class_index(s, s.order[p + 1]) == cls + 1);
    }
  }
}

TEST_CASE("decode inverts encode on every corpus run") {
  for (const auto& name : corpus::nonempty_names()) {
    auto m = corpus::load_machine(name);
    auto run = ca::find_accepting_run(m, 8);
    REQUIRE(run.has_value());
    auto encoded = encode(m, *run);
    CHECK_MESSAGE(decode(m, encoded.structure) == *run, name);
  }
}

TEST_CASE("encode rejects bad runs") {
  auto m1 = corpus::load_machine("M1");

  ca::Run empty_run;
  empty_run.configs = {ca::initial_configuration(m1)};
  CHECK_THROWS_AS(encode(m1, empty_run), fo2sp::EncodeError);

  auto run = ca::find_accepting_run(m1, 5);
  REQUIRE(run.has_value());
  ca::Run broken = *run;
  broken.configs.back().state = "q1";
  CHECK_THROWS_AS(encode(m1, broken), fo2sp::EncodeError);
}

TEST_CASE("decode failure modes") {
  auto m1 = corpus::load_machine("M1");

  auto ambiguous = structures::make_structure(
      {"e0", "e1", "e2"}, {{"e0"}, {"e1", "e2"}},
      {{"t1", {"e1"}}, {"t2", {"e2"}}});
  CHECK_THROWS_AS(decode(m1, ambiguous), fo2sp::DecodeError);
  try {
    decode(m1, ambiguous);
  } catch (const fo2sp::DecodeError& e) {
    CHECK(e.kind() == fo2sp::DecodeError::Kind::AmbiguousTag);
  }

  auto untagged = structures::make_structure({"e0", "e1"}, {{"e0"}, {"e1"}});
  try {
    decode(m1, untagged);
  } catch (const fo2sp::DecodeError& e) {
    CHECK(e.kind() == fo2sp::DecodeError::Kind::NoTag);
  }

  auto one_class = structures::make_structure({"e0", "e1"}, {{"e0", "e1"}});
  try {
    decode(m1, one_class);
  } catch (const fo2sp::DecodeError& e) {
    CHECK(e.kind() == fo2sp::DecodeError::Kind::SingleClass);
  }

  structures::OrderedStructure invalid;
  invalid.order = {"e0"};
  invalid.classes = {};
  CHECK_THROWS_AS(decode(m1, invalid), std::invalid_argument);
}

TEST_CASE("decode reads counts without checking acceptance") {
  auto m1 = corpus::load_machine("M1");
  // Tagged like a run whose counters do not add up; decode reports what it
  // sees and validate_run rejects it.
  auto s = structures::make_structure(
      {"e0", "e1", "e2"}, {{"e0"}, {"e1"}, {"e2"}},
      {{"B", {"e0", "e1"}}, {"t1", {"e1"}}, {"t2", {"e2"}}});
  auto run = decode(m1, s);
  CHECK(run.configs[0].values.at("B") == 1);
  CHECK(run.configs[1].values.at("B") == 1);
  CHECK(run.configs[2].values.at("B") == 0);
  CHECK(run.steps.size() == 2);
  CHECK(!ca::validate_run(m1, run).accepting);
}
