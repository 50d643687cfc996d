#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "obo/error.hpp"
#include "obo/io.hpp"
#include "obo/model.hpp"
#include "support.hpp"

using namespace obo;

namespace {

RawInstance two_agents() {
  RawInstance raw;
  raw.agents = {"x", "y"};
  raw.edges = {{"x", "x", 1.0}, {"x", "y", 1.0}, {"y", "y", 1.0}};
  raw.opinions = {0.2, 0.7};
  raw.costs = {10.0, 20.0};
  raw.threshold = 0.5;
  raw.budget = 5.0;
  return raw;
}

std::vector<ErrorCode> codes_of(const RawInstance& raw) {
  try {
    validate(raw);
  } catch (const ValidationError& e) {
    std::vector<ErrorCode> out;
    for (const auto& v : e.violations()) out.push_back(v.code);
    return out;
  }
  return {};
}

bool has(const std::vector<ErrorCode>& codes, ErrorCode c) {
  return std::find(codes.begin(), codes.end(), c) != codes.end();
}

}  // namespace

TEST_CASE("the worked example loads as a valid 12-agent instance") {
  const Instance inst = test::worked_example();
  CHECK(inst.size() == 12);
  CHECK(inst.threshold == 0.5);
  // Listed per +0.1 of opinion, stored per full unit.
  CHECK(inst.costs[inst.index_of("a")] == 1000.0);
  CHECK(inst.costs[inst.index_of("j")] == 200.0);
  CHECK(inst.true_opinions[inst.index_of("i")] == 0.8);
  CHECK(inst.true_opinions[inst.index_of("j")] == 0.1);
}

TEST_CASE("the worked example's confidence matrix") {
  const Instance inst = test::worked_example();
  const ConfidenceMatrix a(inst);
  const auto at = [&](const char* i, const char* j) { return a(inst.index_of(i), inst.index_of(j)); };
  CHECK(at("a", "a") == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(at("d", "f") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(at("h", "j") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(at("j", "l") == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(at("l", "k") == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(at("a", "c") == 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j);
    CHECK(std::fabs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("normalization of small weight sets") {
  RawInstance one;
  one.agents = {"solo"};
  one.edges = {{"solo", "solo", 5.0}};
  one.opinions = {0.3};
  one.costs = {1.0};
  one.threshold = 0.5;
  const ConfidenceMatrix a1(validate(one));
  CHECK(a1(0, 0) == 1.0);

  const ConfidenceMatrix a2(validate(two_agents()));
  CHECK(a2(0, 0) == 0.5);
  CHECK(a2(0, 1) == 0.5);
  CHECK(a2(1, 0) == 0.0);
  CHECK(a2(1, 1) == 1.0);
}

TEST_CASE("validation reports each violated invariant") {
  SUBCASE("missing self-confidence") {
    RawInstance raw = two_agents();
    raw.edges = {{"x", "y", 1.0}, {"y", "y", 1.0}};
    const auto codes = codes_of(raw);
    CHECK(has(codes, ErrorCode::NoSelfConfidence));
  }
  SUBCASE("zero self weight counts as missing") {
    RawInstance raw = two_agents();
    raw.edges[0].weight = 0.0;
    CHECK(has(codes_of(raw), ErrorCode::NoSelfConfidence));
  }
  SUBCASE("no outgoing weight at all") {
    RawInstance raw = two_agents();
    raw.edges = {{"x", "x", 1.0}};
    const auto codes = codes_of(raw);
    CHECK(has(codes, ErrorCode::NonStochasticRow));
    CHECK(has(codes, ErrorCode::NoSelfConfidence));
  }
  SUBCASE("opinion outside [0, 1]") {
    RawInstance raw = two_agents();
    raw.opinions[1] = 1.2;
    CHECK(codes_of(raw) == std::vector{ErrorCode::OpinionOutOfRange});
  }
  SUBCASE("nonpositive cost") {
    RawInstance raw = two_agents();
    raw.costs[0] = 0.0;
    CHECK(codes_of(raw) == std::vector{ErrorCode::NonpositiveCost});
  }
  SUBCASE("negative budget") {
    RawInstance raw = two_agents();
    raw.budget = -1.0;
    CHECK(codes_of(raw) == std::vector{ErrorCode::NegativeBudget});
  }
  SUBCASE("negative weight") {
    RawInstance raw = two_agents();
    raw.edges[1].weight = -0.5;
    CHECK(has(codes_of(raw), ErrorCode::NegativeWeight));
  }
  SUBCASE("threshold outside (0, 1]") {
    RawInstance raw = two_agents();
    raw.threshold = 1.5;
    CHECK(codes_of(raw) == std::vector{ErrorCode::ThresholdOutOfRange});
  }
  SUBCASE("several problems at once") {
    RawInstance raw = two_agents();
    raw.opinions[0] = -0.1;
    raw.costs[1] = -3;
    CHECK(codes_of(raw).size() == 2);
  }
}

TEST_CASE("structural problems are parse errors") {
  SUBCASE("empty agent list") {
    CHECK_THROWS_AS(io::instance_from_string(
                        R"({"agents":[],"edges":[],"opinions":[],"costs":[],"threshold":0.5,"budget":1})"),
                    Error);
  }
  SUBCASE("duplicate agent id") {
    try {
      io::instance_from_string(
          R"({"agents":["a","a"],"edges":[],"opinions":[0,0],"costs":[1,1],"threshold":0.5,"budget":1})");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
  }
  SUBCASE("malformed JSON reports a line") {
    try {
      io::instance_from_string("{\n\"agents\": [\"a\",\n}");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("wrongly typed field names the field") {
    try {
      io::instance_from_string(
          R"({"agents":["a"],"edges":[{"from":"a","to":"a","w":1}],"opinions":["x"],"costs":[1],"threshold":0.5,"budget":1})");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("opinions[0]") != std::string::npos);
    }
  }
  SUBCASE("edge to an unknown agent") {
    CHECK_THROWS_AS(io::instance_from_string(
                        R"({"agents":["a"],"edges":[{"from":"a","to":"q","w":1}],"opinions":[0],"costs":[1],"threshold":0.5,"budget":1})"),
                    Error);
  }
  SUBCASE("missing field") {
    CHECK_THROWS_AS(io::instance_from_string(R"({"agents":["a"],"edges":[]})"), Error);
  }
}

TEST_CASE("instance files round-trip exactly") {
  std::mt19937_64 rng(11);
  const auto dir = std::filesystem::temp_directory_path();
  for (int rep = 0; rep < 25; ++rep) {
    const Instance inst = test::random_instance(rng, test::random_shape(rng, 1, 12));
    const auto path = dir / ("obo_roundtrip_" + std::to_string(rep) + ".json");
    io::save_instance(inst, path);
    CHECK(io::load_instance(path) == inst);
    std::filesystem::remove(path);
  }
}

TEST_CASE("plan files carry payments, supporters and spend") {
  const Instance inst = test::worked_example();
  PaymentPlan plan;
  plan.payments.assign(inst.size(), 0.0);
  plan.payments[inst.index_of("j")] = 99.0;
  plan.supporters = {8, 9, 10, 11};
  plan.total_spend = 99.0;
  const auto path = std::filesystem::temp_directory_path() / "obo_plan.json";
  io::save_plan(inst, plan, path);
  const auto doc = io::Json::parse(io::read_file(path));
  CHECK(doc["payments"]["j"] == 99.0);
  CHECK(doc["supporters"] == io::Json::array({"i", "j", "k", "l"}));
  CHECK(doc["total_spend"] == 99.0);
  CHECK(io::load_plan_payments(inst, path) == plan.payments);
  std::filesystem::remove(path);
}

TEST_CASE("reals are rounded to 12 significant digits") {
  CHECK(io::round_sig(1.0 / 3.0) == 0.333333333333);
  CHECK(io::round_sig(98.99999999999997) == 99.0);
  CHECK(io::round_sig(0.0) == 0.0);
  CHECK(io::round_sig(-0.0) == 0.0);
}
