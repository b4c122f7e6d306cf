#include <filesystem>
#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace ghzent;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const std::filesystem::path kData = GHZENT_DATA_DIR;

std::string bytes(const std::string& name) { return io::read_file(kData / name); }

std::string parse_message(const std::string& text) {
  try {
    io::coefficients_from_json(io::parse_text(text));
  } catch (const parse_error& e) {
    return e.what();
  } catch (const std::invalid_argument& e) {
    return std::string("invalid: ") + e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("data files round-trip byte for byte") {
  for (const char* f : {"ghz4.json", "tripartite-rho1.json", "ghz4-noise-0.05.json"}) {
    INFO(f);
    CHECK(io::dump(io::to_json(io::coefficients_from_json(io::parse_text(bytes(f))))) == bytes(f));
  }
  for (const char* f : {"sackett2000.json", "rauschenbeutel2000.json"}) {
    INFO(f);
    CHECK(io::dump(io::to_json(io::measured_from_json(io::parse_text(bytes(f))))) == bytes(f));
  }
  CHECK(io::dump(io::to_json(io::molecule_from_json(io::parse_text(bytes("n3-full.spec"))))) == bytes("n3-full.spec"));
  CHECK(io::dump(io::to_json(io::scenario_from_json(io::parse_text(bytes("example1-n4.scenario")))))
        == bytes("example1-n4.scenario"));
}

TEST_CASE("embedded datasets equal the shipped files") {
  for (const auto& name : datasets::names()) {
    INFO(name);
    const auto text = datasets::text(name);
    REQUIRE(text);
    CHECK(std::string(*text) == bytes(std::string(name) + ".json"));
  }
  CHECK_FALSE(datasets::text("nope"));
  CHECK_THROWS_AS(datasets::load("nope"), parse_error);
}

TEST_CASE("coefficient documents round-trip") {
  std::mt19937_64 rng(71);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = oracle::random_family_member(rng, n);
      const auto back = io::coefficients_from_json(io::parse_text(io::dump(io::to_json(s))));
      CHECK(back.approx_equal(s, 0.0));
    }
}

TEST_CASE("density matrices round-trip and respect the qubit cap") {
  std::mt19937_64 rng(72);
  const auto rho = to_density_matrix(oracle::random_family_member(rng, 3));
  const auto j = io::to_json(rho);
  CHECK(max_abs_diff(io::density_matrix_from_json(j).matrix(), rho.matrix()) == 0.0);
  CHECK_THROWS_AS(io::density_matrix_from_json(j, {}, 2), capacity_error);
  auto broken = j;
  broken["entries"][0] = {1.5, 0.0};
  CHECK_THROWS_AS(io::density_matrix_from_json(broken), std::invalid_argument);
  broken = j;
  broken["entries"].erase(0);
  CHECK_THROWS_WITH(io::density_matrix_from_json(broken), ContainsSubstring("'entries'"));
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THAT(parse_message("{"), ContainsSubstring("<input>"));
  CHECK_THAT(parse_message(R"({"lambda0_plus": 1})"), ContainsSubstring("'n_parties'"));
  CHECK_THAT(parse_message(R"({"n_parties": 3, "lambda0_plus": "x", "lambda0_minus": 0})"),
             ContainsSubstring("'lambda0_plus'"));
  CHECK_THAT(parse_message(R"({"n_parties": 3, "lambda0_plus": 1, "lambda0_minus": 0, "lambdas": {"1x": 0}})"),
             ContainsSubstring("'lambdas.1x'"));
  CHECK_THAT(parse_message(R"({"n_parties": 3, "lambda0_plus": 1, "lambda0_minus": 0, "lambdas": {"00": 0}})"),
             ContainsSubstring("'lambdas.00'"));
  CHECK_THAT(parse_message(R"({"n_parties": 3, "lambda0_plus": 0.7, "lambda0_minus": 0})"),
             ContainsSubstring("invariant"));
  CHECK_THAT(parse_message(R"({"n_parties": 40, "lambda0_plus": 1, "lambda0_minus": 0})"),
             ContainsSubstring("'n_parties'"));
}

TEST_CASE("measured documents") {
  const auto d = io::measured_from_json(io::parse_text(bytes("rauschenbeutel2000.json")));
  CHECK(d.data.n_parties == 3);
  CHECK_THAT(d.data.two_lambda.at(0b11).lo, WithinAbs(0.128, 0.0));
  CHECK(d.data.fidelity);
  CHECK_THROWS_AS(io::measured_from_json(io::parse_text(R"({"n_parties": 3, "lambda0_plus": [0.5, 0.4],
    "lambda0_minus": [0, 0]})")),
                  parse_error);
  CHECK_THROWS_AS(io::measured_from_json(io::parse_text(R"({"n_parties": 3, "lambda0_plus": [0.9, 0.9],
    "lambda0_minus": [0.5, 0.5]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::measured_from_json(io::parse_text(R"({"n_parties": 3, "lambda0_plus": [0.5],
    "lambda0_minus": [0, 0]})")),
                  parse_error);
}

TEST_CASE("molecule and grouping documents") {
  const auto spec = io::molecule_from_json(
      io::parse_text(R"({"n_parties": 4, "pairs": [[1, 2], [3, 4]], "weights": {"3-4": 2.0}})"));
  CHECK(spec.weight(PartyPair(3, 4)) == 2.0);
  CHECK(spec.weight(PartyPair(1, 2)) == 1.0);
  CHECK_THROWS_AS(io::molecule_from_json(io::parse_text(R"({"n_parties": 4, "pairs": [[1, 2, 3]]})")), parse_error);
  CHECK_THROWS_AS(io::molecule_from_json(io::parse_text(R"({"n_parties": 4, "pairs": [[1, 1]]})")),
                  std::invalid_argument);

  const auto g = io::grouping_from_json(io::parse_text("[[1, 3], [2], [4]]"), 4);
  CHECK(render(g) == "(A1A3)-(A2)-(A4)");
  CHECK(io::grouping_from_json(io::to_json(g), 4) == g);
  CHECK_THROWS_AS(io::grouping_from_json(io::parse_text("[[1, 3], [2]]"), 4), std::invalid_argument);
}

TEST_CASE("scenarios resolve file references relative to their directory") {
  const auto sc = io::scenario_from_json(io::parse_text(R"({"states": ["tripartite-rho1.json", {"n_parties": 3,
    "lambda0_plus": 1, "lambda0_minus": 0}], "grouping": [[1], [2, 3]]})"),
                                         kData);
  REQUIRE(sc.states.size() == 2);
  CHECK(sc.labels[0] == "tripartite-rho1.json");
  CHECK(sc.labels[1] == "rho2");
  CHECK(sc.grouping);
  CHECK_THROWS_AS(io::scenario_from_json(io::parse_text(R"({"states": ["tripartite-rho1.json", "ghz4.json"]})"), kData),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::scenario_from_json(io::parse_text(R"({"states": []})")), parse_error);
}
