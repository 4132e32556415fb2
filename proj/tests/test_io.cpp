#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "phiflag/io.hpp"

using namespace phiflag;

#ifndef PHIFLAG_TEST_DATA
#define PHIFLAG_TEST_DATA "tests/data"
#endif

namespace {

Json load(const std::string& name) {
  std::ifstream in(std::string(PHIFLAG_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return Json::parse(in);
}

}  // namespace

TEST_CASE("instance files") {
  auto gen = module_from_json(load("n2_generic.json"));
  CHECK(gen.n == 2);
  CHECK(gen.eigenvalues == std::vector<Rational>{Rational(1), Rational(3)});
  CHECK(validate(gen).empty());
  auto gl4 = module_from_json(load("gl4_reversed.json"));
  CHECK(gl4.n == 4);
  CHECK(validate(gl4).empty());
  auto bad = module_from_json(load("invalid.json"));
  CHECK(std::find(validate(bad).begin(), validate(bad).end(), "weights not strictly decreasing") != validate(bad).end());
  std::ifstream broken(std::string(PHIFLAG_TEST_DATA) + "/malformed.json");
  CHECK_THROWS(Json::parse(broken));
}

TEST_CASE("malformed instance documents") {
  CHECK_THROWS_AS(module_from_json(Json::array()), ParseError);
  CHECK_THROWS_AS(module_from_json(Json::parse(R"({"n": 2})")), ParseError);
  CHECK_THROWS_AS(module_from_json(Json::parse(R"({"n":2,"p":2,"f":1,"eigenvalues":["1/0","3"],"weights":[1,0],"flag":[]})")),
                  ParseError);
  CHECK_THROWS_AS(module_from_json(Json::parse(R"({"n":2,"p":2,"f":1,"eigenvalues":[1.5,3],"weights":[1,0],"flag":[]})")),
                  ParseError);
  CHECK_THROWS_AS(modules_from_json(Json::array()), ParseError);
}

TEST_CASE("round trip through JSON") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto d = random_module(2 + static_cast<int>(seed % 4), 3, 1, seed, FlagMode::mixed);
    Json j = module_to_json(d);
    auto e = module_from_json(Json::parse(j.dump()));
    CHECK(e.n == d.n);
    CHECK(e.p == d.p);
    CHECK(e.f == d.f);
    CHECK(e.eigenvalues == d.eigenvalues);
    CHECK(e.weights == d.weights);
    CHECK(e.flag == d.flag);
    CHECK(module_to_json(e).dump() == j.dump());
    // Every rational travels as a string.
    for (const auto& x : j["eigenvalues"]) CHECK(x.is_string());
    for (const auto& row : j["flag"])
      for (const auto& x : row) CHECK(x.is_string());
  }
  auto list = modules_from_json(Json::array({module_to_json(random_module(3, 2, 1, 1, FlagMode::generic)),
                                             module_to_json(random_module(3, 2, 1, 2, FlagMode::generic))}));
  CHECK(list.size() == 2);
}

TEST_CASE("result encodings") {
  CHECK(rational_json(Rational(-3, 2)) == "-3/2");
  CHECK(vector_json({Rational(1), Rational(1, 2)}) == Json::array({"1", "1/2"}));
  Subspace s = Subspace::span(2, {Vector{Rational(2), Rational(2)}});
  Json sj = subspace_json(s);
  CHECK(sj["dim"] == 1);
  CHECK(sj["basis"] == Json::array({Json::array({"1", "1"})}));
  WedgeVector w = basis_wedge(3, {0, 2});
  CHECK(wedge_json(w)["coords"] == Json({{"0,2", "1"}}));
  CHECK(permutation_json(Permutation::longest(3)) == Json::array({2, 1, 0}));

  TMap gl4(module_from_json(load("gl4_reversed.json")));
  Json cls = classification_json(classify(gl4));
  int vc = 0;
  for (const auto& c : cls)
    if (c["very_critical"].get<bool>()) {
      ++vc;
      CHECK(c["I"] == Json::array({0, 1}));
    }
  CHECK(vc == 1);
  Json sk = skeleton_json(build_pi(gl4));
  CHECK(sk["top_alg_multiplicity"] == 5);
  CHECK(sk["very_critical_summands"] == Json::array({Json::array({0, 1})}));
  CHECK(sk.dump() == skeleton_json(build_pi(gl4)).dump());
}

TEST_CASE("step lists") {
  CHECK(parse_steps("1,3") == StepSet{1, 3});
  CHECK(parse_steps("").empty());
  CHECK(parse_steps("2") == StepSet{2});
  CHECK_THROWS_AS(parse_steps("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_steps("a"), ParseError);
  CHECK_THROWS_AS(parse_steps("1x"), ParseError);
}
