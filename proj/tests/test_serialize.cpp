#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace wittkit;
using oracles::make_rng;
using oracles::random_witt_fp;

TEST_CASE("integers above 2^53 become decimal strings") {
  REQUIRE(json_int(Int(42)).is_number());
  REQUIRE(json_int(Int(-7)).is_number());
  Int big = ipow(10, 20);
  REQUIRE(json_int(big).is_string());
  REQUIRE(json_int(big).get<std::string>() == "100000000000000000000");
  REQUIRE(int_from_json(json_int(big)) == big);
  REQUIRE(int_from_json(json_int(Int(905))) == 905);
}

TEST_CASE("witt vector schema") {
  Prime p2(2);
  auto x = add(WittVectorFp::one(p2, TruncationSet::segment(4)),
               WittVectorFp::one(p2, TruncationSet::segment(4)));
  Json j = json_of(x);
  REQUIRE(j.at("p") == 2);
  REQUIRE(j.at("S") == Json::array({1, 2, 3, 4}));
  REQUIRE(j.at("coords").at("1") == 0);
  REQUIRE(j.at("coords").at("2") == 1);
  REQUIRE(witt_fp_from_json(j) == x);
}

TEST_CASE("decomposition schema") {
  Prime p3(3);
  auto x = WittVectorFp::one(p3, TruncationSet::segment(6));
  Json j = json_of(eta_decompose(x));
  REQUIRE(j.at("p") == 3);
  for (const auto& comp : j.at("components")) {
    REQUIRE(comp.contains("j"));
    REQUIRE(comp.contains("u"));
    REQUIRE(comp.contains("value"));
  }
  REQUIRE(decomp_from_json(j) == eta_decompose(x));
}

TEST_CASE("round trips on random vectors") {
  auto rng = make_rng(17);
  for (long long p : {2LL, 3LL}) {
    Prime pr(p);
    for (long long r : {1LL, 5LL, 9LL}) {
      TruncationSet S = TruncationSet::segment(r);
      for (int iter = 0; iter < 20; ++iter) {
        auto x = random_witt_fp(rng, pr, S);
        REQUIRE(witt_fp_from_json(json_of(x)) == x);
        auto d = eta_decompose(x);
        REQUIRE(decomp_from_json(json_of(d)) == d);
      }
    }
  }
}

TEST_CASE("divisor schema omits zero orders") {
  Prime p2(2);
  Divisor d(p2, {{1, 2}, {3, 0}});
  Json j = json_of(d);
  REQUIRE(j.at("orders").contains("1"));
  REQUIRE_FALSE(j.at("orders").contains("3"));
  REQUIRE(divisor_from_json(j) == d);
}

TEST_CASE("group and homology records") {
  REQUIRE(json_of(FinAbPGroup::from_exponents(2, {1, 2})).at("exponents") ==
          Json::array({2, 1}));
  Json h = json_of(homology(bar_complex(2, 2)));
  REQUIRE(h.size() == 1);
  REQUIRE(h[0].at("deg") == 1);
  REQUIRE(h[0].at("torsion") == Json::array({2}));
}
