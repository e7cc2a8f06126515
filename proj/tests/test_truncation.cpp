#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace wittkit;

TEST_CASE("construction validates division stability") {
  REQUIRE_NOTHROW(TruncationSet({1, 2, 3, 4, 6, 12}));
  REQUIRE_THROWS_AS(TruncationSet({2, 4}), std::invalid_argument);    // missing 1
  REQUIRE_THROWS_AS(TruncationSet({1, 4}), std::invalid_argument);    // missing 2
  REQUIRE_THROWS_AS(TruncationSet({1, 1, 2}), std::invalid_argument); // duplicate
  REQUIRE_THROWS_AS(TruncationSet({0, 1}), std::invalid_argument);
  REQUIRE_NOTHROW(TruncationSet());  // empty set allowed
}

TEST_CASE("segment") {
  REQUIRE(TruncationSet::segment(4).members() == std::vector<long long>{1, 2, 3, 4});
  REQUIRE(TruncationSet::segment(0).empty());
  REQUIRE(TruncationSet::segment(1).members() == std::vector<long long>{1});
}

TEST_CASE("divisors_of") {
  REQUIRE(TruncationSet::divisors_of(12).members() ==
          std::vector<long long>{1, 2, 3, 4, 6, 12});
  REQUIRE(TruncationSet::divisors_of(1).members() == std::vector<long long>{1});
  REQUIRE(TruncationSet::divisors_of(7).members() == std::vector<long long>{1, 7});
}

TEST_CASE("closure completes a seed") {
  REQUIRE(TruncationSet::closure({12}) == TruncationSet::divisors_of(12));
  REQUIRE(TruncationSet::closure({4, 6}) == TruncationSet({1, 2, 3, 4, 6}));
}

TEST_CASE("quotient") {
  TruncationSet d12 = TruncationSet::divisors_of(12);
  REQUIRE(d12.quotient(3).members() == std::vector<long long>{1, 2, 4});
  REQUIRE(d12.quotient(1) == d12);
  REQUIRE(TruncationSet::segment(2).quotient(5).empty());
  // (S/a)/b = S/(ab)
  for (long long a = 1; a <= 4; ++a)
    for (long long b = 1; b <= 4; ++b)
      REQUIRE(d12.quotient(a).quotient(b) == d12.quotient(a * b));
}

TEST_CASE("every truncation set is a union of divisor sets") {
  TruncationSet s = TruncationSet::segment(10);
  std::vector<long long> members = s.members();
  REQUIRE(TruncationSet::closure(members) == s);
  for (long long m : members) REQUIRE(TruncationSet::divisors_of(m).subset_of(s));
}

TEST_CASE("u_p_of agrees with enumeration and with factor_length") {
  Prime p2(2);
  REQUIRE(u_p_of(TruncationSet::segment(4), 1, p2) == 3);
  // enumeration fixes the divisor-set example: 3, 6, 12 are all present
  REQUIRE(oracles::u_p_by_enumeration(TruncationSet::divisors_of(12), 3, 2) == 3);
  REQUIRE(u_p_of(TruncationSet::divisors_of(12), 3, p2) == 3);
  REQUIRE(u_p_of(TruncationSet::segment(4), 5, p2) == 0);  // j not in S

  for (long long p : {2LL, 3LL}) {
    Prime pr(p);
    for (long long r = 0; r <= 14; ++r) {
      TruncationSet s = TruncationSet::segment(r);
      for (long long j = 1; j <= r + 2; ++j) {
        if (j % p == 0) continue;
        REQUIRE(u_p_of(s, j, pr) == oracles::u_p_by_enumeration(s, j, p));
        REQUIRE((u_p_of(s, j, pr) != 0) == s.contains(j));
      }
    }
    // u_p(segment(m(i+1)), j) = factor_length(m, i, j)
    for (long long m = 1; m <= 5; ++m)
      for (long long i = 0; i <= 4; ++i)
        for (long long j = 1; j <= m * (i + 1); ++j) {
          if (j % p == 0) continue;
          REQUIRE(u_p_of(TruncationSet::segment(m * (i + 1)), j, pr) ==
                  factor_length(pr, m, i, j));
        }
  }
}

TEST_CASE("textual form") {
  REQUIRE(TruncationSet::divisors_of(12).str() == "{1,2,3,4,6,12}");
  REQUIRE(TruncationSet().str() == "{}");
}
