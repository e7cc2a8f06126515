#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace wittkit;
using oracles::make_rng;
using oracles::random_witt_fp;
using oracles::random_witt_z;

namespace {
WittVectorZ vec(const TruncationSet& S, std::vector<Int> vals) {
  std::map<long long, Int> c;
  std::size_t k = 0;
  for (long long s : S.members()) c[s] = vals.at(k++);
  return WittVectorZ(S, std::move(c));
}
}  // namespace

TEST_CASE("ghost map on fixed vectors") {
  TruncationSet S = TruncationSet::segment(2);
  REQUIRE(ghost_of(vec(S, {2, 0})).ghost == std::map<long long, Int>{{1, 2}, {2, 4}});
  REQUIRE(ghost_of(WittVectorZ::zero(S)).ghost == std::map<long long, Int>{{1, 0}, {2, 0}});
  REQUIRE(ghost_of(vec(S, {0, 1})).ghost == std::map<long long, Int>{{1, 0}, {2, 2}});
}

TEST_CASE("unghost") {
  TruncationSet S = TruncationSet::segment(2);
  REQUIRE(unghost(GhostVector{S, {{1, 2}, {2, 2}}}) == vec(S, {2, -1}));
  REQUIRE(unghost(GhostVector{S, {{1, 0}, {2, 0}}}) == WittVectorZ::zero(S));
  // parity obstruction: a_2 = (0 - 1)/2
  REQUIRE_THROWS_AS(unghost(GhostVector{S, {{1, 1}, {2, 0}}}), NonIntegralGhost);
}

TEST_CASE("ring operations through the ghost map") {
  TruncationSet S = TruncationSet::segment(2);
  WittVectorZ one = WittVectorZ::one(S);
  REQUIRE(add(one, one) == vec(S, {2, -1}));
  REQUIRE(mul(vec(S, {0, 1}), vec(S, {0, 1})) == vec(S, {0, 2}));

  auto rng = make_rng(2024);
  TruncationSet S12 = TruncationSet::segment(12);
  for (int iter = 0; iter < 50; ++iter) {
    auto x = random_witt_z(rng, S12), y = random_witt_z(rng, S12), z = random_witt_z(rng, S12);
    // ghost is a ring homomorphism
    auto gs = ghost_of(add(x, y)).ghost;
    auto gp = ghost_of(mul(x, y)).ghost;
    for (long long s : S12.members()) {
      REQUIRE(gs.at(s) == ghost_of(x).ghost.at(s) + ghost_of(y).ghost.at(s));
      REQUIRE(gp.at(s) == ghost_of(x).ghost.at(s) * ghost_of(y).ghost.at(s));
    }
    REQUIRE(unghost(ghost_of(x)) == x);  // injectivity via the section
    REQUIRE(mul(x, WittVectorZ::one(S12)) == x);
    REQUIRE(add(x, WittVectorZ::zero(S12)) == x);
    REQUIRE(add(x, y) == add(y, x));
    REQUIRE(mul(mul(x, y), z) == mul(x, mul(y, z)));
    REQUIRE(mul(x, add(y, z)) == add(mul(x, y), mul(x, z)));
  }
  REQUIRE_THROWS_AS(add(one, WittVectorZ::one(TruncationSet::segment(3))),
                    std::invalid_argument);
}

TEST_CASE("frobenius and verschiebung on fixed vectors") {
  TruncationSet S = TruncationSet::segment(2);
  REQUIRE(frobenius(vec(S, {1, 1}), 1) == vec(S, {1, 1}));
  // F_2 of (1,1): ghost w_2 = 1 + 2 = 3
  REQUIRE(frobenius(vec(S, {1, 1}), 2) ==
          vec(TruncationSet::segment(1), {3}));
  REQUIRE(frobenius(WittVectorZ::zero(S), 2) == WittVectorZ::zero(TruncationSet::segment(1)));

  WittVectorZ unit1 = WittVectorZ::one(TruncationSet::segment(1));
  REQUIRE(verschiebung(unit1, 2, S) == vec(S, {0, 1}));
  REQUIRE(verschiebung(WittVectorZ::zero(TruncationSet::segment(1)), 2, S) ==
          WittVectorZ::zero(S));
  REQUIRE(verschiebung(vec(S, {5, -3}), 1, S) == vec(S, {5, -3}));
}

TEST_CASE("operator identities on random vectors") {
  auto rng = make_rng(7);
  for (long long r : {6LL, 12LL}) {
    TruncationSet S = TruncationSet::segment(r);
    for (int iter = 0; iter < 30; ++iter) {
      auto x = random_witt_z(rng, S);
      for (long long a = 1; a <= 3; ++a)
        for (long long b = 1; b <= 3; ++b)
          REQUIRE(frobenius(frobenius(x, a), b) == frobenius(x, a * b));
      for (long long s = 1; s <= 4; ++s) {
        auto y = random_witt_z(rng, S.quotient(s));
        // F_s V_s = multiplication by s
        auto lhs = frobenius(verschiebung(y, s, S), s);
        auto acc = WittVectorZ::zero(S.quotient(s));
        for (long long k = 0; k < s; ++k) acc = add(acc, y);
        REQUIRE(lhs == acc);
        // V_a V_b = V_{ab}
        for (long long b = 1; s * b <= 4; ++b) {
          auto z = random_witt_z(rng, S.quotient(s * b));
          REQUIRE(verschiebung(verschiebung(z, b, S.quotient(s)), s, S) ==
                  verschiebung(z, s * b, S));
        }
        // restriction commutes with F_s and V_s
        for (long long t = 1; t <= r; ++t) {
          TruncationSet T = TruncationSet::segment(t);
          REQUIRE(restrict_to(frobenius(x, s), T.quotient(s)) ==
                  frobenius(restrict_to(x, T), s));
          REQUIRE(restrict_to(verschiebung(y, s, S), T) ==
                  verschiebung(restrict_to(y, T.quotient(s)), s, T));
        }
      }
    }
  }
}

TEST_CASE("power-series oracle for addition and verschiebung") {
  auto rng = make_rng(616);
  for (long long r : {1LL, 5LL, 8LL, 12LL}) {
    TruncationSet S = TruncationSet::segment(r);
    for (int iter = 0; iter < 25; ++iter) {
      auto x = random_witt_z(rng, S), y = random_witt_z(rng, S);
      // series round trip pins the encoding itself
      REQUIRE(oracles::witt_of_series(oracles::series_of_witt(x), S) == x);
      // Witt addition is series multiplication
      REQUIRE(oracles::series_of_witt(add(x, y)) ==
              oracles::series_mul(oracles::series_of_witt(x), oracles::series_of_witt(y)));
      // V_s substitutes t -> t^s
      for (long long s = 2; s <= 4; ++s) {
        auto z = random_witt_z(rng, S.quotient(s));
        oracles::Series fz = oracles::series_of_witt(z);
        oracles::Series expect(static_cast<std::size_t>(r) + 1, Int(0));
        for (std::size_t k = 0; k * s < expect.size(); ++k) expect[k * (std::size_t)s] = fz[k];
        REQUIRE(oracles::series_of_witt(verschiebung(z, s, S)) == expect);
      }
    }
  }
}

TEST_CASE("restriction") {
  TruncationSet S = TruncationSet::segment(2);
  WittVectorZ x = vec(S, {2, -1});
  REQUIRE(restrict_to(x, S) == x);
  REQUIRE(restrict_to(x, TruncationSet::segment(1)) ==
          vec(TruncationSet::segment(1), {2}));
  REQUIRE(restrict_to(x, TruncationSet()) == WittVectorZ::zero(TruncationSet()));
  REQUIRE_THROWS_AS(restrict_to(x, TruncationSet::segment(3)), std::invalid_argument);
}

TEST_CASE("mod p coordinate model") {
  Prime p2(2);
  TruncationSet S = TruncationSet::segment(2);
  auto one = WittVectorFp::one(p2, S);
  auto two = add(one, one);
  REQUIRE(two.coord(1) == 0);
  REQUIRE(two.coord(2) == 1);
  REQUIRE(mul(two, one) == two);
  // F_s V_s = s, and s = 2 = 0 in W_{{1}}(F_2)
  auto unit1 = WittVectorFp::one(p2, TruncationSet::segment(1));
  REQUIRE(frobenius(verschiebung(unit1, 2, S), 2) ==
          WittVectorFp::zero(p2, TruncationSet::segment(1)));
}

TEST_CASE("cyclic model of the p-typical ring") {
  Prime p2(2);
  // 2*1 in W_2(F_2) has coordinates (0,1) and value 2 mod 4
  auto two = add(WittVectorFp::one(p2, p_typical_set(p2, 2)),
                 WittVectorFp::one(p2, p_typical_set(p2, 2)));
  REQUIRE(p_typical_value(two) == 2);
  // only p-typical index sets are accepted
  REQUIRE_THROWS_AS(p_typical_value(WittVectorFp::one(p2, TruncationSet::segment(3))),
                    std::invalid_argument);
  REQUIRE(p_typical_value(WittVectorFp::zero(p2, p_typical_set(p2, 3))) == 0);
  REQUIRE(p_typical_value(WittVectorFp::one(Prime(3), p_typical_set(Prime(3), 1))) == 1);

  // value map is a ring isomorphism onto Z/p^u; V is multiplication by p,
  // F and R are reduction
  auto rng = make_rng(99);
  for (long long p : {2LL, 3LL}) {
    Prime pr(p);
    for (int u = 1; u <= 6; ++u) {
      TruncationSet S = p_typical_set(pr, u);
      const Int modulus = ipow(p, u);
      for (int iter = 0; iter < 25; ++iter) {
        auto x = random_witt_fp(rng, pr, S), y = random_witt_fp(rng, pr, S);
        REQUIRE(p_typical_value(add(x, y)) ==
                imod(p_typical_value(x) + p_typical_value(y), modulus));
        REQUIRE(p_typical_value(mul(x, y)) ==
                imod(p_typical_value(x) * p_typical_value(y), modulus));
        REQUIRE(p_typical_from_value(p_typical_value(x), u, pr) == x);
        if (u >= 2) {
          TruncationSet T = p_typical_set(pr, u - 1);
          REQUIRE(p_typical_value(restrict_to(x, T)) ==
                  imod(p_typical_value(x), ipow(p, u - 1)));
          REQUIRE(p_typical_value(frobenius(x, p)) ==
                  imod(p_typical_value(x), ipow(p, u - 1)));
          auto z = random_witt_fp(rng, pr, T);
          REQUIRE(p_typical_value(verschiebung(z, p, S)) ==
                  imod(Int(p) * p_typical_value(z), modulus));
        }
      }
    }
  }
}

TEST_CASE("eta on fixed vectors") {
  Prime p3(3);
  TruncationSet S = TruncationSet::segment(2);
  auto one = WittVectorFp::one(p3, S);
  auto d1 = eta_decompose(one);
  REQUIRE(d1.value(1) == 1);
  REQUIRE(d1.value(2) == 1);
  auto d0 = eta_decompose(WittVectorFp::zero(p3, S));
  REQUIRE(d0.value(1) == 0);
  REQUIRE(d0.value(2) == 0);
  // V_2(1): the factor at j=2 receives 2*1, the factor at j=1 nothing
  auto v = verschiebung(WittVectorFp::one(p3, TruncationSet::segment(1)), 2, S);
  auto dv = eta_decompose(v);
  REQUIRE(dv.value(1) == 0);
  REQUIRE(dv.value(2) == 2);
}

TEST_CASE("eta is invertible") {
  auto rng = make_rng(4242);
  for (long long p : {2LL, 3LL}) {
    Prime pr(p);
    for (long long r : {1LL, 4LL, 6LL, 12LL}) {
      TruncationSet S = TruncationSet::segment(r);
      for (int iter = 0; iter < 25; ++iter) {
        auto x = random_witt_fp(rng, pr, S);
        REQUIRE(eta_recompose(eta_decompose(x)) == x);
      }
      REQUIRE(eta_recompose(eta_decompose(WittVectorFp::zero(pr, S))) ==
              WittVectorFp::zero(pr, S));
    }
  }
}

TEST_CASE("decomposition rules commute with eta") {
  auto rng = make_rng(31337);
  for (long long p : {2LL, 3LL}) {
    Prime pr(p);
    for (long long r : {4LL, 6LL, 12LL}) {
      TruncationSet S = TruncationSet::segment(r);
      for (int iter = 0; iter < 20; ++iter) {
        auto x = random_witt_fp(rng, pr, S), y = random_witt_fp(rng, pr, S);
        auto dx = eta_decompose(x), dy = eta_decompose(y);
        REQUIRE(eta_decompose(add(x, y)) == decomposed_add(dx, dy));
        REQUIRE(eta_decompose(mul(x, y)) == decomposed_mul(dx, dy));
        for (long long s = 1; s <= r; ++s) {
          REQUIRE(eta_decompose(frobenius(x, s)) == decomposed_frobenius(dx, s));
          auto z = random_witt_fp(rng, pr, S.quotient(s));
          REQUIRE(eta_decompose(verschiebung(z, s, S)) ==
                  decomposed_verschiebung(eta_decompose(z), s, S));
        }
        for (long long t = 0; t <= r; ++t) {
          TruncationSet T = TruncationSet::segment(t);
          REQUIRE(eta_decompose(restrict_to(x, T)) == decomposed_restrict(dx, T));
        }
      }
    }
  }
}

TEST_CASE("decomposition rejects inconsistent moduli") {
  Prime p2(2);
  TruncationSet S = TruncationSet::segment(2);
  // u_2({1,2}, 1) = 2, so level 1 at j=1 is inconsistent
  std::map<long long, std::pair<int, Int>> comps{{1, {1, Int(1)}}};
  REQUIRE_THROWS_AS(PTypicalDecomp(p2, S, comps), std::invalid_argument);
}
