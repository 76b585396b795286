#include "supercrystal/affine.hpp"

#include <gtest/gtest.h>

using namespace supercrystal;

namespace {

AffineWeight lam(Int p, std::vector<Int> coeffs, Int delta = 0) {
  AffineWeight x(p);
  for (Int r = 0; r < static_cast<Int>(coeffs.size()); ++r) x.add_lambda(r, coeffs[r]);
  x.add_delta(delta);
  return x;
}

AffineWeight delta(Int p) { return lam(p, std::vector<Int>(p, 0), 1); }
AffineWeight fundamental(Int p, Int r) {
  AffineWeight x(p);
  x.add_lambda(r, 1);
  return x;
}

// The affine Cartan matrix of sl_p (p >= 2) or of gl_infinity (p = 0).
Int cartan(Int p, Int r, Int s) {
  if (p == 0) return r == s ? 2 : (r - s == 1 || s - r == 1 ? -1 : 0);
  r = ((r % p) + p) % p;
  s = ((s % p) + p) % p;
  if (r == s) return 2;
  if (p == 2) return -2;
  return ((r + 1) % p == s || (s + 1) % p == r) ? -1 : 0;
}

}  // namespace

TEST(GammaOf, Examples) {
  const auto& l3 = affine_lattice(3);
  EXPECT_EQ(l3.gamma_of(5), lam(3, {0, -1, 1}, -1));
  EXPECT_EQ(l3.gamma_of(3), lam(3, {1, 0, -1}));
  EXPECT_EQ(l3.gamma_of(1), lam(3, {-1, 1, 0}));
  EXPECT_EQ(l3.gamma_of(0), lam(3, {1, 0, -1}, 1));
  AffineWeight g7(0);
  g7.add_gamma(7, 1);
  EXPECT_EQ(affine_lattice(0).gamma_of(7), g7);
  EXPECT_EQ(affine_lattice(0).gamma_of(7).gamma().size(), 1u);
}

TEST(AlphaOf, Examples) {
  AffineWeight a0(0);
  a0.add_gamma(0, 1);
  a0.add_gamma(1, -1);
  EXPECT_EQ(affine_lattice(0).alpha_of(0), a0);
  EXPECT_EQ(affine_lattice(3).alpha_of(0), lam(3, {2, -1, -1}, 1));
  EXPECT_EQ(affine_lattice(3).alpha_of(3), lam(3, {2, -1, -1}, 1));
  EXPECT_EQ(affine_lattice(2).alpha_of(1), lam(2, {-2, 2}));
}

TEST(GammaOf, ConsecutiveDifferenceIsSimpleRoot) {
  for (Int p : {0, 2, 3, 5, 7}) {
    const auto& lat = affine_lattice(p);
    for (Int a = -40; a <= 40; ++a) {
      auto diff = lat.gamma_of(a);
      auto next = lat.gamma_of(a + 1);
      next *= -1;
      diff += next;
      EXPECT_EQ(diff, lat.alpha_of(a)) << "p=" << p << " a=" << a;
    }
  }
}

TEST(Form, SimpleRootsGiveTheCartanMatrix) {
  for (Int p : {0, 2, 3, 5, 7}) {
    const auto& lat = affine_lattice(p);
    Int lo = p == 0 ? -4 : 0, hi = p == 0 ? 4 : p - 1;
    for (Int r = lo; r <= hi; ++r) {
      for (Int s = lo; s <= hi; ++s) {
        EXPECT_EQ(lat.pair(lat.alpha_of(r), lat.alpha_of(s)), Rational(cartan(p, r, s))) << p << ":" << r << "," << s;
      }
    }
  }
}

TEST(Form, DualBases) {
  // (delta, Lambda_0, ..., Lambda_{p-1}) is dual to (Lambda_0, alpha_0, ..., alpha_{p-1})
  for (Int p : {2, 3, 5, 7}) {
    const auto& lat = affine_lattice(p);
    std::vector<AffineWeight> X{delta(p)}, Y{fundamental(p, 0)};
    for (Int r = 0; r < p; ++r) {
      X.push_back(fundamental(p, r));
      Y.push_back(lat.alpha_of(r));
    }
    for (std::size_t a = 0; a < X.size(); ++a) {
      for (std::size_t b = 0; b < Y.size(); ++b) {
        EXPECT_EQ(lat.pair(X[a], Y[b]), Rational(a == b ? 1 : 0)) << "p=" << p;
        EXPECT_EQ(lat.pair(X[a], Y[b]), lat.pair(Y[b], X[a]));
      }
    }
  }
  const auto& l3 = affine_lattice(3);
  EXPECT_EQ(l3.pair(delta(3), delta(3)), Rational(0));
  EXPECT_EQ(l3.pair(fundamental(3, 0), delta(3)), Rational(1));
}

TEST(Form, GammaBasisAtZero) {
  const auto& l0 = affine_lattice(0);
  for (Int r = -3; r <= 3; ++r) {
    for (Int s = -3; s <= 3; ++s) EXPECT_EQ(l0.pair(l0.gamma_of(r), l0.gamma_of(s)), Rational(r == s ? 1 : 0));
  }
}

TEST(Form, CorootIsTheNormalisedPairing) {
  for (Int p : {0, 2, 3, 5}) {
    const auto& lat = affine_lattice(p);
    for (Int r = 0; r < std::max<Int>(p, 3); ++r) {
      auto a = lat.alpha_of(r);
      for (Int b = -12; b <= 12; ++b) {
        auto g = lat.gamma_of(b);
        Rational want = 2 * lat.pair(a, g) / lat.pair(a, a);
        EXPECT_EQ(Rational(lat.coroot(r, g)), want);
        EXPECT_EQ(lat.coroot_of_gamma(r, b), lat.coroot(r, g));
      }
    }
  }
}

TEST(Form, GammaAgainstMinusSumOfFundamentalWeights) {
  // <gamma_a, K> with K = -sum_r Lambda_r grows by exactly one per step in a,
  // with the constant offset -(p+1)/2 under this form
  for (Int p : {2, 3, 5, 7}) {
    const auto& lat = affine_lattice(p);
    AffineWeight K(p);
    for (Int r = 0; r < p; ++r) K.add_lambda(r, -1);
    for (Int a = -50; a <= 50; ++a) {
      EXPECT_EQ(lat.pair(lat.gamma_of(a), K), Rational(a) - Rational(p + 1) / 2) << "p=" << p << " a=" << a;
    }
  }
}

TEST(WtOf, Examples) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};
  std::vector<Int> shifted{1, 4, 4, 9, 6};
  for (std::size_t i = 1; i <= 5; ++i) EXPECT_EQ(rho_shifted(ctx, lambda, i), shifted[i - 1]);
  EXPECT_EQ(wt_of(ctx, lambda), lam(3, {3, -1, -2}, -3));

  auto ctx0 = build_context(3, 2, {1, 1, 0, 0, 0}, 0);
  AffineWeight want0(0);
  want0.add_gamma(1, -1);
  want0.add_gamma(6, 1);
  want0.add_gamma(9, 1);
  EXPECT_EQ(wt_of(ctx0, lambda), want0);

  AffineWeight g1(0);
  g1.add_gamma(1, 1);
  EXPECT_EQ(wt_of(build_context(1, 0, {0}, 0), Weight{0}), g1);
}

TEST(AbCounts, Examples) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};
  std::vector<AbCounts> want{{4, 1}, {1, 2}, {0, 2}};
  Int sa = 0, sb = 0;
  for (Int r = 0; r < 3; ++r) {
    auto got = ab_counts(ctx, lambda, r);
    EXPECT_EQ(got, want[r]) << r;
    sa += got.a;
    sb += got.b;
  }
  EXPECT_EQ(sa, 5);
  EXPECT_EQ(sb, 5);
  auto one = build_context(1, 0, {0}, 0);
  EXPECT_EQ(ab_counts(one, Weight{4}, 5), (AbCounts{1, 0}));
  EXPECT_EQ(ab_counts(one, Weight{4}, 4), (AbCounts{0, 1}));
  EXPECT_EQ(ab_counts(one, Weight{4}, 3), (AbCounts{0, 0}));
}

TEST(WtOf, SimpleRootPairingIsAMinusB) {
  for (Int p : {0, 2, 3, 5}) {
    auto ctx = build_context(2, 2, {0, 1, 1, 0}, p);
    const auto& lat = affine_lattice(p);
    for (Int a = -3; a <= 3; ++a) {
      for (Int b = -3; b <= 3; ++b) {
        Weight w{a, b, a + b, a - b};
        auto x = wt_of(ctx, w);
        for (Int r = -4; r <= 6; ++r) {
          auto ab = ab_counts(ctx, w, r);
          EXPECT_EQ(lat.coroot(r, x), ab.a - ab.b);
        }
      }
    }
  }
}
