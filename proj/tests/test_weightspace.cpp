#include "supercrystal/weightspace.hpp"

#include <gtest/gtest.h>

using namespace supercrystal;

namespace {

// theta_j = sum_{i>j} (-1)^{v_i + v_j}, straight from the definition
std::vector<Int> theta_oracle(const std::vector<int>& par) {
  std::vector<Int> out(par.size(), 0);
  for (std::size_t j = 0; j < par.size(); ++j) {
    for (std::size_t i = j + 1; i < par.size(); ++i) out[j] += (par[i] + par[j]) % 2 == 0 ? 1 : -1;
  }
  return out;
}

std::vector<std::vector<int>> all_parities(std::size_t N) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    std::vector<int> par(N);
    for (std::size_t k = 0; k < N; ++k) par[k] = (mask >> k) & 1;
    out.push_back(par);
  }
  return out;
}

}  // namespace

TEST(ParityContext, GL32ThetaRho) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  EXPECT_EQ(ctx.theta(), (std::vector<Int>{-2, -3, 2, 1, 0}));
  EXPECT_EQ(ctx.rho(), (std::vector<Int>{-2, -3, 3, 2, 1}));
}

TEST(ParityContext, AllEvenAndMixedExamples) {
  auto even = build_context(2, 0, {0, 0}, 0);
  EXPECT_EQ(even.theta(), (std::vector<Int>{1, 0}));
  EXPECT_EQ(even.rho(), (std::vector<Int>{2, 1}));
  auto mixed = build_context(1, 1, {0, 1}, 2);
  EXPECT_EQ(mixed.theta(), (std::vector<Int>{-1, 0}));
  EXPECT_EQ(mixed.rho(), (std::vector<Int>{0, 0}));
}

TEST(ParityContext, ThetaMatchesDefinitionEverywhere) {
  for (std::size_t N = 1; N <= 6; ++N) {
    for (const auto& par : all_parities(N)) {
      auto ctx = ParityContext::from_parities(par, 0);
      auto want = theta_oracle(par);
      EXPECT_EQ(ctx.theta(), want);
      for (std::size_t j = 1; j <= N; ++j) EXPECT_EQ(ctx.rho(j), want[j - 1] + (par[j - 1] == 0 ? 1 : 0));
    }
  }
}

TEST(ParityContext, RejectsBadInput) {
  EXPECT_THROW(build_context(2, 2, {1, 1, 0, 0, 0}, 3), std::invalid_argument);
  EXPECT_THROW(build_context(3, 2, {1, 1, 0, 0, 0}, 4), std::invalid_argument);
  EXPECT_THROW(build_context(3, 2, {1, 1, 0, 0, 0}, -3), std::invalid_argument);
  EXPECT_THROW(build_context(1, 0, {2}, 0), std::invalid_argument);
  EXPECT_THROW(build_context(0, 0, {}, 0), std::invalid_argument);
  EXPECT_NO_THROW(build_context(0, 1, {1}, 5));
}

TEST(Weight, FormPair) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  auto e = [](std::size_t j) { return Weight::unit(5, j); };
  EXPECT_EQ(form_pair(ctx, e(1), e(1)), -1);
  EXPECT_EQ(form_pair(ctx, e(3), e(3)), 1);
  EXPECT_EQ(form_pair(ctx, e(1), e(2)), 0);
  Weight ones{1, 1, 1, 1, 1};
  EXPECT_EQ(form_pair(ctx, ones, ones), 1);
}

TEST(Weight, Dominance) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};
  Weight root{1, -1, 0, 0, 0};
  EXPECT_TRUE(dominance_leq(ctx, lambda, lambda));
  EXPECT_TRUE(dominance_leq(ctx, lambda, lambda + root));
  EXPECT_FALSE(dominance_leq(ctx, lambda, lambda - root));
  EXPECT_FALSE(dominance_leq(ctx, lambda, lambda + Weight::unit(5, 1)));
}

TEST(Weight, Length) {
  EXPECT_EQ(length(Weight{1, -1, 1, 7, 5}), 13);
  EXPECT_EQ(length(Weight{0, 0, 0}), 0);
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(length(Weight::unit(4, j)), 1);
}

TEST(Weight, ResiduesOfWorkedExample) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};
  std::vector<Int> want{1, 4, 3, 8, 5};  // (-1)^{v_j}(lambda_j + theta_j)
  for (std::size_t j = 1; j <= 5; ++j) EXPECT_EQ(residue_int(ctx, lambda, j), want[j - 1]);
}

TEST(FlipMap, WorkedExample) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  auto [fctx, fw] = flip_map(ctx, Weight{1, -1, 1, 7, 5});
  EXPECT_EQ(fctx.parities(), (std::vector<int>{1, 1, 1, 0, 0}));
  EXPECT_EQ(fctx.m(), 2);
  EXPECT_EQ(fctx.n(), 3);
  EXPECT_EQ(fw, (Weight{-5, -7, -1, 1, -1}));
  EXPECT_EQ(flip_map(ctx, Weight{0, 0, 0, 0, 0}).second, (Weight{0, 0, 0, 0, 0}));
}

TEST(FlipMap, IsAnInvolution) {
  for (std::size_t N = 1; N <= 4; ++N) {
    for (const auto& par : all_parities(N)) {
      auto ctx = ParityContext::from_parities(par, 5);
      Weight w(std::vector<Int>(N, 0));
      for (std::size_t k = 0; k < N; ++k) w[k] = static_cast<Int>(3 * k) - 4;
      auto [c1, w1] = flip_map(ctx, w);
      auto [c2, w2] = flip_map(c1, w1);
      EXPECT_EQ(c2.parities(), par);
      EXPECT_EQ(w2, w);
    }
  }
}
