#include "supercrystal/crystal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace supercrystal;

namespace {

ParityContext gl32_ctx() { return build_context(3, 2, {1, 1, 0, 0, 0}, 3); }
const Weight lambda0{1, -1, 1, 7, 5};

Int mod(Int a, Int p) { return p == 0 ? a : ((a % p) + p) % p; }

// Signature straight from the residues: + where r_i(lambda + eps_i) = r, - where r_i(lambda) = r.
std::string signature_oracle(const ParityContext& ctx, const Weight& w, Int r) {
  std::string s;
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int sign = ctx.parity(i) == 0 ? 1 : -1;
    Int res = sign * (w[i - 1] + ctx.theta(i));
    Int up = sign * (w[i - 1] + 1 + ctx.theta(i));
    if (mod(up, ctx.p()) == mod(r, ctx.p())) {
      s += '+';
    } else if (mod(res, ctx.p()) == mod(r, ctx.p())) {
      s += '-';
    } else {
      s += '0';
    }
  }
  return s;
}

// Repeatedly deletes a - immediately followed (ignoring 0s) by a +.
std::string cancel_oracle(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t last = std::string::npos;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '0') continue;
      if (s[k] == '+' && last != std::string::npos && s[last] == '-') {
        s[k] = s[last] = '0';
        changed = true;
        break;
      }
      last = k;
    }
  }
  return s;
}

// A ↓ B by trying every injection A -> B.
bool downarrow_oracle(const IndexSet& a, const IndexSet& b) {
  if (a.size() > b.size()) return false;
  std::vector<std::size_t> idx(b.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  do {
    bool ok = true;
    for (std::size_t k = 0; k < a.size() && ok; ++k) ok = b[idx[k]] <= a[k];
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

IndexSet subset(unsigned mask, std::size_t n) {
  IndexSet s;
  for (std::size_t k = 0; k < n; ++k) {
    if (mask >> k & 1) s.push_back(k + 1);
  }
  return s;
}

}  // namespace

TEST(Signature, WorkedExample) {
  auto ctx = gl32_ctx();
  EXPECT_EQ(r_signature(ctx, lambda0, 0).str(), "++-++");
  EXPECT_EQ(r_signature(ctx, lambda0, 1).str(), "--+00");
  EXPECT_EQ(r_signature(ctx, lambda0, 2).str(), "000--");
  EXPECT_EQ(reduced_signature(ctx, lambda0, 0).str(), "++00+");
  EXPECT_EQ(reduced_signature(ctx, lambda0, 1).str(), "-0000");
  EXPECT_EQ(reduced_signature(ctx, lambda0, 2).str(), "000--");
  // residues are taken mod p
  EXPECT_EQ(r_signature(ctx, lambda0, 4).str(), "--+00");
  EXPECT_EQ(reduce_signature(Signature{"00000"}).str(), "00000");
}

TEST(Signature, MatchesResidueOracle) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<Int> coeff(-6, 6);
  for (Int p : {0, 2, 3, 5, 7}) {
    for (unsigned mask = 0; mask < 64; ++mask) {
      std::vector<int> par;
      for (int k = 0; k < 6; ++k) par.push_back(mask >> k & 1);
      auto ctx = ParityContext::from_parities(par, p);
      for (int trial = 0; trial < 20; ++trial) {
        Weight w(std::vector<Int>(6));
        for (auto& c : w.coeffs) c = coeff(rng);
        for (Int r = -3; r <= 8; ++r) {
          auto raw = signature_oracle(ctx, w, r);
          ASSERT_EQ(r_signature(ctx, w, r).str(), raw);
          ASSERT_EQ(reduced_signature(ctx, w, r).str(), cancel_oracle(raw));
        }
      }
    }
  }
}

TEST(Signature, ReductionMatchesIterativeCancellationOnAllWords) {
  const std::string alphabet = "+-0";
  for (std::size_t len = 0; len <= 8; ++len) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < len; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::string s;
      for (std::size_t k = 0, c = code; k < len; ++k, c /= 3) s += alphabet[c % 3];
      ASSERT_EQ(reduce_signature(Signature{s}).str(), cancel_oracle(s)) << s;
    }
  }
}

TEST(CrystalOps, WorkedExample) {
  auto ctx = gl32_ctx();
  EXPECT_EQ(f_star(ctx, lambda0, 0), (Weight{1, -1, 1, 7, 6}));
  EXPECT_EQ(e_star(ctx, lambda0, 0), std::nullopt);
  EXPECT_EQ(e_star(ctx, lambda0, 1), (Weight{0, -1, 1, 7, 5}));
  EXPECT_EQ(f_star(ctx, lambda0, 1), std::nullopt);
  EXPECT_EQ(e_star(ctx, lambda0, 2), (Weight{1, -1, 1, 6, 5}));
  EXPECT_EQ(eps_phi_star(ctx, lambda0, 0), (EpsPhi{0, 3}));
  EXPECT_EQ(eps_phi_star(ctx, lambda0, 1), (EpsPhi{1, 0}));
  EXPECT_EQ(eps_phi_star(ctx, lambda0, 2), (EpsPhi{2, 0}));
}

TEST(CrystalOps, TensorOracleAgreesOnWorkedExample) {
  auto ctx = gl32_ctx();
  EXPECT_EQ(tensor_dual_oracle(ctx, lambda0, 1, CrystalOp::E), (Weight{0, -1, 1, 7, 5}));
  EXPECT_EQ(tensor_dual_oracle(ctx, lambda0, 0, CrystalOp::F), (Weight{1, -1, 1, 7, 6}));
  for (Int r = 0; r < 3; ++r) {
    EXPECT_EQ(tensor_dual_oracle(ctx, lambda0, r, CrystalOp::E), e_star(ctx, lambda0, r));
    EXPECT_EQ(tensor_dual_oracle(ctx, lambda0, r, CrystalOp::F), f_star(ctx, lambda0, r));
  }
}

TEST(CrystalOps, OperatorsFollowTheReducedSignature) {
  // e* moves the leftmost surviving - and f* the rightmost surviving +
  std::mt19937 rng(11);
  std::uniform_int_distribution<Int> coeff(-5, 5);
  for (Int p : {0, 2, 3, 5}) {
    for (unsigned mask = 0; mask < 32; ++mask) {
      std::vector<int> par;
      for (int k = 0; k < 5; ++k) par.push_back(mask >> k & 1);
      auto ctx = ParityContext::from_parities(par, p);
      for (int trial = 0; trial < 30; ++trial) {
        Weight w(std::vector<Int>(5));
        for (auto& c : w.coeffs) c = coeff(rng);
        for (Int r = -2; r <= 6; ++r) {
          auto red = cancel_oracle(signature_oracle(ctx, w, r));
          auto minus = red.find('-');
          auto plus = red.rfind('+');
          std::optional<Weight> e, f;
          if (minus != std::string::npos) e = w.plus_unit(minus + 1, -1);
          if (plus != std::string::npos) f = w.plus_unit(plus + 1, 1);
          ASSERT_EQ(e_star(ctx, w, r), e);
          ASSERT_EQ(f_star(ctx, w, r), f);
          auto ep = eps_phi_star(ctx, w, r);
          EXPECT_EQ(ep.eps, std::count(red.begin(), red.end(), '-'));
          EXPECT_EQ(ep.phi, std::count(red.begin(), red.end(), '+'));
        }
      }
    }
  }
}

TEST(Classify, WorkedExample) {
  auto ctx = gl32_ctx();
  EXPECT_EQ(classify_index(ctx, lambda0, 1, 1).kind, IndexKind::Good);
  EXPECT_EQ(classify_index(ctx, lambda0, 4, 2).kind, IndexKind::Good);
  EXPECT_EQ(classify_index(ctx, lambda0, 5, 2).kind, IndexKind::Normal);
  EXPECT_EQ(classify_index(ctx, lambda0, 1, 0).kind, IndexKind::Conormal);
  EXPECT_EQ(classify_index(ctx, lambda0, 2, 0).kind, IndexKind::Conormal);
  EXPECT_EQ(classify_index(ctx, lambda0, 5, 0).kind, IndexKind::Cogood);
  EXPECT_EQ(classify_index(ctx, lambda0, 3, 0).kind, IndexKind::NotClassified);
  EXPECT_EQ(classify_index(ctx, lambda0, 2, 1).kind, IndexKind::NotClassified);
  EXPECT_TRUE(is_good(ctx, lambda0, 1));
  EXPECT_TRUE(is_good(ctx, lambda0, 4));
  EXPECT_TRUE(is_normal(ctx, lambda0, 5));
  EXPECT_FALSE(is_good(ctx, lambda0, 5));
  EXPECT_FALSE(is_normal(ctx, lambda0, 2));
  EXPECT_TRUE(is_cogood(ctx, lambda0, 5));
  EXPECT_TRUE(is_conormal(ctx, lambda0, 1));
  EXPECT_THROW(classify_index(ctx, lambda0, 6, 0), std::out_of_range);
}

TEST(Scalars, CAndB) {
  auto ctx = gl32_ctx();
  // residues (1,4,3,8,5)
  EXPECT_EQ(c_scalar(ctx, lambda0, 1, 2), -3);
  EXPECT_EQ(c_scalar(ctx, lambda0, 3, 5), -2);
  // b_{i,k} = c_{i,k+1}(lambda + eps_{k+1}); moving lambda_{k+1} by one moves r_{k+1} by (-1)^{v_{k+1}}
  for (std::size_t i = 1; i <= 5; ++i) {
    for (std::size_t k = 1; k < 5; ++k) {
      Int shift = ctx.parity(k + 1) == 0 ? 1 : -1;
      Int want = residue_int(ctx, lambda0, i) + (i == k + 1 ? shift : 0) -
                 (residue_int(ctx, lambda0, k + 1) + shift);
      EXPECT_EQ(b_scalar(ctx, lambda0, i, k), want) << i << "," << k;
    }
  }
  EXPECT_THROW(b_scalar(ctx, lambda0, 1, 5), std::out_of_range);
}

TEST(Downarrow, Examples) {
  EXPECT_TRUE(downarrow({2}, {1}));
  EXPECT_FALSE(downarrow({1}, {2}));
  EXPECT_TRUE(downarrow({1, 3, 4}, {1, 3, 4}));
  EXPECT_TRUE(downarrow({}, {}));
  EXPECT_FALSE(downarrow({3}, {}));
}

TEST(Downarrow, MatchesInjectionSearch) {
  const std::size_t n = 7;
  for (unsigned a = 0; a < (1u << n); ++a) {
    for (unsigned b = 0; b < (1u << n); ++b) {
      auto A = subset(a, n), B = subset(b, n);
      bool want = downarrow_oracle(A, B);
      ASSERT_EQ(downarrow(A, B), want);
      ASSERT_EQ(downarrow_matching(A, B), want);
    }
  }
}

TEST(OddReflection, Examples) {
  auto ctx = gl32_ctx();
  auto [c2, w2] = s_i_map(ctx, lambda0, 2);
  EXPECT_EQ(c2.parities(), (std::vector<int>{1, 0, 1, 0, 0}));
  EXPECT_EQ(w2, (Weight{1, 1, -1, 7, 5}));
  EXPECT_THROW(s_i_map(ctx, lambda0, 3), std::invalid_argument);
  EXPECT_THROW(s_i_map(ctx, lambda0, 5), std::out_of_range);

  auto small = build_context(1, 1, {0, 1}, 0);
  auto [c1, w1] = s_i_map(small, Weight{1, 0}, 1);
  EXPECT_EQ(c1.parities(), (std::vector<int>{1, 0}));
  EXPECT_EQ(w1, (Weight{1, 0}));
}

TEST(OddReflection, IsAnInvolution) {
  for (Int p : {0, 2, 3}) {
    auto ctx = build_context(2, 2, {0, 1, 1, 0}, p);
    for (Int a = -3; a <= 3; ++a) {
      for (Int b = -3; b <= 3; ++b) {
        Weight w{a, b, b - a, 1};
        for (std::size_t i : {1, 3}) {
          auto [c1, w1] = s_i_map(ctx, w, i);
          auto [c2, w2] = s_i_map(c1, w1, i);
          EXPECT_EQ(c2.parities(), ctx.parities());
          EXPECT_EQ(w2, w);
        }
      }
    }
  }
}

TEST(CrystalGraph, Examples) {
  auto ctx = gl32_ctx();
  auto g0 = crystal_component(ctx, lambda0, 0);
  EXPECT_EQ(g0.nodes.size(), 1u);
  EXPECT_TRUE(g0.edges.empty());

  auto g1 = crystal_component(ctx, lambda0, 1);
  ASSERT_EQ(g1.nodes.size(), 4u);
  ASSERT_EQ(g1.edges.size(), 3u);
  std::set<std::tuple<Weight, Int, char>> got;
  for (const auto& e : g1.edges) {
    EXPECT_EQ(e.from, 0u);
    got.insert({g1.nodes[e.to], e.r, e.dir});
  }
  std::set<std::tuple<Weight, Int, char>> want = {
      {Weight{0, -1, 1, 7, 5}, 1, 'e'}, {Weight{1, -1, 1, 6, 5}, 2, 'e'}, {Weight{1, -1, 1, 7, 6}, 0, 'f'}};
  EXPECT_EQ(got, want);

  auto line = crystal_component(build_context(1, 0, {0}, 0), Weight{0}, 2);
  std::set<Weight> nodes(line.nodes.begin(), line.nodes.end());
  EXPECT_EQ(nodes, (std::set<Weight>{{-2}, {-1}, {0}, {1}, {2}}));
  EXPECT_EQ(line.edges.size(), 6u);  // two edges out of each of the three inner nodes
}
