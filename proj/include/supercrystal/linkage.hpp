// Central-character combinatorics: the integers Z_r(lambda), the series
// G_lambda(t) in t^{-1}, the A_r - B_r data and block partitions by wt.
#pragma once

#include "supercrystal/affine.hpp"

#include <functional>
#include <map>
#include <vector>

namespace supercrystal {

/// Calls fn(ks) for every strictly increasing 1-based tuple of length s from {1..n}.
inline void for_each_increasing(std::size_t n, std::size_t s, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (s > n) return;
  std::vector<std::size_t> ks(s);
  for (std::size_t t = 0; t < s; ++t) ks[t] = t + 1;
  while (true) {
    fn(ks);
    std::size_t t = s;
    while (t > 0 && ks[t - 1] == n - (s - t)) --t;
    if (t == 0) return;
    ++ks[t - 1];
    for (std::size_t u = t; u < s; ++u) ks[u] = ks[u - 1] + 1;
  }
}

/// Calls fn(a) for every weak composition a of total into s parts.
inline void for_each_weak_composition(Int total, std::size_t s, const std::function<void(const std::vector<Int>&)>& fn) {
  std::vector<Int> a(s, 0);
  std::function<void(std::size_t, Int)> rec = [&](std::size_t pos, Int left) {
    if (pos + 1 == s) {
      a[pos] = left;
      fn(a);
      return;
    }
    for (Int x = 0; x <= left; ++x) {
      a[pos] = x;
      rec(pos + 1, left - x);
    }
  };
  if (s == 0) return;
  rec(0, total);
}

/// Z_r(lambda) = sum_s (-1)^{s-1} sum_{k, a} (-1)^{v_k1+...+v_ks} r_k1^a1 ... r_ks^as,
/// k_1 < ... < k_s, a_1 + ... + a_s = r - s + 1, all a_t >= 0.  T is the
/// accumulator type; Int is safe for the desk-scale sweeps.
template <class T>
T z_scalar_as(const ParityContext& ctx, const Weight& w, Int r) {
  ctx.require_weight(w);
  if (r < 1) throw std::invalid_argument("Z_r needs r >= 1");
  const std::size_t N = ctx.rank();
  std::vector<T> res(N + 1);
  for (std::size_t k = 1; k <= N; ++k) res[k] = residue_int(ctx, w, k);
  T total = 0;
  for (std::size_t s = 1; s <= static_cast<std::size_t>(r) && s <= N; ++s) {
    T outer = 0;
    for_each_increasing(N, s, [&](const std::vector<std::size_t>& ks) {
      Int sign = 1;
      for (auto k : ks) sign *= ctx.sign(k);
      for_each_weak_composition(r - static_cast<Int>(s) + 1, s, [&](const std::vector<Int>& a) {
        T term = sign;
        for (std::size_t t = 0; t < s; ++t) {
          for (Int e = 0; e < a[t]; ++e) term *= res[ks[t]];
        }
        outer += term;
      });
    });
    if (s % 2 == 1) {
      total += outer;
    } else {
      total -= outer;
    }
  }
  return total;
}

inline BigInt z_scalar(const ParityContext& ctx, const Weight& w, Int r) { return z_scalar_as<BigInt>(ctx, w, r); }

/// The scalar separating Z_r from the Sergeev element Z~_r, so that Z_r acts
/// on a highest-weight vector of weight lambda by z_scalar(lambda):
///   Z_r = Z~_r - (-1)^r sum_{k_1<...<k_r} (-1)^{v_k1+...+v_k(r-1)} theta_{k_r}.
/// The sign runs over the first r-1 indices only; including v_{k_r} as well
/// breaks r = 1 whenever an odd index has theta != 0 (see z_shift_all_indices).
inline BigInt z_shift(const ParityContext& ctx, Int r) {
  if (r < 1) throw std::invalid_argument("Z_r needs r >= 1");
  BigInt sum = 0;
  for_each_increasing(ctx.rank(), static_cast<std::size_t>(r), [&](const std::vector<std::size_t>& ks) {
    Int sign = 1;
    for (std::size_t t = 0; t + 1 < ks.size(); ++t) sign *= ctx.sign(ks[t]);
    sum += sign * ctx.theta(ks.back());
  });
  return r % 2 == 0 ? sum : BigInt(-sum);
}

/// The same shift with the sign taken over all r indices.  Kept so the
/// discrepancy can be demonstrated against the Verma action.
inline BigInt z_shift_all_indices(const ParityContext& ctx, Int r) {
  if (r < 1) throw std::invalid_argument("Z_r needs r >= 1");
  BigInt sum = 0;
  for_each_increasing(ctx.rank(), static_cast<std::size_t>(r), [&](const std::vector<std::size_t>& ks) {
    Int sign = 1;
    for (auto k : ks) sign *= ctx.sign(k);
    sum += sign * ctx.theta(ks.back());
  });
  return r % 2 == 0 ? sum : BigInt(-sum);
}

/// Power series 1 + c_1 u + ... + c_N u^N in u = t^{-1}, exact, truncated at order N.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, 0) { c_[0] = 1; }
  TruncatedSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series needs a constant term");
  }

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c_.at(k); }
  const std::vector<Rational>& coeffs() const { return c_; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<Rational> out(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncatedSeries(std::move(out));
  }

  TruncatedSeries inverse() const {
    if (c_[0] == 0) throw std::domain_error("series is not a unit");
    std::vector<Rational> out(c_.size(), 0);
    out[0] = 1 / c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      Rational s = 0;
      for (std::size_t j = 1; j <= k; ++j) s += c_[j] * out[k - j];
      out[k] = -s / c_[0];
    }
    return TruncatedSeries(std::move(out));
  }

  /// Coefficientwise congruence mod p (equality when p == 0).
  bool congruent_to(const TruncatedSeries& o, Int p) const {
    if (o.order() != order()) throw std::invalid_argument("series orders differ");
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (p == 0) {
        if (c_[k] != o.c_[k]) return false;
      } else if (mod_canon(Rational(c_[k] - o.c_[k]), p) != 0) {
        return false;
      }
    }
    return true;
  }

  /// Coefficients reduced mod p; a hashable fingerprint for partitioning.
  std::vector<Int> reduced(Int p) const {
    std::vector<Int> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(mod_canon(x, p));
    return out;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Rational> c_;
};

inline std::size_t default_series_order(const ParityContext& ctx) { return 2 * ctx.rank() + 2; }

/// prod_i (t - r_i(lambda + eps_i)) / (t - r_i(lambda)), expanded in t^{-1} over Q.
inline TruncatedSeries g_series(const ParityContext& ctx, const Weight& w, std::size_t order) {
  ctx.require_weight(w);
  if (order < 1) throw std::invalid_argument("series order must be at least 1");
  TruncatedSeries acc(order);
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int b = residue_int(ctx, w, i);
    Int a = b + ctx.sign(i);
    std::vector<Rational> num(order + 1, 0), den(order + 1, 0);
    num[0] = 1;
    num[1] = -a;
    den[0] = 1;
    den[1] = -b;
    acc = acc * TruncatedSeries(std::move(num)) * TruncatedSeries(std::move(den)).inverse();
  }
  return acc;
}

/// The coefficients of g_series as integers, reduced mod p when p > 0.  Each
/// factor 1/(1 - b u) is applied as the recurrence y_k = x_k + b y_{k-1}, so no
/// rationals are involved.  For p == 0 throws std::overflow_error rather than
/// wrapping.
inline std::vector<Int> g_series_reduced(const ParityContext& ctx, const Weight& w, std::size_t order) {
  ctx.require_weight(w);
  const Int p = ctx.p();
  auto mul = [p](Int a, Int b) {
    if (p > 0) return mod_canon(static_cast<Int>((static_cast<__int128>(a) * b) % p), p);
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("g series coefficient overflows int64");
    return out;
  };
  auto add = [p](Int a, Int b) {
    if (p > 0) return mod_canon(a + b, p);
    Int out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("g series coefficient overflows int64");
    return out;
  };
  std::vector<Int> acc(order + 1, 0);
  acc[0] = 1;
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int b = mod_canon(residue_int(ctx, w, i), p);
    Int a = mod_canon(residue_int(ctx, w, i) + ctx.sign(i), p);
    for (std::size_t k = order; k >= 1; --k) acc[k] = add(acc[k], mul(-a, acc[k - 1]));
    for (std::size_t k = 1; k <= order; ++k) acc[k] = add(acc[k], mul(b, acc[k - 1]));
  }
  return acc;
}

/// 1 - sum_{r >= 1} Z_r(lambda) t^{-(r+1)}, truncated at order N.  Note this has
/// no t^{-1} term, unlike g_series whose t^{-1} coefficient is n - m; see
/// g_normalization for the exact difference.
inline TruncatedSeries g_from_z(const ParityContext& ctx, const Weight& w, std::size_t order) {
  std::vector<Rational> c(order + 1, 0);
  c[0] = 1;
  for (std::size_t k = 2; k <= order; ++k) c[k] = Rational(-z_scalar(ctx, w, static_cast<Int>(k) - 1));
  return TruncatedSeries(std::move(c));
}

/// g_series - g_from_z, which does not depend on lambda: the t^{-k}
/// coefficient is (-1)^k e_k((-1)^{v_1}, ..., (-1)^{v_{m+n}}), i.e. exactly the
/// s = r + 1 terms (all a_t = 0) that the sum defining Z_r leaves out.
inline std::vector<Rational> g_normalization(const ParityContext& ctx, std::size_t order) {
  // elementary symmetric polynomials of the signs
  std::vector<Rational> e(ctx.rank() + 1, 0);
  e[0] = 1;
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    for (std::size_t k = i; k >= 1; --k) e[k] += e[k - 1] * ctx.sign(i);
  }
  std::vector<Rational> out(order + 1, 0);
  for (std::size_t k = 1; k <= order && k <= ctx.rank(); ++k) out[k] = k % 2 == 0 ? e[k] : Rational(-e[k]);
  return out;
}

/// (l(lambda), A_r - B_r for every r), zero differences omitted.
struct LinkageData {
  Int length = 0;
  std::map<Int, Int> ab_difference;
  friend bool operator==(const LinkageData&, const LinkageData&) = default;
  friend auto operator<=>(const LinkageData&, const LinkageData&) = default;
};

inline LinkageData linkage_data(const ParityContext& ctx, const Weight& w) {
  ctx.require_weight(w);
  LinkageData d;
  d.length = length(w);
  const Int p = ctx.p();
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int res = residue_int(ctx, w, i);
    d.ab_difference[mod_canon(res + ctx.sign(i), p)] += 1;
    d.ab_difference[mod_canon(res, p)] -= 1;
  }
  for (auto it = d.ab_difference.begin(); it != d.ab_difference.end();) {
    it = it->second == 0 ? d.ab_difference.erase(it) : std::next(it);
  }
  return d;
}

inline bool same_block(const ParityContext& ctx, const Weight& a, const Weight& b) {
  return wt_of(ctx, a) == wt_of(ctx, b);
}

struct Block {
  AffineWeight wt;
  std::vector<Weight> weights;
};

/// Groups weights by wt, dropping duplicates; blocks and their members are
/// listed in order of first occurrence.
inline std::vector<Block> partition_blocks(const ParityContext& ctx, const std::vector<Weight>& weights) {
  std::vector<Block> blocks;
  std::map<AffineWeight, std::size_t> index;
  std::map<Weight, bool> seen;
  for (const auto& w : weights) {
    if (!seen.emplace(w, true).second) continue;
    AffineWeight key = wt_of(ctx, w);
    auto [it, inserted] = index.emplace(key, blocks.size());
    if (inserted) blocks.push_back({key, {}});
    blocks[it->second].weights.push_back(w);
  }
  return blocks;
}

}  // namespace supercrystal
