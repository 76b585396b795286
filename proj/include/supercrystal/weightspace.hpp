// The weight lattice X(T) of GL(m|n): parity context, bilinear form,
// residues, dominance order and the parity-flip map.
#pragma once

#include "supercrystal/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace supercrystal {

using Int = std::int64_t;

/// An element of X(T), stored by its coefficients on eps_1 .. eps_{m+n}.
struct Weight {
  std::vector<Int> coeffs;

  Weight() = default;
  explicit Weight(std::vector<Int> c) : coeffs(std::move(c)) {}
  Weight(std::initializer_list<Int> c) : coeffs(c) {}

  std::size_t rank() const { return coeffs.size(); }
  Int operator[](std::size_t i) const { return coeffs[i]; }
  Int& operator[](std::size_t i) { return coeffs[i]; }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  /// eps_j for a 1-based index j.
  static Weight unit(std::size_t rank, std::size_t j) {
    Weight w(std::vector<Int>(rank, 0));
    w.coeffs.at(j - 1) = 1;
    return w;
  }

  Weight plus_unit(std::size_t j, Int times = 1) const {
    Weight w = *this;
    w.coeffs.at(j - 1) += times;
    return w;
  }
};

inline Weight operator+(Weight a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < a.rank(); ++i) a[i] += b[i];
  return a;
}

inline Weight operator-(Weight a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < a.rank(); ++i) a[i] -= b[i];
  return a;
}

/// A residue r_j(lambda); reduced to [0, p) when p > 0, a plain integer when p == 0.
class ResidueClass {
 public:
  ResidueClass(Int value, Int p) : value_(mod_canon(value, p)), p_(p) {}

  Int value() const { return value_; }
  Int modulus() const { return p_; }

  ResidueClass operator+(Int k) const { return {value_ + k, p_}; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  Int value_;
  Int p_;
};

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// The data every other computation is relative to: a parity sequence of
/// m even and n odd basis vectors and the characteristic p (0 or prime).
/// Immutable after construction.
class ParityContext {
 public:
  /// Builds a context from the parity sequence alone; m and n are counted.
  static ParityContext from_parities(std::vector<int> parities, Int p) {
    Int odd = std::count(parities.begin(), parities.end(), 1);
    Int even = static_cast<Int>(parities.size()) - odd;
    return build(even, odd, std::move(parities), p);
  }

  static ParityContext build(Int m, Int n, std::vector<int> parities, Int p) {
    if (m < 0 || n < 0) throw std::invalid_argument("m and n must be nonnegative");
    if (m + n == 0) throw std::invalid_argument("m + n must be positive");
    for (int v : parities) {
      if (v != 0 && v != 1) throw std::invalid_argument("parities must be 0 or 1");
    }
    Int odd = std::count(parities.begin(), parities.end(), 1);
    if (static_cast<Int>(parities.size()) != m + n || odd != n) {
      throw std::invalid_argument("parity sequence does not contain exactly m even and n odd entries (m=" +
                                  std::to_string(m) + ", n=" + std::to_string(n) + ")");
    }
    if (p != 0 && !is_prime(p)) {
      throw std::invalid_argument("characteristic must be 0 or a prime, got " + std::to_string(p));
    }
    return ParityContext(m, n, std::move(parities), p);
  }

  Int m() const { return m_; }
  Int n() const { return n_; }
  Int p() const { return p_; }
  std::size_t rank() const { return parities_.size(); }

  const std::vector<int>& parities() const { return parities_; }
  /// Parity of the basis vector v_j, 1-based.
  int parity(std::size_t j) const { return parities_.at(j - 1); }
  /// (-1)^{parity of v_j}, 1-based.
  Int sign(std::size_t j) const { return sign_of_parity(parity(j)); }

  const std::vector<Int>& theta() const { return theta_; }
  const std::vector<Int>& rho() const { return rho_; }
  Int theta(std::size_t j) const { return theta_.at(j - 1); }
  Int rho(std::size_t j) const { return rho_.at(j - 1); }

  void require_weight(const Weight& w) const {
    if (w.rank() != rank()) {
      throw std::invalid_argument("weight has " + std::to_string(w.rank()) + " coordinates, context has rank " +
                                  std::to_string(rank()));
    }
  }

  Weight zero() const { return Weight(std::vector<Int>(rank(), 0)); }

  friend bool operator==(const ParityContext& a, const ParityContext& b) {
    return a.parities_ == b.parities_ && a.p_ == b.p_;
  }

 private:
  ParityContext(Int m, Int n, std::vector<int> parities, Int p)
      : m_(m), n_(n), p_(p), parities_(std::move(parities)) {
    const std::size_t N = parities_.size();
    theta_.assign(N, 0);
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t i = j + 1; i < N; ++i) {
        theta_[j] += sign_of_parity((parities_[i] + parities_[j]) % 2);
      }
    }
    rho_ = theta_;
    for (std::size_t i = 0; i < N; ++i) {
      if (parities_[i] == 0) rho_[i] += 1;
    }
    verify_rho();
  }

  // rho must satisfy its defining pairings; a failure here is a bug.
  void verify_rho() const {
    const std::size_t N = parities_.size();
    auto pair_eps = [&](std::size_t i) { return sign_of_parity(parities_[i]) * rho_[i]; };
    if (pair_eps(N - 1) != (parities_[N - 1] == 0 ? 1 : 0)) {
      throw std::logic_error("rho fails (rho, eps_{m+n}) condition");
    }
    for (std::size_t i = 0; i + 1 < N; ++i) {
      Int expected = parities_[i] != parities_[i + 1] ? 0 : (parities_[i] == 0 ? 1 : -1);
      if (pair_eps(i) - pair_eps(i + 1) != expected) {
        throw std::logic_error("rho fails (rho, eps_i - eps_{i+1}) condition at i=" + std::to_string(i + 1));
      }
    }
  }

  Int m_, n_, p_;
  std::vector<int> parities_;
  std::vector<Int> theta_;
  std::vector<Int> rho_;
};

inline ParityContext build_context(Int m, Int n, std::vector<int> parities, Int p) {
  return ParityContext::build(m, n, std::move(parities), p);
}

/// sum_i (-1)^{parity_i} lambda_i mu_i
inline Int form_pair(const ParityContext& ctx, const Weight& a, const Weight& b) {
  ctx.require_weight(a);
  ctx.require_weight(b);
  Int s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += ctx.sign(i + 1) * a[i] * b[i];
  return s;
}

/// (lambda + theta, eps_j) as an integer, before reduction mod p.
inline Int residue_int(const ParityContext& ctx, const Weight& w, std::size_t j) {
  if (j < 1 || j > ctx.rank()) throw std::out_of_range("residue index " + std::to_string(j) + " out of range");
  return ctx.sign(j) * (w[j - 1] + ctx.theta(j));
}

inline ResidueClass residue(const ParityContext& ctx, const Weight& w, std::size_t j) {
  ctx.require_weight(w);
  return {residue_int(ctx, w, j), ctx.p()};
}

/// (lambda + rho, eps_i): the letters of the crystal element attached to lambda.
inline Int rho_shifted(const ParityContext& ctx, const Weight& w, std::size_t i) {
  return ctx.sign(i) * (w[i - 1] + ctx.rho(i));
}

inline Int length(const Weight& w) { return std::accumulate(w.coeffs.begin(), w.coeffs.end(), Int{0}); }

/// lambda <= mu iff mu - lambda is a nonnegative combination of eps_i - eps_j, i < j.
inline bool dominance_leq(const ParityContext& ctx, const Weight& lambda, const Weight& mu) {
  ctx.require_weight(lambda);
  ctx.require_weight(mu);
  Int partial = 0;
  for (std::size_t i = 0; i < lambda.rank(); ++i) {
    partial += mu[i] - lambda[i];
    if (partial < 0) return false;
  }
  return partial == 0;
}

/// The flipped context (parities reversed and complemented) together with
/// the image of lambda under eps_i -> -eps_{w0 i}.
inline std::pair<ParityContext, Weight> flip_map(const ParityContext& ctx, const Weight& w) {
  ctx.require_weight(w);
  const std::size_t N = ctx.rank();
  std::vector<int> flipped(N);
  Weight out(std::vector<Int>(N, 0));
  for (std::size_t i = 0; i < N; ++i) {
    flipped[N - 1 - i] = 1 - ctx.parities()[i];
    out[N - 1 - i] = -w[i];
  }
  return {ParityContext::build(ctx.n(), ctx.m(), std::move(flipped), ctx.p()), std::move(out)};
}

}  // namespace supercrystal
