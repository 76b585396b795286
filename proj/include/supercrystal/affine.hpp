// The affine weight lattice P (gl_infinity for p = 0, affine sl_p for p > 0),
// its simple roots, invariant form, the elements gamma_a and wt : X(T) -> P.
#pragma once

#include "supercrystal/weightspace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace supercrystal {

/// Element of P.  For p == 0: finitely supported coefficients on gamma_r.
/// For p > 0: a coefficient on delta plus coefficients on Lambda_0..Lambda_{p-1}.
/// Zero coefficients are never stored in the p == 0 map, so equality is structural.
class AffineWeight {
 public:
  explicit AffineWeight(Int p = 0) : p_(p), lambda_(p > 0 ? p : 0, 0) {}

  Int p() const { return p_; }

  // p == 0 accessors
  const std::map<Int, Int>& gamma() const { return gamma_; }
  Int gamma_coeff(Int r) const {
    auto it = gamma_.find(r);
    return it == gamma_.end() ? 0 : it->second;
  }
  void add_gamma(Int r, Int c) {
    if (c == 0) return;
    Int& slot = gamma_[r];
    slot += c;
    if (slot == 0) gamma_.erase(r);
  }

  // p > 0 accessors; Lambda indices are taken mod p
  Int delta() const { return delta_; }
  const std::vector<Int>& lambda() const { return lambda_; }
  Int lambda_coeff(Int r) const { return lambda_[mod_canon(r, p_)]; }
  void add_delta(Int c) { delta_ += c; }
  void add_lambda(Int r, Int c) { lambda_[mod_canon(r, p_)] += c; }

  AffineWeight& operator+=(const AffineWeight& o) {
    require_same(o);
    if (p_ == 0) {
      for (auto [r, c] : o.gamma_) add_gamma(r, c);
    } else {
      delta_ += o.delta_;
      for (Int r = 0; r < p_; ++r) lambda_[r] += o.lambda_[r];
    }
    return *this;
  }
  AffineWeight& operator*=(Int k) {
    if (k == 0) {
      *this = AffineWeight(p_);
      return *this;
    }
    for (auto& [r, c] : gamma_) c *= k;
    delta_ *= k;
    for (auto& c : lambda_) c *= k;
    return *this;
  }
  AffineWeight& operator-=(const AffineWeight& o) {
    AffineWeight neg = o;
    neg *= -1;
    return *this += neg;
  }
  friend AffineWeight operator+(AffineWeight a, const AffineWeight& b) { return a += b; }
  friend AffineWeight operator-(AffineWeight a, const AffineWeight& b) { return a -= b; }
  friend AffineWeight operator*(Int k, AffineWeight a) { return a *= k; }

  bool is_zero() const { return *this == AffineWeight(p_); }

  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
  friend auto operator<=>(const AffineWeight&, const AffineWeight&) = default;

 private:
  void require_same(const AffineWeight& o) const {
    if (o.p_ != p_) throw std::invalid_argument("affine weights over different characteristics");
  }

  Int p_;
  std::map<Int, Int> gamma_;
  Int delta_ = 0;
  std::vector<Int> lambda_;
};

/// Cartan data for a fixed characteristic.  For p > 0 the Gram matrix on the
/// basis (delta, Lambda_0, ..., Lambda_{p-1}) is obtained by solving the
/// dual-basis condition exactly; coroot functionals are cached as integers.
class AffineLattice {
 public:
  explicit AffineLattice(Int p) : p_(p) {
    if (p != 0 && !is_prime(p)) throw std::invalid_argument("characteristic must be 0 or prime");
    if (p > 0) {
      solve_gram();
      cache_coroots();
    }
  }

  Int p() const { return p_; }

  /// Gram matrix on (delta, Lambda_0..Lambda_{p-1}); empty for p == 0.
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }

  AffineWeight gamma_of(Int a) const {
    AffineWeight w(p_);
    if (p_ == 0) {
      w.add_gamma(a, 1);
      return w;
    }
    // a = p d + s with s in {1, ..., p}
    Int s = mod_canon(a, p_);
    if (s == 0) s = p_;
    Int d = (a - s) / p_;
    w.add_lambda(s, 1);
    w.add_lambda(s - 1, -1);
    w.add_delta(-d);
    return w;
  }

  AffineWeight alpha_of(Int r) const {
    AffineWeight w(p_);
    if (p_ == 0) {
      w.add_gamma(r, 1);
      w.add_gamma(r + 1, -1);
      return w;
    }
    Int rr = mod_canon(r, p_);
    w.add_lambda(rr, 2);
    w.add_lambda(rr - 1, -1);
    w.add_lambda(rr + 1, -1);
    if (rr == 0) w.add_delta(1);
    return w;
  }

  Rational pair(const AffineWeight& x, const AffineWeight& y) const {
    if (x.p() != p_ || y.p() != p_) throw std::invalid_argument("affine weight characteristic mismatch");
    if (p_ == 0) {
      Rational s = 0;
      for (auto [r, c] : x.gamma()) s += c * y.gamma_coeff(r);
      return s;
    }
    auto cx = coords(x), cy = coords(y);
    Rational s = 0;
    for (std::size_t a = 0; a < cx.size(); ++a) {
      if (cx[a] == 0) continue;
      for (std::size_t b = 0; b < cy.size(); ++b) {
        if (cy[b] != 0) s += gram_[a][b] * cx[a] * cy[b];
      }
    }
    return s;
  }

  /// 2<alpha_r, x>/<alpha_r, alpha_r>, which is always an integer on P.
  Int coroot(Int r, const AffineWeight& x) const {
    if (p_ == 0) return x.gamma_coeff(r) - x.gamma_coeff(r + 1);
    const auto& h = coroots_[mod_canon(r, p_)];
    auto cx = coords(x);
    Int s = 0;
    for (std::size_t a = 0; a < cx.size(); ++a) s += h[a] * cx[a];
    return s;
  }

  /// coroot(r, gamma_b) without materialising gamma_b.
  Int coroot_of_gamma(Int r, Int b) const {
    if (p_ == 0) return (b == r ? 1 : 0) - (b == r + 1 ? 1 : 0);
    const auto& h = coroots_[mod_canon(r, p_)];
    Int s = mod_canon(b, p_);
    if (s == 0) s = p_;
    Int d = (b - s) / p_;
    return h[1 + mod_canon(s, p_)] - h[1 + (s - 1)] - d * h[0];
  }

 private:
  std::vector<Int> coords(const AffineWeight& x) const {
    std::vector<Int> c(p_ + 1);
    c[0] = x.delta();
    for (Int r = 0; r < p_; ++r) c[r + 1] = x.lambda()[r];
    return c;
  }

  // Y = (Lambda_0, alpha_0, ..., alpha_{p-1}) = M X with X = (delta, Lambda_0, ...).
  // Duality <X_a, Y_b> = delta_ab gives G M^T = I, so G = (M^T)^{-1}.
  void solve_gram() {
    const std::size_t d = p_ + 1;
    std::vector<std::vector<Rational>> mt(d, std::vector<Rational>(d, 0));  // M^T
    auto set_row = [&](std::size_t b, const AffineWeight& y) {
      auto c = coords(y);
      for (std::size_t a = 0; a < d; ++a) mt[a][b] = c[a];
    };
    AffineWeight lam0(p_);
    lam0.add_lambda(0, 1);
    set_row(0, lam0);
    for (Int r = 0; r < p_; ++r) set_row(r + 1, alpha_of(r));

    // Gauss-Jordan on [M^T | I]
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, 0));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (piv < d && mt[piv][col] == 0) ++piv;
      if (piv == d) throw std::logic_error("dual-basis system is singular");
      std::swap(mt[piv], mt[col]);
      std::swap(inv[piv], inv[col]);
      Rational scale = mt[col][col];
      for (std::size_t k = 0; k < d; ++k) {
        mt[col][k] /= scale;
        inv[col][k] /= scale;
      }
      for (std::size_t row = 0; row < d; ++row) {
        if (row == col || mt[row][col] == 0) continue;
        Rational f = mt[row][col];
        for (std::size_t k = 0; k < d; ++k) {
          mt[row][k] -= f * mt[col][k];
          inv[row][k] -= f * inv[col][k];
        }
      }
    }
    gram_ = std::move(inv);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        if (gram_[a][b] != gram_[b][a]) throw std::logic_error("solved form is not symmetric");
      }
    }
  }

  void cache_coroots() {
    const std::size_t d = p_ + 1;
    coroots_.assign(p_, std::vector<Int>(d, 0));
    for (Int r = 0; r < p_; ++r) {
      AffineWeight a = alpha_of(r);
      Rational norm = pair(a, a);
      for (std::size_t k = 0; k < d; ++k) {
        AffineWeight basis(p_);
        if (k == 0) {
          basis.add_delta(1);
        } else {
          basis.add_lambda(static_cast<Int>(k) - 1, 1);
        }
        coroots_[r][k] = to_int64(2 * pair(a, basis) / norm);
      }
    }
  }

  Int p_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<std::vector<Int>> coroots_;
};

/// Shared, lazily built lattice for characteristic p.  Instances are
/// immutable once returned.
inline const AffineLattice& affine_lattice(Int p) {
  static std::mutex mu;
  static std::map<Int, std::unique_ptr<AffineLattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<AffineLattice>(p);
  return *slot;
}

inline AffineWeight gamma_of(const ParityContext& ctx, Int a) { return affine_lattice(ctx.p()).gamma_of(a); }

inline AffineWeight alpha_of(const ParityContext& ctx, Int r) { return affine_lattice(ctx.p()).alpha_of(r); }

inline Rational pair_P(const ParityContext& ctx, const AffineWeight& x, const AffineWeight& y) {
  return affine_lattice(ctx.p()).pair(x, y);
}

/// wt(lambda) = sum_i (-1)^{parity_i} gamma_{(lambda + rho, eps_i)}
inline AffineWeight wt_of(const ParityContext& ctx, const Weight& w) {
  ctx.require_weight(w);
  const auto& lat = affine_lattice(ctx.p());
  AffineWeight out(ctx.p());
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int b = rho_shifted(ctx, w, i);
    if (ctx.p() == 0) {
      out.add_gamma(b, ctx.sign(i));
    } else {
      AffineWeight g = lat.gamma_of(b);
      g *= ctx.sign(i);
      out += g;
    }
  }
  return out;
}

struct AbCounts {
  Int a = 0;  ///< #{i : r_i(lambda + eps_i) = r}
  Int b = 0;  ///< #{i : r_i(lambda) = r}
  friend bool operator==(const AbCounts&, const AbCounts&) = default;
};

inline AbCounts ab_counts(const ParityContext& ctx, const Weight& w, Int r) {
  ctx.require_weight(w);
  AbCounts out;
  const Int p = ctx.p();
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int res = residue_int(ctx, w, i);
    if (congruent(res + ctx.sign(i), r, p)) ++out.a;
    if (congruent(res, r, p)) ++out.b;
  }
  return out;
}

}  // namespace supercrystal
