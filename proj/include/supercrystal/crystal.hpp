// The dual crystal on X(T): signatures, the operators e*_r / f*_r, an
// independent evaluation through the tensor rule on elementary crystals,
// normal/good/conormal/cogood, the B/C index sets, odd reflections and
// crystal-graph exploration.
#pragma once

#include "supercrystal/affine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supercrystal {

/// One character per position: '+', '-' or '0'.
struct Signature {
  std::string entries;
  bool reduced = false;

  std::size_t size() const { return entries.size(); }
  char operator[](std::size_t i) const { return entries[i]; }
  const std::string& str() const { return entries; }

  long count(char c) const { return std::count(entries.begin(), entries.end(), c); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// The residue of r in canonical form (identity for p == 0).
inline Int canonical_residue(const ParityContext& ctx, Int r) { return mod_canon(r, ctx.p()); }

inline Signature r_signature(const ParityContext& ctx, const Weight& w, Int r) {
  ctx.require_weight(w);
  const Int p = ctx.p();
  Signature sig;
  sig.entries.resize(ctx.rank());
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int res = residue_int(ctx, w, i);
    char c = '0';
    if (congruent(res + ctx.sign(i), r, p)) {
      c = '+';
    } else if (congruent(res, r, p)) {
      c = '-';
    }
    sig.entries[i - 1] = c;
  }
  return sig;
}

/// Cancels -+ pairs: each + removes the nearest unmatched - to its left.
inline Signature reduce_signature(const Signature& sig) {
  Signature out = sig;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    char c = out.entries[i];
    if (c == '-') {
      open.push_back(i);
    } else if (c == '+' && !open.empty()) {
      out.entries[open.back()] = '0';
      out.entries[i] = '0';
      open.pop_back();
    }
  }
  out.reduced = true;
  return out;
}

inline Signature reduced_signature(const ParityContext& ctx, const Weight& w, Int r) {
  return reduce_signature(r_signature(ctx, w, r));
}

/// Residues r for which the r-signature of w is not all zero, sorted.
inline std::vector<Int> relevant_residues(const ParityContext& ctx, const Weight& w) {
  ctx.require_weight(w);
  std::vector<Int> out;
  for (std::size_t i = 1; i <= ctx.rank(); ++i) {
    Int res = residue_int(ctx, w, i);
    out.push_back(mod_canon(res, ctx.p()));
    out.push_back(mod_canon(res + ctx.sign(i), ctx.p()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// 1-based position of the leftmost - in the reduced signature, or 0.
inline std::size_t good_position(const Signature& reduced) {
  auto k = reduced.entries.find('-');
  return k == std::string::npos ? 0 : k + 1;
}

/// 1-based position of the rightmost + in the reduced signature, or 0.
inline std::size_t cogood_position(const Signature& reduced) {
  auto k = reduced.entries.rfind('+');
  return k == std::string::npos ? 0 : k + 1;
}

inline std::optional<Weight> e_star(const ParityContext& ctx, const Weight& w, Int r) {
  std::size_t j = good_position(reduced_signature(ctx, w, r));
  if (j == 0) return std::nullopt;
  return w.plus_unit(j, -1);
}

inline std::optional<Weight> f_star(const ParityContext& ctx, const Weight& w, Int r) {
  std::size_t j = cogood_position(reduced_signature(ctx, w, r));
  if (j == 0) return std::nullopt;
  return w.plus_unit(j, 1);
}

struct EpsPhi {
  Int eps = 0;
  Int phi = 0;
  friend bool operator==(const EpsPhi&, const EpsPhi&) = default;
};

inline EpsPhi eps_phi_star(const ParityContext& ctx, const Weight& w, Int r) {
  Signature red = reduced_signature(ctx, w, r);
  return {red.count('-'), red.count('+')};
}

// ---------------------------------------------------------------------------
// Tensor-rule oracle

/// Integer extended by -infinity, which absorbs under + and loses every max.
struct ExtInt {
  bool neg_inf = false;
  Int value = 0;

  static ExtInt minus_infinity() { return {true, 0}; }
  static ExtInt of(Int v) { return {false, v}; }

  friend ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.neg_inf || b.neg_inf) return minus_infinity();
    return of(a.value + b.value);
  }
  friend ExtInt operator-(ExtInt a, Int b) { return a + of(-b); }
  friend bool operator==(const ExtInt&, const ExtInt&) = default;
  friend bool operator<(const ExtInt& a, const ExtInt& b) {
    if (a.neg_inf) return !b.neg_inf;
    if (b.neg_inf) return false;
    return a.value < b.value;
  }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return !(a < b); }
};

inline ExtInt ext_max(ExtInt a, ExtInt b) { return a < b ? b : a; }

/// An element of B_0 (x_b) or B_1 (the dual element x_b^vee).
struct ElementaryElt {
  int parity;
  Int b;
};

namespace elementary {

inline ExtInt eps(const ElementaryElt& x, Int r, Int p) {
  bool hit = x.parity == 0 ? congruent(r + 1, x.b, p) : congruent(r, x.b, p);
  return ExtInt::of(hit ? 1 : 0);
}

inline ExtInt phi(const ElementaryElt& x, Int r, Int p) {
  bool hit = x.parity == 0 ? congruent(r, x.b, p) : congruent(r + 1, x.b, p);
  return ExtInt::of(hit ? 1 : 0);
}

inline std::optional<ElementaryElt> e(const ElementaryElt& x, Int r, Int p) {
  if (eps(x, r, p).value == 0) return std::nullopt;
  return ElementaryElt{x.parity, x.parity == 0 ? x.b - 1 : x.b + 1};
}

inline std::optional<ElementaryElt> f(const ElementaryElt& x, Int r, Int p) {
  if (phi(x, r, p).value == 0) return std::nullopt;
  return ElementaryElt{x.parity, x.parity == 0 ? x.b + 1 : x.b - 1};
}

/// 2<alpha_r, wt x>/<alpha_r, alpha_r>; wt x_b = gamma_b, wt x_b^vee = -gamma_b.
inline Int coroot_wt(const AffineLattice& lat, const ElementaryElt& x, Int r) {
  Int h = lat.coroot_of_gamma(r, x.b);
  return x.parity == 0 ? h : -h;
}

}  // namespace elementary

enum class CrystalOp { E, F };

/// Applies e_r or f_r (undualised) to b_1 (x) ... (x) b_N by the Kashiwara tensor
/// rule, bracketing as ((b_1 (x) b_2) (x) b_3) ...  Returns nullopt for 0.
inline std::optional<std::vector<ElementaryElt>> tensor_apply(const AffineLattice& lat,
                                                              std::vector<ElementaryElt> xs, Int r,
                                                              CrystalOp op) {
  const Int p = lat.p();
  const std::size_t N = xs.size();
  if (N == 0) return std::nullopt;
  // phi of each prefix b_1 (x) ... (x) b_k
  std::vector<ExtInt> phi_prefix(N);
  phi_prefix[0] = elementary::phi(xs[0], r, p);
  for (std::size_t k = 1; k < N; ++k) {
    ExtInt h = ExtInt::of(elementary::coroot_wt(lat, xs[k], r));
    phi_prefix[k] = ext_max(elementary::phi(xs[k], r, p), phi_prefix[k - 1] + h);
  }
  // Descend: prefix_{k-1} (x) b_k acts on the prefix or on b_k.
  std::size_t k = N - 1;
  while (k > 0) {
    ExtInt left = phi_prefix[k - 1];
    ExtInt right = elementary::eps(xs[k], r, p);
    bool on_prefix = op == CrystalOp::E ? left >= right : left > right;
    if (!on_prefix) break;
    --k;
  }
  auto moved = op == CrystalOp::E ? elementary::e(xs[k], r, p) : elementary::f(xs[k], r, p);
  if (!moved) return std::nullopt;
  xs[k] = *moved;
  return xs;
}

/// e*_r / f*_r evaluated as x -> -f_{-1-r}(-x) / -e_{-1-r}(-x) on the letters
/// b_i = (lambda + rho, eps_i); shares no code with the signature rule.
inline std::optional<Weight> tensor_dual_oracle(const ParityContext& ctx, const Weight& w, Int r, CrystalOp which) {
  ctx.require_weight(w);
  const auto& lat = affine_lattice(ctx.p());
  const std::size_t N = ctx.rank();
  std::vector<ElementaryElt> neg(N);
  for (std::size_t i = 1; i <= N; ++i) neg[i - 1] = {ctx.parity(i), -rho_shifted(ctx, w, i)};
  Int dual_r = mod_canon(-1 - r, ctx.p());
  auto out = tensor_apply(lat, std::move(neg), dual_r, which == CrystalOp::E ? CrystalOp::F : CrystalOp::E);
  if (!out) return std::nullopt;
  Weight mu(std::vector<Int>(N, 0));
  for (std::size_t i = 1; i <= N; ++i) {
    Int letter = -(*out)[i - 1].b;
    mu[i - 1] = ctx.sign(i) * letter - ctx.rho(i);
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Normal, good, conormal, cogood

enum class IndexKind { NotClassified, Normal, Good, Conormal, Cogood };

struct IndexClass {
  IndexKind kind = IndexKind::NotClassified;
  Int r = 0;

  bool normal() const { return kind == IndexKind::Normal || kind == IndexKind::Good; }
  bool good() const { return kind == IndexKind::Good; }
  bool conormal() const { return kind == IndexKind::Conormal || kind == IndexKind::Cogood; }
  bool cogood() const { return kind == IndexKind::Cogood; }
};

inline const char* to_string(IndexKind k) {
  switch (k) {
    case IndexKind::Normal:
      return "normal";
    case IndexKind::Good:
      return "good";
    case IndexKind::Conormal:
      return "conormal";
    case IndexKind::Cogood:
      return "cogood";
    default:
      return "not-classified";
  }
}

inline IndexClass classify_index(const ParityContext& ctx, const Weight& w, std::size_t i, Int r) {
  if (i < 1 || i > ctx.rank()) throw std::out_of_range("index " + std::to_string(i) + " out of range");
  Signature red = reduced_signature(ctx, w, r);
  IndexClass out{IndexKind::NotClassified, canonical_residue(ctx, r)};
  if (red[i - 1] == '-') {
    out.kind = good_position(red) == i ? IndexKind::Good : IndexKind::Normal;
  } else if (red[i - 1] == '+') {
    out.kind = cogood_position(red) == i ? IndexKind::Cogood : IndexKind::Conormal;
  }
  return out;
}

/// "i is normal for lambda": r-normal for r = r_i(lambda).  Likewise for good.
inline bool is_normal(const ParityContext& ctx, const Weight& w, std::size_t i) {
  return classify_index(ctx, w, i, residue_int(ctx, w, i)).normal();
}
inline bool is_good(const ParityContext& ctx, const Weight& w, std::size_t i) {
  return classify_index(ctx, w, i, residue_int(ctx, w, i)).good();
}
/// "i is conormal for lambda": r-conormal for r = r_i(lambda + eps_i).
inline bool is_conormal(const ParityContext& ctx, const Weight& w, std::size_t i) {
  return classify_index(ctx, w, i, residue_int(ctx, w, i) + ctx.sign(i)).conormal();
}
inline bool is_cogood(const ParityContext& ctx, const Weight& w, std::size_t i) {
  return classify_index(ctx, w, i, residue_int(ctx, w, i) + ctx.sign(i)).cogood();
}

// ---------------------------------------------------------------------------
// c, b scalars and the C/B index sets

using IndexSet = std::vector<std::size_t>;  // sorted, 1-based

/// c_{i,j}(lambda) = (lambda + theta, eps_i - eps_j)
inline Int c_scalar(const ParityContext& ctx, const Weight& w, std::size_t i, std::size_t j) {
  ctx.require_weight(w);
  return residue_int(ctx, w, i) - residue_int(ctx, w, j);
}

/// b_{i,k}(lambda) = (lambda + theta + eps_{k+1}, eps_i - eps_{k+1})
inline Int b_scalar(const ParityContext& ctx, const Weight& w, std::size_t i, std::size_t k) {
  ctx.require_weight(w);
  if (k < 1 || k + 1 > ctx.rank()) throw std::out_of_range("b index k=" + std::to_string(k) + " out of range");
  const std::size_t k1 = k + 1;
  Weight shifted = w.plus_unit(k1);
  Int first = residue_int(ctx, shifted, i);
  return first - residue_int(ctx, shifted, k1);
}

struct BcSets {
  IndexSet C;
  IndexSet B;
};

inline BcSets bc_sets(const ParityContext& ctx, const Weight& w, std::size_t i, std::size_t j) {
  ctx.require_weight(w);
  if (!(1 <= i && i < j && j <= ctx.rank())) {
    throw std::out_of_range("bc_sets needs 1 <= i < j <= m+n, got i=" + std::to_string(i) + " j=" + std::to_string(j));
  }
  BcSets out;
  for (std::size_t h = i + 1; h < j; ++h) {
    if (congruent(c_scalar(ctx, w, i, h), 0, ctx.p())) out.C.push_back(h);
  }
  for (std::size_t h = i; h < j; ++h) {
    if (congruent(b_scalar(ctx, w, i, h), 0, ctx.p())) out.B.push_back(h);
  }
  return out;
}

/// A ↓ B via prefix counts: |A ∩ [1..k]| <= |B ∩ [1..k]| for all k.
inline bool downarrow(const IndexSet& a, const IndexSet& b) {
  std::size_t top = 0;
  for (auto x : a) top = std::max(top, x);
  for (auto x : b) top = std::max(top, x);
  long balance = 0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 1; k <= top; ++k) {
    while (ib < b.size() && b[ib] == k) ++balance, ++ib;
    while (ia < a.size() && a[ia] == k) --balance, ++ia;
    if (balance < 0) return false;
  }
  return true;
}

/// A ↓ B by building the injection directly: each a (ascending) takes the
/// smallest unused element of B that does not exceed it.
inline bool downarrow_matching(const IndexSet& a, const IndexSet& b) {
  std::vector<bool> used(b.size(), false);
  for (auto x : a) {
    bool found = false;
    for (std::size_t k = 0; k < b.size() && b[k] <= x; ++k) {
      if (!used[k]) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Odd reflections

inline std::pair<ParityContext, Weight> s_i_map(const ParityContext& ctx, const Weight& w, std::size_t i) {
  ctx.require_weight(w);
  if (i < 1 || i + 1 > ctx.rank()) throw std::out_of_range("odd reflection index out of range");
  if (ctx.parity(i) == ctx.parity(i + 1)) {
    throw std::invalid_argument("odd reflection s_" + std::to_string(i) + " needs positions of opposite parity");
  }
  Int pairing = ctx.sign(i) * w[i - 1] - ctx.sign(i + 1) * w[i];
  Weight out = w;
  std::swap(out[i - 1], out[i]);
  if (!congruent(pairing, 0, ctx.p())) {
    out[i - 1] += 1;
    out[i] -= 1;
  }
  std::vector<int> par = ctx.parities();
  std::swap(par[i - 1], par[i]);
  return {ParityContext::build(ctx.m(), ctx.n(), std::move(par), ctx.p()), std::move(out)};
}

// ---------------------------------------------------------------------------
// Crystal graph

struct CrystalEdge {
  std::size_t from;
  std::size_t to;
  Int r;
  char dir;  ///< 'e' or 'f'
};

struct CrystalGraph {
  std::vector<Weight> nodes;
  std::vector<CrystalEdge> edges;
};

/// Breadth-first exploration up to max_steps operator applications.  Nodes
/// appear in discovery order; residues are visited in increasing order, e*
/// before f*.  Nodes at the depth limit are not expanded.
inline CrystalGraph crystal_component(const ParityContext& ctx, const Weight& start, std::size_t max_steps) {
  ctx.require_weight(start);
  CrystalGraph g;
  std::map<Weight, std::size_t> index;
  std::vector<std::size_t> depth;
  auto intern = [&](const Weight& w, std::size_t d) {
    auto [it, inserted] = index.emplace(w, g.nodes.size());
    if (inserted) {
      g.nodes.push_back(w);
      depth.push_back(d);
    }
    return it->second;
  };
  intern(start, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (depth[cur] >= max_steps) continue;
    const Weight w = g.nodes[cur];
    for (Int r : relevant_residues(ctx, w)) {
      for (char dir : {'e', 'f'}) {
        auto next = dir == 'e' ? e_star(ctx, w, r) : f_star(ctx, w, r);
        if (!next) continue;
        std::size_t before = g.nodes.size();
        std::size_t id = intern(*next, depth[cur] + 1);
        if (g.nodes.size() > before) queue.push_back(id);
        g.edges.push_back({cur, id, r, dir});
      }
    }
  }
  return g;
}

}  // namespace supercrystal
