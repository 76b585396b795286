// Symbolic computation in the enveloping superalgebra on the matrix units
// e_{i,j}: PBW normal ordering, super brackets, reduction modulo the left
// ideals J and J_l, lowering operators, central elements and the action on
// the highest-weight vector of a Verma module.
#pragma once

#include "supercrystal/crystal.hpp"
#include "supercrystal/linkage.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace supercrystal {

/// The matrix unit e_{row,col}; E if row < col, H if equal, F if row > col.
struct Generator {
  std::size_t row = 0;
  std::size_t col = 0;

  char kind() const { return row < col ? 'E' : (row == col ? 'H' : 'F'); }
  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline std::string to_string(const Generator& g) {
  if (g.kind() == 'H') return "H[" + std::to_string(g.row) + "]";
  return std::string(1, g.kind()) + "[" + std::to_string(g.row) + "," + std::to_string(g.col) + "]";
}

/// A total order on the generators in which every F and H precedes every E.
/// The E_l-last variant additionally puts e_{l,l+1} at the very end.
class GeneratorOrder {
 public:
  /// F's in lexicographic (row, col) order, then H_1..H_N, then E's lexicographically.
  static GeneratorOrder standard(std::size_t rank) { return from_sequence(rank, standard_sequence(rank)); }

  /// The standard order with e_{l,l+1} moved to the end of the E block.
  static GeneratorOrder el_last(std::size_t rank, std::size_t l) {
    if (l < 1 || l + 1 > rank) throw std::out_of_range("E_l index out of range");
    auto seq = standard_sequence(rank);
    Generator el{l, l + 1};
    seq.erase(std::find(seq.begin(), seq.end(), el));
    seq.push_back(el);
    return from_sequence(rank, std::move(seq));
  }

  /// Any permutation of the generators with F's and H's before E's.
  static GeneratorOrder from_sequence(std::size_t rank, std::vector<Generator> seq) {
    if (seq.size() != rank * rank) throw std::invalid_argument("generator order must list every e_{i,j} once");
    GeneratorOrder o;
    o.rank_ = rank;
    o.pos_.assign(rank * rank, -1);
    bool seen_e = false;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const auto& g = seq[k];
      if (g.row < 1 || g.row > rank || g.col < 1 || g.col > rank) throw std::invalid_argument("generator out of range");
      auto& slot = o.pos_[(g.row - 1) * rank + (g.col - 1)];
      if (slot != -1) throw std::invalid_argument("generator listed twice");
      slot = static_cast<int>(k);
      if (g.kind() == 'E') {
        seen_e = true;
      } else if (seen_e) {
        throw std::invalid_argument("order is not B-minus-first: " + to_string(g) + " follows an E");
      }
    }
    o.seq_ = std::move(seq);
    return o;
  }

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return seq_.size(); }
  const Generator& at(int pos) const { return seq_.at(pos); }
  int position(const Generator& g) const { return pos_.at((g.row - 1) * rank_ + (g.col - 1)); }
  const std::vector<Generator>& sequence() const { return seq_; }

  /// l when e_{l,l+1} is the last generator.
  std::optional<std::size_t> last_simple_e() const {
    const auto& g = seq_.back();
    if (g.kind() == 'E' && g.col == g.row + 1) return g.row;
    return std::nullopt;
  }

  /// Every F precedes every H (needed to read off the Verma action directly).
  bool f_before_h() const {
    bool seen_h = false;
    for (const auto& g : seq_) {
      if (g.kind() == 'H') seen_h = true;
      if (g.kind() == 'F' && seen_h) return false;
    }
    return true;
  }

  friend bool operator==(const GeneratorOrder& a, const GeneratorOrder& b) { return a.seq_ == b.seq_; }

 private:
  static std::vector<Generator> standard_sequence(std::size_t rank) {
    std::vector<Generator> seq;
    for (std::size_t i = 1; i <= rank; ++i)
      for (std::size_t j = 1; j < i; ++j) seq.push_back({i, j});
    for (std::size_t k = 1; k <= rank; ++k) seq.push_back({k, k});
    for (std::size_t i = 1; i <= rank; ++i)
      for (std::size_t j = i + 1; j <= rank; ++j) seq.push_back({i, j});
    return seq;
  }

  std::size_t rank_ = 0;
  std::vector<Generator> seq_;
  std::vector<int> pos_;
};

/// (position in the active order, exponent), strictly increasing in position.
using Monomial = std::vector<std::pair<int, int>>;

template <class Coeff = Rational>
class PbwEngine;

/// A finite linear combination of normal-ordered monomials.  Zero coefficients
/// are never stored.  Only meaningful together with the engine that built it.
template <class Coeff = Rational>
struct SuperElt {
  std::map<Monomial, Coeff> terms;

  bool is_zero() const { return terms.empty(); }

  void add(const Monomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  SuperElt& operator+=(const SuperElt& o) {
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  SuperElt& operator-=(const SuperElt& o) {
    for (const auto& [m, c] : o.terms) add(m, Coeff(-c));
    return *this;
  }
  SuperElt& operator*=(const Coeff& k) {
    if (k == 0) {
      terms.clear();
      return *this;
    }
    for (auto& [m, c] : terms) c *= k;
    return *this;
  }
  friend SuperElt operator+(SuperElt a, const SuperElt& b) { return a += b; }
  friend SuperElt operator-(SuperElt a, const SuperElt& b) { return a -= b; }
  friend SuperElt operator*(const Coeff& k, SuperElt a) { return a *= k; }

  /// Coefficient of the empty monomial.
  Coeff constant() const {
    auto it = terms.find(Monomial{});
    return it == terms.end() ? Coeff(0) : it->second;
  }

  friend bool operator==(const SuperElt&, const SuperElt&) = default;
};

/// The image of an element on v_lambda: F-only monomials with coefficients.
template <class Coeff = Rational>
struct VermaVector {
  Weight lambda;
  std::map<Monomial, Coeff> terms;

  bool is_scalar() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty()); }
  Coeff scalar() const {
    auto it = terms.find(Monomial{});
    return it == terms.end() ? Coeff(0) : it->second;
  }
};

/// Rewriting engine for one parity sequence and one generator order.
/// Products are normal-ordered by moving each generator of the left factor
/// into place with g y = (-1)^{|g||y|} y g + [g, y]; results of single
/// left multiplications are memoised, so an engine must not be shared
/// between threads.
template <class Coeff>
class PbwEngine {
 public:
  using Elt = SuperElt<Coeff>;

  PbwEngine(const ParityContext& ctx, GeneratorOrder order) : ctx_(ctx), order_(std::move(order)) {
    if (order_.rank() != ctx_.rank()) throw std::invalid_argument("generator order rank differs from context rank");
    const std::size_t G = order_.size();
    odd_.resize(G);
    for (std::size_t k = 0; k < G; ++k) {
      const auto& g = order_.at(static_cast<int>(k));
      odd_[k] = (ctx_.parity(g.row) + ctx_.parity(g.col)) % 2 == 1;
    }
    bracket_.assign(G, std::vector<std::vector<std::pair<int, Coeff>>>(G));
    for (std::size_t a = 0; a < G; ++a) {
      for (std::size_t b = 0; b < G; ++b) {
        const auto& x = order_.at(static_cast<int>(a));
        const auto& y = order_.at(static_cast<int>(b));
        std::map<int, Coeff> acc;
        // [e_ij, e_kl] = d_jk e_il - (-1)^{(vi+vj)(vk+vl)} d_il e_kj
        if (x.col == y.row) acc[order_.position({x.row, y.col})] += Coeff(1);
        if (x.row == y.col) acc[order_.position({y.row, x.col})] += Coeff(odd_[a] && odd_[b] ? 1 : -1);
        for (auto& [pos, c] : acc) {
          if (c != 0) bracket_[a][b].push_back({pos, c});
        }
      }
    }
  }

  const ParityContext& context() const { return ctx_; }
  const GeneratorOrder& order() const { return order_; }
  std::size_t rank() const { return ctx_.rank(); }

  // -- constructors -------------------------------------------------------

  Elt zero() const { return {}; }
  Elt scalar(const Coeff& c) const {
    Elt out;
    out.add({}, c);
    return out;
  }
  Elt gen(const Generator& g) const {
    Elt out;
    out.add({{order_.position(g), 1}}, Coeff(1));
    return out;
  }
  Elt e(std::size_t i, std::size_t j) const { return gen({i, j}); }
  /// E_{i,j} = e_{i,j}, F_{i,j} = e_{j,i}, H_k = e_{k,k}
  Elt E(std::size_t i, std::size_t j) const { return gen({i, j}); }
  Elt F(std::size_t i, std::size_t j) const { return gen({j, i}); }
  Elt H(std::size_t k) const { return gen({k, k}); }

  // -- parity ---------------------------------------------------------------

  int parity(const Monomial& m) const {
    int s = 0;
    for (auto [pos, exp] : m) s += odd_[pos] ? exp : 0;
    return s % 2;
  }

  /// Parity of a homogeneous element; nullopt for zero or inhomogeneous input.
  std::optional<int> parity(const Elt& x) const {
    std::optional<int> out;
    for (const auto& [m, c] : x.terms) {
      int p = parity(m);
      if (out && *out != p) return std::nullopt;
      out = p;
    }
    return out;
  }

  // -- multiplication -------------------------------------------------------

  Elt multiply(const Elt& a, const Elt& b) {
    Elt out;
    for (const auto& [ma, ca] : a.terms) {
      for (const auto& [mb, cb] : b.terms) {
        Coeff k = ca * cb;
        for (const auto& [m, c] : monomial_product(ma, mb).terms) out.add(m, k * c);
      }
    }
    return out;
  }

  /// ab - (-1)^{|a||b|} ba; both arguments must be homogeneous (zero is allowed).
  Elt super_bracket(const Elt& a, const Elt& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    auto pa = parity(a), pb = parity(b);
    if (!pa || !pb) throw std::invalid_argument("super bracket needs homogeneous arguments");
    Elt out = multiply(a, b);
    Elt ba = multiply(b, a);
    if (*pa && *pb) {
      out += ba;
    } else {
      out -= ba;
    }
    return out;
  }

  // -- left ideals ------------------------------------------------------------

  /// Drops every monomial with a nonempty E-part.
  Elt reduce_mod_J(const Elt& x) const {
    Elt out;
    for (const auto& [m, c] : x.terms) {
      if (!has_kind(m, 'E')) out.add(m, c);
    }
    return out;
  }

  /// Drops every monomial containing e_{l,l+1}; the order must put it last.
  Elt reduce_mod_Jl(const Elt& x, std::size_t l) const {
    auto last = order_.last_simple_e();
    if (!last || *last != l) {
      throw std::invalid_argument("reduction mod J_l needs an order with e_{l,l+1} last (l=" + std::to_string(l) + ")");
    }
    const int el = order_.position({l, l + 1});
    Elt out;
    for (const auto& [m, c] : x.terms) {
      if (m.empty() || m.back().first != el) out.add(m, c);
    }
    return out;
  }

  bool has_kind(const Monomial& m, char kind) const {
    for (auto [pos, exp] : m) {
      if (order_.at(pos).kind() == kind) return true;
    }
    return false;
  }

  /// Re-expresses an element built by another engine (same context) in this order.
  template <class OtherEngine>
  Elt import(const OtherEngine& src, const typename OtherEngine::Elt& x) {
    if (!(src.context() == ctx_)) throw std::invalid_argument("cannot import across contexts");
    Elt out;
    for (const auto& [m, c] : x.terms) {
      Elt prod = scalar(Coeff(1));
      for (auto it = m.rbegin(); it != m.rend(); ++it) {
        int g = order_.position(src.order().at(it->first));
        for (int k = 0; k < it->second; ++k) prod = left_multiply(g, prod);
      }
      prod *= c;
      out += prod;
    }
    return out;
  }

  // -- Verma action -----------------------------------------------------------

  /// u.v_lambda: E-parts annihilate v_lambda and each H_k then acts by lambda_k.
  /// Needs F's before H's in the order so the H-part meets v_lambda directly.
  VermaVector<Coeff> verma_apply(const Elt& u, const Weight& lambda) const {
    ctx_.require_weight(lambda);
    if (!order_.f_before_h()) throw std::invalid_argument("Verma action needs an order with F's before H's");
    VermaVector<Coeff> out;
    out.lambda = lambda;
    for (const auto& [m, c] : u.terms) {
      Monomial fpart;
      Coeff k = c;
      bool killed = false;
      for (auto [pos, exp] : m) {
        const auto& g = order_.at(pos);
        if (g.kind() == 'E') {
          killed = true;
          break;
        }
        if (g.kind() == 'H') {
          for (int t = 0; t < exp; ++t) k *= Coeff(lambda[g.row - 1]);
        } else {
          fpart.push_back({pos, exp});
        }
      }
      if (killed || k == 0) continue;
      auto [it, inserted] = out.terms.emplace(fpart, k);
      if (!inserted) {
        it->second += k;
        if (it->second == 0) out.terms.erase(it);
      }
    }
    return out;
  }

  // -- output ---------------------------------------------------------------

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (auto [pos, exp] : m) {
      if (!s.empty()) s += ' ';
      s += to_string(order_.at(pos));
      if (exp > 1) s += "^" + std::to_string(exp);
    }
    return s;
  }

  /// One "coeff * monomial" line per term in monomial order; "0" for zero.
  std::string dump(const Elt& x) const {
    if (x.is_zero()) return "0\n";
    std::ostringstream os;
    for (const auto& [m, c] : x.terms) {
      os << c;
      if (!m.empty()) os << " * " << monomial_string(m);
      os << '\n';
    }
    return os.str();
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  // g * x for an element x, g a generator position.
  Elt left_multiply(int g, const Elt& x) {
    Elt out;
    for (const auto& [m, c] : x.terms) {
      for (const auto& [m2, c2] : leftmul(g, m).terms) out.add(m2, c * c2);
    }
    return out;
  }

  Elt monomial_product(const Monomial& a, const Monomial& b) {
    Elt cur;
    cur.add(b, Coeff(1));
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
      for (int k = 0; k < it->second; ++k) cur = left_multiply(it->first, cur);
    }
    return cur;
  }

  const Elt& leftmul(int g, const Monomial& m) {
    auto key = std::make_pair(g, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Elt out;
    if (m.empty() || g < m.front().first) {
      Monomial r;
      r.reserve(m.size() + 1);
      r.push_back({g, 1});
      r.insert(r.end(), m.begin(), m.end());
      out.add(r, Coeff(1));
    } else if (g == m.front().first) {
      if (!odd_[g]) {
        Monomial r = m;
        ++r.front().second;
        out.add(r, Coeff(1));
      }
    } else {
      const int y = m.front().first;
      Monomial rest = m;
      if (rest.front().second > 1) {
        --rest.front().second;
      } else {
        rest.erase(rest.begin());
      }
      Coeff s(odd_[g] && odd_[y] ? -1 : 1);
      // g y rest = s y (g rest) + [g, y] rest
      const Elt& inner = leftmul(g, rest);
      for (const auto& [m1, c1] : inner.terms) {
        for (const auto& [m2, c2] : leftmul(y, m1).terms) out.add(m2, s * c1 * c2);
      }
      for (const auto& [t, ct] : bracket_[g][y]) {
        for (const auto& [m2, c2] : leftmul(t, rest).terms) out.add(m2, ct * c2);
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  ParityContext ctx_;
  GeneratorOrder order_;
  std::vector<bool> odd_;
  std::vector<std::vector<std::vector<std::pair<int, Coeff>>>> bracket_;
  std::map<std::pair<int, Monomial>, Elt> memo_;
};

// ---------------------------------------------------------------------------
// Named elements

/// L_j = sum_{i<j} (-1)^{v_i} F_{i,j} E_{i,j}
template <class Coeff>
SuperElt<Coeff> murphy_L(PbwEngine<Coeff>& eng, std::size_t j) {
  const auto& ctx = eng.context();
  if (j < 1 || j > ctx.rank()) throw std::out_of_range("L_j index out of range");
  SuperElt<Coeff> out;
  for (std::size_t i = 1; i < j; ++i) {
    auto term = eng.multiply(eng.F(i, j), eng.E(i, j));
    term *= Coeff(ctx.sign(i));
    out += term;
  }
  return out;
}

/// c_{i,j} = (-1)^{v_i} H_i - (-1)^{v_j} H_j + (-1)^{v_i} theta_i - (-1)^{v_j} theta_j
template <class Coeff>
SuperElt<Coeff> c_elt(PbwEngine<Coeff>& eng, std::size_t i, std::size_t j) {
  const auto& ctx = eng.context();
  if (i < 1 || j < 1 || i > ctx.rank() || j > ctx.rank()) throw std::out_of_range("c_{i,j} index out of range");
  auto out = Coeff(ctx.sign(i)) * eng.H(i);
  out -= Coeff(ctx.sign(j)) * eng.H(j);
  out += eng.scalar(Coeff(ctx.sign(i) * ctx.theta(i) - ctx.sign(j) * ctx.theta(j)));
  return out;
}

/// c~_{i,j} = c_{i,j} + (-1)^{v_i}
template <class Coeff>
SuperElt<Coeff> ctilde_elt(PbwEngine<Coeff>& eng, std::size_t i, std::size_t j) {
  return c_elt(eng, i, j) + eng.scalar(Coeff(eng.context().sign(i)));
}

/// b_{i,k} = (-1)^{v_i} H_i - (-1)^{v_{k+1}} H_{k+1} + (-1)^{v_i} theta_i - (-1)^{v_k} theta_k
template <class Coeff>
SuperElt<Coeff> b_elt(PbwEngine<Coeff>& eng, std::size_t i, std::size_t k) {
  const auto& ctx = eng.context();
  if (i < 1 || i > ctx.rank() || k < 1 || k + 1 > ctx.rank()) throw std::out_of_range("b_{i,k} index out of range");
  auto out = Coeff(ctx.sign(i)) * eng.H(i);
  out -= Coeff(ctx.sign(k + 1)) * eng.H(k + 1);
  out += eng.scalar(Coeff(ctx.sign(i) * ctx.theta(i) - ctx.sign(k) * ctx.theta(k)));
  return out;
}

// ---------------------------------------------------------------------------
// Lowering operators

template <class Coeff>
struct Lowering {
  SuperElt<Coeff> full;     ///< S~_{i,j}(A), normal-ordered
  SuperElt<Coeff> reduced;  ///< S_{i,j}(A): the terms with empty E-part
};

inline void require_lowering_args(const ParityContext& ctx, std::size_t i, std::size_t j, const IndexSet& A) {
  if (!(1 <= i && i < j && j <= ctx.rank())) {
    throw std::out_of_range("lowering operator needs 1 <= i < j <= m+n, got i=" + std::to_string(i) +
                            " j=" + std::to_string(j));
  }
  for (auto t : A) {
    if (t <= i || t >= j) throw std::invalid_argument("A must be a subset of (i..j); offending t=" + std::to_string(t));
  }
}

/// S~_{i,j}(A) = (prod_{t in A} (c~_{i,t} - L_{i+1} - ... - L_t)) F_{i,j}, and its
/// Dist(B^-) part.  The order must be B-minus-first (every engine order is).
template <class Coeff>
Lowering<Coeff> lowering(PbwEngine<Coeff>& eng, std::size_t i, std::size_t j, const IndexSet& A) {
  require_lowering_args(eng.context(), i, j, A);
  auto acc = eng.F(i, j);
  for (auto it = A.rbegin(); it != A.rend(); ++it) {
    std::size_t t = *it;
    auto factor = ctilde_elt(eng, i, t);
    for (std::size_t u = i + 1; u <= t; ++u) factor -= murphy_L(eng, u);
    acc = eng.multiply(factor, acc);
  }
  return {acc, eng.reduce_mod_J(acc)};
}

/// S_{i,j}(A) alone.  Since J is a left ideal each partial product may be
/// reduced before the next factor is applied on the left.
template <class Coeff>
SuperElt<Coeff> lowering_S(PbwEngine<Coeff>& eng, std::size_t i, std::size_t j, const IndexSet& A) {
  require_lowering_args(eng.context(), i, j, A);
  auto acc = eng.F(i, j);
  for (auto it = A.rbegin(); it != A.rend(); ++it) {
    std::size_t t = *it;
    auto factor = ctilde_elt(eng, i, t);
    for (std::size_t u = i + 1; u <= t; ++u) factor -= murphy_L(eng, u);
    acc = eng.reduce_mod_J(eng.multiply(factor, acc));
  }
  return acc;
}

/// Memoises S_{i,j}(A) for one engine.
template <class Coeff>
class LoweringCache {
 public:
  explicit LoweringCache(PbwEngine<Coeff>& eng) : eng_(eng) {}

  const SuperElt<Coeff>& S(std::size_t i, std::size_t j, const IndexSet& A) {
    auto key = std::make_tuple(i, j, A);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, lowering_S(eng_, i, j, A)).first;
    return it->second;
  }

  PbwEngine<Coeff>& engine() { return eng_; }

 private:
  PbwEngine<Coeff>& eng_;
  std::map<std::tuple<std::size_t, std::size_t, IndexSet>, SuperElt<Coeff>> cache_;
};

inline IndexSet open_interval(std::size_t i, std::size_t j) {
  IndexSet out;
  for (std::size_t h = i + 1; h < j; ++h) out.push_back(h);
  return out;
}

/// A ∩ (i..j)
inline IndexSet restrict_open(const IndexSet& A, std::size_t i, std::size_t j) {
  IndexSet out;
  for (auto t : A) {
    if (t > i && t < j) out.push_back(t);
  }
  return out;
}

inline IndexSet set_without(IndexSet A, std::size_t k) {
  A.erase(std::remove(A.begin(), A.end(), k), A.end());
  return A;
}

inline IndexSet set_with(IndexSet A, std::size_t k) {
  if (std::find(A.begin(), A.end(), k) == A.end()) {
    A.push_back(k);
    std::sort(A.begin(), A.end());
  }
  return A;
}

inline bool set_contains(const IndexSet& A, std::size_t k) { return std::find(A.begin(), A.end(), k) != A.end(); }

/// (-1)^{v_i + (v_i + v_k)(v_i + v_j)}
inline Int recurrence_sign(const ParityContext& ctx, std::size_t i, std::size_t k, std::size_t j) {
  int e = ctx.parity(i) + (ctx.parity(i) + ctx.parity(k)) * (ctx.parity(i) + ctx.parity(j));
  return sign_of_parity(e % 2);
}

struct IdentityCheck {
  bool holds = false;
  std::string detail;  ///< which case was checked, or why it failed
};

/// Right-hand side of the recurrence for S_{i,j}(A) with k in A, h = max([i..k) \ A).
template <class Coeff>
SuperElt<Coeff> recurrence_rhs(LoweringCache<Coeff>& cache, std::size_t i, std::size_t j, const IndexSet& A,
                               std::size_t k) {
  auto& eng = cache.engine();
  if (!set_contains(A, k)) throw std::invalid_argument("recurrence needs k in A");
  std::size_t h = i;
  for (std::size_t t = i; t < k; ++t) {
    if (!set_contains(A, t)) h = t;
  }
  IndexSet minus_k = set_without(A, k);
  auto rhs = eng.multiply(cache.S(i, j, minus_k), c_elt(eng, h, k));
  if (h != i) rhs += cache.S(i, j, set_with(minus_k, h));
  auto tail = eng.multiply(cache.S(i, k, restrict_open(A, i, k)), cache.S(k, j, restrict_open(A, k, j)));
  tail *= Coeff(recurrence_sign(eng.context(), i, k, j));
  rhs += tail;
  return eng.reduce_mod_J(rhs);
}

template <class Coeff>
IdentityCheck recurrence_check(LoweringCache<Coeff>& cache, std::size_t i, std::size_t j, const IndexSet& A,
                               std::size_t k) {
  auto lhs = cache.S(i, j, A);
  auto rhs = recurrence_rhs(cache, i, j, A, k);
  return {lhs == rhs, lhs == rhs ? "" : "S_{i,j}(A) differs from the recurrence"};
}

enum class CommutatorCase { VanishA, VanishB, Split, Shorten, ShortenB, Uncovered };

inline const char* to_string(CommutatorCase c) {
  switch (c) {
    case CommutatorCase::VanishA:
      return "(i)(a)";
    case CommutatorCase::VanishB:
      return "(i)(b)";
    case CommutatorCase::Split:
      return "(ii)";
    case CommutatorCase::Shorten:
      return "(iii)";
    case CommutatorCase::ShortenB:
      return "(iv)";
    default:
      return "uncovered";
  }
}

inline CommutatorCase commutator_case(std::size_t i, std::size_t j, const IndexSet& A, std::size_t l) {
  bool l_in = l == i || set_contains(A, l);
  bool next_in_A = set_contains(A, l + 1);
  bool next_is_j = l + 1 == j;
  if (next_in_A) return CommutatorCase::VanishA;
  if (!l_in && !next_is_j) return CommutatorCase::VanishB;
  if (l_in && !next_is_j) return CommutatorCase::Split;
  if (!l_in && next_is_j) return CommutatorCase::Shorten;
  if (set_contains(A, l)) return CommutatorCase::ShortenB;
  return CommutatorCase::Uncovered;  // l = i = j - 1
}

/// Checks E_l S_{i,j}(A) mod J_l against the applicable case.  `cache` holds
/// S's over any B-minus-first order; `el_engine` must have e_{l,l+1} last.
template <class Coeff>
IdentityCheck commutator_identity_check(LoweringCache<Coeff>& cache, PbwEngine<Coeff>& el_engine, std::size_t i,
                                     std::size_t j, const IndexSet& A, std::size_t l) {
  auto& src = cache.engine();
  const auto& ctx = src.context();
  auto kind = commutator_case(i, j, A, l);
  if (kind == CommutatorCase::Uncovered) return {false, "input not covered by any case"};
  auto S = [&](std::size_t a, std::size_t b, const IndexSet& set) {
    if (a == b) return el_engine.scalar(Coeff(1));  // S_{i,i} = 1
    return el_engine.import(src, cache.S(a, b, set));
  };
  auto lhs = el_engine.reduce_mod_Jl(el_engine.multiply(el_engine.E(l, l + 1), S(i, j, A)), l);
  SuperElt<Coeff> rhs;
  switch (kind) {
    case CommutatorCase::VanishA:
    case CommutatorCase::VanishB:
      break;
    case CommutatorCase::Split: {
      int e = l == i ? (ctx.parity(i) + ctx.parity(i + 1)) * (ctx.parity(i) + ctx.parity(j))
                     : ctx.parity(i) + (ctx.parity(i) + ctx.parity(l + 1)) * (ctx.parity(i) + ctx.parity(j));
      Coeff b(sign_of_parity(e % 2));
      rhs = el_engine.multiply(S(i, l, restrict_open(A, i, l)), S(l + 1, j, restrict_open(A, l + 1, j)));
      rhs *= Coeff(-b);
      break;
    }
    case CommutatorCase::Shorten:
      rhs = S(i, j - 1, A);
      break;
    case CommutatorCase::ShortenB: {
      std::size_t h = i;
      for (std::size_t t = i; t < l; ++t) {
        if (!set_contains(A, t)) h = t;
      }
      rhs = el_engine.multiply(S(i, j - 1, restrict_open(A, i, j - 1)), b_elt(el_engine, h, j - 1));
      if (h != i) rhs += S(i, j - 1, set_with(set_without(A, j - 1), h));
      break;
    }
    default:
      break;
  }
  rhs = el_engine.reduce_mod_Jl(rhs, l);
  bool ok = lhs == rhs;
  return {ok, std::string(to_string(kind)) + (ok ? "" : " fails")};
}

// ---------------------------------------------------------------------------
// Central elements

/// x^{[r]}_{k,l}: x^{[1]} = e_{k,l}, x^{[r]}_{k,l} = sum_s (-1)^{v_s} e_{k,s} x^{[r-1]}_{s,l}.
template <class Coeff>
class CentralElements {
 public:
  explicit CentralElements(PbwEngine<Coeff>& eng) : eng_(eng) {}

  const SuperElt<Coeff>& x(std::size_t k, std::size_t l, Int r) {
    if (r < 1) throw std::invalid_argument("x^{[r]} needs r >= 1");
    auto key = std::make_tuple(k, l, r);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    SuperElt<Coeff> out;
    if (r == 1) {
      out = eng_.e(k, l);
    } else {
      const auto& ctx = eng_.context();
      for (std::size_t s = 1; s <= ctx.rank(); ++s) {
        auto term = eng_.multiply(eng_.e(k, s), x(s, l, r - 1));
        term *= Coeff(ctx.sign(s));
        out += term;
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  /// Z~_r = sum_k x^{[r]}_{k,k}
  SuperElt<Coeff> z_tilde(Int r) {
    SuperElt<Coeff> out;
    for (std::size_t k = 1; k <= eng_.rank(); ++k) out += x(k, k, r);
    return out;
  }

  /// Z_r = Z~_r - z_shift(r)
  SuperElt<Coeff> z(Int r) {
    auto out = z_tilde(r);
    out -= eng_.scalar(Coeff(z_shift(eng_.context(), r)));
    return out;
  }

 private:
  PbwEngine<Coeff>& eng_;
  std::map<std::tuple<std::size_t, std::size_t, Int>, SuperElt<Coeff>> cache_;
};

// ---------------------------------------------------------------------------
// Raising lowered vectors

struct LoweringScalar {
  Rational scalar;      ///< E_i ... E_{j-1} S_{i,j}(A) acting on v_lambda, exact
  Rational product;     ///< prod_{t in {i} ∪ B} b_{i,t}(lambda), exact
  int sign = 0;         ///< epsilon with scalar = epsilon * product mod p; 0 if product = 0 mod p
  bool matches = false; ///< scalar = ±product in the scalar domain
};

/// E_i E_{i+1} ... E_{j-1} S_{i,j}(A) in the engine's order.
template <class Coeff>
SuperElt<Coeff> raised_lowering(LoweringCache<Coeff>& cache, std::size_t i, std::size_t j, const IndexSet& A) {
  auto& eng = cache.engine();
  auto acc = cache.S(i, j, A);
  for (std::size_t l = j - 1; l >= i; --l) {
    acc = eng.multiply(eng.E(l, l + 1), acc);
    if (l == i) break;
  }
  return acc;
}

/// Throws std::invalid_argument naming the first violated hypothesis.
inline void require_raising_hypotheses(const ParityContext& ctx, const Weight& lambda, std::size_t i, std::size_t j,
                                       const IndexSet& A, const IndexSet& B) {
  require_lowering_args(ctx, i, j, A);
  require_lowering_args(ctx, i, j, B);
  if (A.size() != B.size()) throw std::invalid_argument("|A| != |B|");
  if (!downarrow(A, B)) throw std::invalid_argument("A ↓ B fails");
  for (std::size_t h = i + 1; h < j; ++h) {
    if (!set_contains(A, h) && !congruent(c_scalar(ctx, lambda, i, h), 0, ctx.p())) {
      throw std::invalid_argument("c_{" + std::to_string(i) + "," + std::to_string(h) + "}(lambda) = " +
                                  std::to_string(c_scalar(ctx, lambda, i, h)) + " is not 0 mod p");
    }
    if (!set_contains(B, h) && !congruent(b_scalar(ctx, lambda, i, h), 0, ctx.p())) {
      throw std::invalid_argument("b_{" + std::to_string(i) + "," + std::to_string(h) + "}(lambda) = " +
                                  std::to_string(b_scalar(ctx, lambda, i, h)) + " is not 0 mod p");
    }
  }
}

/// Evaluates a raised element on v_lambda and compares with prod b_{i,t}(lambda).
inline LoweringScalar evaluate_raising(const PbwEngine<Rational>& eng, const SuperElt<Rational>& raised,
                                       const Weight& lambda, std::size_t i, const IndexSet& B) {
  const auto& ctx = eng.context();
  auto v = eng.verma_apply(raised, lambda);
  if (!v.is_scalar()) throw std::logic_error("raised lowering operator did not return to the highest-weight line");
  LoweringScalar out;
  out.scalar = v.scalar();
  out.product = b_scalar(ctx, lambda, i, i);
  for (auto t : B) out.product *= b_scalar(ctx, lambda, i, t);
  const Int p = ctx.p();
  if (p == 0) {
    if (out.product != 0 && (out.scalar == out.product || out.scalar == -out.product)) {
      out.sign = out.scalar == out.product ? 1 : -1;
    }
    out.matches = out.scalar == out.product || out.scalar == -out.product;
    return out;
  }
  Int s = mod_canon(out.scalar, p), q = mod_canon(out.product, p);
  if (q == 0) {
    out.matches = s == 0;
    return out;
  }
  if (s == q) {
    out.sign = 1;
  } else if (s == mod_canon(-q, p)) {
    out.sign = -1;
  }
  out.matches = out.sign != 0;
  return out;
}

template <class Coeff>
LoweringScalar lowering_scalar_check(LoweringCache<Coeff>& cache, std::size_t i, std::size_t j, const IndexSet& A,
                                     const IndexSet& B, const Weight& lambda) {
  auto& eng = cache.engine();
  require_raising_hypotheses(eng.context(), lambda, i, j, A, B);
  return evaluate_raising(eng, raised_lowering(cache, i, j, A), lambda, i, B);
}

/// For i normal for lambda (i < m+n): C ⊆ C_{i,m+n} matched injectively from
/// B_{i,m+n}, then A = (i..m+n) \ C and B = (i..m+n) \ B_{i,m+n}.
struct NormalityWitness {
  IndexSet A;
  IndexSet B;
};

inline std::optional<NormalityWitness> normality_witness(const ParityContext& ctx, const Weight& lambda,
                                                         std::size_t i) {
  const std::size_t N = ctx.rank();
  if (i >= N) return std::nullopt;
  auto sets = bc_sets(ctx, lambda, i, N);
  IndexSet C;
  std::vector<bool> used(sets.C.size(), false);
  for (auto b : sets.B) {
    bool found = false;
    for (std::size_t k = 0; k < sets.C.size() && sets.C[k] <= b; ++k) {
      if (!used[k]) {
        used[k] = true;
        C.push_back(sets.C[k]);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  std::sort(C.begin(), C.end());
  NormalityWitness w;
  for (std::size_t h = i + 1; h < N; ++h) {
    if (!set_contains(C, h)) w.A.push_back(h);
    if (!set_contains(sets.B, h)) w.B.push_back(h);
  }
  return w;
}

}  // namespace supercrystal
