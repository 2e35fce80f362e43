#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/category.hpp"
#include "ainf/homotopy.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

// A composable chain of A together with its source object (needed for the
// empty chain, which sits at an object).
struct NatWord {
  int obj = 0;
  Chain chain;
  int arity() const { return static_cast<int>(chain.size()); }
  auto operator<=>(const NatWord&) const = default;
};

inline NatWord nat_word(const GradedQuiver& q, const Chain& c) { return {q.chain_source(c), c}; }

inline std::string nat_word_str(const GradedQuiver& q, const NatWord& w) {
  if (w.chain.empty()) return "[" + q.objects()[w.obj] + "]";
  return chain_str(q, w.chain);
}

struct FunctorMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Components r_n of a prenatural transformation f => g of total degree d;
// r_n(w) lies in Hom_B(f(src w), g(tgt w)) of degree |w| + d - n. Words of
// arity above arity_max are implicitly zero.
struct PreNat {
  std::shared_ptr<const AInfFunctor> f, g;
  int degree = 0;
  int arity_max = 0;
  bool truncated = false;
  std::map<NatWord, Vec> comps;

  const Vec& at(const NatWord& w) const {
    static const Vec zero;
    auto it = comps.find(w);
    return it == comps.end() ? zero : it->second;
  }
  void set(const NatWord& w, const Vec& v) {
    if (v.empty())
      comps.erase(w);
    else
      comps[w] = v;
  }
  bool is_zero() const { return comps.empty(); }
};

inline bool prenat_equal(const PreNat& a, const PreNat& b) {
  if (a.degree != b.degree) return a.is_zero() && b.is_zero();
  return a.comps == b.comps;
}

namespace detail {

inline void require_parallel(const AInfFunctor& f, const AInfFunctor& g) {
  if (f.src.get() != g.src.get() || f.tgt.get() != g.tgt.get())
    throw FunctorMismatch("functors do not share source and target categories");
}

// Target generators that can carry r(w) for a degree-d transformation f => g.
inline std::vector<int> slot_targets(const AInfFunctor& f, const AInfFunctor& g, const NatWord& w, int d) {
  const auto& A = f.src->quiver;
  const int x0 = w.chain.empty() ? w.obj : A.chain_source(w.chain);
  const int xn = w.chain.empty() ? w.obj : A.chain_target(w.chain);
  const int deg = (w.chain.empty() ? 0 : A.chain_degree(w.chain)) + d - w.arity();
  return f.tgt->quiver.hom(f.obj_map[x0], g.obj_map[xn], deg);
}

// B_m on a chain of B generators: the suspended operation.
inline const Vec* shifted_op(const AInfPresentation& B, const Chain& c, Scalar& sign) {
  const Vec* v = B.op(static_cast<int>(c.size()), c);
  if (v) sign = Scalar(shift_sign(B.quiver, c));
  return v;
}

// Object between c[0..i) and c[i..n) in written order.
inline int boundary_object(const GradedQuiver& q, const NatWord& w, int i) {
  const int n = w.arity();
  if (i < n) return q.gen(w.chain[i]).tgt;
  if (i > 0) return q.gen(w.chain[i - 1]).src;
  return w.obj;
}

inline long shifted_degree_sum(const GradedQuiver& q, const Chain& c, std::size_t from, std::size_t to) {
  long s = 0;
  for (std::size_t p = from; p < to; ++p) s += q.degree(c[p]) - 1;
  return s;
}

}  // namespace detail

// m1(r)(w) as a linear function of r: calls emit(M, y, v) meaning "add
// (coefficient of y in r(M)) * v" for every contribution, v a vector of B.
// Signs: the suspended picture M1 = [b, R], R_n = shift_sign * r_n.
template <class Emit>
void m1_terms(const AInfFunctor& f, const AInfFunctor& g, int d, const NatWord& w, Emit&& emit) {
  const auto& A = *f.src;
  const auto& B = *f.tgt;
  const auto& q = A.quiver;
  const int n = w.arity();
  const long D = d - 1;
  const Scalar outer(shift_sign(q, w.chain));
  // B_m(G^(L), R(M), F^(Rt))
  for (int i = 0; i <= n; ++i)
    for (int len = 0; i + len <= n; ++len) {
      NatWord M;
      M.chain.assign(w.chain.begin() + i, w.chain.begin() + i + len);
      M.obj = len ? q.chain_source(M.chain) : detail::boundary_object(q, w, i);
      const auto ys = detail::slot_targets(f, g, M, d);
      if (ys.empty()) continue;
      const Scalar sign = outer * Scalar(shift_sign(q, M.chain)) *
                          Scalar(parity_sign(D * detail::shifted_degree_sum(q, w.chain, 0, i)));
      std::vector<std::pair<Chain, Scalar>> left, right;
      detail::cofunctor_image(g, w.chain, 0, i, g.bound,
                              [&](const Chain& c, const Scalar& s) { left.push_back({c, s}); });
      detail::cofunctor_image(f, w.chain, i + len, n, f.bound,
                              [&](const Chain& c, const Scalar& s) { right.push_back({c, s}); });
      for (const auto& [lc, ls] : left)
        for (const auto& [rc, rs] : right) {
          const int m = static_cast<int>(lc.size() + rc.size()) + 1;
          if (m > B.kmax) continue;
          Chain full = lc;
          full.push_back(-1);
          full.insert(full.end(), rc.begin(), rc.end());
          for (int y : ys) {
            full[lc.size()] = y;
            if (!B.quiver.composable(full)) continue;
            Scalar bs;
            const Vec* v = detail::shifted_op(B, full, bs);
            if (!v) continue;
            emit(M, y, scaled(*v, sign * ls * rs * bs));
          }
        }
    }
  // -(-1)^D R(x_left, B_k(mid), x_right)
  for (int i = 0; i < n; ++i)
    for (int k = 1; i + k <= n && k <= A.kmax; ++k) {
      Chain mid(w.chain.begin() + i, w.chain.begin() + i + k);
      const Vec* v = A.op(k, mid);
      if (!v) continue;
      const Scalar sign = outer * Scalar(-parity_sign(D)) * Scalar(shift_sign(q, mid)) *
                          Scalar(parity_sign(detail::shifted_degree_sum(q, w.chain, 0, i)));
      NatWord M;
      M.chain.assign(w.chain.begin(), w.chain.begin() + i);
      M.chain.push_back(-1);
      M.chain.insert(M.chain.end(), w.chain.begin() + i + k, w.chain.end());
      for (const auto& [z, c] : *v) {
        M.chain[i] = z;
        M.obj = q.chain_source(M.chain);
        const Scalar s = sign * c * Scalar(shift_sign(q, M.chain));
        for (int y : detail::slot_targets(f, g, M, d)) emit(M, y, Vec{{y, s}});
      }
    }
}

// All words of arity <= n_max, ordered by arity then path.
inline std::vector<NatWord> nat_words(const GradedQuiver& q, int n_max) {
  std::vector<NatWord> out;
  if (n_max < 0) return out;
  for (int x = 0; x < q.num_objects(); ++x) out.push_back({x, {}});
  for (int n = 1; n <= n_max; ++n)
    for (const Chain& c : q.chains(n)) out.push_back(nat_word(q, c));
  return out;
}

inline PreNat m1(const PreNat& r) {
  detail::require_parallel(*r.f, *r.g);
  PreNat out;
  out.f = r.f;
  out.g = r.g;
  out.degree = r.degree + 1;
  out.arity_max = r.arity_max;
  out.truncated = r.truncated;
  for (const NatWord& w : nat_words(r.f->src->quiver, r.arity_max)) {
    Vec val;
    m1_terms(*r.f, *r.g, r.degree, w, [&](const NatWord& M, int y, const Vec& v) {
      auto it = r.comps.find(M);
      if (it == r.comps.end()) return;
      auto jt = it->second.find(y);
      if (jt != it->second.end()) axpy(val, jt->second, v);
    });
    out.set(w, val);
  }
  return out;
}

// m2(r1, r2) for r1 : f => g and r2 : g => h, a transformation f => h of
// degree |r1| + |r2|. In composition notation this is r2 o r1.
inline PreNat m2(const PreNat& r1, const PreNat& r2) {
  detail::require_parallel(*r1.f, *r1.g);
  detail::require_parallel(*r2.f, *r2.g);
  if (r1.g.get() != r2.f.get() && !functors_equal(*r1.g, *r2.f, std::max(r1.arity_max, 1)))
    throw FunctorMismatch("m2: target functor of the first transformation is not the source of the second");
  const auto& F = *r1.f;
  const auto& G = *r1.g;
  const auto& H = *r2.g;
  const auto& A = *F.src;
  const auto& B = *F.tgt;
  const auto& q = A.quiver;
  PreNat out;
  out.f = r1.f;
  out.g = r2.g;
  out.degree = r1.degree + r2.degree;
  out.arity_max = std::min(r1.arity_max, r2.arity_max);
  out.truncated = r1.truncated || r2.truncated;
  const long D1 = r1.degree - 1, D2 = r2.degree - 1;
  auto R = [&](const PreNat& r, const NatWord& M) { return scaled(r.at(M), Scalar(shift_sign(q, M.chain))); };
  for (const NatWord& w : nat_words(q, out.arity_max)) {
    const int n = w.arity();
    Vec val;
    // w = Hp | M2 | Gp | M1 | Fp with cuts a <= b <= c <= e
    for (int a = 0; a <= n; ++a)
      for (int b = a; b <= n; ++b)
        for (int c = b; c <= n; ++c)
          for (int e = c; e <= n; ++e) {
            NatWord M2w{b > a ? q.gen(w.chain[b - 1]).src : detail::boundary_object(q, w, a),
                        Chain(w.chain.begin() + a, w.chain.begin() + b)};
            NatWord M1w{e > c ? q.gen(w.chain[e - 1]).src : detail::boundary_object(q, w, c),
                        Chain(w.chain.begin() + c, w.chain.begin() + e)};
            Vec v2 = R(r2, M2w);
            if (v2.empty()) continue;
            Vec v1 = R(r1, M1w);
            if (v1.empty()) continue;
            const long sign_exp = D2 * detail::shifted_degree_sum(q, w.chain, 0, a) +
                                  D1 * detail::shifted_degree_sum(q, w.chain, 0, c);
            const Scalar sign(parity_sign(sign_exp));
            std::vector<std::pair<Chain, Scalar>> hs, gs, fs;
            detail::cofunctor_image(H, w.chain, 0, a, H.bound,
                                    [&](const Chain& ch, const Scalar& s) { hs.push_back({ch, s}); });
            detail::cofunctor_image(G, w.chain, b, c, G.bound,
                                    [&](const Chain& ch, const Scalar& s) { gs.push_back({ch, s}); });
            detail::cofunctor_image(F, w.chain, e, n, F.bound,
                                    [&](const Chain& ch, const Scalar& s) { fs.push_back({ch, s}); });
            for (const auto& [hc, hsg] : hs)
              for (const auto& [gc, gsg] : gs)
                for (const auto& [fc, fsg] : fs) {
                  const int m = static_cast<int>(hc.size() + gc.size() + fc.size()) + 2;
                  if (m > B.kmax) continue;
                  for (const auto& [y2, c2] : v2)
                    for (const auto& [y1, c1] : v1) {
                      Chain full = hc;
                      full.push_back(y2);
                      full.insert(full.end(), gc.begin(), gc.end());
                      full.push_back(y1);
                      full.insert(full.end(), fc.begin(), fc.end());
                      if (!B.quiver.composable(full)) continue;
                      Scalar bs;
                      const Vec* v = detail::shifted_op(B, full, bs);
                      if (!v) continue;
                      axpy(val, sign * hsg * gsg * fsg * c2 * c1 * bs, *v);
                    }
                }
          }
    // back to the unsuspended operation
    const Scalar back = Scalar(shift_sign(q, w.chain)) * Scalar(parity_sign(D2));
    out.set(w, scaled(val, back));
  }
  return out;
}

// The identity transformation of f: r_0 = unit of f(x) at every object.
inline PreNat identity_nat(const std::shared_ptr<const AInfFunctor>& f, int arity_max) {
  PreNat r;
  r.f = r.g = f;
  r.degree = 0;
  r.arity_max = arity_max;
  const auto& B = *f->tgt;
  if (!B.has_units) throw ValidationError("identity transformation needs a unital target");
  for (int x = 0; x < f->src->quiver.num_objects(); ++x) r.set({x, {}}, B.units[f->obj_map[x]]);
  return r;
}

// ---- hom complexes ---------------------------------------------------------------

struct NatSlot {
  NatWord word;
  int target = 0;
  auto operator<=>(const NatSlot&) const = default;
};

struct HomComplexWindow {
  ComplexPresentation complex;
  std::map<int, std::vector<NatSlot>> slots;  // basis dictionary per degree
  std::map<int, int> arity_bound;            // components used in each degree
  std::map<int, bool> stable;                // degree computed without arity truncation
  std::shared_ptr<const AInfFunctor> f, g;

  PreNat to_prenat(int d, const Vector& x) const {
    PreNat r;
    r.f = f;
    r.g = g;
    r.degree = d;
    r.arity_max = arity_bound.at(d);
    r.truncated = !stable.at(d);
    const auto& s = slots.at(d);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!x[i].is_zero()) {
        Vec v = r.at(s[i].word);
        add_term(v, s[i].target, x[i]);
        r.set(s[i].word, v);
      }
    return r;
  }
  Vector from_prenat(const PreNat& r) const {
    const auto& s = slots.at(r.degree);
    Vector x(s.size(), Scalar::in(complex.field, 0));
    std::map<NatSlot, std::size_t> pos;
    for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = i;
    for (const auto& [w, v] : r.comps)
      for (const auto& [y, c] : v) {
        auto it = pos.find({w, y});
        if (it == pos.end()) throw WindowError("transformation has a component outside the window basis");
        x[it->second] = c;
      }
    return x;
  }
};

inline std::string slot_label(const AInfFunctor& f, const NatSlot& s) {
  return "r" + std::to_string(s.word.arity()) + nat_word_str(f.src->quiver, s.word) + "=" +
         f.tgt->quiver.gen(s.target).label;
}

// Largest arity contributing to degree d, or nullopt when unbounded.
inline std::optional<int> natural_arity_bound(const AInfPresentation& A, const AInfPresentation& B, int d) {
  if (A.quiver.num_gens() == 0 || B.quiver.num_gens() == 0) return 0;
  const auto [aA, bA] = A.quiver.degree_range();
  const auto [aB, bB] = B.quiver.degree_range();
  (void)aA;
  (void)bB;
  if (bA >= 1) return std::nullopt;
  // n(1 - bA) + aB <= d
  const long span = d - aB;
  if (span < 0) return -1;
  return static_cast<int>(span / (1 - bA));
}

// Hom(f, g) in A_inf(A, B) over degrees [lo, hi]. Each degree uses every arity
// its degree allows when A has no positive-degree morphisms; otherwise
// arity_max is required and the window is marked truncated.
inline HomComplexWindow hom_complex(const std::shared_ptr<const AInfFunctor>& f,
                                    const std::shared_ptr<const AInfFunctor>& g, int lo, int hi,
                                    std::optional<int> arity_max = std::nullopt) {
  detail::require_parallel(*f, *g);
  if (hi < lo) throw WindowError("hom_complex: empty degree window");
  const auto& A = *f->src;
  const auto& B = *f->tgt;
  HomComplexWindow h;
  h.f = f;
  h.g = g;
  h.complex.field = B.field;
  h.complex.lo = lo;
  h.complex.hi = hi;
  for (int d = lo; d <= hi; ++d) {
    auto nat = natural_arity_bound(A, B, d);
    if (!nat && !arity_max)
      throw WindowError("hom_complex: source has positive-degree morphisms, an arity bound is required");
    int bound = nat ? *nat : *arity_max;
    bool stable = nat.has_value();
    if (nat && arity_max && *arity_max < *nat) {
      bound = *arity_max;
      stable = false;
    }
    h.arity_bound[d] = bound;
    h.stable[d] = stable;
    auto& sl = h.slots[d];
    for (const NatWord& w : nat_words(A.quiver, bound))
      for (int y : detail::slot_targets(*f, *g, w, d)) sl.push_back({w, y});
    for (const auto& s : sl) h.complex.basis[d].push_back(slot_label(*f, s));
  }
  for (int d = lo; d < hi; ++d) {
    std::map<NatSlot, int> col, row;
    for (std::size_t i = 0; i < h.slots[d].size(); ++i) col[h.slots[d][i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < h.slots[d + 1].size(); ++i) row[h.slots[d + 1][i]] = static_cast<int>(i);
    Matrix m(B.field, static_cast<int>(h.slots[d + 1].size()), static_cast<int>(h.slots[d].size()));
    for (const NatWord& w : nat_words(A.quiver, h.arity_bound[d + 1]))
      m1_terms(*f, *g, d, w, [&](const NatWord& M, int y, const Vec& v) {
        auto c = col.find({M, y});
        if (c == col.end()) return;
        for (const auto& [z, s] : v) m.at(row.at({w, z}), c->second) += s;
      });
    h.complex.diff[d] = m;
  }
  return h;
}

}  // namespace ainf
