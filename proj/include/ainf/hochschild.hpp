#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/functor_cat.hpp"
#include "ainf/nerve.hpp"

namespace ainf {

inline std::shared_ptr<const AInfFunctor> identity_ptr(const PresPtr& a) {
  return std::make_shared<const AInfFunctor>(identity_functor(a));
}

// Hom(Id, Id) in A_inf(A, A).
inline HomComplexWindow hochschild_complex(const std::shared_ptr<const AInfFunctor>& id, int lo, int hi,
                                           std::optional<int> arity_max = std::nullopt) {
  return hom_complex(id, id, lo, hi, arity_max);
}
inline HomComplexWindow hochschild_complex(const PresPtr& a, int lo, int hi, std::optional<int> arity_max = std::nullopt) {
  return hochschild_complex(identity_ptr(a), lo, hi, arity_max);
}

struct HochschildClass {
  int degree = 0;
  PreNat rep;
  bool stable = true;
};

struct HHResult {
  int degree = 0;
  int slice_dim = 0;
  int dimension = 0;
  bool stable = true;
  std::vector<HochschildClass> classes;
};

inline HHResult hh(const std::shared_ptr<const AInfFunctor>& id, int d, std::optional<int> arity_max = std::nullopt,
                   bool allow_unstable = false) {
  auto w = hochschild_complex(id, d - 1, d + 1, arity_max);
  const bool stable = w.stable.at(d - 1) && w.stable.at(d) && w.stable.at(d + 1);
  if (!stable && !allow_unstable)
    throw WindowError("hh: degree " + std::to_string(d) + " depends on components above the arity bound");
  auto c = cohomology(w.complex, d);
  HHResult r;
  r.degree = d;
  r.slice_dim = w.complex.dim(d);
  r.dimension = c.dimension;
  r.stable = stable;
  for (const auto& v : c.representatives) r.classes.push_back({d, w.to_prenat(d, v), stable});
  return r;
}
inline HHResult hh(const PresPtr& a, int d, std::optional<int> arity_max = std::nullopt, bool allow_unstable = false) {
  return hh(identity_ptr(a), d, arity_max, allow_unstable);
}

namespace detail {

// Arity needed to hold every component of a degree-d cochain, and whether it is exact.
inline std::pair<int, bool> cochain_arity(const PreNat& a, const PreNat& b, int d, int fallback) {
  auto nat = natural_arity_bound(*a.f->src, *a.f->tgt, d);
  if (nat) return {std::max(*nat, 0), !(a.truncated || b.truncated)};
  return {std::max(fallback, 0), false};
}

inline PreNat widened(PreNat r, int n) {
  r.arity_max = std::max(r.arity_max, n);
  return r;
}

}  // namespace detail

// Cup product: the class of m2 in the functor category.
inline HochschildClass cup(const HochschildClass& a, const HochschildClass& b) {
  const int d = a.degree + b.degree;
  auto [n, exact] = detail::cochain_arity(a.rep, b.rep, d, a.rep.arity_max + b.rep.arity_max);
  HochschildClass out;
  out.degree = d;
  out.rep = m2(detail::widened(a.rep, n), detail::widened(b.rep, n));
  out.rep.arity_max = n;
  out.rep.truncated = !exact;
  out.stable = a.stable && b.stable && exact;
  return out;
}

// Brace insertion x{y} in the suspended picture:
// X{Y}(w) = sum (-1)^{|Y| (|s w_left|)} X(w_left, Y(w_mid), w_right), |Y| = deg y - 1.
inline PreNat brace(const PreNat& x, const PreNat& y, int arity_max) {
  if (x.f.get() != x.g.get() || y.f.get() != y.g.get() || x.f->src.get() != y.f->src.get())
    throw FunctorMismatch("brace: cochains must be endotransformations of one identity functor");
  const auto& q = x.f->src->quiver;
  PreNat out;
  out.f = out.g = x.f;
  out.degree = x.degree + y.degree - 1;
  out.arity_max = arity_max;
  out.truncated = x.truncated || y.truncated;
  const long DY = y.degree - 1;
  for (const NatWord& w : nat_words(q, arity_max)) {
    const int n = w.arity();
    Vec acc;
    for (int i = 0; i <= n; ++i)
      for (int len = 0; i + len <= n; ++len) {
        NatWord mid{len ? q.gen(w.chain[i + len - 1]).src : detail::boundary_object(q, w, i),
                    Chain(w.chain.begin() + i, w.chain.begin() + i + len)};
        const Vec& yv = y.at(mid);
        if (yv.empty()) continue;
        const Scalar sign = Scalar(shift_sign(q, mid.chain)) *
                            Scalar(parity_sign(DY * detail::shifted_degree_sum(q, w.chain, 0, i)));
        NatWord W;
        W.chain.assign(w.chain.begin(), w.chain.begin() + i);
        W.chain.push_back(-1);
        W.chain.insert(W.chain.end(), w.chain.begin() + i + len, w.chain.end());
        for (const auto& [z, c] : yv) {
          W.chain[i] = z;
          W.obj = q.chain_source(W.chain);
          const Vec& xv = x.at(W);
          if (xv.empty()) continue;
          axpy(acc, sign * c * Scalar(shift_sign(q, W.chain)), xv);
        }
      }
    out.set(w, scaled(acc, Scalar(shift_sign(q, w.chain))));
  }
  return out;
}

// [x, y] = x{y} - (-1)^{(|x|-1)(|y|-1)} y{x}, of degree |x| + |y| - 1.
inline PreNat gerstenhaber_bracket(const PreNat& x, const PreNat& y) {
  if (!x.f->src->is_dg())
    throw UnsupportedFeature("gerstenhaber_bracket: only dg-categories are supported (no higher brace terms)");
  const int d = x.degree + y.degree - 1;
  auto [n, exact] = detail::cochain_arity(x, y, d, x.arity_max + y.arity_max - 1);
  PreNat out = brace(x, y, n);
  PreNat other = brace(y, x, n);
  const Scalar s(-parity_sign(static_cast<long>(x.degree - 1) * (y.degree - 1)));
  for (const auto& [w, v] : other.comps) {
    Vec cur = out.at(w);
    axpy(cur, s, v);
    out.set(w, cur);
  }
  out.truncated = !exact;
  return out;
}

inline HochschildClass gerstenhaber_bracket(const HochschildClass& a, const HochschildClass& b) {
  HochschildClass out;
  out.rep = gerstenhaber_bracket(a.rep, b.rep);
  out.degree = out.rep.degree;
  out.stable = a.stable && b.stable && !out.rep.truncated;
  return out;
}

// The operations of A as a degree-2 cochain, so that m1 = [mu, -].
inline PreNat structure_cochain(const std::shared_ptr<const AInfFunctor>& id) {
  const auto& A = *id->src;
  PreNat mu;
  mu.f = mu.g = id;
  mu.degree = 2;
  mu.arity_max = A.kmax;
  for (int k = 1; k <= A.kmax; ++k)
    for (const auto& [c, v] : A.ops[k]) mu.set(nat_word(A.quiver, c), v);
  return mu;
}

// Solves m1(b) = z inside a window around deg z; nullopt if z is not exact there.
inline std::optional<PreNat> hochschild_bounding(const PreNat& z, std::optional<int> arity_max = std::nullopt) {
  auto w = hom_complex(z.f, z.g, z.degree - 1, z.degree, arity_max);
  auto x = bounding_cochain(w.complex, z.degree, w.from_prenat(z));
  if (!x) return std::nullopt;
  return w.to_prenat(z.degree - 1, *x);
}

// ---- pi_i of the endomorphism space of Id ---------------------------------------------

// A one-object dg-category holding Hom(Id, Id) in degrees [lo, hi]; products and
// differentials leaving the window are dropped.
inline PresPtr endomorphism_window(const std::shared_ptr<const AInfFunctor>& id, int lo, int hi,
                                   std::optional<int> arity_max = std::nullopt) {
  if (!id->src->is_dg()) throw UnsupportedFeature("endomorphism_window: composition needs a dg-category");
  auto w = hochschild_complex(id, lo, hi, arity_max);
  auto C = std::make_shared<AInfPresentation>();
  C->name = "End(Id)";
  C->field = id->src->field;
  C->quiver.add_object("Id");
  std::map<int, std::vector<int>> ids;
  for (int d = lo; d <= hi; ++d)
    for (const auto& l : w.complex.basis[d]) ids[d].push_back(C->quiver.add_generator(l, 0, 0, d));
  auto to_vec = [&](int d, const Vector& x) {
    Vec v;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) v[ids[d][i]] = x[i];
    return v;
  };
  auto unit_vector = [&](int d, std::size_t i) {
    Vector e(ids[d].size(), Scalar::in(C->field, 0));
    e[i] = Scalar::in(C->field, 1);
    return e;
  };
  for (int d = lo; d < hi; ++d)
    for (std::size_t i = 0; i < ids[d].size(); ++i)
      C->set_op(1, {ids[d][i]}, to_vec(d + 1, w.complex.diff.at(d).apply(unit_vector(d, i))));
  for (int p = lo; p <= hi; ++p)
    for (int q = lo; q <= hi; ++q) {
      if (p + q < lo || p + q > hi) continue;
      const int n = w.arity_bound.at(p + q);
      for (std::size_t i = 0; i < ids[p].size(); ++i)
        for (std::size_t j = 0; j < ids[q].size(); ++j) {
          PreNat a2 = detail::widened(w.to_prenat(p, unit_vector(p, i)), n);
          PreNat a1 = detail::widened(w.to_prenat(q, unit_vector(q, j)), n);
          a2.arity_max = a1.arity_max = n;
          // m2(a2, a1) = a2 o a1
          C->set_op(2, {ids[p][i], ids[q][j]}, to_vec(p + q, w.from_prenat(m2(a1, a2))));
        }
    }
  if (lo <= 0 && 0 <= hi) C->set_unit(0, to_vec(0, w.from_prenat(identity_nat(id, w.arity_bound.at(0)))));
  return C;
}

struct PiResult {
  int i = 0;
  int hh_dimension = 0;
  bool stable = true;
  bool cross_checked = false;
  int simplicial_dimension = 0;
  bool agree = true;
};

namespace detail {

inline int span_rank(const Field& f, int rows, const std::vector<Vector>& cols) {
  if (cols.empty() || rows == 0) return 0;
  return rank(Matrix::from_columns(f, rows, cols));
}

inline Vector gen_coords(const AInfPresentation& C, int degree, const Vec& v) {
  std::vector<int> basis;
  for (int g = 0; g < C.quiver.num_gens(); ++g)
    if (C.quiver.degree(g) == degree) basis.push_back(g);
  return coords(C.field, basis, v);
}

// Dimension of the cycles among simplices s + (free component over basis slots),
// as a kernel of the linearised functor residuals on all chains up to s.dim + 1.
inline int valid_extension_dim(const Simplex& s, int k, const Chain& c) {
  const auto& C = s.target();
  const auto& S = *s.f.src;
  const int x = s.f.obj_map[S.quiver.chain_source(c)], y = s.f.obj_map[S.quiver.chain_target(c)];
  const auto slots = C.quiver.hom(x, y, S.quiver.chain_degree(c) + 1 - k);
  std::vector<Chain> chains;
  for (int l = 1; l <= s.dim + 1; ++l)
    for (const Chain& ch : S.quiver.chains(l)) chains.push_back(ch);
  std::map<std::pair<std::size_t, int>, int> row;
  std::vector<std::vector<Vec>> cols;
  for (int g : slots) {
    AInfFunctor t = s.f;
    t.set(k, c, basis_vec(g));
    std::vector<Vec> r;
    for (std::size_t e = 0; e < chains.size(); ++e) {
      r.push_back(functor_residual(t, chains[e]));
      for (const auto& [z, v] : r.back()) row.emplace(std::make_pair(e, z), static_cast<int>(row.size()));
    }
    cols.push_back(std::move(r));
  }
  std::vector<Vector> mc;
  for (const auto& r : cols) {
    Vector v(row.size(), Scalar::in(C.field, 0));
    for (std::size_t e = 0; e < r.size(); ++e)
      for (const auto& [z, val] : r[e]) v[row.at({e, z})] = val;
    mc.push_back(v);
  }
  return static_cast<int>(slots.size()) - span_rank(C.field, static_cast<int>(row.size()), mc);
}

}  // namespace detail

// pi_0 and pi_1 of the endomorphism space at Id from the nerve of End(Id):
// endo-edges modulo 2-simplex homotopies, and loops at the identity edge
// modulo 3-simplex homotopies.
inline int simplicial_pi(const std::shared_ptr<const AInfFunctor>& id, int i, std::optional<int> arity_max = std::nullopt) {
  if (i < 0 || i > 1) throw UnsupportedFeature("simplicial_pi: only i = 0 and i = 1 are computed simplicially");
  const PresPtr C = endomorphism_window(id, -2, 1, arity_max);
  const Field& F = C->field;
  const Simplex v = vertex(C, 0);
  const Simplex idedge = degeneracy(v, 0);
  if (i == 0) {
    // valid edges are the F1 values that pass the functor equations
    const Simplex zero = edge_simplex(C, 0, 0, {});
    const int cycles = detail::valid_extension_dim(zero, 1, {simplex_gen_id(*zero.f.src, 0, 1)});
    // d1 of fillers of (zero, id) sweeps out the edges homotopic to zero
    HornInstance h{2, 1, {{0, idedge}, {2, zero}}};
    auto base = fill_inner_horn(h);
    const Vector b0 = detail::gen_coords(*C, 0, base.filler.edge(0, 2));
    std::vector<Vector> moves;
    for (int t = 0; t < base.kernel_dim; ++t) {
      std::vector<Scalar> k(base.kernel_dim, Scalar::in(F, 0));
      k[t] = Scalar::in(F, 1);
      Vector e = detail::gen_coords(*C, 0, fill_inner_horn(h, k).filler.edge(0, 2));
      for (std::size_t r = 0; r < e.size(); ++r) e[r] -= b0[r];
      moves.push_back(e);
    }
    return cycles - detail::span_rank(F, static_cast<int>(b0.size()), moves);
  }
  const Simplex flat = degeneracy(idedge, 0);
  const Chain top{simplex_gen_id(*flat.f.src, 1, 2), simplex_gen_id(*flat.f.src, 0, 1)};
  const int loops = detail::valid_extension_dim(flat, 2, top);
  HornInstance h{3, 1, {{0, flat}, {2, flat}, {3, flat}}};
  auto base = fill_inner_horn(h);
  auto f2_of_d1 = [&](const Simplex& s) {
    const Simplex d1 = face(s, 1);
    return detail::gen_coords(*C, -1, d1.f.component(2, {simplex_gen_id(*d1.f.src, 1, 2), simplex_gen_id(*d1.f.src, 0, 1)}));
  };
  const Vector b0 = f2_of_d1(base.filler);
  std::vector<Vector> moves;
  for (int t = 0; t < base.kernel_dim; ++t) {
    std::vector<Scalar> k(base.kernel_dim, Scalar::in(F, 0));
    k[t] = Scalar::in(F, 1);
    Vector e = f2_of_d1(fill_inner_horn(h, k).filler);
    for (std::size_t r = 0; r < e.size(); ++r) e[r] -= b0[r];
    moves.push_back(e);
  }
  return loops - detail::span_rank(F, static_cast<int>(b0.size()), moves);
}

inline PiResult pi_endomorphisms(const PresPtr& a, int i, bool cross_check = false,
                                 std::optional<int> arity_max = std::nullopt) {
  if (i < 0) throw std::out_of_range("pi_endomorphisms: i must be non-negative");
  auto id = identity_ptr(a);
  auto h = hh(id, -i, arity_max);
  PiResult r;
  r.i = i;
  r.hh_dimension = h.dimension;
  r.stable = h.stable;
  if (cross_check) {
    r.cross_checked = true;
    r.simplicial_dimension = simplicial_pi(id, i, arity_max);
    r.agree = r.simplicial_dimension == r.hh_dimension;
  }
  return r;
}

}  // namespace ainf
