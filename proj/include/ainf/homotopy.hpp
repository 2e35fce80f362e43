#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ainf/category.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

// Coordinates of v along the listed generators (v must be supported there).
inline Vector coords(const Field& f, const std::vector<int>& basis, const Vec& v) {
  Vector x(basis.size(), Scalar::in(f, 0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = v.find(basis[i]);
    if (it != v.end()) x[i] = it->second.in_modulus(f.modulus());
  }
  return x;
}
inline Vec from_coords(const std::vector<int>& basis, const Vector& x) {
  Vec v;
  for (std::size_t i = 0; i < basis.size(); ++i) add_term(v, basis[i], x[i]);
  return v;
}

// Hom(x, y) as a cochain complex over [lo, hi]; basis labels are generator labels.
inline ComplexPresentation hom_window(const AInfPresentation& a, int x, int y, int lo, int hi) {
  ComplexPresentation c;
  c.field = a.field;
  c.lo = lo;
  c.hi = hi;
  const auto& q = a.quiver;
  for (int d = lo; d <= hi; ++d)
    for (int g : q.hom(x, y, d)) c.basis[d].push_back(q.gen(g).label);
  for (int d = lo; d < hi; ++d) {
    auto src = q.hom(x, y, d), tgt = q.hom(x, y, d + 1);
    Matrix m(a.field, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      Vec img;
      if (const Vec* v = a.op(1, {src[j]})) img = *v;
      Vector col = coords(a.field, tgt, img);
      for (std::size_t i = 0; i < tgt.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = col[i];
    }
    c.diff[d] = m;
  }
  return c;
}

inline std::pair<int, int> hom_degrees(const AInfPresentation& a, int x, int y) {
  auto gs = a.quiver.hom(x, y);
  if (gs.empty()) return {0, 0};
  int lo = a.quiver.degree(gs[0]), hi = lo;
  for (int g : gs) {
    lo = std::min(lo, a.quiver.degree(g));
    hi = std::max(hi, a.quiver.degree(g));
  }
  return {std::min(lo, 0), std::max(hi, 0)};
}

// Window large enough that every degree in [lo, hi] has exact cohomology.
inline ComplexPresentation hom_complex_of(const AInfPresentation& a, int x, int y) {
  auto [lo, hi] = hom_degrees(a, x, y);
  return hom_window(a, x, y, lo - 1, hi + 1);
}

inline Vec m1_of(const AInfPresentation& a, const Vec& v) { return a.apply(1, {&v}); }
inline Vec m2_of(const AInfPresentation& a, const Vec& left, const Vec& right) { return a.apply(2, {&left, &right}); }

// w with m1(w) = z (z in Hom^d(x, y)), or nullopt if z is not exact.
inline std::optional<Vec> exact_witness(const AInfPresentation& a, int x, int y, int d, const Vec& z) {
  auto c = hom_window(a, x, y, d - 1, d);
  auto w = bounding_cochain(c, d, coords(a.field, a.quiver.hom(x, y, d), z));
  if (!w) return std::nullopt;
  return from_coords(a.quiver.hom(x, y, d - 1), *w);
}

struct InverseWitness {
  Vec inverse;       // v : y -> x
  Vec left_homotopy;  // m2(u, v) - 1_y = m1(left_homotopy)
  Vec right_homotopy;  // m2(v, u) - 1_x = m1(right_homotopy)
};

// For a closed degree-0 u : x -> y, solve for v : y -> x closed of degree 0
// with u v - 1 and v u - 1 both m1-exact.
inline std::optional<InverseWitness> find_inverse(const AInfPresentation& a, int x, int y, const Vec& u) {
  if (!a.has_units) return std::nullopt;
  const auto& q = a.quiver;
  const Field& F = a.field;
  auto V = q.hom(y, x, 0), W1 = q.hom(y, y, -1), W2 = q.hom(x, x, -1);
  auto R1 = q.hom(y, x, 1), R2 = q.hom(y, y, 0), R3 = q.hom(x, x, 0);
  const int rows = static_cast<int>(R1.size() + R2.size() + R3.size());
  std::vector<Vector> cols;
  auto stack = [&](const Vec& a1, const Vec& a2, const Vec& a3) {
    Vector col = coords(F, R1, a1);
    auto c2 = coords(F, R2, a2), c3 = coords(F, R3, a3);
    col.insert(col.end(), c2.begin(), c2.end());
    col.insert(col.end(), c3.begin(), c3.end());
    return col;
  };
  for (int g : V) {
    Vec e = basis_vec(g);
    cols.push_back(stack(m1_of(a, e), m2_of(a, u, e), m2_of(a, e, u)));
  }
  for (int g : W1) cols.push_back(stack({}, scaled(m1_of(a, basis_vec(g)), Scalar(-1)), {}));
  for (int g : W2) cols.push_back(stack({}, {}, scaled(m1_of(a, basis_vec(g)), Scalar(-1))));
  Vector rhs = stack({}, a.units[y], a.units[x]);
  auto sol = solve(Matrix::from_columns(F, rows, cols), rhs);
  if (!sol) return std::nullopt;
  InverseWitness w;
  std::size_t i = 0;
  for (int g : V) add_term(w.inverse, g, (*sol)[i++]);
  for (int g : W1) add_term(w.left_homotopy, g, (*sol)[i++]);
  for (int g : W2) add_term(w.right_homotopy, g, (*sol)[i++]);
  return w;
}

// Closed degree-0 candidates x -> y: combinations of H^0 representatives
// with coefficients in {0, 1, -1}, fewest nonzero coefficients first. Above
// six classes only single classes and pairs are tried.
inline std::vector<Vec> iso_candidates(const AInfPresentation& a, int x, int y) {
  auto c = hom_window(a, x, y, -1, 1);
  auto h = cohomology(c, 0);
  auto basis = a.quiver.hom(x, y, 0);
  std::vector<Vec> reps;
  for (const auto& r : h.representatives) reps.push_back(from_coords(basis, r));
  const int n = static_cast<int>(reps.size());
  const int max_support = n <= 6 ? n : 2;
  std::vector<Vec> out;
  std::vector<int> idx;
  for (int support = 1; support <= max_support; ++support) {
    // subsets of size `support`, then sign patterns
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(idx.size()) == support) {
        for (int signs = 0; signs < (1 << support); ++signs) {
          if (signs & 1) continue;  // first coefficient fixed to +1 (iso classes are scale-invariant)
          Vec v;
          for (int t = 0; t < support; ++t) axpy(v, Scalar((signs >> t) & 1 ? -1 : 1), reps[idx[t]]);
          out.push_back(v);
        }
        return;
      }
      for (int i = start; i < n; ++i) {
        idx.push_back(i);
        self(self, i + 1);
        idx.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

// ---- H^0 ---------------------------------------------------------------------

struct H0Category {
  std::vector<std::string> objects;
  std::map<std::pair<int, int>, std::vector<Vec>> hom;  // representatives of H^0(Hom(x, y))
  // comp[{x, y, z}][i][j]: class of m2(hom(y,z)[i], hom(x,y)[j]) in H^0(Hom(x, z))
  std::map<std::tuple<int, int, int>, std::vector<std::vector<Vector>>> comp;
  bool well_defined = true;
  std::string message;

  int dim(int x, int y) const {
    auto it = hom.find({x, y});
    return it == hom.end() ? 0 : static_cast<int>(it->second.size());
  }
};

inline H0Category h0(const AInfPresentation& a) {
  const auto& q = a.quiver;
  const int N = q.num_objects();
  H0Category out;
  out.objects = q.objects();
  std::map<std::pair<int, int>, ComplexPresentation> cx;
  std::map<std::pair<int, int>, CohomologyResult> hx;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      auto c = hom_window(a, x, y, -1, 1);
      auto h = cohomology(c, 0);
      auto basis = q.hom(x, y, 0);
      for (const auto& r : h.representatives) out.hom[{x, y}].push_back(from_coords(basis, r));
      cx[{x, y}] = std::move(c);
      hx[{x, y}] = std::move(h);
    }
  if (a.kmax < 2) return out;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        auto& table = out.comp[{x, y, z}];
        const auto& L = out.hom[{y, z}];
        const auto& R = out.hom[{x, y}];
        table.assign(L.size(), std::vector<Vector>(R.size()));
        for (std::size_t i = 0; i < L.size(); ++i)
          for (std::size_t j = 0; j < R.size(); ++j) {
            Vec p = m2_of(a, L[i], R[j]);
            auto cc = class_coordinates(cx[{x, z}], 0, hx[{x, z}], coords(a.field, q.hom(x, z, 0), p));
            if (!cc) {
              out.well_defined = false;
              out.message = "product of cocycles is not a cocycle";
              continue;
            }
            table[i][j] = *cc;
          }
        // products with coboundaries must be coboundaries
        auto bnd = [&](int s, int t) {
          std::vector<Vec> b;
          for (int g : q.hom(s, t, -1)) {
            Vec v = m1_of(a, basis_vec(g));
            if (!v.empty()) b.push_back(v);
          }
          return b;
        };
        for (const Vec& bv : bnd(y, z))
          for (const Vec& r : R)
            if (!exact_witness(a, x, z, 0, m2_of(a, bv, r))) {
              out.well_defined = false;
              out.message = "composition does not preserve coboundaries";
            }
        for (const Vec& l : L)
          for (const Vec& bv : bnd(x, y))
            if (!exact_witness(a, x, z, 0, m2_of(a, l, bv))) {
              out.well_defined = false;
              out.message = "composition does not preserve coboundaries";
            }
      }
  return out;
}

// ---- Tabuada predicates --------------------------------------------------------

struct PredicateResult {
  bool value = true;
  std::vector<std::string> witness;
};

struct NotDgError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require_dg_functor(const AInfFunctor& f) {
  if (!f.src->is_dg() || !f.tgt->is_dg()) throw NotDgError("predicate needs dg-categories on both sides");
  if (!f.is_strict()) throw NotDgError("predicate needs a dg-functor (no higher components)");
}

// Matrix of f_1 : Hom_D(x, y)^d -> Hom_E(Fx, Fy)^d.
inline Matrix hom_map_matrix(const AInfFunctor& f, int x, int y, int d) {
  const auto& A = f.src->quiver;
  const auto& B = f.tgt->quiver;
  auto src = A.hom(x, y, d), tgt = B.hom(f.obj_map[x], f.obj_map[y], d);
  std::vector<Vector> cols;
  for (int g : src) cols.push_back(coords(f.tgt->field, tgt, f.component(1, {g})));
  return Matrix::from_columns(f.tgt->field, static_cast<int>(tgt.size()), cols);
}

inline PredicateResult is_weak_equivalence(const AInfFunctor& f) {
  require_dg_functor(f);
  const auto& D = *f.src;
  const auto& E = *f.tgt;
  PredicateResult res;
  const int N = D.quiver.num_objects();
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const int fx = f.obj_map[x], fy = f.obj_map[y];
      auto [l1, h1] = hom_degrees(D, x, y);
      auto [l2, h2] = hom_degrees(E, fx, fy);
      const int lo = std::min(l1, l2) - 1, hi = std::max(h1, h2) + 1;
      auto cs = hom_window(D, x, y, lo, hi);
      auto ct = hom_window(E, fx, fy, lo, hi);
      for (int d = lo + 1; d < hi; ++d) {
        auto hs = cohomology(cs, d), ht = cohomology(ct, d);
        std::string where = "Hom(" + D.quiver.objects()[x] + "," + D.quiver.objects()[y] + ") degree " +
                            std::to_string(d);
        if (hs.dimension != ht.dimension) {
          res.value = false;
          res.witness.push_back("not a quasi-isomorphism on " + where + ": H dims " + std::to_string(hs.dimension) +
                                " vs " + std::to_string(ht.dimension));
          return res;
        }
        std::vector<Vector> cols;
        auto sb = D.quiver.hom(x, y, d), tb = E.quiver.hom(fx, fy, d);
        for (const auto& r : hs.representatives) {
          Vec img;
          for (std::size_t i = 0; i < sb.size(); ++i) axpy(img, r[i], f.component(1, {sb[i]}));
          cols.push_back(*class_coordinates(ct, d, ht, coords(E.field, tb, img)));
        }
        if (rank(Matrix::from_columns(E.field, ht.dimension, cols)) != ht.dimension) {
          res.value = false;
          res.witness.push_back("induced map not invertible on " + where);
          return res;
        }
      }
    }
  const int M = E.quiver.num_objects();
  for (int y = 0; y < M; ++y) {
    bool found = false;
    for (int x = 0; x < N && !found; ++x) {
      if (f.obj_map[x] == y) {
        found = true;
        res.witness.push_back(E.quiver.objects()[y] + " = F(" + D.quiver.objects()[x] + ")");
        break;
      }
      for (const Vec& u : iso_candidates(E, f.obj_map[x], y))
        if (auto inv = find_inverse(E, f.obj_map[x], y, u)) {
          found = true;
          res.witness.push_back(E.quiver.objects()[y] + " ~ F(" + D.quiver.objects()[x] + ") via " +
                                vec_str(E.quiver, u) + ", inverse " + vec_str(E.quiver, inv->inverse));
          break;
        }
    }
    if (!found) {
      res.value = false;
      res.witness.push_back("H0(F) misses " + E.quiver.objects()[y] + " up to isomorphism");
      return res;
    }
  }
  return res;
}

inline PredicateResult is_fibration(const AInfFunctor& f) {
  require_dg_functor(f);
  const auto& D = *f.src;
  const auto& E = *f.tgt;
  PredicateResult res;
  const int N = D.quiver.num_objects();
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      auto [l1, h1] = hom_degrees(D, x, y);
      auto [l2, h2] = hom_degrees(E, f.obj_map[x], f.obj_map[y]);
      for (int d = std::min(l1, l2); d <= std::max(h1, h2); ++d) {
        Matrix m = hom_map_matrix(f, x, y, d);
        if (rank(m) != m.rows()) {
          res.value = false;
          res.witness.push_back("not surjective on Hom(" + D.quiver.objects()[x] + "," + D.quiver.objects()[y] +
                                ") in degree " + std::to_string(d));
          return res;
        }
      }
    }
  const int M = E.quiver.num_objects();
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < M; ++y)
      for (const Vec& v : iso_candidates(E, f.obj_map[x], y)) {
        if (!find_inverse(E, f.obj_map[x], y, v)) continue;
        bool lifted = false;
        for (int x2 = 0; x2 < N && !lifted; ++x2) {
          if (f.obj_map[x2] != y) continue;
          // closed u : x -> x2 of degree 0 with f_1(u) = v
          auto U = D.quiver.hom(x, x2, 0);
          auto R1 = D.quiver.hom(x, x2, 1);
          auto T = E.quiver.hom(f.obj_map[x], y, 0);
          std::vector<Vector> cols;
          for (int g : U) {
            Vector col = coords(D.field, R1, m1_of(D, basis_vec(g)));
            auto img = coords(E.field, T, f.component(1, {g}));
            col.insert(col.end(), img.begin(), img.end());
            cols.push_back(col);
          }
          Vector rhs(R1.size(), Scalar::in(D.field, 0));
          auto tv = coords(E.field, T, v);
          rhs.insert(rhs.end(), tv.begin(), tv.end());
          Matrix sys = Matrix::from_columns(D.field, static_cast<int>(rhs.size()), cols);
          auto sol = solve(sys, rhs);
          if (!sol) continue;
          std::vector<Vec> tries{from_coords(U, *sol)};
          for (const auto& k : kernel_basis(sys)) {
            Vector s2 = *sol;
            for (std::size_t i = 0; i < s2.size(); ++i) s2[i] += k[i];
            tries.push_back(from_coords(U, s2));
          }
          for (const Vec& u : tries)
            if (find_inverse(D, x, x2, u)) {
              lifted = true;
              res.witness.push_back("lift of " + vec_str(E.quiver, v) + " : " + vec_str(D.quiver, u));
              break;
            }
        }
        if (!lifted) {
          res.value = false;
          res.witness.push_back("isomorphism " + vec_str(E.quiver, v) + " out of F(" + D.quiver.objects()[x] +
                                ") has no lift");
          return res;
        }
      }
  return res;
}

}  // namespace ainf
