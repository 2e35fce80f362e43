#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ainf/corpus.hpp"
#include "ainf/homotopy.hpp"

namespace ainf {

struct UnsupportedFeature : std::logic_error {
  using std::logic_error::logic_error;
};

// Shared dg[Delta^n] instances, so simplices of equal dimension have the same source.
inline PresPtr simplex_category(int n, const Field& f = Field::rationals()) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint32_t>, PresPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, f.modulus()}];
  if (!slot) slot = std::make_shared<const AInfPresentation>(corpus::dg_simplex(n, f));
  return slot;
}

inline int simplex_gen_id(const AInfPresentation& s, int i, int j) { return s.quiver.gen_index(corpus::simplex_gen(i, j)); }

// An n-simplex of the nerve: an A-infinity functor dg[Delta^n] -> A.
struct Simplex {
  int dim = 0;
  AInfFunctor f;

  const AInfPresentation& target() const { return *f.tgt; }
  // f_1 on the edge (ij)
  Vec edge(int i, int j) const { return f.component(1, {simplex_gen_id(*f.src, i, j)}); }
};

inline Simplex make_simplex(const PresPtr& a, int n, const std::vector<int>& objects) {
  if (static_cast<int>(objects.size()) != n + 1) throw std::invalid_argument("make_simplex: need n + 1 objects");
  Simplex s;
  s.dim = n;
  s.f.name = "simplex";
  s.f.src = simplex_category(n, a->field);
  s.f.tgt = a;
  s.f.obj_map = objects;
  s.f.set_bound(std::max(n, 1));
  return s;
}

inline Simplex vertex(const PresPtr& a, int x) { return make_simplex(a, 0, {x}); }

inline Simplex edge_simplex(const PresPtr& a, int x, int y, const Vec& e) {
  Simplex s = make_simplex(a, 1, {x, y});
  s.f.set(1, {simplex_gen_id(*s.f.src, 0, 1)}, e);
  return s;
}

// Sets f_k on the chain of (ij) labels, e.g. {{1,2},{0,1}}.
inline void set_simplex_component(Simplex& s, const std::vector<std::pair<int, int>>& path, const Vec& v) {
  Chain c;
  for (auto [i, j] : path) c.push_back(simplex_gen_id(*s.f.src, i, j));
  s.f.set(static_cast<int>(c.size()), c, v);
}

inline CheckReport validate_simplex(const Simplex& s) {
  if (!s.target().has_units) {
    CheckReport r;
    r.ok = false;
    r.message = "target has no units";
    return r;
  }
  return check_functor(s.f, 1, s.dim + 1);
}

// Strict coface dg[Delta^{n-1}] -> dg[Delta^n] skipping j, and codegeneracy
// dg[Delta^{n+1}] -> dg[Delta^n] repeating j.
inline AInfFunctor coface_functor(int n, int j, const Field& fld) {
  AInfFunctor f;
  f.name = "delta" + std::to_string(j);
  f.src = simplex_category(n - 1, fld);
  f.tgt = simplex_category(n, fld);
  for (int i = 0; i < n; ++i) f.obj_map.push_back(i < j ? i : i + 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      f.set(1, {simplex_gen_id(*f.src, a, b)}, basis_vec(simplex_gen_id(*f.tgt, f.obj_map[a], f.obj_map[b])));
  return f;
}

inline AInfFunctor codegeneracy_functor(int n, int j, const Field& fld) {
  AInfFunctor f;
  f.name = "sigma" + std::to_string(j);
  f.src = simplex_category(n + 1, fld);
  f.tgt = simplex_category(n, fld);
  for (int i = 0; i <= n + 1; ++i) f.obj_map.push_back(i <= j ? i : i - 1);
  for (int a = 0; a <= n + 1; ++a)
    for (int b = a + 1; b <= n + 1; ++b)
      f.set(1, {simplex_gen_id(*f.src, a, b)}, basis_vec(simplex_gen_id(*f.tgt, f.obj_map[a], f.obj_map[b])));
  return f;
}

inline Simplex face(const Simplex& s, int j) {
  if (s.dim < 1 || j < 0 || j > s.dim) throw std::out_of_range("face: index out of range");
  Simplex out;
  out.dim = s.dim - 1;
  out.f = compose_functors(coface_functor(s.dim, j, s.target().field), s.f, 16);
  out.f.name = "simplex";
  return out;
}

inline Simplex degeneracy(const Simplex& s, int j) {
  if (j < 0 || j > s.dim) throw std::out_of_range("degeneracy: index out of range");
  Simplex out;
  out.dim = s.dim + 1;
  out.f = compose_functors(codegeneracy_functor(s.dim, j, s.target().field), s.f, 16);
  out.f.name = "simplex";
  return out;
}

inline bool simplices_equal(const Simplex& a, const Simplex& b) {
  return a.dim == b.dim && functors_equal(a.f, b.f, a.dim + 1);
}

// ---- inner horns ------------------------------------------------------------------

struct HornInstance {
  int n = 2, i = 1;
  std::map<int, Simplex> faces;  // every j != i
};

struct HornError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_horn(const HornInstance& h) {
  if (h.n > 3) throw UnsupportedFeature("horn filling is implemented for n <= 3");
  if (h.n < 2 || h.i <= 0 || h.i >= h.n) throw std::out_of_range("horn: need 0 < i < n");
  for (int j = 0; j <= h.n; ++j) {
    if (j == h.i) continue;
    auto it = h.faces.find(j);
    if (it == h.faces.end()) throw HornError("horn: face " + std::to_string(j) + " missing");
    if (it->second.dim != h.n - 1) throw HornError("horn: face " + std::to_string(j) + " has the wrong dimension");
    auto r = validate_simplex(it->second);
    if (!r.ok) throw HornError("horn: face " + std::to_string(j) + " is not a valid simplex: " + r.message);
  }
  // d_j d_k = d_{k-1} d_j for j < k
  for (const auto& [k, fk] : h.faces)
    for (const auto& [j, fj] : h.faces)
      if (j < k && h.n - 1 >= 1 && !simplices_equal(face(fk, j), face(fj, k - 1)))
        throw HornError("horn: faces " + std::to_string(j) + " and " + std::to_string(k) + " disagree");
}

struct HornFill {
  Simplex filler;
  int kernel_dim = 0;  // dimension of the space of fillers (affine)
};

// Solves the functor equations for the components not fixed by the given
// faces: those on chains whose vertex set contains every vertex except i.
// kernel_coeffs, if given, adds that combination of homogeneous solutions.
inline HornFill fill_inner_horn(const HornInstance& h, const std::vector<Scalar>& kernel_coeffs = {}) {
  check_horn(h);
  const int n = h.n;
  const PresPtr A = h.faces.begin()->second.f.tgt;
  const Field& F = A->field;
  Simplex s;
  {
    std::vector<int> objs(n + 1, -1);
    for (const auto& [j, fs] : h.faces)
      for (int v = 0; v < n; ++v) objs[v < j ? v : v + 1] = fs.f.obj_map[v];
    s = make_simplex(A, n, objs);
  }
  const auto& S = *s.f.src;
  for (const auto& [j, fs] : h.faces) {
    auto cof = coface_functor(n, j, F);
    for (int k = 1; k <= fs.f.bound; ++k)
      for (const auto& [c, v] : fs.f.comps[k]) {
        Chain img;
        for (int g : c) img.push_back(cof.component(1, {g}).begin()->first);
        s.f.set(k, img, v);
      }
  }
  auto vertices = [&](const Chain& c) {
    std::set<int> vs;
    for (int g : c) {
      vs.insert(S.quiver.gen(g).src);
      vs.insert(S.quiver.gen(g).tgt);
    }
    return vs;
  };
  struct Unknown {
    int k;
    Chain chain;
    int target;
  };
  std::vector<Unknown> unknowns;
  for (int k = 1; k <= n; ++k)
    for (const Chain& c : S.quiver.chains(k)) {
      if (s.f.derived_on(c)) continue;
      auto vs = vertices(c);
      bool all = true;
      for (int v = 0; v <= n; ++v)
        if (v != h.i && !vs.count(v)) all = false;
      if (!all) continue;
      const int deg = 1 - k;
      for (int y : A->quiver.hom(s.f.obj_map[S.quiver.chain_source(c)], s.f.obj_map[S.quiver.chain_target(c)], deg))
        unknowns.push_back({k, c, y});
    }
  // equations: functor residuals on every chain of length <= n + 1
  std::vector<Chain> eq_chains;
  for (int k = 1; k <= n + 1; ++k)
    for (const Chain& c : S.quiver.chains(k)) eq_chains.push_back(c);
  auto residuals = [&](const AInfFunctor& f) {
    std::vector<Vec> out;
    for (const Chain& c : eq_chains) out.push_back(functor_residual(f, c));
    return out;
  };
  std::map<std::pair<std::size_t, int>, int> row_of;
  auto base = residuals(s.f);
  std::vector<std::vector<Vec>> cols;
  for (const auto& u : unknowns) {
    AInfFunctor t = s.f;
    Vec cur = t.component(u.k, u.chain);
    add_term(cur, u.target, Scalar::in(F, 1));
    t.set(u.k, u.chain, cur);
    auto r = residuals(t);
    for (std::size_t e = 0; e < r.size(); ++e) axpy(r[e], Scalar(-1), base[e]);
    cols.push_back(std::move(r));
  }
  auto note_rows = [&](const std::vector<Vec>& rs) {
    for (std::size_t e = 0; e < rs.size(); ++e)
      for (const auto& [g, c] : rs[e]) row_of.emplace(std::make_pair(e, g), static_cast<int>(row_of.size()));
  };
  note_rows(base);
  for (const auto& c : cols) note_rows(c);
  const int rows = static_cast<int>(row_of.size());
  auto flatten = [&](const std::vector<Vec>& rs, const Scalar& sign) {
    Vector v(rows, Scalar::in(F, 0));
    for (std::size_t e = 0; e < rs.size(); ++e)
      for (const auto& [g, c] : rs[e]) v[row_of.at({e, g})] = sign * c;
    return v;
  };
  std::vector<Vector> mcols;
  for (const auto& c : cols) mcols.push_back(flatten(c, Scalar(1)));
  Matrix M = Matrix::from_columns(F, rows, mcols);
  auto sol = solve(M, flatten(base, Scalar(-1)));
  if (!sol) throw HornError("horn: the filling system is inconsistent");
  auto ker = kernel_basis(M);
  for (std::size_t t = 0; t < kernel_coeffs.size() && t < ker.size(); ++t)
    for (std::size_t u = 0; u < unknowns.size(); ++u) (*sol)[u] += kernel_coeffs[t] * ker[t][u];
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    Vec cur = s.f.component(unknowns[u].k, unknowns[u].chain);
    add_term(cur, unknowns[u].target, (*sol)[u]);
    s.f.set(unknowns[u].k, unknowns[u].chain, cur);
  }
  auto check = validate_simplex(s);
  if (!check.ok) throw HornError("horn: filler failed validation: " + check.message);
  return {s, static_cast<int>(ker.size())};
}

// ---- the maximal Kan subcomplex ------------------------------------------------------

struct EdgeVerdict {
  bool equivalence = false;
  std::optional<InverseWitness> witness;
};

inline EdgeVerdict is_equivalence_edge(const Simplex& e) {
  if (e.dim != 1) throw std::invalid_argument("is_equivalence_edge: expected a 1-simplex");
  auto r = validate_simplex(e);
  if (!r.ok) throw ValidationError("is_equivalence_edge: invalid edge: " + r.message);
  EdgeVerdict v;
  v.witness = find_inverse(e.target(), e.f.obj_map[0], e.f.obj_map[1], e.edge(0, 1));
  v.equivalence = v.witness.has_value();
  return v;
}

// A simplex lies in the maximal Kan subcomplex iff every edge is an equivalence.
inline bool in_max_kan(const Simplex& s) {
  const auto& A = s.target();
  for (int a = 0; a <= s.dim; ++a)
    for (int b = a + 1; b <= s.dim; ++b)
      if (!find_inverse(A, s.f.obj_map[a], s.f.obj_map[b], s.edge(a, b))) return false;
  return true;
}

}  // namespace ainf
