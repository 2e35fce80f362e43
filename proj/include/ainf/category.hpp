#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ainf/quiver.hpp"

namespace ainf {

using OpTable = std::map<Chain, Vec>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Objects, a graded quiver and operation tables m_1..m_kmax (m_k = 0 for
// k > kmax). Units are optional so reductions fit the same type.
struct AInfPresentation {
  std::string name;
  Field field;
  GradedQuiver quiver;
  int kmax = 2;
  std::vector<OpTable> ops = std::vector<OpTable>(3);
  bool has_units = false;
  std::vector<Vec> units;

  bool is_dg() const {
    for (int k = 3; k <= kmax; ++k)
      if (!ops[k].empty()) return false;
    return true;
  }
  void set_kmax(int k) {
    if (k < 1) throw std::invalid_argument("arity bound must be at least 1");
    kmax = k;
    ops.resize(k + 1);
  }

  // Generator g if units[x] is exactly 1*g, else -1.
  int unit_gen(int x) const {
    if (!has_units) return -1;
    const Vec& u = units.at(x);
    if (u.size() == 1 && u.begin()->second.is_one()) return u.begin()->first;
    return -1;
  }
  bool is_unit_gen(int g) const {
    if (!has_units) return false;
    int x = quiver.gen(g).src;
    return quiver.gen(g).tgt == x && unit_gen(x) == g;
  }

  const Vec* op(int k, const Chain& c) const {
    if (k < 1 || k > kmax) return nullptr;
    auto it = ops[k].find(c);
    return it == ops[k].end() ? nullptr : &it->second;
  }

  // m_k on a tensor of vectors (written order).
  Vec apply(int k, const std::vector<const Vec*>& args) const {
    Vec out;
    if (k < 1 || k > kmax || static_cast<int>(args.size()) != k) return out;
    expand_tensor(quiver, args, [&](const Chain& c, const Scalar& s) {
      if (const Vec* v = op(k, c)) axpy(out, s, *v);
    });
    return out;
  }

  void set_op(int k, const Chain& c, const Vec& value) {
    if (k < 1 || k > kmax) throw ValidationError("operation arity " + std::to_string(k) + " exceeds kmax");
    if (static_cast<int>(c.size()) != k || !quiver.composable(c))
      throw ValidationError("m" + std::to_string(k) + " input is not a composable chain of length " + std::to_string(k));
    const int deg = quiver.chain_degree(c) + 2 - k;
    for (const auto& [g, s] : value) {
      const auto& G = quiver.gen(g);
      if (G.src != quiver.chain_source(c) || G.tgt != quiver.chain_target(c))
        throw ValidationError("m" + std::to_string(k) + " value '" + G.label + "' has the wrong endpoints");
      if (G.degree != deg)
        throw ValidationError("m" + std::to_string(k) + " value '" + G.label + "' has degree " +
                              std::to_string(G.degree) + ", expected " + std::to_string(deg));
    }
    if (value.empty())
      ops[k].erase(c);
    else
      ops[k][c] = value;
  }

  void set_unit(int x, const Vec& u) {
    if (!has_units) {
      has_units = true;
      units.assign(quiver.num_objects(), Vec{});
    }
    for (const auto& [g, s] : u) {
      const auto& G = quiver.gen(g);
      if (G.src != x || G.tgt != x || G.degree != 0)
        throw ValidationError("unit of '" + quiver.objects()[x] + "' must be a degree-0 endomorphism");
    }
    units.at(x) = u;
  }

  std::pair<int, int> hom_degree_range() const { return quiver.degree_range(); }
};

using PresPtr = std::shared_ptr<const AInfPresentation>;

inline std::string chain_str(const GradedQuiver& q, const Chain& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + q.gen(c[i]).label;
  return s + ")";
}
inline std::string vec_str(const GradedQuiver& q, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [g, c] : v) s += (s.empty() ? "" : " + ") + c.str() + "*" + q.gen(g).label;
  return s;
}

// ---- functors -------------------------------------------------------------

// Components f_1..f_bound. Strict unitality is structural: when the source
// unit of x is a single generator, f_1 of it is the target unit and every
// higher component vanishes on chains containing it; tables never store
// such chains.
struct AInfFunctor {
  std::string name;
  PresPtr src, tgt;
  std::vector<int> obj_map;
  int bound = 1;
  bool truncated = false;  // components above bound unknown rather than zero
  std::vector<OpTable> comps = std::vector<OpTable>(2);

  void set_bound(int b) {
    bound = b;
    comps.resize(b + 1);
  }
  bool is_strict() const {
    for (int k = 2; k <= bound; ++k)
      if (!comps[k].empty()) return false;
    return !truncated;
  }

  bool derived_on(const Chain& c) const {
    if (!src->has_units || !tgt->has_units) return false;
    for (int g : c)
      if (src->is_unit_gen(g)) return true;
    return false;
  }

  Vec component(int k, const Chain& c) const {
    if (derived_on(c)) {
      if (k == 1) return tgt->units.at(obj_map.at(src->quiver.gen(c[0]).src));
      return {};
    }
    if (k < 1 || k > bound) return {};
    auto it = comps[k].find(c);
    return it == comps[k].end() ? Vec{} : it->second;
  }

  Vec apply(int k, const std::vector<const Vec*>& args) const {
    Vec out;
    expand_tensor(src->quiver, args, [&](const Chain& c, const Scalar& s) { axpy(out, s, component(k, c)); });
    return out;
  }

  void set(int k, const Chain& c, const Vec& value) {
    if (k < 1) throw ValidationError("functor component arity must be positive");
    if (k > bound) set_bound(k);
    const auto& A = src->quiver;
    const auto& B = tgt->quiver;
    if (static_cast<int>(c.size()) != k || !A.composable(c))
      throw ValidationError("f" + std::to_string(k) + " input is not a composable chain");
    if (derived_on(c)) throw ValidationError("f" + std::to_string(k) + " is fixed on unit chains " + chain_str(A, c));
    const int deg = A.chain_degree(c) + 1 - k;
    const int x = obj_map.at(A.chain_source(c)), y = obj_map.at(A.chain_target(c));
    for (const auto& [g, s] : value) {
      if (B.gen(g).src != x || B.gen(g).tgt != y)
        throw ValidationError("f" + std::to_string(k) + " value '" + B.gen(g).label + "' has the wrong endpoints");
      if (B.gen(g).degree != deg)
        throw ValidationError("f" + std::to_string(k) + " value '" + B.gen(g).label + "' has the wrong degree");
    }
    if (value.empty())
      comps[k].erase(c);
    else
      comps[k][c] = value;
  }
};

inline AInfFunctor identity_functor(const PresPtr& a) {
  AInfFunctor f;
  f.name = "Id_" + a->name;
  f.src = f.tgt = a;
  f.obj_map.resize(a->quiver.num_objects());
  for (int x = 0; x < a->quiver.num_objects(); ++x) f.obj_map[x] = x;
  for (int g = 0; g < a->quiver.num_gens(); ++g)
    if (!f.derived_on({g})) f.comps[1][{g}] = basis_vec(g);
  return f;
}

// ---- identity checkers ------------------------------------------------------

struct CheckReport {
  bool ok = true;
  int n_lo = 0, n_hi = 0;
  bool truncated = false;  // some terms were assumed zero by an arity bound
  int fail_arity = 0;
  Chain fail_chain;
  Vec residual;
  std::string message;
};

inline long degree_sum(const GradedQuiver& q, const Chain& c, std::size_t from, std::size_t to) {
  long s = 0;
  for (std::size_t p = from; p < to; ++p) s += q.degree(c[p]);
  return s;
}

// Left-hand side of the Stasheff identity at a basis chain:
// sum_{i+k+j=n} (-1)^{ik+j} m_{i+j+1}(Id^i (x) m_k (x) Id^j), with the Koszul
// sign of m_k passing the first i factors.
inline Vec stasheff_residual(const AInfPresentation& a, const Chain& c, bool* truncated = nullptr) {
  const auto& q = a.quiver;
  const int n = static_cast<int>(c.size());
  Vec res;
  for (int i = 0; i < n; ++i)
    for (int k = 1; i + k <= n; ++k) {
      const int j = n - i - k;
      const int outer = i + j + 1;
      if (k > a.kmax || outer > a.kmax) {
        if (truncated) *truncated = true;
        continue;
      }
      const Vec* inner = a.op(k, Chain(c.begin() + i, c.begin() + i + k));
      if (!inner) continue;
      const Scalar sign(parity_sign(static_cast<long>(i) * k + j + static_cast<long>(k) * degree_sum(q, c, 0, i)));
      Chain outer_chain(c.begin(), c.begin() + i);
      outer_chain.push_back(-1);
      outer_chain.insert(outer_chain.end(), c.begin() + i + k, c.end());
      for (const auto& [g, s] : *inner) {
        outer_chain[i] = g;
        if (const Vec* v = a.op(outer, outer_chain)) axpy(res, sign * s, *v);
      }
    }
  return res;
}

inline CheckReport check_stasheff(const AInfPresentation& a, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::out_of_range("check_stasheff: arity interval must lie in [1, inf)");
  CheckReport r;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  for (int n = n_lo; n <= n_hi; ++n)
    for (const Chain& c : a.quiver.chains(n)) {
      Vec res = stasheff_residual(a, c, &r.truncated);
      if (!res.empty()) {
        r.ok = false;
        r.fail_arity = n;
        r.fail_chain = c;
        r.residual = res;
        r.message = "Stasheff identity fails at n=" + std::to_string(n) + " on " + chain_str(a.quiver, c) +
                    ": residual " + vec_str(a.quiver, res);
        return r;
      }
    }
  return r;
}

inline CheckReport check_unitality(const AInfPresentation& a, int n_hi = 4) {
  CheckReport r;
  r.n_lo = 1;
  r.n_hi = std::min(n_hi, a.kmax);
  const auto& q = a.quiver;
  auto fail = [&](int n, Chain c, Vec res, std::string msg) {
    r.ok = false;
    r.fail_arity = n;
    r.fail_chain = std::move(c);
    r.residual = std::move(res);
    r.message = std::move(msg);
    return r;
  };
  if (!a.has_units) {
    if (q.num_objects() == 0) return r;
    return fail(0, {}, {}, "presentation has no units");
  }
  for (int x = 0; x < q.num_objects(); ++x) {
    const Vec& e = a.units[x];
    if (a.kmax >= 1) {
      Vec d = a.apply(1, {&e});
      if (!d.empty()) return fail(1, {}, d, "m1 of the unit of '" + q.objects()[x] + "' is " + vec_str(q, d));
    }
  }
  if (a.kmax < 2) return fail(2, {}, {}, "no m2, so no unit law");
  for (int g = 0; g < q.num_gens(); ++g) {
    const Vec v = basis_vec(g);
    const auto& G = q.gen(g);
    Vec left = a.apply(2, {&a.units[G.tgt], &v});
    Vec right = a.apply(2, {&v, &a.units[G.src]});
    if (!vec_equal(left, v))
      return fail(2, {g}, left, "m2(unit, " + G.label + ") = " + vec_str(q, left));
    if (!vec_equal(right, v))
      return fail(2, {g}, right, "m2(" + G.label + ", unit) = " + vec_str(q, right));
  }
  for (int k = 3; k <= r.n_hi; ++k)
    for (const Chain& c : q.chains(k - 1))
      for (int pos = 0; pos < k; ++pos) {
        const int x = pos == 0 ? q.chain_target(c) : q.gen(c[pos - 1]).src;
        std::vector<Vec> vs;
        for (int g : c) vs.push_back(basis_vec(g));
        std::vector<const Vec*> args;
        for (int p = 0, i = 0; p < k; ++p) args.push_back(p == pos ? &a.units[x] : &vs[i++]);
        Vec out = a.apply(k, args);
        if (!out.empty())
          return fail(k, c, out, "m" + std::to_string(k) + " does not vanish on a unit inserted into " + chain_str(q, c));
      }
  return r;
}

// Functor equation at a basis chain: returns LHS - RHS with
// LHS = sum (-1)^{sr+t} f_{r+t+1}(Id^r (x) m_s (x) Id^t) and
// RHS = sum (-1)^{eps_r} m'_r(f_{i1} (x) ... (x) f_{ir}),
// eps_r = sum_{2<=k<=r} (1 - i_k) sum_{l<k} i_l, plus Koszul signs.
inline Vec functor_residual(const AInfFunctor& F, const Chain& c, bool* truncated = nullptr) {
  const auto& A = *F.src;
  const auto& B = *F.tgt;
  const auto& q = A.quiver;
  const int n = static_cast<int>(c.size());
  Vec res;
  for (int r = 0; r < n; ++r)
    for (int s = 1; r + s <= n; ++s) {
      const int t = n - r - s;
      const int outer = r + t + 1;
      if (F.truncated && outer > F.bound && truncated) *truncated = true;
      const Vec* inner = A.op(s, Chain(c.begin() + r, c.begin() + r + s));
      if (!inner) continue;
      const Scalar sign(parity_sign(static_cast<long>(s) * r + t + static_cast<long>(s) * degree_sum(q, c, 0, r)));
      Chain oc(c.begin(), c.begin() + r);
      oc.push_back(-1);
      oc.insert(oc.end(), c.begin() + r + s, c.end());
      for (const auto& [g, x] : *inner) {
        oc[r] = g;
        axpy(res, sign * x, F.component(outer, oc));
      }
    }
  // compositions (i_1..i_R) of n, i_1 leftmost
  std::vector<int> parts;
  auto rec = [&](auto&& self, int used) -> void {
    if (used == n) {
      const int R = static_cast<int>(parts.size());
      if (R > B.kmax) return;
      long eps = 0, pre = 0;
      std::vector<Vec> vals;
      vals.reserve(R);
      int pos = 0;
      for (int u = 0; u < R; ++u) {
        if (u > 0) eps += static_cast<long>(1 - parts[u]) * pre;
        eps += static_cast<long>(1 - parts[u]) * degree_sum(q, c, 0, pos);
        pre += parts[u];
        if (F.truncated && parts[u] > F.bound && truncated) *truncated = true;
        vals.push_back(F.component(parts[u], Chain(c.begin() + pos, c.begin() + pos + parts[u])));
        if (vals.back().empty()) return;
        pos += parts[u];
      }
      std::vector<const Vec*> args;
      for (const auto& v : vals) args.push_back(&v);
      axpy(res, Scalar(-parity_sign(eps)), B.apply(R, args));
      return;
    }
    for (int i = 1; used + i <= n; ++i) {
      parts.push_back(i);
      self(self, used + i);
      parts.pop_back();
    }
  };
  rec(rec, 0);
  return res;
}

inline CheckReport check_functor(const AInfFunctor& F, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::out_of_range("check_functor: arity interval must lie in [1, inf)");
  if (F.truncated && n_hi > F.bound)
    throw std::out_of_range("check_functor: components known only up to arity " + std::to_string(F.bound));
  CheckReport r;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  for (int n = n_lo; n <= n_hi; ++n)
    for (const Chain& c : F.src->quiver.chains(n)) {
      Vec res = functor_residual(F, c, &r.truncated);
      if (!res.empty()) {
        r.ok = false;
        r.fail_arity = n;
        r.fail_chain = c;
        r.residual = res;
        r.message = "functor equation fails at n=" + std::to_string(n) + " on " + chain_str(F.src->quiver, c) +
                    ": residual " + vec_str(F.tgt->quiver, res);
        return r;
      }
    }
  return r;
}

// ---- composition ---------------------------------------------------------------

namespace detail {

// Sum over compositions of the chain into blocks of F's shifted components:
// calls fn(target chain, coefficient). Shifted components have degree 0, so
// there are no Koszul signs between blocks.
template <class Fn>
void cofunctor_image(const AInfFunctor& F, const Chain& c, std::size_t from, std::size_t to, int max_block, Fn&& fn) {
  const auto& A = F.src->quiver;
  const auto& B = F.tgt->quiver;
  std::vector<Vec> vals;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == to) {
      std::vector<const Vec*> args;
      for (const auto& v : vals) args.push_back(&v);
      expand_tensor(B, args, fn);
      return;
    }
    for (std::size_t len = 1; pos + len <= to && static_cast<int>(len) <= max_block; ++len) {
      Chain blk(c.begin() + pos, c.begin() + pos + len);
      Vec v = F.component(static_cast<int>(len), blk);
      if (v.empty()) continue;
      if (shift_sign(A, blk) < 0) v = scaled(v, Scalar(-1));
      vals.push_back(std::move(v));
      self(self, pos + len);
      vals.pop_back();
    }
  };
  rec(rec, from);
}

}  // namespace detail

// (G o F)_n = sum G_r(F_{i1} (x) ... (x) F_{ir}) computed on the shifted side;
// components above arity_cap are dropped and the result marked truncated.
inline AInfFunctor compose_functors(const AInfFunctor& F, const AInfFunctor& G, int arity_cap = 4) {
  if (F.tgt.get() != G.src.get() && !(F.tgt->quiver == G.src->quiver))
    throw std::invalid_argument("compose_functors: target of F is not the source of G");
  AInfFunctor H;
  H.name = G.name + "." + F.name;
  H.src = F.src;
  H.tgt = G.tgt;
  for (int x : F.obj_map) H.obj_map.push_back(G.obj_map.at(x));
  const long exact = static_cast<long>(F.bound) * G.bound;
  int nmax = arity_cap;
  H.truncated = F.truncated || G.truncated || exact > arity_cap;
  if (!H.truncated) nmax = static_cast<int>(exact);
  if (F.truncated || G.truncated) nmax = std::min({nmax, F.bound, G.bound});
  H.set_bound(std::max(nmax, 1));
  const auto& A = F.src->quiver;
  for (int n = 1; n <= nmax; ++n)
    for (const Chain& c : A.chains(n)) {
      if (H.derived_on(c)) continue;
      Vec out;
      detail::cofunctor_image(F, c, 0, c.size(), F.bound, [&](const Chain& mid, const Scalar& s) {
        Vec v = G.component(static_cast<int>(mid.size()), mid);
        axpy(out, s * Scalar(shift_sign(G.src->quiver, mid)), v);
      });
      if (shift_sign(A, c) < 0) out = scaled(out, Scalar(-1));
      if (!out.empty()) H.comps[n][c] = out;
    }
  return H;
}

// Components agree on every chain of length <= n_max.
inline bool functors_equal(const AInfFunctor& F, const AInfFunctor& G, int n_max) {
  if (F.obj_map != G.obj_map) return false;
  for (int n = 1; n <= n_max; ++n)
    for (const Chain& c : F.src->quiver.chains(n))
      if (!vec_equal(F.component(n, c), G.component(n, c))) return false;
  return true;
}

}  // namespace ainf
