#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

struct Generator {
  std::string label;
  int src = 0;
  int tgt = 0;
  int degree = 0;
  bool operator==(const Generator&) const = default;
};

// Sparse linear combination of generators, keyed by generator index. Zero
// coefficients are never stored.
using Vec = std::map<int, Scalar>;

// Generators in composition order: chain[0] is the last arrow, chain.back()
// the first, so chain[i].src == chain[i+1].tgt.
using Chain = std::vector<int>;

inline void add_term(Vec& v, int g, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.emplace(g, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}
inline void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a.is_zero()) return;
  for (const auto& [g, c] : x) add_term(y, g, a * c);
}
inline Vec scaled(const Vec& x, const Scalar& a) {
  Vec y;
  axpy(y, a, x);
  return y;
}
inline Vec basis_vec(int g) { return Vec{{g, Scalar(1)}}; }
inline bool vec_equal(const Vec& a, const Vec& b) {
  Vec d = a;
  axpy(d, Scalar(-1), b);
  return d.empty();
}

struct GradedVectorSpace {
  std::map<int, std::vector<std::string>> by_degree;
  int dim(int d) const {
    auto it = by_degree.find(d);
    return it == by_degree.end() ? 0 : static_cast<int>(it->second.size());
  }
  int total_dim() const {
    int n = 0;
    for (const auto& [d, l] : by_degree) n += static_cast<int>(l.size());
    return n;
  }
};

class GradedQuiver {
 public:
  int add_object(const std::string& label) {
    if (obj_index_.count(label)) throw std::invalid_argument("duplicate object '" + label + "'");
    obj_index_[label] = static_cast<int>(objects_.size());
    objects_.push_back(label);
    return static_cast<int>(objects_.size()) - 1;
  }
  int add_generator(const std::string& label, int src, int tgt, int degree) {
    if (gen_index_.count(label)) throw std::invalid_argument("duplicate generator '" + label + "'");
    if (src < 0 || tgt < 0 || src >= num_objects() || tgt >= num_objects())
      throw std::invalid_argument("generator '" + label + "' has an unknown endpoint");
    gen_index_[label] = static_cast<int>(gens_.size());
    gens_.push_back({label, src, tgt, degree});
    return static_cast<int>(gens_.size()) - 1;
  }

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_gens() const { return static_cast<int>(gens_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Generator>& gens() const { return gens_; }
  const Generator& gen(int g) const { return gens_.at(g); }
  int degree(int g) const { return gens_.at(g).degree; }

  int object_index(const std::string& label) const {
    auto it = obj_index_.find(label);
    return it == obj_index_.end() ? -1 : it->second;
  }
  int gen_index(const std::string& label) const {
    auto it = gen_index_.find(label);
    return it == gen_index_.end() ? -1 : it->second;
  }

  // Generators spanning Hom(x, y), in declaration order.
  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int g = 0; g < num_gens(); ++g)
      if (gens_[g].src == x && gens_[g].tgt == y) out.push_back(g);
    return out;
  }
  std::vector<int> hom(int x, int y, int d) const {
    std::vector<int> out;
    for (int g = 0; g < num_gens(); ++g)
      if (gens_[g].src == x && gens_[g].tgt == y && gens_[g].degree == d) out.push_back(g);
    return out;
  }
  GradedVectorSpace hom_space(int x, int y) const {
    GradedVectorSpace v;
    for (int g : hom(x, y)) v.by_degree[gens_[g].degree].push_back(gens_[g].label);
    return v;
  }

  bool composable(const Chain& c) const {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (gens_.at(c[i]).src != gens_.at(c[i + 1]).tgt) return false;
    return true;
  }
  int chain_source(const Chain& c) const { return gens_.at(c.back()).src; }
  int chain_target(const Chain& c) const { return gens_.at(c.front()).tgt; }
  int chain_degree(const Chain& c) const {
    int d = 0;
    for (int g : c) d += gens_.at(g).degree;
    return d;
  }

  // All composable chains of length n >= 1, sorted by object path (first
  // arrow outward) and then by generator indices.
  std::vector<Chain> chains(int n) const {
    std::vector<Chain> out;
    if (n <= 0) return out;
    // build in path order: path[0] is the first arrow
    std::vector<int> path;
    auto rec = [&](auto&& self, int at) -> void {
      if (static_cast<int>(path.size()) == n) {
        out.emplace_back(path.rbegin(), path.rend());
        return;
      }
      for (int y = 0; y < num_objects(); ++y)
        for (int g : hom(at, y)) {
          path.push_back(g);
          self(self, y);
          path.pop_back();
        }
    };
    for (int x = 0; x < num_objects(); ++x) rec(rec, x);
    return out;
  }

  // [min, max] generator degree; (0, 0) for an empty quiver.
  std::pair<int, int> degree_range() const {
    if (gens_.empty()) return {0, 0};
    int lo = gens_[0].degree, hi = lo;
    for (const auto& g : gens_) {
      lo = std::min(lo, g.degree);
      hi = std::max(hi, g.degree);
    }
    return {lo, hi};
  }

  bool operator==(const GradedQuiver& o) const { return objects_ == o.objects_ && gens_ == o.gens_; }

 private:
  std::vector<std::string> objects_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> obj_index_;
  std::unordered_map<std::string, int> gen_index_;
};

// Expands parts[0] (x) ... (x) parts[k-1] over generators, calling
// fn(chain, coefficient) for each composable term.
template <class Fn>
void expand_tensor(const GradedQuiver& q, const std::vector<const Vec*>& parts, Fn&& fn) {
  Chain cur;
  auto rec = [&](auto&& self, std::size_t i, const Scalar& c) -> void {
    if (i == parts.size()) {
      fn(static_cast<const Chain&>(cur), c);
      return;
    }
    for (const auto& [g, x] : *parts[i]) {
      if (!cur.empty() && q.gen(cur.back()).src != q.gen(g).tgt) continue;
      cur.push_back(g);
      self(self, i + 1, c * x);
      cur.pop_back();
    }
  };
  rec(rec, 0, Scalar(1));
}

// ---- Koszul signs -------------------------------------------------------
// Convention: symbols are read left to right; moving a symbol of degree a
// past one of degree b costs (-1)^{ab}; a map of degree m applied to the
// factor at position i passes every factor to its left.

// perm[i] = index (into degrees) of the symbol that ends up at position i.
inline int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
  if (perm.size() != degrees.size()) throw std::invalid_argument("permutation length mismatch");
  long e = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) e += static_cast<long>(degrees[perm[i]]) * degrees[perm[j]];
  return (e & 1) ? -1 : 1;
}

// Sign of applying a degree-m map at position pos of a tensor.
inline int application_sign(int map_degree, const std::vector<int>& degrees, std::size_t pos) {
  long s = 0;
  for (std::size_t i = 0; i < pos && i < degrees.size(); ++i) s += degrees[i];
  return ((static_cast<long>(map_degree) * s) & 1) ? -1 : 1;
}

inline int parity_sign(long e) { return (e & 1) ? -1 : 1; }

// Sign relating a multilinear map to its suspension on the shifted quiver:
// Phi(s x_1 .. s x_k) = shift_sign(|x_1|..|x_k|) * s phi(x_1..x_k).
inline int shift_sign(const std::vector<int>& degrees) {
  long e = 0;
  const long k = static_cast<long>(degrees.size());
  for (long p = 1; p <= k; ++p) e += (k - p) * (degrees[p - 1] - 1);
  return parity_sign(e);
}
inline int shift_sign(const GradedQuiver& q, const Chain& c) {
  long e = 0;
  const long k = static_cast<long>(c.size());
  for (long p = 1; p <= k; ++p) e += (k - p) * (q.degree(c[p - 1]) - 1);
  return parity_sign(e);
}

// ---- quiver constructions ----------------------------------------------

inline GradedQuiver shift(const GradedQuiver& q, int k) {
  GradedQuiver out;
  for (const auto& o : q.objects()) out.add_object(o);
  for (const auto& g : q.gens()) out.add_generator(g.label, g.src, g.tgt, g.degree - k);
  return out;
}

// (Q (x) R)(x, y) = sum_z Q(x, z) (x) R(z, y), labelled "left|right".
inline GradedQuiver tensor_quiver(const GradedQuiver& q, const GradedQuiver& r) {
  if (q.objects() != r.objects()) throw std::invalid_argument("tensor_quiver: object sets differ");
  GradedQuiver out;
  for (const auto& o : q.objects()) out.add_object(o);
  struct Item {
    std::string label;
    int src, tgt, deg;
  };
  std::vector<Item> items;
  for (const auto& a : q.gens())
    for (const auto& b : r.gens())
      if (a.tgt == b.src) items.push_back({a.label + "|" + b.label, a.src, b.tgt, a.degree + b.degree});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.src, a.tgt, a.label) < std::tie(b.src, b.tgt, b.label);
  });
  for (const auto& it : items) out.add_generator(it.label, it.src, it.tgt, it.deg);
  return out;
}

// The unit quiver: one degree-0 line "1_x" on each diagonal pair.
inline GradedQuiver unit_quiver(const std::vector<std::string>& objects) {
  GradedQuiver out;
  for (const auto& o : objects) out.add_object(o);
  for (int x = 0; x < out.num_objects(); ++x) out.add_generator("1_" + objects[x], x, x, 0);
  return out;
}

}  // namespace ainf
