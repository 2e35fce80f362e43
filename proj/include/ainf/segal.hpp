#pragma once

#include <string>
#include <vector>

#include "ainf/category.hpp"
#include "ainf/nerve.hpp"

namespace ainf {

// An element of X(a_0, .., a_n) at simplicial dimension 0: a string of
// composable functors a_0 -> a_1 -> .. -> a_n. Higher simplicial dimensions
// are carried only as a tag, because composing them needs the bar-level
// composition morphism, which is not available.
struct SegalElement {
  std::vector<PresPtr> objects;
  std::vector<AInfFunctor> functors;  // functors[k] : objects[k] -> objects[k + 1]
  int simplicial_dim = 0;

  int n() const { return static_cast<int>(objects.size()) - 1; }
};

inline void check_segal(const SegalElement& x) {
  if (x.objects.empty()) throw std::invalid_argument("segal: no objects");
  if (static_cast<int>(x.functors.size()) != x.n()) throw std::invalid_argument("segal: need n functors for n + 1 objects");
  for (int k = 0; k < x.n(); ++k)
    if (x.functors[k].src.get() != x.objects[k].get() || x.functors[k].tgt.get() != x.objects[k + 1].get())
      throw std::invalid_argument("segal: functor " + std::to_string(k) + " has the wrong endpoints");
}

// X(d_j): outer faces project away a_0 or a_n; inner faces compose at a_j.
inline SegalElement segal_face(const SegalElement& x, int j, int arity_cap = 8) {
  check_segal(x);
  const int n = x.n();
  if (n < 1 || j < 0 || j > n) throw std::out_of_range("segal_face: index out of range");
  SegalElement out;
  out.simplicial_dim = x.simplicial_dim;
  if (j == 0 || j == n) {
    out.objects = x.objects;
    out.functors = x.functors;
    out.objects.erase(out.objects.begin() + (j == 0 ? 0 : n));
    out.functors.erase(out.functors.begin() + (j == 0 ? 0 : n - 1));
    return out;
  }
  if (x.simplicial_dim > 0)
    throw UnsupportedFeature("segal_face: composition above simplicial dimension 0 is not supported");
  out.objects = x.objects;
  out.objects.erase(out.objects.begin() + j);
  out.functors = x.functors;
  AInfFunctor composite = compose_functors(x.functors[j - 1], x.functors[j], arity_cap);
  out.functors.erase(out.functors.begin() + j - 1, out.functors.begin() + j + 1);
  out.functors.insert(out.functors.begin() + j - 1, composite);
  return out;
}

// X(s_j): repeat a_j with the identity functor in between.
inline SegalElement segal_degeneracy(const SegalElement& x, int j) {
  check_segal(x);
  if (j < 0 || j > x.n()) throw std::out_of_range("segal_degeneracy: index out of range");
  SegalElement out = x;
  out.objects.insert(out.objects.begin() + j, x.objects[j]);
  out.functors.insert(out.functors.begin() + j, identity_functor(x.objects[j]));
  return out;
}

inline bool segal_equal(const SegalElement& a, const SegalElement& b, int n_max = 4) {
  if (a.objects.size() != b.objects.size() || a.simplicial_dim != b.simplicial_dim) return false;
  for (std::size_t k = 0; k < a.objects.size(); ++k)
    if (a.objects[k].get() != b.objects[k].get()) return false;
  for (std::size_t k = 0; k < a.functors.size(); ++k)
    if (!functors_equal(a.functors[k], b.functors[k], n_max)) return false;
  return true;
}

}  // namespace ainf
