#pragma once

#include "ainf/category.hpp"
#include "ainf/linalg.hpp"

namespace ainf::oracle {

// Classical Hochschild cochains of an ungraded one-object algebra: C^n = Hom(A^n, A)
// as m x m^n matrices, delta with the textbook alternating signs.
struct ClassicalOracle {
  Field F;
  int m = 0;
  std::vector<std::vector<Vector>> prod;  // prod[i][j] = e_i e_j as coordinates

  explicit ClassicalOracle(const AInfPresentation& a) : F(a.field), m(a.quiver.num_gens()) {
    prod.assign(m, std::vector<Vector>(m, Vector(m, Scalar::in(F, 0))));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Vec x = basis_vec(i), y = basis_vec(j);
        Vec p = a.apply(2, {&x, &y});
        if (a.is_unit_gen(i)) p = y;
        if (a.is_unit_gen(j)) p = x;
        for (const auto& [g, c] : p) prod[i][j][g] = c;
      }
  }
  long power(int n) const {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= m;
    return r;
  }
  // delta: C^n -> C^{n+1}; a cochain phi has coordinate (out, input multi-index).
  Matrix delta(int n) const {
    const long in_n = power(n), in_n1 = power(n + 1);
    Matrix D(F, static_cast<int>(m * in_n1), static_cast<int>(m * in_n));
    auto col = [&](int out, long idx) { return static_cast<int>(out * in_n + idx); };
    for (long idx = 0; idx < in_n1; ++idx) {
      std::vector<int> a(n + 1);
      long t = idx;
      for (int p = n; p >= 0; --p) {
        a[p] = static_cast<int>(t % m);
        t /= m;
      }
      auto encode = [&](const std::vector<int>& v) {
        long e = 0;
        for (int x : v) e = e * m + x;
        return e;
      };
      for (int out = 0; out < m; ++out) {
        const int row = static_cast<int>(out * in_n1 + idx);
        // a_0 phi(a_1..a_n)
        {
          std::vector<int> rest(a.begin() + 1, a.end());
          for (int z = 0; z < m; ++z)
            if (!prod[a[0]][z][out].is_zero()) D.at(row, col(z, encode(rest))) += prod[a[0]][z][out];
        }
        // (-1)^{i+1} phi(.., a_i a_{i+1}, ..)
        for (int i = 0; i < n; ++i)
          for (int z = 0; z < m; ++z) {
            const Scalar& c = prod[a[i]][a[i + 1]][z];
            if (c.is_zero()) continue;
            std::vector<int> v(a.begin(), a.begin() + i);
            v.push_back(z);
            v.insert(v.end(), a.begin() + i + 2, a.end());
            D.at(row, col(out, encode(v))) += ((i + 1) % 2 ? Scalar(-1) : Scalar(1)) * c;
          }
        // (-1)^{n+1} phi(a_0..a_{n-1}) a_n
        {
          std::vector<int> rest(a.begin(), a.end() - 1);
          for (int z = 0; z < m; ++z)
            if (!prod[z][a[n]][out].is_zero())
              D.at(row, col(z, encode(rest))) += ((n + 1) % 2 ? Scalar(-1) : Scalar(1)) * prod[z][a[n]][out];
        }
      }
    }
    return D;
  }
  int hh(int n) const {
    const int dim = static_cast<int>(m * power(n));
    const int out = rank(delta(n));
    const int in = n > 0 ? rank(delta(n - 1)) : 0;
    return dim - out - in;
  }
};

}  // namespace ainf::oracle
