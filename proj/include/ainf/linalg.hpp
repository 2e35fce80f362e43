#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Scalar::in(f, 0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }
  static Matrix identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::in(f, 1);
    return m;
  }
  static Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = Scalar::in(f, rows[i][j]);
    }
    return m;
  }
  static Matrix from_columns(Field f, int rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (static_cast<int>(cols[j].size()) != rows) throw std::invalid_argument("column length mismatch");
      for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i].in_modulus(f.modulus());
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }
  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  Vector column(int j) const {
    Vector v;
    v.reserve(rows_);
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }
  Vector apply(const Vector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length mismatch");
    Vector y(rows_, Scalar::in(field_, 0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] += at(i, j) * x[j];
    return y;
  }
  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Scalar& x = a.at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!b.at(k, j).is_zero()) c.at(i, j) += x * b.at(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Field field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

// Reduced row echelon data: pivot column of each nonzero row, rows scaled so
// the pivot is 1 and every other pivot column is cleared.
struct Rref {
  std::vector<int> pivots;
  std::vector<Vector> rows;
};

namespace detail {

// Fraction-free Gauss-Jordan over Z: rows are kept primitive, so there is no
// Bareiss divisor and sparse +-1 matrices stay small.
inline Rref rref_rational(const Matrix& m) {
  const int R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (int i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < C; ++j) {
      const mpq_class& q = m.at(i, j).value();
      if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    for (int j = 0; j < C; ++j) {
      const mpq_class& q = m.at(i, j).value();
      if (sgn(q) != 0) a[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  auto make_primitive = [&](std::vector<mpz_class>& row, int from) {
    mpz_class g = 0;
    for (int j = from; j < C; ++j)
      if (sgn(row[j]) != 0) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[j].get_mpz_t());
        if (g == 1) return;
      }
    if (g > 1)
      for (int j = from; j < C; ++j)
        if (sgn(row[j]) != 0) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), g.get_mpz_t());
  };
  Rref out;
  int r = 0;
  std::vector<int> nz;
  for (int c = 0; c < C && r < R; ++c) {
    int best = -1;
    for (int i = r; i < R; ++i)
      if (sgn(a[i][c]) != 0 && (best < 0 || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0)) {
        best = i;
        if (mpz_cmpabs_ui(a[i][c].get_mpz_t(), 1) == 0) break;
      }
    if (best < 0) continue;
    std::swap(a[r], a[best]);
    make_primitive(a[r], c);
    if (sgn(a[r][c]) < 0)
      for (int j = c; j < C; ++j) a[r][j] = -a[r][j];
    nz.clear();
    for (int j = c; j < C; ++j)
      if (sgn(a[r][j]) != 0) nz.push_back(j);
    const mpz_class& piv = a[r][c];
    for (int i = 0; i < R; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      mpz_class g, x, y;
      mpz_gcd(g.get_mpz_t(), piv.get_mpz_t(), a[i][c].get_mpz_t());
      x = piv / g;
      y = a[i][c] / g;
      int start = i < r ? 0 : c;
      if (x != 1)
        for (int j = start; j < C; ++j)
          if (sgn(a[i][j]) != 0) a[i][j] *= x;
      for (int j : nz) a[i][j] -= y * a[r][j];
      make_primitive(a[i], start);
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (int i = 0; i < r; ++i) {
    Vector row(C, Scalar(0));
    const mpz_class& piv = a[i][out.pivots[i]];
    for (int j = 0; j < C; ++j)
      if (sgn(a[i][j]) != 0) row[j] = Scalar(mpq_class(a[i][j], piv), 0);
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline Rref rref_modular(const Matrix& m) {
  const int R = m.rows(), C = m.cols();
  const std::int64_t p = m.field().modulus();
  std::vector<std::vector<std::int64_t>> a(R, std::vector<std::int64_t>(C, 0));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) a[i][j] = m.at(i, j).in_modulus(static_cast<std::uint32_t>(p)).value().get_num().get_si();
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2, b = x % p;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  Rref out;
  int r = 0;
  std::vector<int> nz;
  for (int c = 0; c < C && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    std::int64_t s = inv(a[r][c]);
    nz.clear();
    for (int j = c; j < C; ++j)
      if (a[r][j] != 0) {
        a[r][j] = a[r][j] * s % p;
        nz.push_back(j);
      }
    for (int i = 0; i < R; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c];
      for (int j : nz) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (int i = 0; i < r; ++i) {
    Vector row;
    row.reserve(C);
    for (int j = 0; j < C; ++j) row.emplace_back(mpq_class(a[i][j]), static_cast<std::uint32_t>(p));
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline Rref rref(const Matrix& m) {
  return m.field().is_rational() ? detail::rref_rational(m) : detail::rref_modular(m);
}

inline int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

inline std::vector<Vector> kernel_basis(const Matrix& m) {
  Rref e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vector v(m.cols(), Scalar::in(m.field(), 0));
    v[j] = Scalar::in(m.field(), 1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

// A particular solution of m x = b, or nullopt when inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i].in_modulus(m.field().modulus());
  }
  Rref e = rref(aug);
  Vector x(m.cols(), Scalar::in(m.field(), 0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][m.cols()];
  }
  return x;
}

// Indices of a maximal independent subset of the columns, scanning left to right.
inline std::vector<int> independent_columns(const Matrix& m) { return rref(m).pivots; }

inline bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

struct WindowError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Finite window [lo, hi] of a cochain complex. diff.at(d) : C^d -> C^{d+1}
// for lo <= d < hi (rows = dim C^{d+1}, cols = dim C^d).
struct ComplexPresentation {
  Field field;
  int lo = 0;
  int hi = -1;
  std::map<int, std::vector<std::string>> basis;
  std::map<int, Matrix> diff;

  int dim(int d) const {
    auto it = basis.find(d);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
  bool in_window(int d) const { return d >= lo && d <= hi; }

  // Throws std::invalid_argument on shape mismatch or d o d != 0.
  void validate() const {
    for (int d = lo; d < hi; ++d) {
      auto it = diff.find(d);
      if (it == diff.end()) throw std::invalid_argument("missing differential in degree " + std::to_string(d));
      if (it->second.rows() != dim(d + 1) || it->second.cols() != dim(d))
        throw std::invalid_argument("differential shape mismatch in degree " + std::to_string(d));
    }
    for (int d = lo; d + 1 < hi; ++d)
      if (!(diff.at(d + 1) * diff.at(d)).is_zero())
        throw std::invalid_argument("d o d != 0 starting in degree " + std::to_string(d));
  }

  // Matrix of d^d, with the zero map standing in outside the window.
  Matrix outgoing(int d) const {
    auto it = diff.find(d);
    if (it != diff.end()) return it->second;
    return Matrix(field, dim(d + 1), dim(d));
  }
};

struct CohomologyResult {
  int dimension = 0;
  std::vector<Vector> representatives;
  bool truncated = false;
};

inline CohomologyResult cohomology(const ComplexPresentation& c, int d) {
  if (!c.in_window(d))
    throw WindowError("degree " + std::to_string(d) + " outside window [" + std::to_string(c.lo) + ", " +
                      std::to_string(c.hi) + "]");
  CohomologyResult res;
  res.truncated = (d == c.lo || d == c.hi);
  const int n = c.dim(d);
  std::vector<Vector> ker = kernel_basis(c.outgoing(d));
  Matrix in = c.outgoing(d - 1);
  std::vector<Vector> cols;
  for (int j = 0; j < in.cols(); ++j) cols.push_back(in.column(j));
  const int nin = static_cast<int>(cols.size());
  cols.insert(cols.end(), ker.begin(), ker.end());
  for (int j : independent_columns(Matrix::from_columns(c.field, n, cols)))
    if (j >= nin) res.representatives.push_back(cols[j]);
  res.dimension = static_cast<int>(res.representatives.size());
  return res;
}

// Coordinates of the class of cocycle z in the representative basis, or
// nullopt if z is not a cocycle-class combination of them.
inline std::optional<Vector> class_coordinates(const ComplexPresentation& c, int d, const CohomologyResult& h,
                                               const Vector& z) {
  Matrix in = c.outgoing(d - 1);
  std::vector<Vector> cols = h.representatives;
  for (int j = 0; j < in.cols(); ++j) cols.push_back(in.column(j));
  auto x = solve(Matrix::from_columns(c.field, c.dim(d), cols), z);
  if (!x) return std::nullopt;
  x->resize(h.representatives.size());
  return x;
}

// A cochain w with d^{d-1} w = z, or nullopt when z is not exact.
inline std::optional<Vector> bounding_cochain(const ComplexPresentation& c, int d, const Vector& z) {
  return solve(c.outgoing(d - 1), z);
}

}  // namespace ainf
