#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ainf {

struct FieldMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScalarParseError : std::runtime_error {
  std::string suggestion;
  ScalarParseError(const std::string& what, std::string hint = {})
      : std::runtime_error(what), suggestion(std::move(hint)) {}
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Ground field: p == 0 means the rationals.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }
  std::uint32_t modulus() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  bool operator==(const Field&) const = default;

  // "Q" or "F_p"
  std::string name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }
  static Field from_name(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.size() > 2 && s[0] == 'F' && s[1] == '_') {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s.substr(2), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == s.size() - 2 && v < (1ul << 31)) return prime(static_cast<std::uint32_t>(v));
    }
    throw std::invalid_argument("unknown field '" + s + "' (expected Q or F_p)");
  }

 private:
  std::uint32_t p_ = 0;
};

// Exact scalar in Q or F_p. A modulus-free value (p == 0) that meets an F_p
// value is reduced into F_p, so integer literals work in either field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& q, std::uint32_t p = 0) : v_(q), p_(p) { normalize(); }
  static Scalar in(const Field& f, long n) { return Scalar(mpq_class(n), f.modulus()); }
  static Scalar in(const Field& f, const mpq_class& q) { return Scalar(q, f.modulus()); }

  std::uint32_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const { return Scalar(-v_, p_); }
  Scalar& operator+=(const Scalar& o) {
    unify(o);
    v_ += lift(o);
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    unify(o);
    v_ -= lift(o);
    normalize();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    unify(o);
    v_ *= lift(o);
    normalize();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    unify(o);
    Scalar inv = o.in_modulus(p_).inverse();
    v_ *= inv.v_;
    normalize();
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (p_ == 0) return Scalar(1 / v_, 0);
    mpz_class r;
    mpz_class m(p_);
    mpz_invert(r.get_mpz_t(), v_.get_num_mpz_t(), m.get_mpz_t());
    return Scalar(mpq_class(r), p_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.v_ == b.v_;
    if (a.p_ == 0) return a.in_modulus(b.p_).v_ == b.v_;
    if (b.p_ == 0) return b.in_modulus(a.p_).v_ == a.v_;
    return false;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar in_modulus(std::uint32_t p) const {
    if (p_ == p || p == 0) return *this;
    if (p_ != 0) throw FieldMismatch("scalars from F_" + std::to_string(p_) + " and F_" + std::to_string(p));
    return Scalar(v_, p);
  }

  std::string str() const {
    if (p_ != 0) return v_.get_num().get_str() + " mod " + std::to_string(p_);
    return v_.get_str();
  }

  // Accepts "a", "a/b" (lowest terms, b > 1) and "k mod p" (0 <= k < p).
  static Scalar parse(const std::string& s) {
    auto mod = s.find(" mod ");
    if (mod != std::string::npos) {
      mpz_class k, p;
      if (!parse_int(s.substr(0, mod), k) || !parse_int(s.substr(mod + 5), p) || p <= 1 ||
          !p.fits_ulong_p() || !is_prime(p.get_ui()))
        throw ScalarParseError("malformed prime-field scalar '" + s + "'");
      if (k < 0 || k >= p) {
        mpz_class r = k % p;
        if (r < 0) r += p;
        throw ScalarParseError("non-canonical scalar '" + s + "'", r.get_str() + " mod " + p.get_str());
      }
      return Scalar(mpq_class(k), static_cast<std::uint32_t>(p.get_ui()));
    }
    auto slash = s.find('/');
    mpz_class a, b(1);
    if (!parse_int(s.substr(0, slash), a) ||
        (slash != std::string::npos && !parse_int(s.substr(slash + 1), b)) || b == 0)
      throw ScalarParseError("malformed scalar '" + s + "'");
    mpq_class q(a, b);
    q.canonicalize();
    if (q.get_str() != s) throw ScalarParseError("non-canonical scalar '" + s + "'", q.get_str());
    return Scalar(q, 0);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static bool parse_int(const std::string& t, mpz_class& out) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') return false;
    return out.set_str(t, 10) == 0;
  }
  void unify(const Scalar& o) {
    if (p_ == o.p_ || o.p_ == 0) return;
    if (p_ != 0) throw FieldMismatch("scalars from F_" + std::to_string(p_) + " and F_" + std::to_string(o.p_));
    *this = in_modulus(o.p_);
  }
  mpq_class lift(const Scalar& o) const { return o.p_ == p_ ? o.v_ : o.in_modulus(p_).v_; }
  void normalize() {
    if (p_ == 0) {
      v_.canonicalize();
      return;
    }
    mpz_class m(p_);
    mpz_class num = v_.get_num() % m;
    mpz_class den = v_.get_den() % m;
    if (den == 0) throw std::domain_error("denominator divisible by field characteristic");
    if (den != 1) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      num = (num * inv) % m;
    }
    if (num < 0) num += m;
    v_ = mpq_class(num);
  }

  mpq_class v_;
  std::uint32_t p_ = 0;
};

}  // namespace ainf
