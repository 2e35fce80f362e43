#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ainf/category.hpp"

namespace ainf {

// Small fluent builder used by the corpus constructors and tests.
class PresentationBuilder {
 public:
  PresentationBuilder(std::string name, Field f = Field::rationals()) {
    p_.name = std::move(name);
    p_.field = f;
  }
  PresentationBuilder& object(const std::string& x) {
    p_.quiver.add_object(x);
    return *this;
  }
  PresentationBuilder& gen(const std::string& label, const std::string& src, const std::string& tgt, int degree) {
    p_.quiver.add_generator(label, obj(src), obj(tgt), degree);
    return *this;
  }
  PresentationBuilder& kmax(int k) {
    p_.set_kmax(k);
    return *this;
  }
  PresentationBuilder& unit(const std::string& x, const std::string& g, long c = 1) {
    p_.set_unit(obj(x), Vec{{gid(g), Scalar::in(p_.field, c)}});
    return *this;
  }
  // m_k(labels...) = sum coeff * label
  PresentationBuilder& op(const std::vector<std::string>& in, const std::vector<std::pair<long, std::string>>& out) {
    Chain c;
    for (const auto& l : in) c.push_back(gid(l));
    Vec v;
    for (const auto& [s, l] : out) add_term(v, gid(l), Scalar::in(p_.field, s));
    p_.set_op(static_cast<int>(c.size()), c, v);
    return *this;
  }
  // m_2 unit rules for every generator.
  PresentationBuilder& strict_units() {
    const auto& q = p_.quiver;
    for (int g = 0; g < q.num_gens(); ++g) {
      const int ey = p_.unit_gen(q.gen(g).tgt), ex = p_.unit_gen(q.gen(g).src);
      p_.set_op(2, {ey, g}, basis_vec(g));
      p_.set_op(2, {g, ex}, basis_vec(g));
    }
    return *this;
  }
  AInfPresentation build() const { return p_; }
  PresPtr ptr() const { return std::make_shared<const AInfPresentation>(p_); }

 private:
  int obj(const std::string& x) const {
    int i = p_.quiver.object_index(x);
    if (i < 0) throw ValidationError("unknown object '" + x + "'");
    return i;
  }
  int gid(const std::string& g) const {
    int i = p_.quiver.gen_index(g);
    if (i < 0) throw ValidationError("unknown generator '" + g + "'");
    return i;
  }
  AInfPresentation p_;
};

namespace corpus {

inline AInfPresentation ground_field(Field f = Field::rationals()) {
  return PresentationBuilder("ground_field", f).object("o").gen("1", "o", "o", 0).unit("o", "1").strict_units().build();
}

// K[e]/e^2 on one object.
inline AInfPresentation dual_numbers(Field f = Field::rationals()) {
  return PresentationBuilder("dual_numbers", f)
      .object("o")
      .gen("1", "o", "o", 0)
      .gen("e", "o", "o", 0)
      .unit("o", "1")
      .strict_units()
      .build();
}

// Upper-triangular 2x2 matrices as a one-object algebra with unit E11 + E22,
// written in the idempotent basis {1, E11, E12}.
inline AInfPresentation upper_triangular(Field f = Field::rationals()) {
  return PresentationBuilder("upper_triangular", f)
      .object("o")
      .gen("1", "o", "o", 0)
      .gen("E11", "o", "o", 0)
      .gen("E12", "o", "o", 0)
      .unit("o", "1")
      .strict_units()
      .op({"E11", "E11"}, {{1, "E11"}})
      .op({"E11", "E12"}, {{1, "E12"}})
      .build();
}

// 1 and u with |u| = -1, u^2 = 0, zero differential.
inline AInfPresentation degree_minus_one(Field f = Field::rationals()) {
  return PresentationBuilder("degree_minus_one", f)
      .object("o")
      .gen("1", "o", "o", 0)
      .gen("u", "o", "o", -1)
      .unit("o", "1")
      .strict_units()
      .build();
}

// Two objects joined by mutually inverse isomorphisms f: x -> y, g: y -> x.
inline AInfPresentation two_isomorphic(Field f = Field::rationals()) {
  return PresentationBuilder("two_isomorphic", f)
      .object("x")
      .object("y")
      .gen("1x", "x", "x", 0)
      .gen("1y", "y", "y", 0)
      .gen("f", "x", "y", 0)
      .gen("g", "y", "x", 0)
      .unit("x", "1x")
      .unit("y", "1y")
      .strict_units()
      .op({"g", "f"}, {{1, "1x"}})
      .op({"f", "g"}, {{1, "1y"}})
      .build();
}

// Two objects with Hom(x, y) the acyclic cone c -> d (|c| = -1).
inline AInfPresentation acyclic_cone(Field f = Field::rationals()) {
  return PresentationBuilder("acyclic_cone", f)
      .object("x")
      .object("y")
      .gen("1x", "x", "x", 0)
      .gen("1y", "y", "y", 0)
      .gen("c", "x", "y", -1)
      .gen("d", "x", "y", 0)
      .unit("x", "1x")
      .unit("y", "1y")
      .strict_units()
      .op({"c"}, {{1, "d"}})
      .build();
}

// Strictly unital A-infinity algebra with m_3(x, x, x) = y, |x| = 0, |y| = -1,
// all products of non-units zero.
inline AInfPresentation massey_triple(Field f = Field::rationals()) {
  return PresentationBuilder("massey_triple", f)
      .object("o")
      .gen("1", "o", "o", 0)
      .gen("x", "o", "o", 0)
      .gen("y", "o", "o", -1)
      .kmax(3)
      .unit("o", "1")
      .strict_units()
      .op({"x", "x", "x"}, {{1, "y"}})
      .build();
}

inline std::string simplex_gen(int i, int j) { return "(" + std::to_string(i) + std::to_string(j) + ")"; }

// Objects 0..n, Hom(i, j) = K (ij) for i <= j, (jk) o (ij) = (ik).
inline AInfPresentation dg_simplex(int n, Field f = Field::rationals()) {
  if (n < 0) throw std::invalid_argument("dg_simplex: n must be non-negative");
  if (n > 9) throw std::invalid_argument("dg_simplex: n > 9 not supported by the label scheme");
  PresentationBuilder b("dg_simplex_" + std::to_string(n), f);
  for (int i = 0; i <= n; ++i) b.object(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) b.gen(simplex_gen(i, j), std::to_string(i), std::to_string(j), 0);
  for (int i = 0; i <= n; ++i) b.unit(std::to_string(i), simplex_gen(i, i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) b.op({simplex_gen(j, k), simplex_gen(i, j)}, {{1, simplex_gen(i, k)}});
  return b.build();
}

// Dual numbers with e * e = 1. Still associative (it is K[e]/(e^2 - 1)).
inline AInfPresentation corrupted_dual_numbers(Field f = Field::rationals()) {
  auto p = dual_numbers(f);
  p.name = "corrupted_dual_numbers";
  p.set_op(2, {1, 1}, basis_vec(0));
  return p;
}

// e * e = 1 together with e * 1 = 0: associativity fails on (e, e, 1).
inline AInfPresentation broken_dual_numbers(Field f = Field::rationals()) {
  auto p = corrupted_dual_numbers(f);
  p.name = "broken_dual_numbers";
  p.set_op(2, {1, 0}, {});
  return p;
}

inline std::vector<AInfPresentation> all(Field f = Field::rationals()) {
  return {ground_field(f),   dual_numbers(f),  upper_triangular(f), degree_minus_one(f),
          two_isomorphic(f), acyclic_cone(f),  massey_triple(f),    dg_simplex(0, f),
          dg_simplex(1, f),  dg_simplex(2, f), dg_simplex(3, f)};
}

}  // namespace corpus
}  // namespace ainf
