#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ainf/corpus.hpp"
#include "ainf/hochschild.hpp"
#include "oracles.hpp"

using namespace ainf;
using oracle::ClassicalOracle;

namespace {

using FPtr = std::shared_ptr<const AInfFunctor>;

PresPtr ptr(AInfPresentation a) { return std::make_shared<const AInfPresentation>(std::move(a)); }

PreNat random_cochain(const FPtr& id, int d, int n_max, std::mt19937& rng) {
  PreNat r;
  r.f = r.g = id;
  r.degree = d;
  r.arity_max = n_max;
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const NatWord& w : nat_words(id->src->quiver, n_max)) {
    Vec v;
    for (int y : detail::slot_targets(*id, *id, w, d)) add_term(v, y, Scalar::in(id->src->field, coef(rng)));
    r.set(w, v);
  }
  return r;
}

PreNat lin(const PreNat& a, const PreNat& b, long s) {
  PreNat out = a;
  out.arity_max = std::max(a.arity_max, b.arity_max);
  for (const auto& [w, v] : b.comps) {
    Vec x = out.at(w);
    axpy(x, Scalar(s), v);
    out.set(w, x);
  }
  return out;
}

bool exact(const PreNat& z) {
  if (z.is_zero()) return true;
  return hochschild_bounding(z).has_value();
}

}  // namespace

TEST_CASE("classical oracle sanity", "[hochschild][oracle]") {
  ClassicalOracle k(corpus::ground_field());
  CHECK(k.hh(0) == 1);
  CHECK(k.hh(1) == 0);
  ClassicalOracle e(corpus::dual_numbers());
  CHECK(e.hh(0) == 2);
  // delta^2 = 0
  for (int n = 0; n < 3; ++n) {
    Matrix a = e.delta(n), b = e.delta(n + 1);
    for (int j = 0; j < a.cols(); ++j) {
      Vector v = b.apply(a.column(j));
      for (const auto& s : v) CHECK(s.is_zero());
    }
  }
}

TEST_CASE("Hochschild slice dimensions", "[hochschild]") {
  auto K = hochschild_complex(ptr(corpus::ground_field()), -2, 4);
  for (int d = -2; d <= 4; ++d) CHECK(K.complex.dim(d) == (d >= 0 ? 1 : 0));
  auto E = hochschild_complex(ptr(corpus::dual_numbers()), -1, 4);
  CHECK(E.complex.dim(-1) == 0);
  for (int d = 0; d <= 4; ++d) CHECK(E.complex.dim(d) == (1 << (d + 1)));
  for (const auto& a : {corpus::upper_triangular(), corpus::two_isomorphic(), corpus::dg_simplex(2)}) {
    auto w = hochschild_complex(ptr(a), -3, 0);
    for (int d = -3; d < 0; ++d) CHECK(w.complex.dim(d) == 0);
  }
}

TEST_CASE("HH of the ground field and the dual numbers", "[hochschild]") {
  auto k = ptr(corpus::ground_field());
  CHECK(hh(k, 0).dimension == 1);
  for (int d = 1; d <= 4; ++d) CHECK(hh(k, d).dimension == 0);
  auto e = ptr(corpus::dual_numbers());
  CHECK(hh(e, 0).dimension == 2);
  for (int i = 1; i <= 3; ++i) CHECK(hh(e, -i).dimension == 0);
  auto u = ptr(corpus::degree_minus_one());
  CHECK(hh(u, -1).dimension == 1);
}

TEST_CASE("Hochschild complex agrees with the classical cochain complex", "[hochschild][oracle]") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)})
    for (const auto& a : {corpus::ground_field(f), corpus::dual_numbers(f), corpus::upper_triangular(f)}) {
      INFO(a.name << " over " << f.name());
      ClassicalOracle o(a);
      auto id = identity_ptr(ptr(a));
      auto w = hochschild_complex(id, -1, 5);
      for (int d = 0; d <= 3; ++d) {
        CHECK(w.complex.dim(d) == o.m * o.power(d));
        CHECK(cohomology(w.complex, d).dimension == o.hh(d));
      }
    }
}

TEST_CASE("m1 is the bracket with the structure cochain", "[hochschild]") {
  std::mt19937 rng(5);
  for (const auto& a : {corpus::dual_numbers(), corpus::degree_minus_one(), corpus::two_isomorphic(),
                        corpus::dg_simplex(2), corpus::acyclic_cone(), corpus::upper_triangular(Field::prime(3))}) {
    INFO(a.name);
    auto id = identity_ptr(ptr(a));
    auto mu = structure_cochain(id);
    for (int d = -1; d <= 2; ++d) {
      auto n = natural_arity_bound(a, a, d);
      if (!n || *n < 0) continue;
      auto r = random_cochain(id, d, *n, rng);
      auto lhs = m1(detail::widened(r, *natural_arity_bound(a, a, d + 1)));
      auto rhs = gerstenhaber_bracket(mu, r);
      CHECK(prenat_equal(lhs, rhs));
    }
  }
}

TEST_CASE("bracket is antisymmetric, Jacobi, and a derivation of m1", "[hochschild]") {
  std::mt19937 rng(9);
  for (const auto& a : {corpus::dual_numbers(), corpus::degree_minus_one(), corpus::dg_simplex(2)}) {
    INFO(a.name);
    auto id = identity_ptr(ptr(a));
    auto cochain = [&](int d) { return random_cochain(id, d, std::max(0, *natural_arity_bound(a, a, d)), rng); };
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 2; ++q) {
        auto x = cochain(p), y = cochain(q);
        auto xy = gerstenhaber_bracket(x, y), yx = gerstenhaber_bracket(y, x);
        CHECK(lin(xy, yx, parity_sign(static_cast<long>(p - 1) * (q - 1))).is_zero());
        if ((p - 1) % 2 == 0) CHECK(gerstenhaber_bracket(x, x).is_zero());
        // m1 [x, y] = [m1 x, y] + (-1)^{p-1} [x, m1 y]
        auto up = [&](const PreNat& r) { return m1(detail::widened(r, *natural_arity_bound(a, a, r.degree + 1))); };
        auto lhs = up(xy);
        auto rhs = lin(gerstenhaber_bracket(up(x), y), gerstenhaber_bracket(x, up(y)), parity_sign(p - 1));
        CHECK(prenat_equal(lhs, rhs));
      }
    for (int p = 0; p <= 1; ++p)
      for (int q = 0; q <= 1; ++q)
        for (int s = 0; s <= 1; ++s) {
          auto x = cochain(p), y = cochain(q), z = cochain(s);
          const long P = p - 1, Q = q - 1, S = s - 1;
          auto t1 = gerstenhaber_bracket(x, gerstenhaber_bracket(y, z));
          auto t2 = gerstenhaber_bracket(y, gerstenhaber_bracket(z, x));
          auto t3 = gerstenhaber_bracket(z, gerstenhaber_bracket(x, y));
          PreNat sum = lin(lin(t1, t2, parity_sign(P * S + Q * P)), t3, parity_sign(P * S + S * Q));
          CHECK(sum.is_zero());
        }
  }
  CHECK_THROWS_AS(gerstenhaber_bracket(structure_cochain(identity_ptr(ptr(corpus::massey_triple()))),
                                       structure_cochain(identity_ptr(ptr(corpus::massey_triple())))),
                  UnsupportedFeature);
}

TEST_CASE("cup and bracket on the cohomology of the dual numbers", "[hochschild]") {
  auto A = ptr(corpus::dual_numbers());
  auto id = identity_ptr(A);
  std::vector<HochschildClass> classes;
  for (int d = 0; d <= 2; ++d)
    for (auto& c : hh(id, d).classes) classes.push_back(c);
  REQUIRE(classes.size() == 4);
  HochschildClass one{0, identity_nat(id, 0), true};
  for (const auto& a : classes) {
    CHECK(prenat_equal(cup(one, a).rep, cup(a, one).rep));
    CHECK(prenat_equal(cup(one, a).rep, detail::widened(a.rep, cup(one, a).rep.arity_max)));
    for (const auto& b : classes) {
      auto ab = cup(a, b), ba = cup(b, a);
      CHECK(m1(detail::widened(ab.rep, *natural_arity_bound(*A, *A, ab.degree + 1))).is_zero());
      CHECK(exact(lin(ab.rep, ba.rep, -parity_sign(static_cast<long>(a.degree) * b.degree))));
      auto br = gerstenhaber_bracket(a, b);
      CHECK(m1(detail::widened(br.rep, *natural_arity_bound(*A, *A, br.degree + 1))).is_zero());
      CHECK(lin(br.rep, gerstenhaber_bracket(b, a).rep, parity_sign(static_cast<long>(a.degree - 1) * (b.degree - 1)))
                .is_zero());
      if (a.degree == 0 && b.degree == 0) CHECK(br.rep.is_zero());
      for (const auto& c : classes) {
        if (a.degree + b.degree + c.degree > 4) continue;
        CHECK(exact(lin(cup(cup(a, b), c).rep, cup(a, cup(b, c)).rep, -1)));
      }
    }
  }
  // HH^0 is the centre, with the algebra product
  auto h0 = hh(id, 0).classes;
  const NatWord o{0, {}};
  for (const auto& a : h0)
    for (const auto& b : h0) {
      Vec x = a.rep.at(o), y = b.rep.at(o);
      CHECK(cup(a, b).rep.at(o) == A->apply(2, {&y, &x}));
    }
  // changing a representative by a coboundary changes the product by a coboundary
  std::mt19937 rng(2);
  for (const auto& a : classes)
    for (const auto& b : classes) {
      auto c = random_cochain(id, a.degree - 1, std::max(0, a.degree - 1), rng);
      HochschildClass moved = a;
      moved.rep = lin(detail::widened(a.rep, a.degree), m1(detail::widened(c, a.degree)), 1);
      CHECK(exact(lin(cup(moved, b).rep, cup(a, b).rep, -1)));
    }
}

TEST_CASE("pi_i of the identity endomorphisms matches HH^{-i}", "[hochschild][pi]") {
  auto k = pi_endomorphisms(ptr(corpus::ground_field()), 0, true);
  CHECK(k.hh_dimension == 1);
  CHECK(k.simplicial_dimension == 1);
  for (int i = 1; i <= 3; ++i) CHECK(pi_endomorphisms(ptr(corpus::ground_field()), i).hh_dimension == 0);
  for (const auto& a : {corpus::ground_field(), corpus::dual_numbers(), corpus::degree_minus_one(),
                        corpus::two_isomorphic(), corpus::dg_simplex(1), corpus::acyclic_cone(),
                        corpus::upper_triangular()}) {
    INFO(a.name);
    for (int i : {0, 1}) {
      auto r = pi_endomorphisms(ptr(a), i, true);
      CHECK(r.cross_checked);
      CHECK(r.agree);
      CHECK(r.simplicial_dimension == r.hh_dimension);
    }
  }
  auto u = pi_endomorphisms(ptr(corpus::degree_minus_one()), 1, true);
  CHECK(u.hh_dimension == 1);
  CHECK(u.simplicial_dimension == 1);
  CHECK_THROWS_AS(pi_endomorphisms(ptr(corpus::dual_numbers()), 2, true), UnsupportedFeature);
  CHECK_THROWS_AS(pi_endomorphisms(ptr(corpus::massey_triple()), 0, true), UnsupportedFeature);
}
