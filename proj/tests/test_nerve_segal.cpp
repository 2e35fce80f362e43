#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ainf/corpus.hpp"
#include "ainf/nerve.hpp"
#include "ainf/segal.hpp"

using namespace ainf;

namespace {

PresPtr ptr(AInfPresentation a) { return std::make_shared<const AInfPresentation>(std::move(a)); }

Vec vec(const PresPtr& a, std::initializer_list<std::pair<long, const char*>> terms) {
  Vec v;
  for (auto [c, l] : terms) add_term(v, a->quiver.gen_index(l), Scalar::in(a->field, c));
  return v;
}

PresPtr correction_target() {
  return PresentationBuilder("correction_target")
      .object("a")
      .object("b")
      .object("c")
      .gen("1a", "a", "a", 0)
      .gen("1b", "b", "b", 0)
      .gen("1c", "c", "c", 0)
      .gen("p", "a", "b", 0)
      .gen("q", "b", "c", 0)
      .gen("r", "a", "c", 0)
      .gen("t", "a", "c", 0)
      .gen("s", "a", "c", -1)
      .unit("a", "1a")
      .unit("b", "1b")
      .unit("c", "1c")
      .strict_units()
      .op({"q", "p"}, {{1, "t"}})
      .op({"s"}, {{1, "r"}, {-1, "t"}})
      .ptr();
}

Simplex fill2(const Simplex& first, const Simplex& second, const std::vector<Scalar>& k = {}) {
  HornInstance h{2, 1, {{0, second}, {2, first}}};
  return fill_inner_horn(h, k).filler;
}

// Random closed degree-0 element of Hom(x, y).
Vec random_cycle(const AInfPresentation& a, int x, int y, std::mt19937& rng) {
  auto cx = hom_window(a, x, y, -1, 1);
  auto z = kernel_basis(cx.diff.at(0));
  std::uniform_int_distribution<int> d(-2, 2);
  Vector c(cx.dim(0), Scalar::in(a.field, 0));
  for (const auto& b : z)
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += Scalar::in(a.field, d(rng)) * b[i];
  std::vector<int> ids;
  for (const auto& l : cx.basis.at(0)) ids.push_back(a.quiver.gen_index(l));
  return from_coords(ids, c);
}

// A 3-simplex assembled from three edges by 2- and 3-dimensional inner horn fillers.
Simplex random_three_simplex(const PresPtr& a, const std::vector<int>& objs, std::mt19937& rng) {
  auto e = [&](int i, int j) { return edge_simplex(a, objs[i], objs[j], random_cycle(*a, objs[i], objs[j], rng)); };
  std::uniform_int_distribution<int> d(-1, 1);
  auto coeffs = [&] { return std::vector<Scalar>{Scalar::in(a->field, d(rng)), Scalar::in(a->field, d(rng))}; };
  Simplex t012 = fill2(e(0, 1), e(1, 2), coeffs());
  Simplex t123 = fill2(face(t012, 0), e(2, 3), coeffs());
  Simplex t023 = fill2(face(t012, 1), face(t123, 0), coeffs());
  HornInstance h{3, 2, {{0, t123}, {1, t023}, {3, t012}}};
  return fill_inner_horn(h, coeffs()).filler;
}

}  // namespace

TEST_CASE("faces and degeneracies of low simplices", "[nerve]") {
  auto K = ptr(corpus::dual_numbers());
  auto v = vertex(K, 0);
  CHECK(validate_simplex(v).ok);
  auto s0 = degeneracy(v, 0);
  CHECK(vec_str(K->quiver, s0.edge(0, 1)) == "1*1");
  CHECK(simplices_equal(face(s0, 0), v));
  CHECK(simplices_equal(face(s0, 1), v));
  auto eps = edge_simplex(K, 0, 0, vec(K, {{1, "e"}}));
  CHECK(validate_simplex(eps).ok);
  auto d = degeneracy(eps, 1);
  CHECK(vec_str(K->quiver, d.edge(0, 1)) == "1*e");
  CHECK(vec_str(K->quiver, d.edge(1, 2)) == "1*1");
  CHECK(vec_str(K->quiver, d.edge(0, 2)) == "1*e");
  CHECK(validate_simplex(d).ok);
  // an edge must be a cycle of degree 0
  auto T = correction_target();
  CHECK_THROWS_AS(edge_simplex(T, 0, 2, vec(T, {{1, "s"}})), ValidationError);
}

TEST_CASE("inner 2-horn in a strict algebra is filled by the product", "[nerve]") {
  auto K = ptr(corpus::dual_numbers());
  auto f = edge_simplex(K, 0, 0, vec(K, {{1, "e"}}));
  auto g = edge_simplex(K, 0, 0, vec(K, {{1, "1"}, {1, "e"}}));
  HornInstance h{2, 1, {{0, g}, {2, f}}};
  auto fill = fill_inner_horn(h);
  CHECK(fill.kernel_dim == 0);
  CHECK(vec_str(K->quiver, fill.filler.edge(0, 2)) == "1*e");
  CHECK(simplices_equal(face(fill.filler, 0), g));
  CHECK(simplices_equal(face(fill.filler, 2), f));
  for (int k = 2; k < static_cast<int>(fill.filler.f.comps.size()); ++k) CHECK(fill.filler.f.comps[k].empty());
}

TEST_CASE("inner 2-horn with a homotopy-ambiguous composite", "[nerve]") {
  auto T = correction_target();
  auto p = edge_simplex(T, 0, 1, vec(T, {{1, "p"}}));
  auto q = edge_simplex(T, 1, 2, vec(T, {{1, "q"}}));
  HornInstance h{2, 1, {{0, q}, {2, p}}};
  auto fill = fill_inner_horn(h);
  CHECK(fill.kernel_dim == 1);
  // Moving along the kernel trades the composite t for the homotopic r, paid for by f_2.
  bool saw_r = false;
  for (long c : {-2, -1, 1, 2}) {
    auto other = fill_inner_horn(h, {Scalar(c)}).filler;
    CHECK(validate_simplex(other).ok);
    if (vec_str(T->quiver, other.edge(0, 2)) == "1*r") {
      saw_r = true;
      auto f2 = other.f.component(2, {simplex_gen_id(*other.f.src, 1, 2), simplex_gen_id(*other.f.src, 0, 1)});
      CHECK(vec_str(T->quiver, f2) == "1*s");
    }
  }
  CHECK(saw_r);
}

TEST_CASE("horn validation", "[nerve]") {
  auto K = ptr(corpus::dual_numbers());
  auto e = edge_simplex(K, 0, 0, vec(K, {{1, "e"}}));
  CHECK_THROWS_AS(fill_inner_horn(HornInstance{2, 0, {{1, e}, {2, e}}}), std::out_of_range);
  CHECK_THROWS_AS(fill_inner_horn(HornInstance{2, 1, {{0, e}}}), HornError);
  CHECK_THROWS_AS(fill_inner_horn(HornInstance{4, 1, {}}), UnsupportedFeature);
  auto T = correction_target();
  auto p = edge_simplex(T, 0, 1, vec(T, {{1, "p"}}));
  CHECK_THROWS_AS(fill_inner_horn(HornInstance{2, 1, {{0, p}, {2, p}}}), HornError);
}

TEST_CASE("inner 3-horns refill their simplex", "[nerve]") {
  std::mt19937 rng(7);
  struct Case {
    PresPtr a;
    std::vector<int> objs;
  };
  std::vector<Case> cases = {{ptr(corpus::dual_numbers()), {0, 0, 0, 0}},
                             {ptr(corpus::upper_triangular(Field::prime(3))), {0, 0, 0, 0}},
                             {ptr(corpus::two_isomorphic()), {0, 1, 0, 1}},
                             {correction_target(), {0, 1, 2, 2}},
                             {ptr(corpus::massey_triple()), {0, 0, 0, 0}},
                             {ptr(corpus::degree_minus_one()), {0, 0, 0, 0}}};
  for (const auto& c : cases) {
    INFO(c.a->name);
    for (int trial = 0; trial < 3; ++trial) {
      auto s = random_three_simplex(c.a, c.objs, rng);
      REQUIRE(validate_simplex(s).ok);
      for (int i : {1, 2}) {
        HornInstance h{3, i, {}};
        for (int j = 0; j <= 3; ++j)
          if (j != i) h.faces[j] = face(s, j);
        auto fill = fill_inner_horn(h);
        CHECK(validate_simplex(fill.filler).ok);
        for (int j = 0; j <= 3; ++j)
          if (j != i) CHECK(simplices_equal(face(fill.filler, j), face(s, j)));
      }
    }
  }
}

TEST_CASE("simplicial identities up to dimension 4", "[nerve]") {
  std::mt19937 rng(11);
  for (auto [a, objs] : std::vector<std::pair<PresPtr, std::vector<int>>>{
           {ptr(corpus::dual_numbers()), {0, 0, 0, 0}},
           {correction_target(), {0, 1, 2, 2}},
           {ptr(corpus::massey_triple(Field::prime(5))), {0, 0, 0, 0}}}) {
    INFO(a->name);
    auto s3 = random_three_simplex(a, objs, rng);
    std::vector<Simplex> window = {s3, degeneracy(s3, 0), degeneracy(s3, 2), face(s3, 1)};
    for (const auto& s : window) {
      REQUIRE(validate_simplex(s).ok);
      const int n = s.dim;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i < j; ++i) CHECK(simplices_equal(face(face(s, j), i), face(face(s, i), j - 1)));
      for (int j = 0; j <= n; ++j) {
        auto sj = degeneracy(s, j);
        CHECK(validate_simplex(sj).ok);
        CHECK(simplices_equal(face(sj, j), s));
        CHECK(simplices_equal(face(sj, j + 1), s));
        for (int i = 0; i < j; ++i) CHECK(simplices_equal(face(sj, i), degeneracy(face(s, i), j - 1)));
        for (int i = j + 2; i <= n + 1; ++i) CHECK(simplices_equal(face(sj, i), degeneracy(face(s, i - 1), j)));
        for (int i = 0; i <= j; ++i) CHECK(simplices_equal(degeneracy(sj, i), degeneracy(degeneracy(s, i), j + 1)));
      }
    }
  }
}

TEST_CASE("d0 d2 = d1 d0 on a 3-simplex of the dual numbers", "[nerve]") {
  std::mt19937 rng(3);
  auto K = ptr(corpus::dual_numbers());
  auto s = random_three_simplex(K, {0, 0, 0, 0}, rng);
  CHECK(simplices_equal(face(face(s, 2), 0), face(face(s, 0), 1)));
}

TEST_CASE("nerve window agrees with a brute-force enumerator", "[nerve]") {
  // Over F_2 with target K[e] (degree 0, m_1 = 0), an n-simplex is a choice of f_1
  // on every edge, higher components have negative degree and vanish.
  const Field F2 = Field::prime(2);
  auto K = ptr(corpus::dual_numbers(F2));
  const int one = K->quiver.gen_index("1"), e = K->quiver.gen_index("e");
  auto elem = [&](int code) {
    Vec v;
    if (code & 1) add_term(v, one, Scalar::in(F2, 1));
    if (code & 2) add_term(v, e, Scalar::in(F2, 1));
    return v;
  };
  for (int n : {2, 3}) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
    const int total = 1 << (2 * edges.size());
    int valid = 0;
    for (int code = 0; code < total; ++code) {
      Simplex s = make_simplex(K, n, std::vector<int>(n + 1, 0));
      for (std::size_t k = 0; k < edges.size(); ++k)
        s.f.set(1, {simplex_gen_id(*s.f.src, edges[k].first, edges[k].second)}, elem((code >> (2 * k)) & 3));
      if (!validate_simplex(s).ok) continue;
      ++valid;
      // the spine determines the rest
      auto spine = [&](int i) { return edge_simplex(K, 0, 0, s.edge(i, i + 1)); };
      Simplex rebuilt = fill2(spine(0), spine(1));
      if (n == 3) {
        Simplex t123 = fill2(spine(1), spine(2));
        Simplex t023 = fill2(face(rebuilt, 1), spine(2));
        rebuilt = fill_inner_horn(HornInstance{3, 1, {{0, t123}, {2, face(s, 2)}, {3, rebuilt}}}).filler;
        CHECK(simplices_equal(face(rebuilt, 1), t023));
      }
      CHECK(simplices_equal(rebuilt, s));
    }
    CHECK(valid == (1 << (2 * n)));
  }
}

TEST_CASE("equivalence edges and the maximal Kan subcomplex", "[nerve]") {
  auto K = ptr(corpus::dual_numbers());
  auto eps = edge_simplex(K, 0, 0, vec(K, {{1, "e"}}));
  CHECK(!is_equivalence_edge(eps).equivalence);
  auto u = edge_simplex(K, 0, 0, vec(K, {{1, "1"}, {1, "e"}}));
  auto verdict = is_equivalence_edge(u);
  REQUIRE(verdict.equivalence);
  CHECK(vec_str(K->quiver, verdict.witness->inverse) == "1*1 + -1*e");
  CHECK(in_max_kan(degeneracy(u, 0)));
  CHECK(!in_max_kan(fill2(u, eps)));

  auto two = ptr(corpus::two_isomorphic());
  CHECK(is_equivalence_edge(edge_simplex(two, 0, 1, vec(two, {{1, "f"}}))).equivalence);
  CHECK(!is_equivalence_edge(edge_simplex(two, 0, 1, {})).equivalence);

  // acyclic Hom(x, y): no edge x -> y is invertible, so the core is discrete
  auto cone = ptr(corpus::acyclic_cone());
  CHECK(!is_equivalence_edge(edge_simplex(cone, 0, 1, vec(cone, {{1, "d"}}))).equivalence);
  CHECK(!is_equivalence_edge(edge_simplex(cone, 0, 1, {})).equivalence);
  CHECK(is_equivalence_edge(edge_simplex(cone, 0, 0, vec(cone, {{1, "1x"}}))).equivalence);
  CHECK(!is_equivalence_edge(edge_simplex(cone, 1, 1, {})).equivalence);
  CHECK_THROWS_AS(is_equivalence_edge(edge_simplex(cone, 0, 1, vec(cone, {{1, "c"}}))), ValidationError);
}

namespace {

AInfFunctor scaling(const PresPtr& K, long c) {
  AInfFunctor f;
  f.name = "scale";
  f.src = f.tgt = K;
  f.obj_map = {0};
  f.set(1, {K->quiver.gen_index("e")}, Vec{{K->quiver.gen_index("e"), Scalar(c)}});
  return f;
}

AInfFunctor augmentation(const PresPtr& K, const PresPtr& k) {
  AInfFunctor f;
  f.name = "aug";
  f.src = K;
  f.tgt = k;
  f.obj_map = {0};
  return f;
}

}  // namespace

TEST_CASE("Segal space operators at the vertex level", "[segal]") {
  auto K = ptr(corpus::dual_numbers());
  auto k = ptr(corpus::ground_field());
  SegalElement x{{K, K, K, k}, {scaling(K, 2), scaling(K, 3), augmentation(K, k)}};
  // X(d_1) on a pair composes
  SegalElement pair{{K, K, K}, {scaling(K, 2), scaling(K, 3)}};
  auto c = segal_face(pair, 1);
  REQUIRE(c.functors.size() == 1);
  CHECK(functors_equal(c.functors[0], compose_functors(pair.functors[0], pair.functors[1]), 4));
  CHECK(functors_equal(c.functors[0], scaling(K, 6), 4));
  // outer faces project
  CHECK(segal_equal(segal_face(pair, 0), SegalElement{{K, K}, {scaling(K, 3)}}));
  CHECK(segal_equal(segal_face(pair, 2), SegalElement{{K, K}, {scaling(K, 2)}}));

  const int n = x.n();
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i) CHECK(segal_equal(segal_face(segal_face(x, j), i), segal_face(segal_face(x, i), j - 1)));
  for (int j = 0; j <= n; ++j) {
    auto sj = segal_degeneracy(x, j);
    CHECK(segal_equal(segal_face(sj, j), x));
    CHECK(segal_equal(segal_face(sj, j + 1), x));
    for (int i = 0; i < j; ++i) CHECK(segal_equal(segal_face(sj, i), segal_degeneracy(segal_face(x, i), j - 1)));
    for (int i = j + 2; i <= n + 1; ++i) CHECK(segal_equal(segal_face(sj, i), segal_degeneracy(segal_face(x, i - 1), j)));
    for (int i = 0; i <= j; ++i)
      CHECK(segal_equal(segal_degeneracy(sj, i), segal_degeneracy(segal_degeneracy(x, i), j + 1)));
  }

  SegalElement higher = pair;
  higher.simplicial_dim = 1;
  CHECK_THROWS_AS(segal_face(higher, 1), UnsupportedFeature);
  CHECK_NOTHROW(segal_face(higher, 0));
  CHECK_THROWS(segal_face(SegalElement{{K, k}, {scaling(K, 2)}}, 0));
}
