#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <fockrel/relation.hpp>

using fockrel::CMatrix;
using fockrel::Complex;
using fockrel::CVector;
using fockrel::FockVector;
using fockrel::LinearRelation;
using fockrel::RelationPair;
using fockrel::Subspace;

namespace {

FockVector unit(Eigen::Index n, Eigen::Index j, Complex scale = Complex(1.0)) {
  FockVector v;
  v.coeffs = CVector::Zero(n);
  v.coeffs(j) = scale;
  return v;
}

RelationPair pair_of(const FockVector& f, const FockVector& g) {
  return RelationPair{f, g};
}

double graphs_angle(const LinearRelation& a, const LinearRelation& b) {
  const auto angles = fockrel::principal_angles(a.graph(), b.graph());
  return angles.empty() ? 0.0 : angles.back();
}

} // namespace

TEST_CASE("graph decompositions of a hand-built relation") {
  // pairs (e0, e0), (e1, e0) in C^3 plus the multivalued direction (0, e2):
  // domain span{e0,e1}, range span{e0,e2}, kernel e1 - e0 direction is not
  // there (no zero output among inputs), multivalued part span{e2}
  const Eigen::Index n = 3;
  const std::vector<RelationPair> pairs = {
      pair_of(unit(n, 0), unit(n, 0)), pair_of(unit(n, 1), unit(n, 0))};
  const std::vector<FockVector> mv = {unit(n, 2)};
  const LinearRelation rel = fockrel::from_pairs(pairs, mv);

  CHECK(rel.space_dim() == 3);
  CHECK(rel.graph_dim() == 3);

  const Subspace dom = fockrel::domain(rel);
  CHECK(dom.dim() == 2);

  const Subspace rng = fockrel::range(rel);
  CHECK(rng.dim() == 2);

  const Subspace mvp = fockrel::multivalued_part(rel);
  REQUIRE(mvp.dim() == 1);
  CHECK(std::abs(std::abs(mvp.frame()(2, 0)) - 1.0) < 1e-14);

  // (e0 - e1, 0) is in the graph, so the kernel contains that direction
  const Subspace ker = fockrel::kernel(rel);
  REQUIRE(ker.dim() == 1);
  CHECK(std::abs(ker.frame()(0, 0) + ker.frame()(1, 0)) < 1e-13);

  // inverse swaps the roles
  const LinearRelation inv = fockrel::inverse(rel);
  CHECK(fockrel::subspace_equal(fockrel::domain(inv), rng, 1e-12));
  CHECK(fockrel::subspace_equal(fockrel::range(inv), dom, 1e-12));
  CHECK(fockrel::subspace_equal(fockrel::multivalued_part(inv), ker, 1e-12));
}

TEST_CASE("from_pairs normalizes generator scales before the rank decision") {
  const Eigen::Index n = 2;
  const std::vector<RelationPair> pairs = {
      pair_of(unit(n, 0), unit(n, 0)),
      pair_of(unit(n, 1, Complex(1e100)), unit(n, 0, Complex(1e100)))};
  const LinearRelation rel = fockrel::from_pairs(pairs);
  CHECK(rel.graph_dim() == 2);

  CHECK_THROWS_AS(fockrel::from_pairs(std::vector<RelationPair>{}),
                  std::invalid_argument);
  CHECK(fockrel::from_pairs(4, {}, {}).graph_dim() == 0);
}

TEST_CASE("adjoint of a matrix graph is the conjugate-transpose graph") {
  CMatrix m(2, 2);
  m << Complex(1.0), Complex(2.0, 0.0), Complex(3.0), Complex(0.0, 4.0);
  const LinearRelation a = fockrel::graph_of_matrix(m);
  const LinearRelation star = fockrel::adjoint(a);
  const LinearRelation expected = fockrel::graph_of_matrix(m.adjoint().eval());
  CHECK(star.graph_dim() == expected.graph_dim());
  CHECK(graphs_angle(star, expected) < 1e-13);
}

TEST_CASE("adjoint pairing identity and involution") {
  const Eigen::Index n = 4;
  std::vector<RelationPair> pairs;
  FockVector f1;
  f1.coeffs = CVector::Zero(n);
  f1.coeffs << Complex(1.0), Complex(0.5, -0.5), Complex(0.0), Complex(2.0);
  FockVector g1;
  g1.coeffs = CVector::Zero(n);
  g1.coeffs << Complex(0.0, 1.0), Complex(1.0), Complex(-1.0), Complex(0.25);
  pairs.push_back(pair_of(f1, g1));
  pairs.push_back(pair_of(unit(n, 2), unit(n, 1, Complex(0.0, -2.0))));
  const std::vector<FockVector> mv = {unit(n, 3)};
  const LinearRelation rel = fockrel::from_pairs(pairs, mv);

  const LinearRelation star = fockrel::adjoint(rel);
  CHECK(star.graph_dim() == 2 * n - rel.graph_dim());

  // <g, u> = <f, v> for every graph pair against every adjoint pair
  const CMatrix sf = star.graph().frame();
  for (const auto& p : pairs) {
    for (Eigen::Index j = 0; j < sf.cols(); ++j) {
      const Complex lhs = (sf.col(j).head(n).adjoint() * p.g.coeffs)(0);
      const Complex rhs = (sf.col(j).tail(n).adjoint() * p.f.coeffs)(0);
      CHECK(std::abs(lhs - rhs) < 1e-13);
    }
  }

  // involution
  const LinearRelation back = fockrel::adjoint(star);
  CHECK(back.graph_dim() == rel.graph_dim());
  CHECK(graphs_angle(back, rel) < 1e-13);

  // the multivalued part of the adjoint is the orthocomplement of the domain
  const Subspace expected_mv = fockrel::complement(fockrel::domain(rel));
  CHECK(fockrel::subspace_equal(fockrel::multivalued_part(star), expected_mv,
                                1e-12));
}

TEST_CASE("s_adjoint with identity twist reduces to the adjoint") {
  const Eigen::Index n = 3;
  const std::vector<RelationPair> pairs = {
      pair_of(unit(n, 0), unit(n, 1)),
      pair_of(unit(n, 1), unit(n, 0, Complex(0.0, 1.0)))};
  const LinearRelation rel = fockrel::from_pairs(pairs);
  const CMatrix eye = CMatrix::Identity(n, n);

  const LinearRelation star = fockrel::adjoint(rel);
  const LinearRelation lin = fockrel::s_adjoint(rel, eye, false);
  CHECK(lin.graph_dim() == star.graph_dim());
  CHECK(graphs_angle(lin, star) < 1e-13);

  // with the identity antilinear twist, the twisted adjoint is the
  // entrywise conjugate of the adjoint graph
  const LinearRelation anti = fockrel::s_adjoint(rel, eye, true);
  const LinearRelation conj_star = LinearRelation(
      n, Subspace(star.graph().frame().conjugate()));
  CHECK(graphs_angle(anti, conj_star) < 1e-13);
}

TEST_CASE("relation norms and reduced gains") {
  CMatrix d(2, 2);
  d << Complex(3.0), Complex(0.0), Complex(0.0), Complex(4.0);
  CHECK(fockrel::relation_norm(fockrel::graph_of_matrix(d)).value ==
        doctest::Approx(4.0).epsilon(1e-12));

  const auto gains = fockrel::reduced_gain_range(fockrel::graph_of_matrix(
      (CMatrix(2, 2) << Complex(0.5), Complex(0.0), Complex(0.0), Complex(0.25))
          .finished()));
  CHECK(gains.max_gain == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gains.min_gain == doctest::Approx(0.25).epsilon(1e-12));

  // outputs along the multivalued direction do not count toward the norm
  const Eigen::Index n = 2;
  const std::vector<RelationPair> pairs = {pair_of(unit(n, 0), unit(n, 0, 3.0))};
  const std::vector<FockVector> mv = {unit(n, 1)};
  CHECK(fockrel::relation_norm(fockrel::from_pairs(pairs, mv)).value ==
        doctest::Approx(3.0).epsilon(1e-12));

  // mixing multivalued content into the output leaves the reduced norm alone
  FockVector mixed;
  mixed.coeffs = CVector::Zero(n);
  mixed.coeffs << Complex(3.0), Complex(17.0);
  CHECK(fockrel::relation_norm(
            fockrel::from_pairs({pair_of(unit(n, 0), mixed)}, mv))
            .value == doctest::Approx(3.0).epsilon(1e-12));

  // purely multivalued relation: nothing single-valued to measure
  CHECK(fockrel::relation_norm(fockrel::from_pairs(n, {}, mv)).value == 0.0);
  CHECK(fockrel::relation_norm(fockrel::from_pairs(n, {}, mv)).infinite ==
        false);
}

TEST_CASE("relation norm is unitarily invariant") {
  CMatrix m(2, 2);
  m << Complex(1.0), Complex(2.0), Complex(0.0), Complex(0.0, 3.0);
  const double base = fockrel::relation_norm(fockrel::graph_of_matrix(m)).value;

  const double th = 0.7;
  CMatrix u(2, 2);
  u << Complex(std::cos(th)), Complex(-std::sin(th)), Complex(std::sin(th)),
      Complex(std::cos(th));
  CMatrix v(2, 2);
  v << std::polar(1.0, 0.3), Complex(0.0), Complex(0.0), std::polar(1.0, -1.1);

  const CMatrix rotated = u * m * v;
  CHECK(fockrel::relation_norm(fockrel::graph_of_matrix(rotated)).value ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("graph symmetry diagnostics") {
  CMatrix h(2, 2);
  h << Complex(2.0), Complex(0.0, 1.0), Complex(0.0, -1.0), Complex(1.0);
  CHECK(fockrel::is_hermitian(fockrel::graph_of_matrix(h), 1e-10).holds);

  CMatrix nh(2, 2);
  nh << Complex(2.0), Complex(0.0, 1.0), Complex(0.0, 1.0), Complex(1.0);
  const auto diag = fockrel::is_hermitian(fockrel::graph_of_matrix(nh), 1e-10);
  CHECK_FALSE(diag.holds);
  CHECK(diag.max_angle > 1e-3);

  const double th = 0.4;
  CMatrix u(2, 2);
  u << Complex(std::cos(th)), Complex(-std::sin(th)), Complex(std::sin(th)),
      Complex(std::cos(th));
  CHECK(fockrel::is_unitary(fockrel::graph_of_matrix(u), 1e-10).holds);
  CHECK_FALSE(
      fockrel::is_unitary(fockrel::graph_of_matrix(2.0 * u), 1e-10).holds);
}

TEST_CASE("budget-restricted matrix graphs") {
  CMatrix m = CMatrix::Identity(5, 5);
  const LinearRelation rel = fockrel::graph_of_matrix(m, 2);
  CHECK(rel.graph_dim() == 3);
  CHECK(fockrel::domain(rel).dim() == 3);
  CHECK_THROWS_AS(fockrel::graph_of_matrix(m, 5), std::invalid_argument);
}
