#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilted/sdp.hpp"

#include <cmath>
#include <random>

using namespace tilted;

namespace {
const double kPi4 = std::atan(1.0);

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
             0.5 * (m + m.transpose()))
      .eigenvalues()(0);
}

// Expand a Gram matrix over the given basis and compare to the shifted
// Bell operator's coefficients.
double expansion_residual(const Eigen::MatrixXd& m,
                          const std::vector<NcPoly<double>>& basis,
                          double theta) {
  NcPoly<double> acc;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      acc = acc + m(i, j) * (basis[i].adjoint() * basis[j]);
  const NcPoly<double> res = acc - shifted_bell(numeric_context(theta));
  double worst = 0;
  for (const auto& [mono, c] : res.terms())
    worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace

TEST_CASE("constraint targets encode the shifted Bell operator") {
  const auto cs = build_constraints(kPi4, v_basis_numeric());
  const auto& basis = s2ab_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string name = basis[i].str();
    if (name == "1") {
      CHECK(cs.s(i) == doctest::Approx(2 * std::sqrt(2.0)));
    } else if (name == "A0*B0" || name == "A0*B1" || name == "A1*B0") {
      CHECK(cs.s(i) == doctest::Approx(-1.0));
    } else if (name == "A1*B1") {
      CHECK(cs.s(i) == doctest::Approx(1.0));
    } else if (name == "A0" ) {
      // alpha vanishes at pi/4
      CHECK(cs.s(i) == doctest::Approx(0.0));
    } else if (basis[i].bob().empty() || basis[i].alice().empty()) {
      // single-party quadratic monomials never appear
      CHECK(cs.s(i) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("C4 Gram matrix satisfies the identity constraint") {
  const auto cs = build_constraints(kPi4, r_basis_numeric(kPi4));
  const double sc = 1.0 / (2 * std::sqrt(2.0));
  const auto g = chsh_gram(1.0, 1.0, 0.0, sc);
  Eigen::MatrixXd m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = g[i][j];
  // identity slot of s2ab_basis is index 0
  CHECK((m * cs.F[0]).trace() == doctest::Approx(2 * std::sqrt(2.0)));
  // full system satisfied
  for (int i = 0; i < 25; ++i)
    CHECK((m * cs.F[i]).trace() == doctest::Approx(cs.s(i)).epsilon(1e-12));
}

TEST_CASE("solver finds feasible points") {
  for (double theta : {kPi4, kPi4 / 2, 0.4}) {
    const auto cs = build_constraints(theta, r_basis_numeric(theta));
    const auto res = solve_feasible(cs);
    CHECK(res.affine_residual <= 1e-10);
    CHECK(res.psd_violation <= 1e-10);
    CHECK(min_eig(res.M) >= -1e-9);
    CHECK(expansion_residual(res.M, r_basis_numeric(theta), theta) <= 1e-9);
  }
}

TEST_CASE("solver output at pi/4 lies in the closed-form set") {
  const auto cs = build_constraints(kPi4, r_basis_numeric(kPi4));
  const Eigen::MatrixXd m = symmetrize(solve_feasible(cs).M);
  const double sc = 2 * std::sqrt(2.0);
  const auto pt =
      chsh_solution_set(m(0, 0) * sc, m(3, 3) * sc, m(4, 4) * sc, 1e-8);
  CHECK(pt.feasible);
}

TEST_CASE("negated target is infeasible") {
  auto cs = build_constraints(kPi4, r_basis_numeric(kPi4));
  cs.s = -cs.s;
  CHECK_THROWS_AS(solve_feasible(cs), Infeasible);
}

TEST_CASE("symmetrize produces the 3+2 block structure and is idempotent") {
  std::mt19937 rng(55555);
  std::uniform_real_distribution<double> val(-1, 1);
  Eigen::MatrixXd m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) m(i, j) = m(j, i) = val(rng);
  const Eigen::MatrixXd s = symmetrize(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 5; ++j) {
      CHECK(s(i, j) == 0.0);
      CHECK(s(j, i) == 0.0);
    }
  CHECK((symmetrize(s) - s).norm() == 0.0);
}

TEST_CASE("symmetrized solver output stays feasible") {
  const auto cs = build_constraints(kPi4, r_basis_numeric(kPi4));
  const Eigen::MatrixXd m = symmetrize(solve_feasible(cs).M);
  CHECK(min_eig(m) >= -1e-9);
  CHECK(expansion_residual(m, r_basis_numeric(kPi4), kPi4) <= 1e-9);
}

TEST_CASE("closed-form membership examples") {
  CHECK(chsh_solution_set(1, 1, 0).feasible);       // C4
  CHECK(chsh_solution_set(0, 0, 0.5).feasible);     // C5
  CHECK_FALSE(chsh_solution_set(0, 0, 1).feasible);
  // C5 rank pattern: 2x2 block singular, q slot positive
  const auto c5 = chsh_solution_set(0, 0, 0.5);
  CHECK(c5.gamma * c5.t - c5.q * c5.q == doctest::Approx(0.0));
}

TEST_CASE("closed-form set matches the PSD cone") {
  std::mt19937 rng(7777);
  std::uniform_real_distribution<double> val(-0.2, 1.2);
  int feasible_count = 0;
  for (int i = 0; i < 500; ++i) {
    const double l = val(rng), m = val(rng), q = val(rng);
    const auto pt = chsh_solution_set(l, m, q);
    const double eig = min_eig(pt.M);
    if (eig > 1e-8) CHECK(pt.feasible);
    if (eig < -1e-8) CHECK_FALSE(pt.feasible);
    if (pt.feasible) ++feasible_count;
  }
  CHECK(feasible_count > 0);
}

TEST_CASE("random feasible Gram matrices verify numerically") {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> val(0, 1);
  const auto basis = r_basis_numeric(kPi4);
  int accepted = 0;
  while (accepted < 100) {
    const auto pt = chsh_solution_set(val(rng), val(rng), 0.5 * val(rng));
    if (!pt.feasible) continue;
    ++accepted;
    CHECK(expansion_residual(pt.M, basis, kPi4) <= 1e-9);
    CHECK(min_eig(pt.M) >= -1e-10);
  }
}

TEST_CASE("vertex enumeration") {
  const auto verts = enumerate_chsh_vertices();
  REQUIRE(verts.size() == 5);
  const std::array<std::array<double, 3>, 5> expect = {{
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 0.5},
  }};
  for (int i = 0; i < 5; ++i) {
    CHECK(verts[i].lambda == expect[i][0]);
    CHECK(verts[i].mu == expect[i][1]);
    CHECK(verts[i].q == expect[i][2]);
    CHECK(verts[i].extremal);
    // all five vertex matrices are singular
    CHECK(std::abs(Eigen::FullPivLU<Eigen::MatrixXd>(verts[i].M)
                       .determinant()) <= 1e-12);
  }
  // C1 has exactly two nonzero diagonal entries of 1/(2 sqrt2)
  const auto& c1 = verts[0].M;
  int nonzero = 0;
  for (int i = 0; i < 5; ++i)
    if (c1(i, i) != 0.0) {
      ++nonzero;
      CHECK(c1(i, i) == doctest::Approx(1.0 / (2 * std::sqrt(2.0))));
    }
  CHECK(nonzero == 2);
  // centroid feasible with nonsingular 2x2 block
  double cl = 0, cm = 0, cq = 0;
  for (const auto& v : verts) {
    cl += v.lambda / 5;
    cm += v.mu / 5;
    cq += v.q / 5;
  }
  const auto centroid = chsh_solution_set(cl, cm, cq);
  CHECK(centroid.feasible);
  CHECK(centroid.gamma * centroid.t - centroid.q * centroid.q > 1e-6);
}

TEST_CASE("pi/8 cusps have rank-one blocks matching the reference rows") {
  const auto cusps = pi8_cusps();
  REQUIRE(cusps.size() == 2);
  CHECK(cusps[0].beta == 0.5);
  CHECK(cusps[0].gamma == doctest::Approx(-1.0 / 3));
  CHECK(cusps[0].lambda == 0.0);
  CHECK(cusps[1].beta == 1.5);
  CHECK(cusps[1].gamma == doctest::Approx(1.0 / 3));
  CHECK(cusps[1].lambda == doctest::Approx(8.0 / 3));
  for (const auto& c : cusps) CHECK(c.match_error <= 1e-8);
  // the midpoint is feasible with a rank-2 3-block
  const auto m = pi8_gram_numeric(1.0, 0.0, 4.0 / 3);
  CHECK(min_eig(m) >= -1e-10);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.topLeftCorner(3, 3));
  CHECK(svd.singularValues()(1) > 1e-6);
}

TEST_CASE("solver output at pi/8 satisfies the principal minors") {
  const auto cs = build_constraints(kPi4 / 2, r_basis_numeric(kPi4 / 2));
  const Eigen::MatrixXd m = symmetrize(solve_feasible(cs).M);
  // PSD of both blocks <=> all principal minors nonnegative
  CHECK(min_eig(m.topLeftCorner(3, 3)) >= -1e-9);
  CHECK(min_eig(m.bottomRightCorner(2, 2)) >= -1e-9);
}

TEST_CASE("region point clouds") {
  const auto chsh = region_points(kPi4, 7);
  CHECK(chsh.size() > 50);
  for (const auto& p : chsh)
    CHECK(chsh_solution_set(p.param[0], p.param[1], p.param[2]).feasible);
  const auto pi8 = region_points(kPi4 / 2, 7);
  CHECK(pi8.size() > 10);
  for (const auto& p : pi8) CHECK(p.min_eig >= -1e-10);
  const auto generic = region_points(0.6, 7);
  CHECK(generic.size() > 10);
  for (const auto& p : generic) CHECK(p.min_eig >= -1e-10);
}
