#ifndef TILTED_SDP_HPP
#define TILTED_SDP_HPP

#include "tilted/certificates.hpp"

#include <Eigen/Dense>

#include <array>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilted {

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The 25 linear equality constraints tr(M F^i) = s^i that make a Gram
/// matrix M over `basis` reproduce the shifted Bell operator: F^i is the
/// (symmetrized) coefficient of the i-th quadratic-space monomial in
/// R_mu^dag R_nu, and s^i the corresponding coefficient of the target.
struct ConstraintSystem {
  std::vector<Eigen::MatrixXd> F;
  Eigen::VectorXd s;
  int basis_size = 0;
  double theta = 0.0;
};

inline ConstraintSystem build_constraints(
    double theta, const std::vector<NcPoly<double>>& basis) {
  const int n = static_cast<int>(basis.size());
  ConstraintSystem cs;
  cs.basis_size = n;
  cs.theta = theta;
  cs.F.assign(25, Eigen::MatrixXd::Zero(n, n));
  for (int mu = 0; mu < n; ++mu) {
    const NcPoly<double> adj = basis[mu].adjoint();
    for (int nu = 0; nu < n; ++nu) {
      const auto coords = basis_expand(adj * basis[nu]);
      for (int i = 0; i < 25; ++i) cs.F[i](mu, nu) += coords[i];
    }
  }
  for (auto& f : cs.F) f = 0.5 * (f + f.transpose()).eval();
  const auto target = basis_expand(shifted_bell(numeric_context(theta)));
  cs.s = Eigen::VectorXd(25);
  for (int i = 0; i < 25; ++i) cs.s(i) = target[i];
  return cs;
}

/// The canonical five-element basis adapted to the order-2 symmetry,
/// with double coefficients.
inline std::vector<NcPoly<double>> r_basis_numeric(double theta) {
  const auto rb = r_basis(numeric_context(theta));
  return {rb.begin(), rb.end()};
}

/// The nine-monomial basis (I, A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1).
inline std::vector<NcPoly<double>> v_basis_numeric() {
  std::vector<NcPoly<double>> out;
  for (const auto& m : v_ops()) out.emplace_back(m, 1.0);
  return out;
}

struct FeasibilityResult {
  Eigen::MatrixXd M;
  int iterations = 0;
  double affine_residual = 0.0;
  double psd_violation = 0.0;
};

namespace detail {

inline Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (m + m.transpose()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) ev(i) = 0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

inline double psd_violation_of(const Eigen::MatrixXd& m) {
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                             0.5 * (m + m.transpose()))
                             .eigenvalues()(0);
  return min_eig < 0 ? -min_eig : 0.0;
}

}  // namespace detail

/// Alternating projections with Dykstra correction between the affine
/// constraint set and the PSD cone. Succeeds when both residuals fall
/// below 1e-10; throws Infeasible when progress stalls above 1e-6.
inline FeasibilityResult solve_feasible(const ConstraintSystem& cs,
                                        int max_iter = 100000) {
  const int n = cs.basis_size;
  const int nn = n * n;
  Eigen::MatrixXd A(25, nn);
  for (int i = 0; i < 25; ++i)
    A.row(i) = Eigen::Map<const Eigen::VectorXd>(cs.F[i].data(), nn);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);

  auto affine_project = [&](const Eigen::MatrixXd& m) {
    const Eigen::Map<const Eigen::VectorXd> v(m.data(), nn);
    const Eigen::VectorXd corr = cod.solve(A * v - cs.s);
    Eigen::MatrixXd out = m;
    Eigen::Map<Eigen::VectorXd>(out.data(), nn) -= corr;
    return Eigen::MatrixXd(0.5 * (out + out.transpose()));
  };

  Eigen::MatrixXd x = affine_project(Eigen::MatrixXd::Zero(n, n));
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);

  FeasibilityResult res;
  double best = std::numeric_limits<double>::infinity();
  int best_iter = 0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const Eigen::MatrixXd y = detail::psd_project(x + p);
    p = x + p - y;
    x = affine_project(y + q);
    q = y + q - x;

    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), nn);
    res.affine_residual = (A * yv - cs.s).norm();
    res.psd_violation = detail::psd_violation_of(x);
    res.iterations = iter;
    const double total = res.affine_residual + res.psd_violation;
    if (res.affine_residual <= 1e-10 && res.psd_violation <= 1e-10) {
      res.M = x;
      return res;
    }
    if (total < best * (1.0 - 1e-12)) {
      best = total;
      best_iter = iter;
    } else if (iter - best_iter >= 1000 && total > 1e-6) {
      throw Infeasible("stalled at residual " + std::to_string(total) +
                       " after " + std::to_string(iter) + " iterations");
    }
  }
  throw Infeasible("residuals " + std::to_string(res.affine_residual) + " / " +
                   std::to_string(res.psd_violation) + " after " +
                   std::to_string(max_iter) + " iterations");
}

/// Average M with its image under the sign action (+,+,+,-,-) of the
/// order-2 symmetry on the five-element basis; the result is 3+2
/// block-diagonal. Idempotent.
inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  if (m.rows() != 5 || m.cols() != 5)
    throw std::invalid_argument("symmetrize expects a 5x5 matrix");
  static const std::array<double, 5> sgn = {1, 1, 1, -1, -1};
  Eigen::MatrixXd out(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      out(i, j) = 0.5 * (m(i, j) + sgn[i] * sgn[j] * m(i, j));
  return out;
}

// --- CHSH (theta = pi/4) closed-form solution set -----------------------

struct ChshPoint {
  double lambda = 0, mu = 0, q = 0;
  double gamma = 0, t = 0;
  bool feasible = false;
  Eigen::MatrixXd M;
};

/// Membership in the closed-form CHSH solution set. The Gram matrix block
/// holding q is ((gamma, q), (q, t)), so the determinant condition is
/// gamma*t - q^2 >= 0, alongside nonnegativity of all diagonal entries.
inline ChshPoint chsh_solution_set(double lambda, double mu, double q,
                                   double tol = 0.0) {
  ChshPoint pt;
  pt.lambda = lambda;
  pt.mu = mu;
  pt.q = q;
  pt.gamma = 1.0 - lambda - q;
  pt.t = 1.0 - q - mu;
  pt.feasible = lambda >= -tol && mu >= -tol && q >= -tol && pt.t >= -tol &&
                pt.gamma >= -tol && pt.gamma * pt.t - q * q >= -tol;
  const double scale = 1.0 / (2.0 * std::sqrt(2.0));
  const auto g = chsh_gram(lambda, mu, q, scale);
  pt.M = Eigen::MatrixXd(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pt.M(i, j) = g[i][j];
  return pt;
}

struct ChshVertex {
  std::string name;
  double lambda = 0, mu = 0, q = 0;
  Eigen::MatrixXd M;
  bool extremal = false;
};

/// The five vertices of the CHSH solution set, each checked extremal by
/// line probing: a point is non-extremal only if some parameter-space
/// direction keeps both one-sided perturbations feasible.
inline std::vector<ChshVertex> enumerate_chsh_vertices() {
  const std::array<std::array<double, 3>, 5> coords = {{
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 0.5},
  }};
  std::mt19937 rng(20240221);
  std::normal_distribution<double> gauss;
  std::vector<std::array<double, 3>> dirs;
  for (int k = 0; k < 26; ++k) {
    std::array<double, 3> d = {gauss(rng), gauss(rng), gauss(rng)};
    const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    for (auto& v : d) v /= norm;
    dirs.push_back(d);
  }
  const double step = 1e-4;
  std::vector<ChshVertex> out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    ChshVertex v;
    v.name = "C" + std::to_string(i + 1);
    v.lambda = coords[i][0];
    v.mu = coords[i][1];
    v.q = coords[i][2];
    v.M = chsh_solution_set(v.lambda, v.mu, v.q).M;
    v.extremal = true;
    for (const auto& d : dirs) {
      const bool fwd = chsh_solution_set(v.lambda + step * d[0],
                                         v.mu + step * d[1],
                                         v.q + step * d[2])
                           .feasible;
      const bool bwd = chsh_solution_set(v.lambda - step * d[0],
                                         v.mu - step * d[1],
                                         v.q - step * d[2])
                           .feasible;
      if (fwd && bwd) {
        v.extremal = false;
        break;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// --- theta = pi/8 parameterization --------------------------------------

inline Eigen::MatrixXd pi8_gram_numeric(double beta, double gamma,
                                        double lambda) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double scale = std::sqrt(6.0) / 16.0;
  const auto g = pi8_gram(beta, gamma, lambda, inv_sqrt2, scale);
  Eigen::MatrixXd m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = g[i][j];
  return m;
}

inline bool pi8_feasible(double beta, double gamma, double lambda,
                         double tol = 1e-10) {
  const Eigen::MatrixXd m = pi8_gram_numeric(beta, gamma, lambda);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0) >=
         -tol;
}

struct Pi8Cusp {
  double beta = 0, gamma = 0, lambda = 0;
  Eigen::MatrixXd M;
  // Rank-one factors of the 3-block and the 2-block; sign fixed to match
  // the reference rows.
  Eigen::VectorXd factor3, factor2;
  double match_error = 0.0;
};

/// The two cusp points of the theta = pi/8 solution set, with rank-one
/// factorizations of both symmetry blocks recovered and matched against
/// the known coefficient rows up to sign.
inline std::vector<Pi8Cusp> pi8_cusps(double rank_tol = 1e-9) {
  const double root_scale = std::sqrt(std::sqrt(6.0) / 16.0);
  struct Ref {
    double beta, gamma, lambda;
    std::array<double, 3> row3;
    std::array<double, 2> row2;
  };
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const std::vector<Ref> refs = {
      {0.5, -1.0 / 3.0, 0.0, {1.0 / s2, -1.0, -1.0}, {0.0, -1.0}},
      {1.5, 1.0 / 3.0, 8.0 / 3.0,
       {-std::sqrt(1.5), 1.0 / s3, -1.0 / s3},
       {-2.0 * std::sqrt(2.0 / 3.0), 1.0 / s3}},
  };
  std::vector<Pi8Cusp> out;
  for (const auto& ref : refs) {
    Pi8Cusp cusp;
    cusp.beta = ref.beta;
    cusp.gamma = ref.gamma;
    cusp.lambda = ref.lambda;
    cusp.M = pi8_gram_numeric(ref.beta, ref.gamma, ref.lambda);

    auto rank_one_factor = [rank_tol](const Eigen::MatrixXd& block) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
      const Eigen::VectorXd ev = es.eigenvalues();
      const double top = ev(ev.size() - 1);
      for (Eigen::Index i = 0; i + 1 < ev.size(); ++i)
        if (std::abs(ev(i)) > rank_tol * std::max(1.0, top))
          throw RankError("block is not rank one: eigenvalue " +
                          std::to_string(ev(i)));
      return Eigen::VectorXd(std::sqrt(top) *
                             es.eigenvectors().col(ev.size() - 1));
    };
    cusp.factor3 = rank_one_factor(cusp.M.topLeftCorner(3, 3));
    cusp.factor2 = rank_one_factor(cusp.M.bottomRightCorner(2, 2));

    auto match = [root_scale](Eigen::VectorXd& w, const double* row,
                              int n) {
      Eigen::VectorXd target(n);
      for (int i = 0; i < n; ++i) target(i) = root_scale * row[i];
      if ((w + target).norm() < (w - target).norm()) w = -w;
      return (w - target).norm();
    };
    cusp.match_error =
        std::max(match(cusp.factor3, ref.row3.data(), 3),
                 match(cusp.factor2, ref.row2.data(), 2));
    out.push_back(std::move(cusp));
  }
  return out;
}

// --- Feasible-region point clouds ---------------------------------------

struct RegionPoint {
  std::array<double, 3> param;
  double min_eig = 0.0;
};

namespace detail {

/// Affine parameterization of symmetric (3+2 block) solutions of the
/// constraint system over the five-element basis: particular solution
/// plus nullspace directions in the 9 block coordinates.
struct SymmetricFamily {
  Eigen::VectorXd origin;              // 9 block coordinates
  std::vector<Eigen::VectorXd> dirs;   // nullspace basis
};

inline Eigen::MatrixXd blocks_to_matrix(const Eigen::VectorXd& x) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  static const std::array<std::pair<int, int>, 9> pairs = {{
      {0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}, {3, 3}, {3, 4}, {4, 4},
  }};
  for (int k = 0; k < 9; ++k) {
    const auto [i, j] = pairs[k];
    m(i, j) = m(j, i) = x(k);
  }
  return m;
}

inline SymmetricFamily symmetric_family(double theta) {
  const auto cs = build_constraints(theta, r_basis_numeric(theta));
  static const std::array<std::pair<int, int>, 9> pairs = {{
      {0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}, {3, 3}, {3, 4}, {4, 4},
  }};
  Eigen::MatrixXd A(25, 9);
  for (int i = 0; i < 25; ++i)
    for (int k = 0; k < 9; ++k) {
      const auto [a, b] = pairs[k];
      A(i, k) = a == b ? cs.F[i](a, b) : 2.0 * cs.F[i](a, b);
    }
  SymmetricFamily fam;
  // Center the parameterization on a feasible point so the grid straddles
  // the region.
  const Eigen::MatrixXd m0 = symmetrize(solve_feasible(cs).M);
  fam.origin = Eigen::VectorXd(9);
  for (int k = 0; k < 9; ++k) {
    const auto [a, b] = pairs[k];
    fam.origin(k) = m0(a, b);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  for (Eigen::Index k = 0; k < 9; ++k) {
    const double sv =
        k < svd.singularValues().size() ? svd.singularValues()(k) : 0.0;
    if (sv <= 1e-10 * smax) fam.dirs.push_back(svd.matrixV().col(k));
  }
  return fam;
}

}  // namespace detail

/// Point cloud of the symmetric feasible region at the given theta.
/// At pi/4 the coordinates are (lambda, mu, q); at pi/8 they are
/// (beta, gamma, lambda); otherwise they are coefficients along the
/// nullspace directions of the constraint system.
inline std::vector<RegionPoint> region_points(double theta, int grid) {
  std::vector<RegionPoint> out;
  const double pi4 = std::atan(1.0);
  auto lin = [grid](double lo, double hi, int i) {
    return grid == 1 ? lo : lo + (hi - lo) * i / double(grid - 1);
  };
  if (std::abs(theta - pi4) < 1e-12) {
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j)
        for (int k = 0; k < grid; ++k) {
          const double l = lin(0, 1, i), m = lin(0, 1, j),
                       q = lin(0, 0.5, k);
          const auto pt = chsh_solution_set(l, m, q);
          if (!pt.feasible) continue;
          const double min_eig =
              Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(pt.M)
                  .eigenvalues()(0);
          out.push_back({{l, m, q}, min_eig});
        }
    return out;
  }
  if (std::abs(theta - pi4 / 2) < 1e-12) {
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j)
        for (int k = 0; k < grid; ++k) {
          const double b = lin(0, 2, i), g = lin(-0.5, 0.5, j),
                       l = lin(0, 3, k);
          const Eigen::MatrixXd m = pi8_gram_numeric(b, g, l);
          const double min_eig =
              Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m)
                  .eigenvalues()(0);
          if (min_eig < -1e-10) continue;
          out.push_back({{b, g, l}, min_eig});
        }
    return out;
  }
  const auto fam = detail::symmetric_family(theta);
  if (fam.dirs.size() != 3)
    throw RankError("expected a 3-parameter symmetric family, found " +
                    std::to_string(fam.dirs.size()));
  // Size the box from the region's extent along each direction.
  std::array<double, 3> extent;
  for (int d = 0; d < 3; ++d) {
    double ext = 1e-3;
    for (double sign : {1.0, -1.0}) {
      double lo = 0, hi = 8;
      auto ok = [&](double t) {
        const Eigen::MatrixXd m =
            detail::blocks_to_matrix(fam.origin + sign * t * fam.dirs[d]);
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m)
                   .eigenvalues()(0) >= -1e-10;
      };
      if (ok(hi)) {
        ext = hi;
        continue;
      }
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      ext = std::max(ext, lo);
    }
    extent[d] = 1.05 * ext;
  }
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        const std::array<double, 3> t = {lin(-extent[0], extent[0], i),
                                         lin(-extent[1], extent[1], j),
                                         lin(-extent[2], extent[2], k)};
        Eigen::VectorXd x = fam.origin;
        for (int d = 0; d < 3; ++d) x += t[d] * fam.dirs[d];
        const Eigen::MatrixXd m = detail::blocks_to_matrix(x);
        const double min_eig =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0);
        if (min_eig < -1e-10) continue;
        out.push_back({t, min_eig});
      }
  return out;
}

}  // namespace tilted

#endif  // TILTED_SDP_HPP
