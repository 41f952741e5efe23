#ifndef TILTED_SELFTEST_HPP
#define TILTED_SELFTEST_HPP

#include "tilted/qubit.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace tilted {

struct DegenerateJunk : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The full family of robustness bounds, all proportional to
/// sqrt(epsilon) at fixed theta. e maps are indexed by (x+1, y+1) with
/// x, y in {-1, 0, 1}, where -1 stands for the identity operator.
struct DeltaFamily {
  double theta = 0, epsilon = 0;
  double delta = 0;
  double delta1 = 0, delta2 = 0, delta4 = 0, delta5 = 0;
  double delta_aA = 0, delta_aB = 0;
  double delta2p = 0, delta_bar = 0;
  double s5_bound = 0;
  std::array<std::array<double, 3>, 3> e_prime{};
  std::array<std::array<double, 3>, 3> e{};
};

inline DeltaFamily delta_family(double theta, double epsilon) {
  const auto ctx = numeric_context(theta);
  const double c = ctx.c, s = ctx.s, rt = ctx.sqrt1ps2;
  const double s2 = s * s;
  DeltaFamily f;
  f.theta = theta;
  f.epsilon = epsilon;
  f.delta = std::sqrt(2.0 * ctx.imax) * std::sqrt(epsilon);
  f.delta1 = (1 + c) * (c + rt) / (2 * s2) * f.delta;
  f.delta2 = rt / (8 * ctx.sin_t) * ((2 - c) + rt) * f.delta;
  f.delta5 = rt * (c + rt) / (4 * s) * f.delta;
  f.delta_aA = rt / (2 * s2) * (1 + c + rt) * f.delta;
  // cot(mu) = 1/s and 1/cos(mu) = sqrt(1+s^2).
  f.delta4 = (1 + rt) / s2 * f.delta1;
  f.delta2p = f.delta2 + 2 * f.delta4 * ctx.cos_t + f.delta1 * ctx.sin_t;
  f.delta_bar = (4 + ctx.sin_t / ctx.cos_t) * f.delta1 +
                f.delta2p / (2 * ctx.cos_t);
  f.delta_aB = 2 * f.delta1 + 2 * f.delta4 + 2 * f.delta5 +
               (1 + c / ctx.cos_mu) / s * (2 * f.delta1 + f.delta_aA);
  f.s5_bound = (c + rt) / 2 * f.delta;

  const double eb =
      f.delta1 * ctx.cos_mu + (f.delta4 + 2 * f.delta_aB) * ctx.sin_mu;
  f.e_prime = {{{0, eb, eb}, {0, eb, eb},
                {2 * f.delta_aA, 2 * f.delta_aA + eb, 2 * f.delta_aA + eb}}};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      f.e[x][y] = f.e_prime[x][y] + 2 * f.delta_bar;
  return f;
}

/// Spectral sign with the convention that near-zero eigenvalues become +1;
/// the result is unitary, hermitian, and satisfies result * H = |H|.
inline Mat regularize(const Mat& h, double zero_tol = 1e-9) {
  check_hermitian(h, "regularize input");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    ev(i) = std::abs(ev(i)) < zero_tol ? 1.0 : (ev(i) < 0 ? -1.0 : 1.0);
  return es.eigenvectors() * ev.cast<Cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// The X/Z operators recovered from the observables (full-space matrices),
/// plus their regularized versions.
struct SwapOperators {
  Mat tZA, tXA, tZB, tXB;  // recovered operators
  Mat ZA, XA, ZB, XB;      // regularized (unitary hermitian)
  int d = 0;
};

inline SwapOperators swap_operators(const QubitSystem& sys) {
  const auto ctx = numeric_context(sys.theta);
  const Mat ia = Mat::Identity(sys.d_a, sys.d_a);
  const Mat ib = Mat::Identity(sys.d_b, sys.d_b);
  SwapOperators ops;
  ops.d = sys.d_a * sys.d_b;
  ops.tZA = kron(sys.A0, ib);
  ops.tXA = kron(sys.A1, ib);
  ops.tZB = kron(ia, (sys.B0 + sys.B1) / (2 * ctx.cos_mu));
  ops.tXB = kron(ia, (sys.B0 - sys.B1) / (2 * ctx.sin_mu));
  ops.ZA = regularize(ops.tZA);
  ops.XA = regularize(ops.tXA);
  ops.ZB = regularize(ops.tZB);
  ops.XB = regularize(ops.tXB);
  return ops;
}

/// Action of the two-ancilla swap circuit on a full-space vector. Output
/// layout: physical index major, then Alice's ancilla, then Bob's
/// (index p*4 + a*2 + b).
inline Vec phi_apply(const SwapOperators& ops, const Vec& v) {
  const int d = ops.d;
  const Mat id = Mat::Identity(d, d);
  const std::array<Vec, 4> terms = {
      Vec((id + ops.ZA) * (id + ops.ZB) * v),
      Vec(ops.XB * (id + ops.ZA) * (id - ops.ZB) * v),
      Vec(ops.XA * (id - ops.ZA) * (id + ops.ZB) * v),
      Vec(ops.XA * ops.XB * (id - ops.ZA) * (id - ops.ZB) * v),
  };
  Vec out = Vec::Zero(4 * d);
  for (int anc = 0; anc < 4; ++anc)
    for (int p = 0; p < d; ++p) out(p * 4 + anc) = 0.25 * terms[anc](p);
  return out;
}

/// Reference ancilla observables at the given theta (x or y = -1 is the
/// identity).
inline Mat ancilla_observable(int party_op, bool alice, double theta) {
  Mat sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  if (party_op < 0) return Mat::Identity(2, 2);
  if (alice) return party_op == 0 ? sz : sx;
  const double mu = std::atan(std::sin(2 * theta));
  return party_op == 0 ? Mat(std::cos(mu) * sz + std::sin(mu) * sx)
                       : Mat(std::cos(mu) * sz - std::sin(mu) * sx);
}

struct IsometryOutput {
  Vec output;          // dimension 4 d
  Vec junk;            // dimension d
  double beta = 0.0;
};

inline IsometryOutput swap_isometry_state(const SwapOperators& ops,
                                          const Vec& state, double theta) {
  IsometryOutput out;
  out.output = phi_apply(ops, state);
  const Mat id = Mat::Identity(ops.d, ops.d);
  const Vec proj = (id + ops.ZA) * state;
  if (proj.norm() < 1e-12)
    throw DegenerateJunk("(I + Z'_A) annihilates the state");
  const Vec unnorm = proj / (2 * std::cos(theta));
  out.beta = unnorm.norm();
  out.junk = unnorm / out.beta;
  return out;
}

inline IsometryOutput swap_isometry(const QubitSystem& sys) {
  validate_dichotomic(sys);
  return swap_isometry_state(swap_operators(sys), sys.state, sys.theta);
}

/// One measured quantity against its theoretical bound.
struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool ok = false;
};

inline BoundCheck make_check(const std::string& name, double measured,
                             double bound, double slack = 1e-9) {
  return {name, measured, bound, measured <= bound + slack};
}

/// Measured norms of the five S_i acting on the state, plus the four
/// recovered-operator combinations, against their bounds.
inline std::vector<BoundCheck> sos_norm_bounds(const QubitSystem& sys) {
  validate_dichotomic(sys);
  const double eps = std::max(0.0, measured_epsilon(sys));
  const DeltaFamily f = delta_family(sys.theta, eps);
  const auto ctx = numeric_context(sys.theta);
  const auto s_ops = s_polys(ctx);
  std::vector<BoundCheck> out;
  for (int i = 0; i < 5; ++i) {
    const double n = (represent(s_ops[i], sys) * sys.state).norm();
    out.push_back(make_check("S" + std::to_string(i + 1) + "-norm", n,
                             i < 4 ? f.delta : f.s5_bound));
  }
  const auto ops = swap_operators(sys);
  const Mat id = Mat::Identity(ops.d, ops.d);
  auto norm_of = [&](const Mat& m) { return (m * sys.state).norm(); };
  out.push_back(make_check("za-zb", norm_of(ops.tZA - ops.tZB), f.delta1));
  out.push_back(make_check(
      "projector",
      norm_of(ctx.sin_t * ops.tXA * (id + ops.tZB) -
              ctx.cos_t * ops.tXB * (id - ops.tZA)),
      f.delta2));
  out.push_back(make_check(
      "xb-combination",
      norm_of(ops.tXB - (1.0 / ctx.s) * ops.tXA * (id - ctx.c * ops.tZB)),
      f.delta5));
  out.push_back(make_check("alice-anticommutator",
                           norm_of(ops.tZA * ops.tXA + ops.tXA * ops.tZA),
                           f.delta_aA));
  return out;
}

/// The regularized-operator chain: each intermediate inequality of the
/// robustness proof, measured on the system.
inline std::vector<BoundCheck> regularized_norm_bounds(
    const QubitSystem& sys) {
  validate_dichotomic(sys);
  const double eps = std::max(0.0, measured_epsilon(sys));
  const DeltaFamily f = delta_family(sys.theta, eps);
  const auto ctx = numeric_context(sys.theta);
  const auto ops = swap_operators(sys);
  const Mat id = Mat::Identity(ops.d, ops.d);
  auto norm_of = [&](const Mat& m) { return (m * sys.state).norm(); };

  std::vector<BoundCheck> out;
  out.push_back(make_check("reg-zb", norm_of(ops.ZB - ops.tZB), f.delta1));
  out.push_back(make_check("reg-zab", norm_of(ops.ZB - ops.ZA),
                           2 * f.delta1));
  out.push_back(make_check("reg-xb", norm_of(ops.XB - ops.tXB), f.delta4));
  out.push_back(make_check(
      "reg-projector",
      norm_of(ctx.cos_t * ops.XB * (id - ops.ZA) -
              ctx.sin_t * ops.XA * (id + ops.ZB)),
      f.delta2p));
  out.push_back(make_check("bob-anticommutator",
                           norm_of(ops.XB * ops.ZB + ops.ZB * ops.XB),
                           f.delta_aB));

  const auto iso = swap_isometry_state(ops, sys.state, sys.theta);
  Mat sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  // The recovered Z/X operators map to the ancilla Pauli operators.
  auto single = [&](const std::string& name, const Mat& phys, bool alice,
                    const Mat& anc, double bound) {
    const Vec lhs = phi_apply(ops, phys * sys.state);
    Vec rhs = Vec::Zero(4 * ops.d);
    for (int p = 0; p < ops.d; ++p)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Cplx acc = 0;
          for (int k = 0; k < 2; ++k)
            acc += alice ? anc(a, k) * iso.output(p * 4 + k * 2 + b)
                         : anc(b, k) * iso.output(p * 4 + a * 2 + k);
          rhs(p * 4 + a * 2 + b) = acc;
        }
    out.push_back(make_check(name, (lhs - rhs).norm(), bound));
  };
  single("iso-za", ops.tZA, true, sz, 0.0);
  single("iso-xa", ops.tXA, true, sx, 2 * f.delta_aA);
  single("iso-zb", ops.tZB, false, sz, f.delta1);
  single("iso-xb", ops.tXB, false, sx, f.delta4 + 2 * f.delta_aB);

  // Tensor-product structure and normalization of the junk state.
  const auto ref = reference_system(sys.theta);
  Vec prod = Vec::Zero(4 * ops.d);
  for (int p = 0; p < ops.d; ++p)
    for (int anc = 0; anc < 4; ++anc)
      prod(p * 4 + anc) = iso.junk(p) * ref.state(anc);
  out.push_back(make_check("iso-state-beta",
                           (iso.output - iso.beta * prod).norm(),
                           f.delta_bar));
  out.push_back(make_check("beta-sandwich", std::abs(1.0 - iso.beta),
                           f.delta_bar));
  out.push_back(
      make_check("iso-state", (iso.output - prod).norm(), 2 * f.delta_bar));
  return out;
}

/// The nine isometry distances of the self-testing statement, each against
/// e_{xy} with epsilon measured from the system.
inline std::vector<BoundCheck> selftest_distances(const QubitSystem& sys) {
  validate_dichotomic(sys);
  const double eps = std::max(0.0, measured_epsilon(sys));
  const DeltaFamily f = delta_family(sys.theta, eps);
  const auto ops = swap_operators(sys);
  const auto iso = swap_isometry_state(ops, sys.state, sys.theta);
  const auto ref = reference_system(sys.theta);
  const Mat ia = Mat::Identity(sys.d_a, sys.d_a);
  const Mat ib = Mat::Identity(sys.d_b, sys.d_b);

  std::vector<BoundCheck> out;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y) {
      const Mat ax = x < 0 ? ia : sys.alice_obs(x);
      const Mat by = y < 0 ? ib : sys.bob_obs(y);
      const Vec lhs = phi_apply(ops, kron(ax, by) * sys.state);

      const Mat ra = ancilla_observable(x, true, sys.theta);
      const Mat rb = ancilla_observable(y, false, sys.theta);
      const Vec anc = kron(ra, rb) * ref.state;
      Vec rhs = Vec::Zero(lhs.size());
      for (int p = 0; p < ops.d; ++p)
        for (int k = 0; k < 4; ++k) rhs(p * 4 + k) = iso.junk(p) * anc(k);

      std::ostringstream name;
      name << "e(" << x << "," << y << ")";
      out.push_back(
          make_check(name.str(), (lhs - rhs).norm(), f.e[x + 1][y + 1]));
    }
  return out;
}

/// Aggregate report for a single system.
struct SelftestReport {
  double theta = 0, epsilon = 0, beta = 0;
  DeltaFamily family;
  std::vector<BoundCheck> checks;
  bool ok = false;
};

inline SelftestReport selftest_report(const QubitSystem& sys) {
  SelftestReport rep;
  rep.theta = sys.theta;
  rep.epsilon = std::max(0.0, measured_epsilon(sys));
  rep.family = delta_family(sys.theta, rep.epsilon);
  rep.beta = swap_isometry(sys).beta;
  for (auto& c : sos_norm_bounds(sys)) rep.checks.push_back(c);
  for (auto& c : regularized_norm_bounds(sys)) rep.checks.push_back(c);
  for (auto& c : selftest_distances(sys)) rep.checks.push_back(c);
  rep.ok = true;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.ok;
  return rep;
}

// --- Noise models --------------------------------------------------------

/// Depolarized reference state rho = v |psi><psi| + (1-v) I/4, purified
/// with each party holding one environment qubit (d_A = d_B = 4).
inline QubitSystem depolarized_system(double theta, double v) {
  const QubitSystem ref = reference_system(theta);
  Mat rho = v * (ref.state * ref.state.adjoint()) +
            (1.0 - v) / 4.0 * Mat::Identity(4, 4);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);

  QubitSystem sys;
  sys.d_a = sys.d_b = 4;
  sys.theta = theta;
  sys.state = Vec::Zero(16);
  // Purification |Psi> = sum_k sqrt(p_k) |phi_k>_AB |k>_E, the 2-qubit
  // environment split between the parties: k = e_a * 2 + e_b.
  for (int k = 0; k < 4; ++k) {
    const double p = std::max(0.0, es.eigenvalues()(k));
    const Vec phi = es.eigenvectors().col(k);
    const int ea = k / 2, eb = k % 2;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        sys.state((a * 2 + ea) * 4 + (b * 2 + eb)) +=
            std::sqrt(p) * phi(a * 2 + b);
  }
  const Mat i2 = Mat::Identity(2, 2);
  sys.A0 = kron(ref.A0, i2);
  sys.A1 = kron(ref.A1, i2);
  sys.B0 = kron(ref.B0, i2);
  sys.B1 = kron(ref.B1, i2);
  return sys;
}

/// Reference system with Bob's measurement axes rotated by a small angle;
/// the rotation angle grows as the visibility parameter drops from 1.
inline QubitSystem rotated_system(double theta, double v) {
  QubitSystem sys = reference_system(theta);
  const double eta = 2.0 * (1.0 - v);
  // exp(-i eta sigma_y / 2) is a real rotation matrix.
  Mat rot(2, 2);
  rot << std::cos(eta / 2), -std::sin(eta / 2), std::sin(eta / 2),
      std::cos(eta / 2);
  sys.B0 = rot * sys.B0 * rot.adjoint();
  sys.B1 = rot * sys.B1 * rot.adjoint();
  return sys;
}

/// Reference system embedded with an extra junk qubit on Bob's side whose
/// block makes B0 + B1 vanish, so the recovered Z operator has exact zero
/// eigenvalues and regularization is exercised. A (1-v) amplitude leaks
/// onto the junk block.
inline QubitSystem junk_system(double theta, double v) {
  const QubitSystem ref = reference_system(theta);
  QubitSystem sys;
  sys.d_a = 2;
  sys.d_b = 4;
  sys.theta = theta;
  Mat sx(2, 2);
  sx << 0, 1, 1, 0;
  auto embed = [&](const Mat& main, const Mat& junkblock) {
    Mat out = Mat::Zero(4, 4);
    out.topLeftCorner(2, 2) = main;
    out.bottomRightCorner(2, 2) = junkblock;
    return out;
  };
  sys.A0 = ref.A0;
  sys.A1 = ref.A1;
  sys.B0 = embed(ref.B0, sx);
  sys.B1 = embed(ref.B1, -sx);
  const double leak = std::sqrt(std::max(0.0, 1.0 - v));
  Vec st = Vec::Zero(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      st(a * 4 + b) = std::sqrt(v) * ref.state(a * 2 + b);
  st(0 * 4 + 2) = leak;  // |0>_A |junk0>_B
  sys.state = st / st.norm();
  return sys;
}

// --- Bound sweep ---------------------------------------------------------

/// CSV table of the delta family and e_{xy} bounds over a grid.
inline std::string bound_sweep(const std::vector<double>& thetas,
                               const std::vector<double>& epsilons) {
  std::ostringstream os;
  os << "theta,epsilon,delta,delta1,delta2,delta4,delta5,delta_aA,delta_aB,"
        "delta2p,delta_bar";
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y) os << ",e(" << x << ";" << y << ")";
  os << "\n";
  os.precision(12);
  for (double th : thetas)
    for (double ep : epsilons) {
      const DeltaFamily f = delta_family(th, ep);
      os << th << "," << ep << "," << f.delta << "," << f.delta1 << ","
         << f.delta2 << "," << f.delta4 << "," << f.delta5 << ","
         << f.delta_aA << "," << f.delta_aB << "," << f.delta2p << ","
         << f.delta_bar;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) os << "," << f.e[x][y];
      os << "\n";
    }
  return os.str();
}

}  // namespace tilted

#endif  // TILTED_SELFTEST_HPP
