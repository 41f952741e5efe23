#ifndef TILTED_QUBIT_HPP
#define TILTED_QUBIT_HPP

#include "tilted/bell_ops.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace tilted {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct NonHermitianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonDichotomicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

/// Concrete finite-dimensional system: a bipartite state and four hermitian
/// dichotomic observables. The state index is Alice-major: |ab> -> a*d_b + b.
struct QubitSystem {
  Vec state;
  Mat A0, A1, B0, B1;
  int d_a = 0, d_b = 0;
  double theta = 0.0;

  const Mat& alice_obs(int x) const { return x == 0 ? A0 : A1; }
  const Mat& bob_obs(int y) const { return y == 0 ? B0 : B1; }
};

inline void check_hermitian(const Mat& m, const std::string& name) {
  if ((m - m.adjoint()).norm() > 1e-9)
    throw NonHermitianError(name + " is not hermitian");
}

/// Observables must square to the identity up to tolerance (eigenvalues +-1).
inline void validate_dichotomic(const QubitSystem& sys, double tol = 1e-9) {
  auto check = [tol](const Mat& m, const std::string& name) {
    check_hermitian(m, name);
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double ev = es.eigenvalues()(i);
      if (std::abs(std::abs(ev) - 1.0) > tol)
        throw NonDichotomicError(name + " has eigenvalue " +
                                 std::to_string(ev));
    }
  };
  check(sys.A0, "A0");
  check(sys.A1, "A1");
  check(sys.B0, "B0");
  check(sys.B1, "B1");
  if (std::abs(sys.state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("state is not normalized");
}

/// Reference system: |psi> = cos(theta)|00> + sin(theta)|11>, A = Pauli Z/X,
/// B = rotated Pauli axes with tan(mu) = sin(2 theta).
inline QubitSystem reference_system(double theta) {
  if (!(theta > 0.0 && theta <= std::atan(1.0) + 1e-12))
    throw std::invalid_argument("reference_system: theta outside (0, pi/4]");
  Mat sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  const double mu = std::atan(std::sin(2 * theta));
  QubitSystem sys;
  sys.d_a = sys.d_b = 2;
  sys.theta = theta;
  sys.A0 = sz;
  sys.A1 = sx;
  sys.B0 = std::cos(mu) * sz + std::sin(mu) * sx;
  sys.B1 = std::cos(mu) * sz - std::sin(mu) * sx;
  sys.state = Vec::Zero(4);
  sys.state(0) = std::cos(theta);
  sys.state(3) = std::sin(theta);
  return sys;
}

/// Homomorphic matrix image of a noncommutative polynomial; scalar
/// coefficients are evaluated at the system's theta.
template <class S>
Mat represent(const NcPoly<S>& p, const QubitSystem& sys) {
  const int d = sys.d_a * sys.d_b;
  Mat out = Mat::Zero(d, d);
  const Mat id_a = Mat::Identity(sys.d_a, sys.d_a);
  const Mat id_b = Mat::Identity(sys.d_b, sys.d_b);
  for (const auto& [m, c] : p.terms()) {
    Mat am = id_a;
    for (auto l : m.alice()) am = am * sys.alice_obs(l);
    Mat bm = id_b;
    for (auto l : m.bob()) bm = bm * sys.bob_obs(l);
    out += scalar_to_double(c, sys.theta) * kron(am, bm);
  }
  return out;
}

template <class S>
double expectation(const NcPoly<S>& p, const QubitSystem& sys) {
  const Cplx val = sys.state.dot(represent(p, sys) * sys.state);
  if (std::abs(val.imag()) > 1e-10)
    throw NonHermitianError("expectation has imaginary part " +
                            std::to_string(val.imag()));
  return val.real();
}

/// Noise deficit epsilon = Imax - <I_alpha>, measured from the system.
inline double measured_epsilon(const QubitSystem& sys) {
  const auto ctx = numeric_context(sys.theta);
  return ctx.imax - expectation(tilted_chsh(ctx), sys);
}

// --- JSON system files: complex matrices as row-major [re, im] pairs. ---

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline Mat mat_from_json(const nlohmann::json& j) {
  const auto rows = j.size();
  const auto cols = rows ? j.at(0).size() : 0;
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = Cplx(j.at(i).at(k).at(0).get<double>(),
                     j.at(i).at(k).at(1).get<double>());
  return m;
}

inline nlohmann::json system_to_json(const QubitSystem& sys) {
  nlohmann::json st = nlohmann::json::array();
  for (Eigen::Index i = 0; i < sys.state.size(); ++i)
    st.push_back({sys.state(i).real(), sys.state(i).imag()});
  return nlohmann::json{{"d_a", sys.d_a},     {"d_b", sys.d_b},
                        {"theta", sys.theta}, {"state", st},
                        {"A0", mat_to_json(sys.A0)}, {"A1", mat_to_json(sys.A1)},
                        {"B0", mat_to_json(sys.B0)}, {"B1", mat_to_json(sys.B1)}};
}

inline QubitSystem system_from_json(const nlohmann::json& j) {
  QubitSystem sys;
  sys.d_a = j.at("d_a").get<int>();
  sys.d_b = j.at("d_b").get<int>();
  sys.theta = j.at("theta").get<double>();
  const auto& st = j.at("state");
  sys.state = Vec(st.size());
  for (std::size_t i = 0; i < st.size(); ++i)
    sys.state(i) = Cplx(st.at(i).at(0).get<double>(),
                        st.at(i).at(1).get<double>());
  sys.A0 = mat_from_json(j.at("A0"));
  sys.A1 = mat_from_json(j.at("A1"));
  sys.B0 = mat_from_json(j.at("B0"));
  sys.B1 = mat_from_json(j.at("B1"));
  if (sys.state.size() != sys.d_a * sys.d_b)
    throw std::invalid_argument("system file: state dimension mismatch");
  return sys;
}

}  // namespace tilted

#endif  // TILTED_QUBIT_HPP
