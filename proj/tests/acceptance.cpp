// End-to-end acceptance checks. Each criterion prints exactly one
// pass/fail line; the exit status is nonzero if any criterion fails.

#include "tilted/cert_io.hpp"
#include "tilted/qubit.hpp"
#include "tilted/sdp.hpp"
#include "tilted/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

using namespace tilted;

namespace {

const double kPi = 4 * std::atan(1.0);

bool g_all_ok = true;

void report(int n, const std::string& what, bool ok) {
  std::printf("criterion %d [%s]: %s\n", n, ok ? "PASS" : "FAIL",
              what.c_str());
  g_all_ok = g_all_ok && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. The whole exact certificate suite verifies within the time budget.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& e : certificate_library()) ok = ok && e.verify().ok;
  ok = ok && s5_relation_check().ok;
  for (const auto& r : linear_decompositions_check()) ok = ok && r.ok;
  const double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "exact verification of the full certificate library (%.2fs)",
                dt);
  report(1, buf, ok);
}

// 2. Reference systems reach the quantum maximum and are annihilated by
// the shifted operator.
void criterion2() {
  bool ok = true;
  for (double t : {0.2, kPi / 8, kPi / 6, kPi / 5, kPi / 4}) {
    const auto sys = reference_system(t);
    const auto ctx = numeric_context(t);
    const double val = expectation(tilted_chsh(ctx), sys);
    ok = ok &&
         std::abs(val - std::sqrt(8 + 2 * ctx.alpha * ctx.alpha)) <= 1e-10;
    const Vec res = represent(shifted_bell(ctx), sys) * sys.state;
    ok = ok && res.norm() <= 1e-10;
  }
  report(2, "reference systems attain sqrt(8 + 2 alpha^2) exactly", ok);
}

// 3. The best deterministic strategy scores exactly 2 + alpha.
void criterion3() {
  bool ok = true;
  for (double t : {0.15, kPi / 8, kPi / 6, 0.6, kPi / 4}) {
    const double alpha = numeric_context(t).alpha;
    double best = -1e18;
    for (int m = 0; m < 16; ++m) {
      const double a0 = (m & 1) ? 1 : -1, a1 = (m & 2) ? 1 : -1;
      const double b0 = (m & 4) ? 1 : -1, b1 = (m & 8) ? 1 : -1;
      best = std::max(best,
                      alpha * a0 + a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1);
    }
    ok = ok && std::abs(best - (2 + alpha)) <= 1e-12;
  }
  report(3, "deterministic strategies peak at exactly 2 + alpha", ok);
}

// 4. Closed-form description of the pi/4 certificate set matches the PSD
// cone on a grid, and the numeric solver lands inside it.
void criterion4() {
  bool ok = true;
  int disagreements = 0;
  const int n = 21;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double l = -0.2 + 1.4 * i / (n - 1);
        const double m = -0.2 + 1.4 * j / (n - 1);
        const double q = -0.2 + 1.4 * k / (n - 1);
        const auto pt = chsh_solution_set(l, m, q);
        const double eig =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(pt.M)
                .eigenvalues()(0);
        // only points safely away from the boundary are decisive
        if (eig > 1e-6 && !pt.feasible) ++disagreements;
        if (eig < -1e-6 && pt.feasible) ++disagreements;
      }
  ok = ok && disagreements == 0;
  const auto cs = build_constraints(kPi / 4, r_basis_numeric(kPi / 4));
  try {
    const Eigen::MatrixXd m = symmetrize(solve_feasible(cs).M);
    const double sc = 2 * std::sqrt(2.0);
    ok = ok && chsh_solution_set(m(0, 0) * sc, m(3, 3) * sc, m(4, 4) * sc,
                                 1e-8)
                   .feasible;
  } catch (const Infeasible&) {
    ok = false;
  }
  report(4, "closed-form certificate set agrees with the PSD cone", ok);
}

// 5. The two pi/8 cusp certificates factor through the published rows.
void criterion5() {
  bool ok = true;
  try {
    const auto cusps = pi8_cusps();
    ok = cusps.size() == 2;
    for (const auto& c : cusps) ok = ok && c.match_error <= 1e-8;
  } catch (...) {
    ok = false;
  }
  report(5, "pi/8 cusps are rank-one and match the reference rows", ok);
}

// 6. The audit of the earlier single-certificate construction reproduces
// its validity window.
void criterion6() {
  bool ok = true;
  try {
    const auto rep = audit_yn();
    ok = std::abs(rep.lower_endpoint - 0.07574) <= 1e-4 &&
         std::abs(rep.upper_endpoint - 0.73014) <= 1e-4 &&
         rep.q_span_rank == 4;
  } catch (...) {
    ok = false;
  }
  report(6, "validity-window audit reproduces the published endpoints", ok);
}

// 7. All robustness bounds hold for three noise models across visibilities
// and angles, and scale as sqrt(epsilon).
void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (double t : {kPi / 8, kPi / 6, kPi / 4}) {
    for (double v : {0.999, 0.99, 0.95}) {
      for (int model = 0; model < 3; ++model) {
        const QubitSystem sys = model == 0   ? depolarized_system(t, v)
                                : model == 1 ? rotated_system(t, v)
                                             : junk_system(t, v);
        ok = ok && selftest_report(sys).ok;
      }
    }
    const auto f1 = delta_family(t, 1e-4);
    const auto f4 = delta_family(t, 4e-4);
    ok = ok && std::abs(f4.delta_bar - 2 * f1.delta_bar) <= 1e-12 &&
         std::abs(f4.e[2][2] - 2 * f1.e[2][2]) <= 1e-12;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "robustness bounds hold for all noise models (%.2fs)", dt);
  report(7, buf, ok);
}

// 8. Negative controls: corrupted inputs are rejected, not silently
// accepted.
void criterion8() {
  bool ok = true;
  // a deliberately wrong squared-form certificate must fail
  {
    const auto ctx = symbolic_context();
    const auto s = s_polys(ctx);
    const Scalar w = Scalar(1) / (Scalar(2) * ctx.imax);
    SquaredFormCertificate<Scalar> bad{
        "bad", {{w, s[0]}, {w, s[2]}}, shifted_bell(ctx)};
    ok = ok && !verify_exact(bad).ok;
  }
  // a negated target has no SOS decomposition
  {
    auto cs = build_constraints(kPi / 4, r_basis_numeric(kPi / 4));
    cs.s = -cs.s;
    bool threw = false;
    try {
      solve_feasible(cs);
    } catch (const Infeasible&) {
      threw = true;
    }
    ok = ok && threw;
  }
  // a non-dichotomic observable is rejected before any bound is computed
  {
    auto sys = reference_system(0.4);
    sys.A0 *= 0.5;
    bool threw = false;
    try {
      selftest_report(sys);
    } catch (const NonDichotomicError&) {
      threw = true;
    }
    ok = ok && threw;
  }
  report(8, "negative controls are rejected", ok);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  return g_all_ok ? 0 : 1;
}
