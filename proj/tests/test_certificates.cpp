#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilted/cert_io.hpp"
#include "tilted/qubit.hpp"

#include <cmath>
#include <random>

using namespace tilted;

TEST_CASE("every library certificate verifies exactly") {
  const auto lib = certificate_library();
  CHECK(lib.size() == 13);
  for (const auto& e : lib) {
    const auto rep = e.verify();
    INFO(e.name, ": ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("certified forms are PSD on the qubit representation") {
  std::mt19937 rng(24680);
  std::uniform_real_distribution<double> angle(0.05, std::atan(1.0));
  const auto ctx = symbolic_context();
  const auto target = shifted_bell(ctx);
  for (int k = 0; k < 10; ++k) {
    const double t = angle(rng);
    const auto sys = reference_system(t);
    const Mat img = represent(target, sys);
    Eigen::SelfAdjointEigenSolver<Mat> es(img);
    CHECK(es.eigenvalues()(0) >= -1e-10);
    CHECK(std::abs(expectation(target, sys)) <= 1e-10);
  }
}

TEST_CASE("symmetry maps certificates to valid certificates") {
  // Transport a squared-form certificate through the symmetry: the target
  // is invariant, so the transformed certificate must verify too.
  const auto ctx = symbolic_context();
  const auto s = s_polys(ctx);
  const Scalar w = Scalar(1) / (Scalar(2) * ctx.imax);
  SquaredFormCertificate<Scalar> cert{
      "sos1-sym",
      {{w, symmetry_action(s[0])}, {w, symmetry_action(s[1])}},
      shifted_bell(ctx)};
  CHECK(verify_exact(cert).ok);
}

TEST_CASE("C1-C4 equivalence under left multiplication") {
  const auto ctx = pi4_context();
  const auto rb = r_basis(ctx);
  using P = NcPoly<QuadScalar>;
  // R2 = A0 R1 implies R2^dag R2 = R1^dag R1
  CHECK(rb[1] == P::a(0) * rb[0]);
  CHECK(rb[1].adjoint() * rb[1] == rb[0].adjoint() * rb[0]);
  // and similarly R3 = A1 R4
  CHECK(rb[2] == P::a(1) * rb[3]);
  CHECK(rb[2].adjoint() * rb[2] == rb[3].adjoint() * rb[3]);
}

TEST_CASE("s5 relation and linear decompositions") {
  CHECK(s5_relation_check().ok);
  for (const auto& rep : linear_decompositions_check()) {
    INFO(rep.name, ": ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("candidate space is five dimensional and matches both spans") {
  CHECK_NOTHROW(candidate_space());
}

TEST_CASE("gram square root") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Eigen::MatrixXd f = gram_sqrt(m);
  CHECK((f.transpose() * f - m).norm() <= 1e-12);
  Eigen::MatrixXd neg(2, 2);
  neg << 1, 0, 0, -1;
  CHECK_THROWS(gram_sqrt(neg));
}

TEST_CASE("numeric verification accepts the evaluated symbolic certificate") {
  const double theta = 0.37;
  const auto sym_ctx = symbolic_context();
  const auto rb_sym = r_basis(sym_ctx);
  // C5-style numeric Gram at pi/4 instead: evaluate the symbolic R basis
  // and use the closed-form CHSH Gram.
  const double pi4 = std::atan(1.0);
  GramCertificate<double> cert;
  cert.name = "numeric-c5";
  for (const auto& r : rb_sym) {
    NcPoly<double> p;
    for (const auto& [m, c] : r.terms()) p.add_term(m, c.eval(pi4));
    cert.basis.push_back(p);
  }
  const double sc = 1.0 / (2 * std::sqrt(2.0));
  cert.gram = chsh_gram(0.0, 0.0, 0.5, sc);
  cert.target = shifted_bell(numeric_context(pi4));
  CHECK(verify_numeric(cert).ok);
  (void)theta;
}

TEST_CASE("certificate files round trip and verify") {
  // exact file from the symbolic general certificate, in Gram form over
  // the S polynomials
  const auto ctx = symbolic_context();
  const auto s = s_polys(ctx);
  const Scalar w = Scalar(1) / (Scalar(2) * ctx.imax);
  GramCertificate<Scalar> cert;
  cert.name = "sos1-gram";
  cert.basis = {s[0], s[1]};
  cert.gram = {{w, Scalar(0)}, {Scalar(0), w}};
  cert.target = shifted_bell(ctx);
  REQUIRE(verify_exact(cert).ok);
  const auto j = certificate_to_json(cert);
  CHECK(verify_certificate_json(j).ok);

  // corrupt one Gram entry: verification must fail
  auto bad = j;
  bad["gram"][0][1] = Scalar(1).to_json();
  CHECK_FALSE(verify_certificate_json(bad).ok);
}

TEST_CASE("corrupted library certificate fails") {
  const auto ctx = symbolic_context();
  const auto s = s_polys(ctx);
  const Scalar w = Scalar(1) / (Scalar(2) * ctx.imax);
  SquaredFormCertificate<Scalar> cert{
      "sos1-bad", {{w, s[0]}, {w, s[2]}}, shifted_bell(ctx)};
  CHECK_FALSE(verify_exact(cert).ok);
}

TEST_CASE("prior-certificate audit") {
  const auto rep = audit_yn();
  CHECK(std::abs(rep.lower_endpoint - 0.07574) <= 1e-4);
  CHECK(std::abs(rep.upper_endpoint - 0.73014) <= 1e-4);
  CHECK(rep.q_span_rank == 4);
  CHECK(rep.radicand_at_pi8 > 0);
  // pi/8 lies inside the validity window
  const double pi8 = std::atan(1.0) / 2;
  CHECK(rep.lower_endpoint < pi8);
  CHECK(pi8 < rep.upper_endpoint);
}
