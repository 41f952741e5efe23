#ifndef TILTED_CERTIFICATES_HPP
#define TILTED_CERTIFICATES_HPP

#include "tilted/bell_ops.hpp"
#include "tilted/text_format.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tilted {

struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationReport {
  std::string name;
  bool ok = false;
  std::string detail;
};

template <class S>
using SosBasis = std::vector<NcPoly<S>>;

/// SOS certificate in Gram form: target = sum_{mu,nu} M^{mu nu} R_mu^dag R_nu
/// with M positive semidefinite.
template <class S>
struct GramCertificate {
  std::string name;
  SosBasis<S> basis;
  std::vector<std::vector<S>> gram;
  NcPoly<S> target;
};

/// SOS certificate as an explicit weighted sum of squares:
/// target = sum_i w_i P_i^dag P_i.
template <class S>
struct SquaredFormCertificate {
  std::string name;
  std::vector<std::pair<S, NcPoly<S>>> terms;
  NcPoly<S> target;
};

template <class S>
NcPoly<S> quadratic_form(const GramCertificate<S>& cert) {
  NcPoly<S> acc;
  const std::size_t n = cert.basis.size();
  for (std::size_t mu = 0; mu < n; ++mu) {
    const NcPoly<S> adj = cert.basis[mu].adjoint();
    for (std::size_t nu = 0; nu < n; ++nu) {
      const S& w = cert.gram[mu][nu];
      if (scalar_is_zero(w)) continue;
      acc = acc + w * (adj * cert.basis[nu]);
    }
  }
  return acc;
}

template <class S>
NcPoly<S> quadratic_form(const SquaredFormCertificate<S>& cert) {
  NcPoly<S> acc;
  for (const auto& [w, p] : cert.terms)
    acc = acc + w * (p.adjoint() * p);
  return acc;
}

/// Exact verification: the residual must vanish identically in the field.
template <class S, template <class> class Cert>
VerificationReport verify_exact(const Cert<S>& cert) {
  const NcPoly<S> residual = quadratic_form(cert) - cert.target;
  VerificationReport rep;
  rep.name = cert.name;
  rep.ok = residual.is_zero();
  if (!rep.ok) {
    rep.detail = "nonzero residual on " +
                 std::to_string(residual.terms().size()) + " monomials:";
    for (const auto& [m, c] : residual.terms()) rep.detail += " " + m.str();
  }
  return rep;
}

/// Numeric verification: residual coefficients below tolerance and Gram
/// matrix PSD up to -1e-10.
inline VerificationReport verify_numeric(const GramCertificate<double>& cert,
                                         double tol = 1e-9) {
  VerificationReport rep;
  rep.name = cert.name;
  const NcPoly<double> residual = quadratic_form(cert) - cert.target;
  double max_res = 0;
  for (const auto& [m, c] : residual.terms())
    max_res = std::max(max_res, std::abs(c));
  const std::size_t n = cert.basis.size();
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = cert.gram[i][j];
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (M + M.transpose()))
          .eigenvalues()(0);
  rep.ok = max_res <= tol && min_eig >= -1e-10;
  rep.detail = "max residual " + std::to_string(max_res) + ", min eig " +
               std::to_string(min_eig);
  return rep;
}

/// Square root of a numeric Gram matrix by symmetric eigendecomposition.
/// Eigenvalues in [-1e-12, 0] are clipped to zero; more negative values are
/// rejected. Returns F with F^T F = M.
inline Eigen::MatrixXd gram_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (m + m.transpose()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12)
      throw std::invalid_argument("gram_sqrt: matrix not PSD, eigenvalue " +
                                  std::to_string(ev(i)));
    if (ev(i) < 0) ev(i) = 0;
  }
  return ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

// --- Exact linear algebra over a field ----------------------------------

/// In-place row echelon reduction; returns the rank.
template <class S>
int row_reduce(std::vector<std::vector<S>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && scalar_is_zero(rows[sel][col])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pivot_row], rows[sel]);
    const S inv = S(1) / rows[pivot_row][col];
    for (std::size_t j = col; j < cols; ++j)
      rows[pivot_row][j] = inv * rows[pivot_row][j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || scalar_is_zero(rows[i][col])) continue;
      const S f = rows[i][col];
      for (std::size_t j = col; j < cols; ++j)
        rows[i][j] = rows[i][j] - f * rows[pivot_row][j];
    }
    ++pivot_row;
  }
  return static_cast<int>(pivot_row);
}

template <class S>
int span_rank(std::vector<std::vector<S>> rows) {
  return row_reduce(rows);
}

template <class S>
bool same_span(const std::vector<std::vector<S>>& x,
               const std::vector<std::vector<S>>& y) {
  const int rx = span_rank(x), ry = span_rank(y);
  std::vector<std::vector<S>> joint = x;
  joint.insert(joint.end(), y.begin(), y.end());
  const int rj = span_rank(joint);
  return rx == ry && ry == rj;
}

/// Kernel basis of the linear map given by `rows` (each row one equation).
template <class S>
std::vector<std::vector<S>> kernel_basis(std::vector<std::vector<S>> rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows[0].size();
  row_reduce(rows);
  std::vector<int> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    if (!scalar_is_zero(rows[r][col])) pivot_of_col[col] = static_cast<int>(r++);
  }
  std::vector<std::vector<S>> out;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<S> v(cols, S(0));
    v[free_col] = S(1);
    for (std::size_t col = 0; col < cols; ++col) {
      const int pr = pivot_of_col[col];
      if (pr >= 0) v[col] = -rows[pr][free_col];
    }
    out.push_back(std::move(v));
  }
  return out;
}

// --- Candidate space ----------------------------------------------------

/// Symbolic 2x2 matrices over the exact field (the reference observables).
namespace detail {

using SMat2 = std::array<std::array<Scalar, 2>, 2>;

inline SMat2 smat(Scalar a, Scalar b, Scalar c, Scalar d) {
  return {{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}};
}

inline SMat2 smul(const SMat2& x, const SMat2& y) {
  SMat2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return out;
}

}  // namespace detail

/// Action of each operator in V on the reference state, as an exact 4x9
/// matrix (rows = components of V_j |psi>, all real over the field K).
inline std::vector<std::vector<Scalar>> reference_action_matrix() {
  using detail::SMat2;
  const Scalar z(0), one(1);
  const Scalar st = Scalar::st(), ct = Scalar::ct();
  const Scalar u = Scalar::u(), su = Scalar::sin_mu();
  const SMat2 id = detail::smat(one, z, z, one);
  const SMat2 sz = detail::smat(one, z, z, -one);
  const SMat2 sx = detail::smat(z, one, one, z);
  auto lin = [&](const Scalar& f, const SMat2& x, const Scalar& g,
                 const SMat2& y) {
    SMat2 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = f * x[i][j] + g * y[i][j];
    return out;
  };
  const SMat2 b0 = lin(u, sz, su, sx);
  const SMat2 b1 = lin(u, sz, -su, sx);
  // psi = ct |00> + st |11>, index = 2*a + b.
  const std::array<Scalar, 4> psi = {ct, z, z, st};
  auto apply = [&](const SMat2& am, const SMat2& bm) {
    std::array<Scalar, 4> out = {z, z, z, z};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int ap = 0; ap < 2; ++ap)
          for (int bp = 0; bp < 2; ++bp)
            out[2 * a + b] =
                out[2 * a + b] + am[a][ap] * bm[b][bp] * psi[2 * ap + bp];
    return out;
  };
  const std::array<std::pair<SMat2, SMat2>, 9> v = {{
      {id, id}, {sz, id}, {sx, id}, {id, b0}, {id, b1},
      {sz, b0}, {sz, b1}, {sx, b0}, {sx, b1},
  }};
  std::vector<std::vector<Scalar>> rows(4, std::vector<Scalar>(9, z));
  for (int j = 0; j < 9; ++j) {
    const auto img = apply(v[j].first, v[j].second);
    for (int k = 0; k < 4; ++k) rows[k][j] = img[k];
  }
  return rows;
}

template <class S>
std::vector<S> v_coefficients(const NcPoly<S>& p) {
  const auto& v = v_ops();
  std::vector<S> out(v.size(), S(0));
  for (const auto& [m, c] : p.terms()) {
    bool found = false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == m) {
        out[i] = c;
        found = true;
        break;
      }
    if (!found)
      throw OutOfBasisError("monomial outside S_{1+AB}: " + m.str());
  }
  return out;
}

/// Exact kernel of the map r -> (r . V)|psi>: the space of degree-one
/// polynomials annihilating the reference state. Checks that the kernel is
/// five-dimensional and spans the same space as both the five listed
/// candidate operators and the R_i basis.
inline SosBasis<Scalar> candidate_space() {
  const auto rows = reference_action_matrix();
  const auto kernel = kernel_basis(rows);
  if (kernel.size() != 5)
    throw RankError("candidate space has dimension " +
                    std::to_string(kernel.size()) + ", expected 5");
  const auto ctx = symbolic_context();
  std::vector<std::vector<Scalar>> cand_rows, r_rows;
  for (const auto& p : candidate_ops(ctx)) cand_rows.push_back(v_coefficients(p));
  for (const auto& p : r_basis(ctx)) r_rows.push_back(v_coefficients(p));
  if (!same_span(kernel, cand_rows))
    throw RankError("kernel does not match the listed candidate operators");
  if (!same_span(kernel, r_rows))
    throw RankError("kernel does not match the R_i basis");
  SosBasis<Scalar> out;
  for (const auto& v : kernel) {
    std::array<Scalar, 9> coeffs;
    std::copy(v.begin(), v.end(), coeffs.begin());
    out.push_back(poly_from_v_coeffs(coeffs));
  }
  return out;
}

// --- Operator identity audits -------------------------------------------

/// S5 = A1 (-c/2 S2 - sqrt(1+s^2)/2 S4), verified as an exact identity.
inline VerificationReport s5_relation_check() {
  const auto ctx = symbolic_context();
  const auto s = s_polys(ctx);
  const Scalar half = Scalar(Rational(1, 2));
  const NcPoly<Scalar> rhs =
      NcPoly<Scalar>::a(1) *
      ((-ctx.c * half) * s[1] - (ctx.sqrt1ps2 * half) * s[3]);
  const NcPoly<Scalar> residual = s[4] - rhs;
  VerificationReport rep;
  rep.name = "s5-relation";
  rep.ok = residual.is_zero();
  if (!rep.ok) rep.detail = "residual: " + poly_str(residual);
  return rep;
}

/// The four linear decompositions tying the Z/X operators to the S_i,
/// verified with denominators cleared so residuals are exactly zero.
inline std::vector<VerificationReport> linear_decompositions_check() {
  using P = NcPoly<Scalar>;
  const auto ctx = symbolic_context();
  const auto s = s_polys(ctx);
  const P za = z_alice<Scalar>(), xa = x_alice<Scalar>();
  const P zb = z_bob(ctx), xb = x_bob(ctx);
  const Scalar s2 = ctx.s * ctx.s;
  const Scalar rt = ctx.sqrt1ps2;
  std::vector<VerificationReport> out;
  auto check = [&out](const std::string& name, const P& lhs, const P& rhs) {
    const P residual = lhs - rhs;
    VerificationReport rep;
    rep.name = name;
    rep.ok = residual.is_zero();
    if (!rep.ok) rep.detail = "residual: " + poly_str(residual);
    out.push_back(std::move(rep));
  };

  // (i) Z_A - Z_B as a combination of S1, S3, S5. The combination
  // (-c/2s^2) S1 - (sqrt(1+s^2)/2s^2) S3 - (c/s^2) S5 equals the basis
  // operator R_1, and Z_A - Z_B = -(sqrt(1+s^2)/2) R_1; both sides are
  // multiplied by 4 s^2 to clear denominators.
  check("decomp-za-zb", (Scalar(4) * s2) * (za - zb),
        ctx.c * rt * s[0] + (rt * rt) * s[2] +
            (Scalar(2) * ctx.c * rt) * s[4]);

  // (ii) sin(t) X_A (1+Z_B) - cos(t) X_B (1-Z_A)
  //      = (sqrt(1+s^2)/(8 sin t)) ((c-2) S2 + sqrt(1+s^2) S4),
  // both sides multiplied by 8 sin(t).
  check("decomp-projector",
        (Scalar(8) * ctx.sin_t) *
            (ctx.sin_t * (xa * (P::identity() + zb)) -
             ctx.cos_t * (xb * (P::identity() - za))),
        rt * ((ctx.c - Scalar(2)) * s[1] + rt * s[3]));

  // (iii) {Z_A, X_A} = (sqrt(1+s^2)/4s^2)
  //       [-2 S2 + A0(-c S2 + sqrt(1+s^2) S4) + A1(c S1 + sqrt(1+s^2) S3)],
  // both sides multiplied by 4 s^2.
  check("decomp-anticommutator",
        (Scalar(4) * s2) * (za * xa + xa * za),
        rt * (Scalar(-2) * s[1] +
              P::a(0) * ((-ctx.c) * s[1] + rt * s[3]) +
              P::a(1) * (ctx.c * s[0] + rt * s[2])));

  // (iv) X_B - (1/s) X_A (1 - c Z_B) = (sqrt(1+s^2)/2s) A1 S5,
  // both sides multiplied by 2 s.
  check("decomp-xb",
        (Scalar(2) * ctx.s) *
            (xb - (Scalar(1) / ctx.s) * (xa * (P::identity() - ctx.c * zb))),
        rt * (P::a(1) * s[4]));
  return out;
}

// --- Certificate library ------------------------------------------------

using AnyCertificate =
    std::variant<GramCertificate<Scalar>, SquaredFormCertificate<Scalar>,
                 GramCertificate<QuadScalar>, SquaredFormCertificate<QuadScalar>>;

struct CertificateEntry {
  std::string name;
  std::string description;
  std::string theta_label;  // "symbolic", "pi/4" or "pi/8"
  AnyCertificate cert;

  VerificationReport verify() const {
    return std::visit([](const auto& c) { return verify_exact(c); }, cert);
  }
};

namespace detail {

inline std::vector<std::vector<QuadScalar>> scaled_diag_pattern(
    const QuadScalar& f, const std::vector<std::vector<Rational>>& pattern) {
  std::vector<std::vector<QuadScalar>> m;
  for (const auto& row : pattern) {
    std::vector<QuadScalar> r;
    for (const auto& e : row) r.push_back(f * QuadScalar(e));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace detail

/// The parameterized CHSH Gram matrix (delta = 0) over the R basis, scaled
/// by 1/(2 sqrt2): diag blocks (lambda), ((gamma, q), (q, t)), (mu), (q)
/// with gamma = 1 - lambda - q and t = 1 - q - mu.
template <class S>
std::vector<std::vector<S>> chsh_gram(const S& lambda, const S& mu,
                                      const S& q, const S& scale) {
  const S z(0);
  const S gamma = S(1) - lambda - q;
  const S t = S(1) - q - mu;
  std::vector<std::vector<S>> m = {
      {lambda, z, z, z, z},
      {z, gamma, q, z, z},
      {z, q, t, z, z},
      {z, z, z, mu, z},
      {z, z, z, z, q},
  };
  for (auto& row : m)
    for (auto& e : row) e = scale * e;
  return m;
}

/// The theta = pi/8 Gram matrix of the solution-set parameterization
/// (delta = 0), scaled by sqrt3/(8 sqrt2) = sqrt6/16.
template <class S>
std::vector<std::vector<S>> pi8_gram(const S& beta, const S& gamma,
                                     const S& lambda, const S& inv_sqrt2,
                                     const S& scale) {
  const S z(0);
  const S third = S(1) / S(3);
  const S m12 = -inv_sqrt2;
  const S m13 = S(3) * gamma * inv_sqrt2;
  const S m22 = S(5) * third - beta + gamma / S(2);
  const S m23 = third - S(2) * gamma;
  const S m33 = S(2) + S(3) * gamma - lambda;
  const S m45 = -(S(2) * inv_sqrt2) * (third + gamma);
  const S m55 = S(2) * third - gamma;
  std::vector<std::vector<S>> m = {
      {beta, m12, m13, z, z},
      {m12, m22, m23, z, z},
      {m13, m23, m33, z, z},
      {z, z, z, lambda, m45},
      {z, z, z, m45, m55},
  };
  for (auto& row : m)
    for (auto& e : row) e = scale * e;
  return m;
}

/// All exact SOS certificates appearing in the reference material:
/// the general-alpha pair, the CHSH vertex set, the two extra CHSH
/// decompositions, and the two rank-one-block certificates at theta = pi/8.
/// Every entry passes verify_exact.
inline std::vector<CertificateEntry> certificate_library() {
  using Q = QuadScalar;
  std::vector<CertificateEntry> lib;

  // General alpha, symbolic theta.
  {
    const auto ctx = symbolic_context();
    const auto s = s_polys(ctx);
    const Scalar w = Scalar(1) / (Scalar(2) * ctx.imax);
    const NcPoly<Scalar> target = shifted_bell(ctx);
    lib.push_back({"sos1", "Ibar = (S1^2 + S2^2) / (2 Imax)", "symbolic",
                   SquaredFormCertificate<Scalar>{
                       "sos1", {{w, s[0]}, {w, s[1]}}, target}});
    lib.push_back({"sos2", "Ibar = (S3^2 + S4^2) / (2 Imax)", "symbolic",
                   SquaredFormCertificate<Scalar>{
                       "sos2", {{w, s[2]}, {w, s[3]}}, target}});
  }

  // CHSH (theta = pi/4) certificates over Q(sqrt2).
  {
    const auto ctx = pi4_context();
    const NcPoly<Q> target = shifted_bell(ctx);
    const auto rb = r_basis(ctx);
    const SosBasis<Q> basis(rb.begin(), rb.end());
    const Q f(0, Rational(1, 4), 0, 0);  // 1/(2 sqrt2)
    auto vertex = [&](const std::string& name,
                      const std::vector<std::vector<Rational>>& pattern) {
      lib.push_back({name, "CHSH vertex Gram certificate", "pi/4",
                     GramCertificate<Q>{
                         name, basis, detail::scaled_diag_pattern(f, pattern),
                         target}});
    };
    const Rational h(1, 2);
    vertex("C1", {{0,0,0,0,0},{0,1,0,0,0},{0,0,1,0,0},{0,0,0,0,0},{0,0,0,0,0}});
    vertex("C2", {{1,0,0,0,0},{0,0,0,0,0},{0,0,1,0,0},{0,0,0,0,0},{0,0,0,0,0}});
    vertex("C3", {{0,0,0,0,0},{0,1,0,0,0},{0,0,0,0,0},{0,0,0,1,0},{0,0,0,0,0}});
    vertex("C4", {{1,0,0,0,0},{0,0,0,0,0},{0,0,0,0,0},{0,0,0,1,0},{0,0,0,0,0}});
    vertex("C5", {{0,0,0,0,0},{0,h,h,0,0},{0,h,h,0,0},{0,0,0,0,0},{0,0,0,0,h}});

    const NcPoly<Q> za = z_alice<Q>(), xa = x_alice<Q>();
    const NcPoly<Q> zb = z_bob(ctx), xb = x_bob(ctx);
    const Q w1(0, Rational(1, 8), 0, 0);   // 1/(4 sqrt2)
    const Q w2(0, Rational(1, 4), 0, 0);   // 1/(2 sqrt2)
    const Q w3(0, Rational(1, 2), 0, 0);   // 1/sqrt2
    const Q w4(0, Rational(1, 16), 0, 0);  // 1/(8 sqrt2)
    const NcPoly<Q> cross = za * xb + xa * zb;
    lib.push_back({"chshsos1", "Ibar_0 = [Ibar_0^2 + 2 (ZA XB + XA ZB)^2] / (4 sqrt2)",
                   "pi/4",
                   SquaredFormCertificate<Q>{
                       "chshsos1", {{w1, target}, {w2, cross}}, target}});
    lib.push_back({"chshsos2", "Ibar_0 = [(-ZA+ZB)^2 + (-XA+XB)^2] / sqrt2",
                   "pi/4",
                   SquaredFormCertificate<Q>{
                       "chshsos2", {{w3, zb - za}, {w3, xb - xa}}, target}});

    const NcPoly<Q> three = Q(3) * NcPoly<Q>::identity();
    lib.push_back(
        {"appb1", "rank-4 extremal CHSH certificate", "pi/4",
         SquaredFormCertificate<Q>{
             "appb1",
             {{Q(2) * w4, za - zb},
              {Q(5) * w4, xa - xb},
              {Q(2) * w4, cross},
              {w4, three - Q(2) * (za * zb) - xa * xb}},
             target}});
    lib.push_back(
        {"appb2", "rank-4 extremal CHSH certificate, X<->Z image", "pi/4",
         SquaredFormCertificate<Q>{
             "appb2",
             {{Q(2) * w4, xa - xb},
              {Q(5) * w4, za - zb},
              {Q(2) * w4, cross},
              {w4, three - Q(2) * (xa * xb) - za * zb}},
             target}});
  }

  // theta = pi/8 cusp certificates over Q(sqrt2, sqrt3).
  {
    const auto ctx = pi8_context();
    const NcPoly<Q> target = shifted_bell(ctx);
    const auto rb = r_basis(ctx);
    const SosBasis<Q> basis(rb.begin(), rb.end());
    const Q inv_sqrt2(0, Rational(1, 2), 0, 0);
    const Q scale(0, 0, 0, Rational(1, 16));  // sqrt3/(8 sqrt2) = sqrt6/16
    lib.push_back({"n1", "rank-one-block certificate at the first cusp",
                   "pi/8",
                   GramCertificate<Q>{
                       "n1", basis,
                       pi8_gram(Q(Rational(1, 2)), Q(Rational(-1, 3)), Q(0),
                                inv_sqrt2, scale),
                       target}});
    lib.push_back({"n2", "rank-one-block certificate at the second cusp",
                   "pi/8",
                   GramCertificate<Q>{
                       "n2", basis,
                       pi8_gram(Q(Rational(3, 2)), Q(Rational(1, 3)),
                                Q(Rational(8, 3)), inv_sqrt2, scale),
                       target}});
  }

  return lib;
}

inline const CertificateEntry& find_certificate(
    const std::vector<CertificateEntry>& lib, const std::string& name) {
  for (const auto& e : lib)
    if (e.name == name) return e;
  throw std::invalid_argument("unknown certificate '" + name + "'");
}

// --- Appendix C audit ---------------------------------------------------

struct AuditReport {
  double lower_endpoint = 0;
  double upper_endpoint = 0;
  double bracket_width = 1e-8;
  int bisection_iterations = 0;
  double radicand_at_pi8 = 0;
  int q_span_rank = 0;
};

/// Radicand of the q5 coefficient in the Yang-Navascues decomposition.
inline double yn_radicand(double theta) {
  const double cbar = std::cos(4 * theta);
  const double c = std::cos(2 * theta);
  const double gamma =
      std::sqrt((75 + 25 * cbar) * std::sqrt(6 - 2 * cbar) - 72);
  const double omega =
      18125 * std::cos(8 * theta) - 72500 * std::cos(4 * theta) - 108706;
  return 49 * gamma * gamma + 9800 * c * gamma * std::sqrt(3 - cbar) + omega;
}

/// Locates the validity interval of the prior certificate by bisection and
/// computes the rank of the span of its coefficient vectors at theta = pi/8.
inline AuditReport audit_yn() {
  AuditReport rep;
  auto bisect = [&rep](double lo, double hi) {
    double flo = yn_radicand(lo);
    while (hi - lo > rep.bracket_width) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = yn_radicand(mid);
      if ((flo < 0) == (fmid < 0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
      ++rep.bisection_iterations;
    }
    return 0.5 * (lo + hi);
  };
  // Sign changes bracketed by a coarse scan of (0, pi/4].
  const double pi4 = std::atan(1.0);
  double prev_t = 0.01, prev_f = yn_radicand(prev_t);
  std::vector<double> roots;
  for (double t = 0.02; t <= pi4 + 1e-9; t += 0.01) {
    const double f = yn_radicand(t);
    if ((prev_f < 0) != (f < 0)) roots.push_back(bisect(prev_t, t));
    prev_t = t;
    prev_f = f;
  }
  if (roots.size() != 2)
    throw RankError("expected two radicand sign changes, found " +
                    std::to_string(roots.size()));
  rep.lower_endpoint = roots[0];
  rep.upper_endpoint = roots[1];

  const double pi8 = pi4 / 2;
  rep.radicand_at_pi8 = yn_radicand(pi8);

  // q_i vectors at pi/8 in V coordinates.
  const auto ctx = numeric_context(pi8);
  const auto rb = r_basis(ctx);
  std::array<Eigen::VectorXd, 5> r;
  for (int i = 0; i < 5; ++i) {
    const auto coeffs = v_coefficients(rb[i]);
    r[i] = Eigen::VectorXd(9);
    for (int j = 0; j < 9; ++j) r[i](j) = coeffs[j];
  }
  const double cbar = std::cos(4 * pi8);
  const double c = ctx.c, s = ctx.s;
  const double gamma =
      std::sqrt((75 + 25 * cbar) * std::sqrt(6 - 2 * cbar) - 72);
  const double sq2 = std::sqrt(2.0);
  Eigen::MatrixXd q(5, 9);
  q.row(0) = (gamma / (20 * sq2)) * (r[4] - r[3]) - 0.4 * r[0];
  q.row(1) = (std::sqrt(25 * std::sqrt(1 + s * s) - 9 - gamma * gamma / 8) /
              (10 * s)) *
             (r[0] + c * r[1] - c * r[2]);
  q.row(2) = ((2 * gamma - 25 * c * std::sqrt(3 - cbar)) / (30 * sq2)) * r[0] +
             0.3 * (r[4] - r[3]);
  q.row(3) = 0.35 * (r[2] + r[1]) -
             (5 * c * std::sqrt(3 - cbar) / (14 * sq2)) * r[0];
  q.row(4) = (std::sqrt(rep.radicand_at_pi8) / 420) * r[0];

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  const double smax = svd.singularValues()(0);
  rep.q_span_rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * smax) ++rep.q_span_rank;
  return rep;
}

}  // namespace tilted

#endif  // TILTED_CERTIFICATES_HPP
