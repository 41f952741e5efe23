#ifndef TILTED_BELL_OPS_HPP
#define TILTED_BELL_OPS_HPP

#include "tilted/algebra.hpp"

#include <array>
#include <cmath>

namespace tilted {

inline double scalar_to_double(const Scalar& s, double theta) {
  return s.eval(theta);
}
inline double scalar_to_double(const QuadScalar& s, double) {
  return s.value();
}
inline double scalar_to_double(double s, double) { return s; }

/// Scalar constants attached to one value of theta (or to the formal,
/// symbolic theta when S = Scalar). Conventions: c = cos(2 theta),
/// s = sin(2 theta), u = 1/sqrt(1+s^2) = cos(mu), tan(mu) = s.
template <class S>
struct ThetaContext {
  S c, s, u;
  S alpha, imax, sqrt1ps2;
  S cos_mu, sin_mu;
  S sin_t, cos_t;
  // False when sin(theta), cos(theta) are not representable in S (the
  // half-angle values at theta = pi/8 fall outside Q(sqrt2, sqrt3)).
  bool has_half_angle = true;
  double theta = 0.0;
};

inline ThetaContext<Scalar> symbolic_context() {
  ThetaContext<Scalar> ctx;
  ctx.c = Scalar::cos2t();
  ctx.s = Scalar::sin2t();
  ctx.u = Scalar::u();
  ctx.alpha = Scalar::alpha();
  ctx.imax = Scalar::imax();
  ctx.sqrt1ps2 = Scalar::sqrt_one_plus_s2();
  ctx.cos_mu = Scalar::cos_mu();
  ctx.sin_mu = Scalar::sin_mu();
  ctx.sin_t = Scalar::st();
  ctx.cos_t = Scalar::ct();
  return ctx;
}

inline ThetaContext<QuadScalar> pi4_context() {
  using Q = QuadScalar;
  ThetaContext<Q> ctx;
  const Q half_sqrt2(0, Rational(1, 2), 0, 0);
  ctx.c = Q(0);
  ctx.s = Q(1);
  ctx.u = half_sqrt2;
  ctx.alpha = Q(0);
  ctx.imax = Q(0, 2, 0, 0);
  ctx.sqrt1ps2 = Q::sqrt2();
  ctx.cos_mu = half_sqrt2;
  ctx.sin_mu = half_sqrt2;
  ctx.sin_t = half_sqrt2;
  ctx.cos_t = half_sqrt2;
  ctx.theta = std::atan(1.0);  // pi/4
  return ctx;
}

inline ThetaContext<QuadScalar> pi8_context() {
  using Q = QuadScalar;
  ThetaContext<Q> ctx;
  const Q half_sqrt2(0, Rational(1, 2), 0, 0);
  ctx.c = half_sqrt2;
  ctx.s = half_sqrt2;
  ctx.u = Q(0, 0, 0, Rational(1, 3));               // sqrt6/3
  ctx.alpha = Q(0, 0, Rational(2, 3), 0);           // 2 sqrt3/3
  ctx.imax = Q(0, 0, 0, Rational(4, 3));            // 4 sqrt6/3
  ctx.sqrt1ps2 = Q(0, 0, 0, Rational(1, 2));        // sqrt6/2
  ctx.cos_mu = ctx.u;
  ctx.sin_mu = Q(0, 0, Rational(1, 3), 0);          // sqrt3/3
  ctx.has_half_angle = false;
  ctx.theta = std::atan(1.0) / 2.0;  // pi/8
  return ctx;
}

inline ThetaContext<double> numeric_context(double theta) {
  ThetaContext<double> ctx;
  ctx.c = std::cos(2 * theta);
  ctx.s = std::sin(2 * theta);
  ctx.u = 1.0 / std::sqrt(1.0 + ctx.s * ctx.s);
  ctx.alpha = 2.0 * ctx.c * ctx.u;
  ctx.imax = 4.0 * ctx.u;
  ctx.sqrt1ps2 = 1.0 / ctx.u;
  ctx.cos_mu = ctx.u;
  ctx.sin_mu = ctx.s * ctx.u;
  ctx.sin_t = std::sin(theta);
  ctx.cos_t = std::cos(theta);
  ctx.theta = theta;
  return ctx;
}

/// I_alpha = alpha A0 + A0B0 + A0B1 + A1B0 - A1B1.
template <class S>
NcPoly<S> tilted_chsh(const ThetaContext<S>& ctx) {
  using P = NcPoly<S>;
  return ctx.alpha * P::a(0) + P::a(0) * P::b(0) + P::a(0) * P::b(1) +
         P::a(1) * P::b(0) - P::a(1) * P::b(1);
}

/// Shifted Bell operator Ibar_alpha = Imax I - I_alpha, the object
/// certified positive semidefinite.
template <class S>
NcPoly<S> shifted_bell(const ThetaContext<S>& ctx) {
  return ctx.imax * NcPoly<S>::identity() - tilted_chsh(ctx);
}

template <class S>
NcPoly<S> z_alice() {
  return NcPoly<S>::a(0);
}
template <class S>
NcPoly<S> x_alice() {
  return NcPoly<S>::a(1);
}
template <class S>
NcPoly<S> z_bob(const ThetaContext<S>& ctx) {
  return (S(1) / (S(2) * ctx.cos_mu)) * (NcPoly<S>::b(0) + NcPoly<S>::b(1));
}
template <class S>
NcPoly<S> x_bob(const ThetaContext<S>& ctx) {
  return (S(1) / (S(2) * ctx.sin_mu)) * (NcPoly<S>::b(0) - NcPoly<S>::b(1));
}

/// The three permutations of the CHSH operator used in the S_i polynomials.
template <class S>
NcPoly<S> chsh_perm1() {  // S' = A0(B0-B1) + A1(B0+B1)
  using P = NcPoly<S>;
  return P::a(0) * (P::b(0) - P::b(1)) + P::a(1) * (P::b(0) + P::b(1));
}
template <class S>
NcPoly<S> chsh_perm2() {  // S'' = A0(B0+B1) - A1(B0-B1)
  using P = NcPoly<S>;
  return P::a(0) * (P::b(0) + P::b(1)) - P::a(1) * (P::b(0) - P::b(1));
}
template <class S>
NcPoly<S> chsh_perm3() {  // S''' = A0(B0-B1) - A1(B0+B1)
  using P = NcPoly<S>;
  return P::a(0) * (P::b(0) - P::b(1)) - P::a(1) * (P::b(0) + P::b(1));
}

template <class S>
NcPoly<S> poly_from_v_coeffs(const std::array<S, 9>& coeffs) {
  NcPoly<S> out;
  const auto& v = v_ops();
  for (std::size_t i = 0; i < 9; ++i) out.add_term(v[i], coeffs[i]);
  return out;
}

/// The R_i basis of the five-dimensional candidate space, adapted to the
/// order-2 symmetry: R_{1,2,3} are invariant, R_{4,5} change sign.
template <class S>
std::array<NcPoly<S>, 5> r_basis(const ThetaContext<S>& ctx) {
  const S z(0), one(1);
  const S m2u = S(-2) * ctx.u;
  const S m2cu = S(-2) * ctx.c * ctx.u;
  return {
      poly_from_v_coeffs<S>({z, m2u, z, one, one, z, z, z, z}),
      poly_from_v_coeffs<S>({m2u, z, z, z, z, one, one, z, z}),
      poly_from_v_coeffs<S>({m2u, z, z, ctx.c, ctx.c, z, z, one, -one}),
      poly_from_v_coeffs<S>({z, z, m2u, one, -one, z, z, ctx.c, ctx.c}),
      poly_from_v_coeffs<S>({z, z, m2cu, z, z, one, -one, one, one}),
  };
}

/// The S_i polynomials whose squares make up the two general SOS
/// decompositions, plus S5 = R_3 completing the span.
template <class S>
std::array<NcPoly<S>, 5> s_polys(const ThetaContext<S>& ctx) {
  using P = NcPoly<S>;
  const S half = S(1) / S(2);
  const P s1 = shifted_bell(ctx);
  const P s2 = ctx.alpha * P::a(1) - chsh_perm1<S>();
  const P s3 = S(2) * P::a(0) -
               (ctx.imax * half) * (P::b(0) + P::b(1)) +
               (ctx.alpha * half) * chsh_perm2<S>();
  const P s4 = S(2) * P::a(1) -
               (ctx.imax * half) * (P::b(0) - P::b(1)) +
               (ctx.alpha * half) * chsh_perm3<S>();
  const P s5 = r_basis(ctx)[2];
  return {s1, s2, s3, s4, s5};
}

/// The five candidate operators spanning the annihilator of the reference
/// state within S_{1+AB}.
template <class S>
std::array<NcPoly<S>, 5> candidate_ops(const ThetaContext<S>& ctx) {
  using P = NcPoly<S>;
  const P za = z_alice<S>(), xa = x_alice<S>();
  const P zb = z_bob(ctx), xb = x_bob(ctx);
  return {
      za - zb,
      P::identity() - za * zb,
      ctx.c * xa - ctx.s * (za * xb) - xa * zb,
      ctx.c * xb - ctx.s * (xa * zb) - za * xb,
      ctx.s * (xa * xb) - za * zb + ctx.c * za,
  };
}

}  // namespace tilted

#endif  // TILTED_BELL_OPS_HPP
