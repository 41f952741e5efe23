#ifndef TILTED_SCALAR_HPP
#define TILTED_SCALAR_HPP

#include "tilted/rational.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>

namespace tilted {

/// Element of the exact field K = Q(st)[ct, u] with the reduction relations
///   ct^2 = 1 - st^2,   u^2 = 1 / (1 + 4 st^2 (1 - st^2)),
/// represented in the basis {1, ct, u, ct*u} with RatFun coordinates.
///
/// Geometrically, st and ct stand for sin(theta) and cos(theta), and
/// u = 1/sqrt(1 + sin^2(2 theta)) = cos(mu). Every coefficient of the
/// tilted-CHSH certificates lives in this field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}
  Scalar(Rational v) : a_(std::move(v)) {}
  Scalar(RatFun a, RatFun b, RatFun p, RatFun q)
      : a_(std::move(a)), b_(std::move(b)), p_(std::move(p)), q_(std::move(q)) {}

  // Basis elements and the standard geometric constants.
  static Scalar st() { return Scalar(RatFun::variable(), 0, 0, 0); }
  static Scalar ct() { return Scalar(0, RatFun(1), 0, 0); }
  static Scalar u() { return Scalar(0, 0, RatFun(1), 0); }

  /// cos(2 theta) = 1 - 2 st^2.
  static Scalar cos2t() {
    return Scalar(RatFun(RatPoly(std::vector<Rational>{1, 0, -2})), 0, 0, 0);
  }
  /// sin(2 theta) = 2 st ct.
  static Scalar sin2t() {
    return Scalar(0, RatFun(RatPoly(std::vector<Rational>{0, 2})), 0, 0);
  }
  /// alpha(theta) = 2 cos(2 theta) / sqrt(1 + sin^2(2 theta)).
  static Scalar alpha() { return Scalar(2) * cos2t() * u(); }
  /// Maximal quantum value sqrt(8 + 2 alpha^2) = 4 u.
  static Scalar imax() { return Scalar(4) * u(); }
  /// sqrt(1 + sin^2(2 theta)) = 1/u = (1 + s^2) u.
  static Scalar sqrt_one_plus_s2() {
    return (Scalar(1) + sin2t() * sin2t()) * u();
  }
  static Scalar sin_mu() { return sin2t() * u(); }
  static Scalar cos_mu() { return u(); }
  static Scalar tan_theta() { return st() / ct(); }

  const RatFun& a() const { return a_; }
  const RatFun& b() const { return b_; }
  const RatFun& p() const { return p_; }
  const RatFun& q() const { return q_; }

  bool is_zero() const {
    return a_.is_zero() && b_.is_zero() && p_.is_zero() && q_.is_zero();
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    return Scalar(x.a_ + y.a_, x.b_ + y.b_, x.p_ + y.p_, x.q_ + y.q_);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    return Scalar(x.a_ - y.a_, x.b_ - y.b_, x.p_ - y.p_, x.q_ - y.q_);
  }
  friend Scalar operator-(const Scalar& x) {
    return Scalar(-x.a_, -x.b_, -x.p_, -x.q_);
  }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    const RatFun C = ct_sq();
    const RatFun U = u_sq();
    return Scalar(
        x.a_ * y.a_ + C * (x.b_ * y.b_) + U * (x.p_ * y.p_) +
            C * U * (x.q_ * y.q_),
        x.a_ * y.b_ + x.b_ * y.a_ + U * (x.p_ * y.q_ + x.q_ * y.p_),
        x.a_ * y.p_ + x.p_ * y.a_ + C * (x.b_ * y.q_ + x.q_ * y.b_),
        x.a_ * y.q_ + x.q_ * y.a_ + x.b_ * y.p_ + x.p_ * y.b_);
  }

  /// Multiplicative inverse via two conjugation steps: first over u
  /// (norm lands in Q(st)[ct]), then over ct (norm lands in Q(st)).
  Scalar inverse() const {
    if (is_zero()) throw std::invalid_argument("Scalar: inverse of zero");
    const RatFun C = ct_sq();
    const RatFun U = u_sq();
    // x = A + B u with A = a + b ct, B = p + q ct. Then
    // x (A - B u) = A^2 - B^2 U = e + f ct in Q(st)[ct].
    const RatFun e = a_ * a_ + C * (b_ * b_) -
                     U * (p_ * p_ + C * (q_ * q_));
    const RatFun f = Rational(2) * a_ * b_ - U * (Rational(2) * p_ * q_);
    // (e + f ct)^-1 = (e - f ct) / (e^2 - f^2 C).
    const RatFun n = e * e - C * (f * f);
    if (n.is_zero())
      throw std::invalid_argument("Scalar: norm vanished for nonzero element");
    const Scalar conj_u(a_, b_, -p_, -q_);
    const Scalar conj_ct(e / n, -f / n, RatFun(), RatFun());
    return conj_u * conj_ct;
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    return x * y.inverse();
  }

  bool operator==(const Scalar& o) const {
    return a_ == o.a_ && b_ == o.b_ && p_ == o.p_ && q_ == o.q_;
  }

  /// IEEE-754 evaluation at st = sin(theta), 0 < theta <= pi/4.
  double eval(double theta) const {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double u = 1.0 / std::sqrt(1.0 + 4.0 * st * st * (1.0 - st * st));
    return a_.eval(st) + b_.eval(st) * ct + p_.eval(st) * u +
           q_.eval(st) * ct * u;
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"a", ratfun_to_json(a_)},
                          {"b", ratfun_to_json(b_)},
                          {"p", ratfun_to_json(p_)},
                          {"q", ratfun_to_json(q_)}};
  }

  static Scalar from_json(const nlohmann::json& j) {
    return Scalar(ratfun_from_json(j.at("a")), ratfun_from_json(j.at("b")),
                  ratfun_from_json(j.at("p")), ratfun_from_json(j.at("q")));
  }

 private:
  static RatFun ct_sq() {
    return RatFun(RatPoly(std::vector<Rational>{1, 0, -1}));
  }
  static RatFun u_sq() {
    // 1 / (1 + 4 st^2 - 4 st^4)
    return RatFun(RatPoly(1), RatPoly(std::vector<Rational>{1, 0, 4, 0, -4}));
  }

  static nlohmann::json ratfun_to_json(const RatFun& f) {
    auto poly = [](const RatPoly& p) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
      return arr;
    };
    return nlohmann::json::array({poly(f.num()), poly(f.den())});
  }

  static RatFun ratfun_from_json(const nlohmann::json& j) {
    auto poly = [](const nlohmann::json& arr) {
      std::vector<Rational> c;
      for (const auto& s : arr) c.push_back(rational_from_string(s));
      return RatPoly(std::move(c));
    };
    return RatFun(poly(j.at(0)), poly(j.at(1)));
  }

  RatFun a_, b_, p_, q_;
};

}  // namespace tilted

#endif  // TILTED_SCALAR_HPP
