#ifndef TILTED_QUADFIELD_HPP
#define TILTED_QUADFIELD_HPP

#include "tilted/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace tilted {

/// Element of Q(sqrt2, sqrt3) in the basis {1, sqrt2, sqrt3, sqrt6}.
///
/// All certificate coefficients at the fixed angles theta = pi/4 and
/// theta = pi/8 live here: at pi/4 we have u = sqrt2/2, and at pi/8
/// c = s = sqrt2/2 and u = sqrt6/3.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(long v) : r_(v) {}
  QuadScalar(Rational v) : r_(std::move(v)) {}
  QuadScalar(Rational r, Rational r2, Rational r3, Rational r6)
      : r_(std::move(r)), r2_(std::move(r2)), r3_(std::move(r3)),
        r6_(std::move(r6)) {}

  static QuadScalar sqrt2() { return QuadScalar(0, 1, 0, 0); }
  static QuadScalar sqrt3() { return QuadScalar(0, 0, 1, 0); }
  static QuadScalar sqrt6() { return QuadScalar(0, 0, 0, 1); }

  bool is_zero() const {
    return r_ == 0 && r2_ == 0 && r3_ == 0 && r6_ == 0;
  }

  friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
    return {x.r_ + y.r_, x.r2_ + y.r2_, x.r3_ + y.r3_, x.r6_ + y.r6_};
  }
  friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
    return {x.r_ - y.r_, x.r2_ - y.r2_, x.r3_ - y.r3_, x.r6_ - y.r6_};
  }
  friend QuadScalar operator-(const QuadScalar& x) {
    return {-x.r_, -x.r2_, -x.r3_, -x.r6_};
  }
  friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
    return {x.r_ * y.r_ + 2 * x.r2_ * y.r2_ + 3 * x.r3_ * y.r3_ +
                6 * x.r6_ * y.r6_,
            x.r_ * y.r2_ + x.r2_ * y.r_ + 3 * (x.r3_ * y.r6_ + x.r6_ * y.r3_),
            x.r_ * y.r3_ + x.r3_ * y.r_ + 2 * (x.r2_ * y.r6_ + x.r6_ * y.r2_),
            x.r_ * y.r6_ + x.r6_ * y.r_ + x.r2_ * y.r3_ + x.r3_ * y.r2_};
  }

  QuadScalar inverse() const {
    if (is_zero()) throw std::invalid_argument("QuadScalar: inverse of zero");
    // Conjugate sqrt2 -> -sqrt2: the product lands in Q(sqrt3).
    const QuadScalar c2(r_, -r2_, r3_, -r6_);
    const QuadScalar n2 = (*this) * c2;  // e + f sqrt3
    const Rational e = n2.r_, f = n2.r3_;
    const Rational n = e * e - 3 * f * f;
    if (n == 0)
      throw std::invalid_argument("QuadScalar: norm vanished");
    const QuadScalar c3(e / n, 0, -f / n, 0);
    return c2 * c3;
  }

  friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) {
    return x * y.inverse();
  }

  bool operator==(const QuadScalar& o) const {
    return r_ == o.r_ && r2_ == o.r2_ && r3_ == o.r3_ && r6_ == o.r6_;
  }

  double value() const {
    return static_cast<double>(r_) +
           static_cast<double>(r2_) * std::sqrt(2.0) +
           static_cast<double>(r3_) * std::sqrt(3.0) +
           static_cast<double>(r6_) * std::sqrt(6.0);
  }

  const Rational& c1() const { return r_; }
  const Rational& c2() const { return r2_; }
  const Rational& c3() const { return r3_; }
  const Rational& c6() const { return r6_; }

 private:
  Rational r_, r2_, r3_, r6_;
};

}  // namespace tilted

#endif  // TILTED_QUADFIELD_HPP
