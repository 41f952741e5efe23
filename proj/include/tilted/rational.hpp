#ifndef TILTED_RATIONAL_HPP
#define TILTED_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilted {

using Rational = boost::multiprecision::cpp_rational;

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_from_string(const std::string& s) {
  return Rational(s);
}

/// Dense univariate polynomial over Q in the formal variable st (= sin(theta)).
/// Coefficients are stored lowest degree first; the representation is trimmed
/// so the leading coefficient is nonzero unless the polynomial is zero.
class RatPoly {
 public:
  static constexpr std::size_t kMaxDegree = 64;

  RatPoly() = default;
  RatPoly(Rational c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  RatPoly(long c) : RatPoly(Rational(c)) {}
  explicit RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static RatPoly variable() { return RatPoly(std::vector<Rational>{0, 1}); }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial reported as -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
  }
  Rational leading() const {
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
  }

  friend RatPoly operator+(const RatPoly& x, const RatPoly& y) {
    std::vector<Rational> c(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coeff(i) + y.coeff(i);
    return RatPoly(std::move(c));
  }
  friend RatPoly operator-(const RatPoly& x, const RatPoly& y) {
    std::vector<Rational> c(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coeff(i) - y.coeff(i);
    return RatPoly(std::move(c));
  }
  friend RatPoly operator-(const RatPoly& x) { return RatPoly(0) - x; }
  friend RatPoly operator*(const RatPoly& x, const RatPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<Rational> c(x.coeffs_.size() + y.coeffs_.size() - 1);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
        c[i + j] += x.coeffs_[i] * y.coeffs_[j];
    return RatPoly(std::move(c));
  }

  bool operator==(const RatPoly& o) const { return coeffs_ == o.coeffs_; }

  // Euclidean division; remainder degree < divisor degree.
  static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quo,
                     RatPoly& rem) {
    if (b.is_zero()) throw std::invalid_argument("RatPoly: division by zero");
    std::vector<Rational> r = a.coeffs_;
    std::vector<Rational> q;
    const int db = b.degree();
    if (a.degree() >= db) q.assign(a.degree() - db + 1, Rational(0));
    while (static_cast<int>(r.size()) - 1 >= db) {
      if (r.back() == 0) {
        r.pop_back();
        continue;
      }
      const std::size_t shift = r.size() - 1 - db;
      const Rational f = r.back() / b.leading();
      q[shift] = f;
      for (int i = 0; i <= db; ++i) r[shift + i] -= f * b.coeffs_[i];
      r.pop_back();
    }
    quo = RatPoly(std::move(q));
    rem = RatPoly(std::move(r));
  }

  // Monic gcd over Q[st].
  static RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
      RatPoly q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
  }

  RatPoly monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return RatPoly(std::move(c));
  }

  double eval(double st) const {
    double acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      acc = acc * st + static_cast<double>(coeffs_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.size() > kMaxDegree + 1)
      throw DegreeOverflow("RatPoly degree exceeds cap " +
                           std::to_string(kMaxDegree));
  }

  std::vector<Rational> coeffs_;
};

/// Rational function num/den over Q[st] in canonical form:
/// gcd(num, den) = 1 and den monic.
class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(Rational c) : num_(std::move(c)), den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}
  RatFun(RatPoly num) : num_(std::move(num)), den_(1) {}
  RatFun(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RatFun variable() { return RatFun(RatPoly::variable()); }

  const RatPoly& num() const { return num_; }
  const RatPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFun operator+(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend RatFun operator-(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
  }
  friend RatFun operator-(const RatFun& x) { return RatFun(-x.num_, x.den_); }
  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend RatFun operator/(const RatFun& x, const RatFun& y) {
    if (y.is_zero()) throw std::invalid_argument("RatFun: division by zero");
    return RatFun(x.num_ * y.den_, x.den_ * y.num_);
  }

  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  double eval(double st) const {
    const double d = den_.eval(st);
    if (d == 0.0) throw PoleError("RatFun: denominator vanishes at st");
    return num_.eval(st) / d;
  }

 private:
  void normalize() {
    if (den_.is_zero())
      throw std::invalid_argument("RatFun: zero denominator");
    if (num_.is_zero()) {
      den_ = RatPoly(1);
      return;
    }
    RatPoly g = RatPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      RatPoly q, r;
      RatPoly::divmod(num_, g, q, r);
      num_ = q;
      RatPoly::divmod(den_, g, q, r);
      den_ = q;
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
      std::vector<Rational> nc = num_.coeffs(), dc = den_.coeffs();
      for (auto& x : nc) x /= lead;
      for (auto& x : dc) x /= lead;
      num_ = RatPoly(std::move(nc));
      den_ = RatPoly(std::move(dc));
    }
  }

  RatPoly num_;
  RatPoly den_;
};

}  // namespace tilted

#endif  // TILTED_RATIONAL_HPP
