#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilted/quadfield.hpp"
#include "tilted/scalar.hpp"

#include <cmath>
#include <random>

using namespace tilted;

namespace {

std::mt19937 rng(987654321);

Rational random_rational() {
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng), den(rng));
}

RatFun random_ratfun() {
  // kept low-degree: inverses in the quartic extension square the degrees,
  // and coefficient growth makes anything bigger unreasonably slow
  const RatPoly x = RatPoly::variable();
  RatPoly n = RatPoly(random_rational()) + x * RatPoly(random_rational());
  RatPoly d(Rational(std::uniform_int_distribution<int>(1, 5)(rng)));
  return RatFun(n, d);
}

Scalar random_scalar() {
  return Scalar(random_ratfun(), random_ratfun(), random_ratfun(),
                random_ratfun());
}

QuadScalar random_quad() {
  return QuadScalar(random_rational(), random_rational(), random_rational(),
                    random_rational());
}

}  // namespace

TEST_CASE("rational function arithmetic basics") {
  const RatPoly x = RatPoly::variable();
  const RatFun f(x * x - RatPoly(1), x - RatPoly(1));  // (x^2-1)/(x-1)
  CHECK(f == RatFun(x + RatPoly(1)));
  CHECK(f.eval(0.5) == doctest::Approx(1.5));
  const RatFun g = f / f;
  CHECK(g == RatFun(RatPoly(1)));
  CHECK_THROWS_AS(RatFun(RatPoly(1), x).eval(0.0), PoleError);
}

TEST_CASE("defining relations of the field") {
  const Scalar u = Scalar::u(), ct = Scalar::ct(), st = Scalar::st();
  // ct^2 = 1 - st^2
  CHECK(ct * ct == Scalar(1) - st * st);
  // u^2 = 1 / (1 + 4 st^2 (1 - st^2))
  const Scalar denom = Scalar(1) + Scalar(4) * st * st * (Scalar(1) - st * st);
  CHECK(u * u * denom == Scalar(1));
  // c^2 + s^2 = 1
  const Scalar c = Scalar::cos2t(), s = Scalar::sin2t();
  CHECK(c * c + s * s == Scalar(1));
  // 8 + 2 alpha^2 = imax^2, and imax = 4u
  const Scalar a = Scalar::alpha(), imax = Scalar::imax();
  CHECK(Scalar(8) + Scalar(2) * a * a == imax * imax);
  CHECK(imax == Scalar(4) * u);
  // sqrt(1+s^2) * u = 1
  CHECK(Scalar::sqrt_one_plus_s2() * u == Scalar(1));
  // sin(mu) = s u, cos(mu) = u; sin^2 + cos^2 = 1
  CHECK(Scalar::sin_mu() * Scalar::sin_mu() +
            Scalar::cos_mu() * Scalar::cos_mu() ==
        Scalar(1));
}

TEST_CASE("field axioms on random elements") {
  for (int i = 0; i < 25; ++i) {
    const Scalar x = random_scalar(), y = random_scalar(), z = random_scalar();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    if (i < 5 && !x.is_zero()) {
      CHECK(x * x.inverse() == Scalar(1));
    }
  }
}

TEST_CASE("quadratic field axioms and inverses") {
  CHECK(QuadScalar::sqrt2() * QuadScalar::sqrt2() == QuadScalar(2));
  CHECK(QuadScalar::sqrt3() * QuadScalar::sqrt3() == QuadScalar(3));
  for (int i = 0; i < 100; ++i) {
    const QuadScalar x = random_quad(), y = random_quad(), z = random_quad();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == QuadScalar(1));
      CHECK(std::abs(x.value() * x.inverse().value() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("evaluation is multiplicative at random angles") {
  std::uniform_real_distribution<double> angle(0.011, std::atan(1.0));
  for (int i = 0; i < 1000; ++i) {
    const Scalar x = random_scalar(), y = random_scalar();
    const double t = angle(rng);
    const double lhs = (x * y).eval(t);
    const double rhs = x.eval(t) * y.eval(t);
    CHECK(std::abs(lhs - rhs) <=
          1e-9 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))));
  }
}

TEST_CASE("reference values") {
  const double pi4 = std::atan(1.0);
  CHECK(Scalar::imax().eval(pi4) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(Scalar::alpha().eval(pi4) == doctest::Approx(0.0));
  CHECK(Scalar::alpha().eval(pi4 / 2) ==
        doctest::Approx(2.0 / std::sqrt(3.0)));
  // alpha(theta) = 2/sqrt(1 + 2 tan^2(2 theta))
  for (double t : {0.2, 0.5, pi4 / 2}) {
    const double tan2 = std::tan(2 * t);
    CHECK(Scalar::alpha().eval(t) ==
          doctest::Approx(2.0 / std::sqrt(1 + 2 * tan2 * tan2)));
  }
}

TEST_CASE("json round trip") {
  for (int i = 0; i < 20; ++i) {
    const Scalar x = random_scalar();
    CHECK(Scalar::from_json(x.to_json()) == x);
  }
}

TEST_CASE("degree cap raises") {
  RatPoly x = RatPoly::variable();
  CHECK_THROWS_AS(
      [&] {
        RatPoly acc(1);
        for (int i = 0; i < 80; ++i) acc = acc * x;
        return acc;
      }(),
      DegreeOverflow);
}
