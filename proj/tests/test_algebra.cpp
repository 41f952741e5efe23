#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilted/qubit.hpp"
#include "tilted/text_format.hpp"

#include <random>

using namespace tilted;

namespace {

std::mt19937 rng(13579);

NcPoly<Scalar> random_poly(int max_terms = 4, int max_len = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 1);
  std::uniform_int_distribution<int> coeff(-6, 6);
  NcPoly<Scalar> out;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<std::uint8_t> aw, bw;
    for (int i = len(rng); i > 0; --i)
      aw.push_back(static_cast<std::uint8_t>(letter(rng)));
    for (int i = len(rng); i > 0; --i)
      bw.push_back(static_cast<std::uint8_t>(letter(rng)));
    // Build via products of generators so words reduce canonically.
    NcPoly<Scalar> m = NcPoly<Scalar>::identity();
    for (auto l : aw) m = m * NcPoly<Scalar>::a(l);
    for (auto l : bw) m = m * NcPoly<Scalar>::b(l);
    out = out + Scalar(coeff(rng)) * m;
  }
  return out;
}

}  // namespace

TEST_CASE("generator relations") {
  using P = NcPoly<Scalar>;
  CHECK(P::a(0) * P::a(0) == P::identity());
  CHECK(P::b(1) * P::b(1) == P::identity());
  // Party commutation
  CHECK(P::a(0) * P::b(1) == P::b(1) * P::a(0));
  // A0 A1 is irreducible
  const P w = P::a(0) * P::a(1);
  CHECK(w.terms().size() == 1);
  CHECK(w.terms().begin()->first.str() == "A0*A1");
}

TEST_CASE("ring axioms on random polynomials") {
  for (int i = 0; i < 40; ++i) {
    const auto x = random_poly(), y = random_poly(), z = random_poly();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) * z == x * z + y * z);
  }
}

TEST_CASE("adjoint is an antihomomorphism and involution") {
  for (int i = 0; i < 40; ++i) {
    const auto x = random_poly(), y = random_poly();
    CHECK((x * y).adjoint() == y.adjoint() * x.adjoint());
    CHECK(x.adjoint().adjoint() == x);
  }
}

TEST_CASE("products of degree-one terms stay in the quadratic basis") {
  const auto& v = v_ops();
  for (const auto& m1 : v)
    for (const auto& m2 : v) {
      NcPoly<Scalar> p(m1.adjoint() * m2, Scalar(1));
      CHECK_NOTHROW(basis_expand(p));
    }
  // and a longer word falls outside
  NcPoly<Scalar> bad =
      NcPoly<Scalar>::a(0) * NcPoly<Scalar>::a(1) * NcPoly<Scalar>::a(0);
  CHECK_THROWS_AS(basis_expand(bad), OutOfBasisError);
}

TEST_CASE("basis_expand round trips through s2ab coordinates") {
  const auto ctx = symbolic_context();
  const auto rb = r_basis(ctx);
  const auto coords = basis_expand(rb[1].adjoint() * rb[2]);
  // Rebuild and compare
  NcPoly<Scalar> rebuilt;
  const auto& basis = s2ab_basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    rebuilt.add_term(basis[i], coords[i]);
  CHECK(rebuilt == rb[1].adjoint() * rb[2]);
}

TEST_CASE("zero detection against the qubit representation") {
  // The two-qubit image has a kernel in principle (e.g. anticommutators of
  // Alice's observables), but for this fixed random sample no nonzero
  // polynomial lands in it: zero <=> zero matrix at five generic angles.
  std::uniform_real_distribution<double> angle(0.1, std::atan(1.0));
  for (int i = 0; i < 50; ++i) {
    const auto x = random_poly();
    bool matrix_zero = true;
    for (int k = 0; k < 5; ++k)
      if (represent(x, reference_system(angle(rng))).norm() > 1e-10)
        matrix_zero = false;
    CHECK(matrix_zero == x.is_zero());
  }
}

TEST_CASE("symmetry action is an involutive homomorphism") {
  for (int i = 0; i < 30; ++i) {
    const auto x = random_poly(), y = random_poly();
    CHECK(symmetry_action(symmetry_action(x)) == x);
    CHECK(symmetry_action(x * y) ==
          symmetry_action(x) * symmetry_action(y));
  }
  // and it fixes the Bell operator
  const auto ctx = symbolic_context();
  CHECK(symmetry_action(tilted_chsh(ctx)) == tilted_chsh(ctx));
}

TEST_CASE("parser round trips the canonical printer") {
  const auto ctx = symbolic_context();
  std::vector<NcPoly<Scalar>> cases;
  cases.push_back(tilted_chsh(ctx));
  cases.push_back(shifted_bell(ctx));
  for (const auto& r : r_basis(ctx)) cases.push_back(r);
  for (const auto& s : s_polys(ctx)) cases.push_back(s);
  for (int i = 0; i < 20; ++i) cases.push_back(random_poly());
  for (const auto& p : cases) {
    CHECK(parse_poly(poly_str(p)) == p);
  }
}

TEST_CASE("parser accepts the documented syntax") {
  using P = NcPoly<Scalar>;
  CHECK(parse_poly("1") == P::identity());
  CHECK(parse_poly("(-2*u)*A0*B1") ==
        (Scalar(-2) * Scalar::u()) * (P::a(0) * P::b(1)));
  CHECK(parse_poly("alpha*A0 + A0*B0 + A0*B1 + A1*B0 - A1*B1") ==
        tilted_chsh(symbolic_context()));
  CHECK(parse_poly("A0^2") == P::identity());
  CHECK(parse_poly("(B0+B1)/(2*u)") ==
        (Scalar(1) / (Scalar(2) * Scalar::u())) * (P::b(0) + P::b(1)));
  CHECK_THROWS_AS(parse_poly("A2"), ParseError);
  CHECK_THROWS_AS(parse_poly("A0 +"), ParseError);
  CHECK_THROWS_AS(parse_poly("1/(A0)"), ParseError);
}
