#ifndef TILTED_ALGEBRA_HPP
#define TILTED_ALGEBRA_HPP

#include "tilted/quadfield.hpp"
#include "tilted/scalar.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilted {

inline bool scalar_is_zero(const Scalar& s) { return s.is_zero(); }
inline bool scalar_is_zero(const QuadScalar& s) { return s.is_zero(); }
inline bool scalar_is_zero(double s) { return s == 0.0; }

struct OutOfBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reduced word pair over {A0,A1} x {B0,B1}. Each per-party word is stored
/// as a letter sequence with no two adjacent equal letters (X*X = I); the
/// identity has both words empty. Alice's and Bob's letters commute, so a
/// monomial is fully described by the pair.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::vector<std::uint8_t> alice, std::vector<std::uint8_t> bob)
      : alice_(std::move(alice)), bob_(std::move(bob)) {}

  static Monomial identity() { return {}; }
  static Monomial a(std::uint8_t x) { return Monomial({x}, {}); }
  static Monomial b(std::uint8_t y) { return Monomial({}, {y}); }

  const std::vector<std::uint8_t>& alice() const { return alice_; }
  const std::vector<std::uint8_t>& bob() const { return bob_; }
  bool is_identity() const { return alice_.empty() && bob_.empty(); }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    return Monomial(concat(x.alice_, y.alice_), concat(x.bob_, y.bob_));
  }

  Monomial adjoint() const {
    return Monomial({alice_.rbegin(), alice_.rend()},
                    {bob_.rbegin(), bob_.rend()});
  }

  // Ordering: (alice length, bob length, lexicographic), for deterministic
  // serialization.
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.alice_.size() != y.alice_.size())
      return x.alice_.size() < y.alice_.size();
    if (x.bob_.size() != y.bob_.size()) return x.bob_.size() < y.bob_.size();
    if (x.alice_ != y.alice_) return x.alice_ < y.alice_;
    return x.bob_ < y.bob_;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.alice_ == y.alice_ && x.bob_ == y.bob_;
  }

  std::string str() const {
    if (is_identity()) return "1";
    std::string out;
    for (auto l : alice_) {
      if (!out.empty()) out += '*';
      out += 'A';
      out += static_cast<char>('0' + l);
    }
    for (auto l : bob_) {
      if (!out.empty()) out += '*';
      out += 'B';
      out += static_cast<char>('0' + l);
    }
    return out;
  }

 private:
  static std::vector<std::uint8_t> concat(const std::vector<std::uint8_t>& x,
                                          const std::vector<std::uint8_t>& y) {
    std::vector<std::uint8_t> out = x;
    std::size_t j = 0;
    while (!out.empty() && j < y.size() && out.back() == y[j]) {
      out.pop_back();
      ++j;
    }
    out.insert(out.end(), y.begin() + j, y.end());
    return out;
  }

  std::vector<std::uint8_t> alice_;
  std::vector<std::uint8_t> bob_;
};

/// Finite scalar-weighted sum of monomials: the *-algebra of polynomials in
/// A0, A1, B0, B1 with A_x^2 = B_y^2 = I and [A_x, B_y] = 0. Canonical form:
/// no zero coefficient stored.
template <class S>
class NcPoly {
 public:
  using Terms = std::map<Monomial, S>;

  NcPoly() = default;
  explicit NcPoly(S c) { add_term(Monomial::identity(), std::move(c)); }
  NcPoly(Monomial m, S c) { add_term(std::move(m), std::move(c)); }

  static NcPoly identity() { return NcPoly(S(1)); }
  static NcPoly a(std::uint8_t x) { return NcPoly(Monomial::a(x), S(1)); }
  static NcPoly b(std::uint8_t y) { return NcPoly(Monomial::b(y), S(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Monomial m, S c) {
    if (scalar_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second = it->second + c;
      if (scalar_is_zero(it->second)) terms_.erase(it);
    }
  }

  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  friend NcPoly operator+(const NcPoly& x, const NcPoly& y) {
    NcPoly out = x;
    for (const auto& [m, c] : y.terms_) out.add_term(m, c);
    return out;
  }
  friend NcPoly operator-(const NcPoly& x, const NcPoly& y) {
    NcPoly out = x;
    for (const auto& [m, c] : y.terms_) out.add_term(m, -c);
    return out;
  }
  friend NcPoly operator-(const NcPoly& x) {
    NcPoly out;
    for (const auto& [m, c] : x.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend NcPoly operator*(const NcPoly& x, const NcPoly& y) {
    NcPoly out;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) out.add_term(mx * my, cx * cy);
    return out;
  }
  friend NcPoly operator*(const S& c, const NcPoly& x) {
    NcPoly out;
    for (const auto& [m, xc] : x.terms_) out.add_term(m, c * xc);
    return out;
  }

  /// Word reversal per party; all scalars are real so conjugation is trivial.
  NcPoly adjoint() const {
    NcPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m.adjoint(), c);
    return out;
  }

  bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

/// The nine-monomial basis S_{1+AB} = {I, A0, A1} x {I, B0, B1}, ordered to
/// match the operator vector V of the Gram-matrix construction:
/// (I, A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1).
inline const std::vector<Monomial>& v_ops() {
  static const std::vector<Monomial> ops = [] {
    std::vector<Monomial> v;
    v.push_back(Monomial::identity());
    v.push_back(Monomial::a(0));
    v.push_back(Monomial::a(1));
    v.push_back(Monomial::b(0));
    v.push_back(Monomial::b(1));
    v.push_back(Monomial::a(0) * Monomial::b(0));
    v.push_back(Monomial::a(0) * Monomial::b(1));
    v.push_back(Monomial::a(1) * Monomial::b(0));
    v.push_back(Monomial::a(1) * Monomial::b(1));
    return v;
  }();
  return ops;
}

/// The 25-element basis of quadratic products,
/// {I, A0, A1, A0A1, A1A0} x {I, B0, B1, B0B1, B1B0}.
inline const std::vector<Monomial>& s2ab_basis() {
  static const std::vector<Monomial> basis = [] {
    std::vector<std::vector<std::uint8_t>> words = {
        {}, {0}, {1}, {0, 1}, {1, 0}};
    std::vector<Monomial> out;
    for (const auto& aw : words)
      for (const auto& bw : words) out.emplace_back(aw, bw);
    return out;
  }();
  return basis;
}

/// Exact coordinates of x in the 25-element basis.
/// Throws OutOfBasisError if x contains a longer word.
template <class S>
std::vector<S> basis_expand(const NcPoly<S>& x) {
  const auto& basis = s2ab_basis();
  std::vector<S> coords(basis.size(), S(0));
  for (const auto& [m, c] : x.terms()) {
    bool found = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] == m) {
        coords[i] = c;
        found = true;
        break;
      }
    }
    if (!found)
      throw OutOfBasisError("monomial outside S^2_{1+AB}: " + m.str());
  }
  return coords;
}

/// The order-2 symmetry of the tilted CHSH operator: A1 -> -A1, B0 <-> B1.
/// Words stay reduced under the relabeling, so only signs and Bob's letters
/// change.
template <class S>
NcPoly<S> symmetry_action(const NcPoly<S>& x) {
  NcPoly<S> out;
  for (const auto& [m, c] : x.terms()) {
    int a1_count = 0;
    for (auto l : m.alice())
      if (l == 1) ++a1_count;
    std::vector<std::uint8_t> bob;
    bob.reserve(m.bob().size());
    for (auto l : m.bob()) bob.push_back(l == 0 ? 1 : 0);
    S coeff = (a1_count % 2 == 0) ? c : -c;
    out.add_term(Monomial(m.alice(), std::move(bob)), std::move(coeff));
  }
  return out;
}

}  // namespace tilted

#endif  // TILTED_ALGEBRA_HPP
