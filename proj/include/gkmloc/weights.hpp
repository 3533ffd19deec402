#pragma once

// Torus characters, Cartan elements and the small expression grammar used
// for fixed-point restrictions of equivariant forms.
//
// All pairings <beta, X> are exact.  Floating point enters only in
// eval_class, at the final exp/divide step.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gkmloc {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-3/7" or a plain decimal such as "0.25" exactly.
/// Throws InvalidInputError on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  /// Throws SingularEvaluationError on division by zero.
  ComplexRational& operator/=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

/// i^k for any integer k.
ComplexRational i_power(int k);
std::string to_string(const ComplexRational& z);

/// Integer character of a rank-r torus.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {}
  Weight(std::initializer_list<std::int64_t> coeffs) : coeffs_(coeffs) {}

  static Weight zero(std::size_t rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }
  static Weight unit(std::size_t rank, std::size_t index);

  std::size_t rank() const { return coeffs_.size(); }
  std::int64_t operator[](std::size_t j) const { return coeffs_[j]; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  /// The representative of {beta, -beta} whose first nonzero entry is positive.
  Weight hyperplane_representative() const;

  Weight operator-() const;
  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  friend auto operator<=>(const Weight&, const Weight&) = default;
  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

std::string to_string(const Weight& w);

/// X = re + i*im in the complexified Cartan algebra.
struct CartanElement {
  std::vector<Rational> re;
  std::vector<Rational> im;

  CartanElement() = default;
  CartanElement(std::vector<Rational> r, std::vector<Rational> i);

  static CartanElement real(std::vector<Rational> r);
  static CartanElement imaginary(std::vector<Rational> i);

  std::size_t rank() const { return re.size(); }
  CartanElement scaled(const Rational& a) const;

  friend bool operator==(const CartanElement&, const CartanElement&) = default;
};

std::string to_string(const CartanElement& X);

/// Which real form the scene treats as "the" real Cartan: the split slice
/// (X real) or the compact slice (X = i*v).  Chambers are read off the
/// corresponding real coordinate of beta(X).
enum class Slice { split, compact };

/// Real coordinate of a weight value on the given slice: Re for split,
/// Im for compact (the one-parameter subgroup generated by -iX).
Rational slice_part(const ComplexRational& value, Slice slice);

ComplexRational eval_weight(const Weight& beta, const CartanElement& X);
/// Pairing of a rational linear form (e.g. a Hamiltonian value J(p)) with X.
ComplexRational eval_linear_form(std::span<const Rational> form, const CartanElement& X);

/// One summand of a fixed-point class:
///   coeff * i^power_of_i * exp(<exponent, X>) * prod beta(X) / prod beta'(X).
/// An empty exponent stands for the zero form.
struct ClassTerm {
  ComplexRational coeff{1};
  std::vector<Rational> exponent;
  std::vector<Weight> numerator;
  std::vector<Weight> denominator;
  int power_of_i = 0;
};

struct ClassExpr {
  std::vector<ClassTerm> terms;

  static ClassExpr constant(ComplexRational c);
};

/// Exact part of a term (everything except the exponential).
ComplexRational eval_term_algebraic(const ClassTerm& term, const CartanElement& X);
std::complex<double> eval_class(const ClassExpr& expr, const CartanElement& X);

struct RegularityReport {
  bool regular = true;
  std::vector<Weight> violations;
};

/// Sorted (descending lexicographic) and deduplicated copy of a weight set.
std::vector<Weight> canonical_order(std::span<const Weight> weights);
/// Canonical representatives of the hyperplanes {beta = 0}, in canonical order.
std::vector<Weight> hyperplanes(std::span<const Weight> delta);

RegularityReport is_regular(std::span<const Weight> delta, const CartanElement& X);

/// Signs (+1/-1) of the slice part of beta(X) over canonical_order(delta).
std::vector<int> chamber_id(std::span<const Weight> delta, const CartanElement& X,
                            Slice slice = Slice::split);
/// Sign string over hyperplanes(delta), e.g. "+-".  Used as the key of
/// per-chamber tables.
std::string chamber_key(std::span<const Weight> delta, const CartanElement& X,
                        Slice slice = Slice::split);
std::string sign_string(std::span<const int> signs);

}  // namespace gkmloc
