#include "gkmloc/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gkmloc/errors.hpp"

namespace gkmloc {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

cpp_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidInputError("malformed rational '" + std::string(whole) + "'");
  cpp_int v{std::string(s)};
  return negative ? cpp_int(-v) : v;
}

void require_same_rank(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": rank mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InvalidInputError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw InvalidInputError("malformed rational '" + std::string(text) + "'");
    cpp_int den(std::string{den_text});
    if (den == 0) throw InvalidInputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw InvalidInputError("malformed rational '" + std::string(text) + "'");
    }
    cpp_int whole = int_part.empty() ? cpp_int(0) : cpp_int(std::string(int_part));
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac.size()));
    cpp_int part = frac.empty() ? cpp_int(0) : cpp_int(std::string(frac));
    Rational q(cpp_int(whole * scale + part), scale);
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  if (o.is_zero()) throw SingularEvaluationError("division by zero");
  Rational norm = o.re * o.re + o.im * o.im;
  Rational r = (re * o.re + im * o.im) / norm;
  Rational i = (im * o.re - re * o.im) / norm;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::string to_string(const ComplexRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string im_text = (z.im == 1) ? "i" : (z.im == -1 ? "-i" : to_string(z.im) + "i");
  if (z.re == 0) return im_text;
  if (im_text.front() != '-') im_text = "+" + im_text;
  return to_string(z.re) + im_text;
}

Weight Weight::unit(std::size_t rank, std::size_t index) {
  Weight w = zero(rank);
  w.coeffs_.at(index) = 1;
  return w;
}

bool Weight::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

Weight Weight::hyperplane_representative() const {
  for (std::int64_t c : coeffs_) {
    if (c > 0) return *this;
    if (c < 0) return -*this;
  }
  return *this;
}

Weight Weight::operator-() const {
  Weight w = *this;
  for (auto& c : w.coeffs_) c = -c;
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  require_same_rank(a.rank(), b.rank(), "weight sum");
  Weight w = a;
  for (std::size_t j = 0; j < w.rank(); ++j) w.coeffs_[j] += b.coeffs_[j];
  return w;
}

Weight operator-(const Weight& a, const Weight& b) { return a + (-b); }

std::string to_string(const Weight& w) {
  std::string out = "(";
  for (std::size_t j = 0; j < w.rank(); ++j) {
    if (j) out += ",";
    out += std::to_string(w[j]);
  }
  return out + ")";
}

CartanElement::CartanElement(std::vector<Rational> r, std::vector<Rational> i)
    : re(std::move(r)), im(std::move(i)) {
  require_same_rank(re.size(), im.size(), "Cartan element");
}

CartanElement CartanElement::real(std::vector<Rational> r) {
  std::vector<Rational> zeros(r.size());
  return {std::move(r), std::move(zeros)};
}

CartanElement CartanElement::imaginary(std::vector<Rational> i) {
  std::vector<Rational> zeros(i.size());
  return {std::move(zeros), std::move(i)};
}

CartanElement CartanElement::scaled(const Rational& a) const {
  CartanElement out = *this;
  for (auto& x : out.re) x *= a;
  for (auto& x : out.im) x *= a;
  return out;
}

std::string to_string(const CartanElement& X) {
  std::string out;
  for (std::size_t j = 0; j < X.rank(); ++j) {
    if (j) out += ",";
    out += to_string(ComplexRational(X.re[j], X.im[j]));
  }
  return out;
}

Rational slice_part(const ComplexRational& value, Slice slice) {
  return slice == Slice::split ? value.re : value.im;
}

ComplexRational eval_weight(const Weight& beta, const CartanElement& X) {
  require_same_rank(beta.rank(), X.rank(), "eval_weight");
  ComplexRational out;
  for (std::size_t j = 0; j < beta.rank(); ++j) {
    if (beta[j] == 0) continue;
    out.re += beta[j] * X.re[j];
    out.im += beta[j] * X.im[j];
  }
  return out;
}

ComplexRational eval_linear_form(std::span<const Rational> form, const CartanElement& X) {
  require_same_rank(form.size(), X.rank(), "linear form");
  ComplexRational out;
  for (std::size_t j = 0; j < form.size(); ++j) {
    out.re += form[j] * X.re[j];
    out.im += form[j] * X.im[j];
  }
  return out;
}

ClassExpr ClassExpr::constant(ComplexRational c) {
  ClassTerm t;
  t.coeff = std::move(c);
  return ClassExpr{{t}};
}

ComplexRational eval_term_algebraic(const ClassTerm& term, const CartanElement& X) {
  ComplexRational value = term.coeff * i_power(term.power_of_i);
  for (const auto& beta : term.numerator) value *= eval_weight(beta, X);
  for (const auto& beta : term.denominator) {
    ComplexRational d = eval_weight(beta, X);
    if (d.is_zero()) {
      throw SingularEvaluationError("denominator weight " + to_string(beta) + " vanishes at X=" +
                                    to_string(X));
    }
    value /= d;
  }
  return value;
}

std::complex<double> eval_class(const ClassExpr& expr, const CartanElement& X) {
  std::complex<double> total{0.0, 0.0};
  for (const auto& term : expr.terms) {
    std::complex<double> value = eval_term_algebraic(term, X).to_complex();
    if (!term.exponent.empty()) value *= std::exp(eval_linear_form(term.exponent, X).to_complex());
    total += value;
  }
  return total;
}

std::vector<Weight> canonical_order(std::span<const Weight> weights) {
  std::vector<Weight> out(weights.begin(), weights.end());
  std::sort(out.begin(), out.end(), std::greater<>{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Weight> hyperplanes(std::span<const Weight> delta) {
  std::vector<Weight> reps;
  reps.reserve(delta.size());
  for (const auto& beta : delta) reps.push_back(beta.hyperplane_representative());
  return canonical_order(reps);
}

RegularityReport is_regular(std::span<const Weight> delta, const CartanElement& X) {
  if (delta.empty()) throw InvalidInputError("empty weight set");
  RegularityReport report;
  for (const auto& beta : canonical_order(delta)) {
    if (beta.is_zero()) throw InvalidInputError("zero weight in weight set");
    if (eval_weight(beta, X).is_zero()) {
      report.regular = false;
      report.violations.push_back(beta);
    }
  }
  return report;
}

namespace {

std::vector<int> signs_over(const std::vector<Weight>& ordered, const CartanElement& X, Slice slice) {
  std::vector<int> signs;
  signs.reserve(ordered.size());
  for (const auto& beta : ordered) {
    if (beta.is_zero()) throw InvalidInputError("zero weight in weight set");
    const Rational part = slice_part(eval_weight(beta, X), slice);
    if (part == 0) {
      throw OnWallError("X=" + to_string(X) + " lies on the wall of weight " + to_string(beta) +
                        (slice == Slice::split ? " (Re beta(X) = 0)" : " (Im beta(X) = 0)"));
    }
    signs.push_back(part > 0 ? 1 : -1);
  }
  return signs;
}

}  // namespace

std::vector<int> chamber_id(std::span<const Weight> delta, const CartanElement& X, Slice slice) {
  return signs_over(canonical_order(delta), X, slice);
}

std::string chamber_key(std::span<const Weight> delta, const CartanElement& X, Slice slice) {
  return sign_string(signs_over(hyperplanes(delta), X, slice));
}

std::string sign_string(std::span<const int> signs) {
  std::string out;
  out.reserve(signs.size());
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

}  // namespace gkmloc
