#include "hcsat/rational.hpp"

#include <limits>
#include <stdexcept>

namespace hcsat {

namespace {

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("missing digits");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

// Largest r with r^degree <= value.
mpz_class integer_root_floor(const mpz_class& value, unsigned degree) {
  mpz_class root;
  mpz_root(root.get_mpz_t(), value.get_mpz_t(), degree);
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Rational result;
  if (slash == std::string_view::npos) {
    result = Rational(parse_integer(text));
  } else {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    result = Rational(num, den);
    result.canonicalize();
  }
  return result;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational result(num, den);
  result.canonicalize();
  return result;
}

Rational binomial(unsigned long n, unsigned long k) {
  if (k > n) return Rational(0);
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return Rational(result);
}

std::optional<Rational> exact_root(const Rational& value, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("root of degree 0");
  if (sgn(value) < 0) throw std::invalid_argument("root of negative value");
  mpz_class num_root, den_root;
  bool num_exact = mpz_root(num_root.get_mpz_t(), value.get_num_mpz_t(), degree) != 0;
  bool den_exact = mpz_root(den_root.get_mpz_t(), value.get_den_mpz_t(), degree) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  Rational result(num_root, den_root);
  result.canonicalize();
  return result;
}

Rational root_ceil_on_grid(const Rational& value, unsigned degree,
                           const mpz_class& grid) {
  if (grid <= 0) throw std::invalid_argument("grid must be positive");
  // Want the least integer t with t^degree >= grid^degree * value, i.e.
  // t^degree * den >= grid^degree * num.
  mpz_class grid_pow;
  mpz_pow_ui(grid_pow.get_mpz_t(), grid.get_mpz_t(), degree);
  mpz_class target_num = grid_pow * value.get_num();
  const mpz_class& den = value.get_den();
  // floor((target_num / den)^(1/degree)) is a lower estimate; step up.
  mpz_class quotient = target_num / den;
  mpz_class t = integer_root_floor(quotient, degree);
  auto big_enough = [&](const mpz_class& candidate) {
    mpz_class lhs;
    mpz_pow_ui(lhs.get_mpz_t(), candidate.get_mpz_t(), degree);
    return lhs * den >= target_num;
  };
  while (!big_enough(t)) ++t;
  while (t > 0 && big_enough(t - 1)) --t;
  Rational result(t, grid);
  result.canonicalize();
  return result;
}

std::size_t floor_to_size(const Rational& value) {
  if (sgn(value) <= 0) return 0;
  mpz_class floor_value = value.get_num() / value.get_den();
  if (!floor_value.fits_ulong_p()) return std::numeric_limits<std::size_t>::max();
  return floor_value.get_ui();
}

}  // namespace hcsat
