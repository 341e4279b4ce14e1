#pragma once

#include <gmpxx.h>

#include <concepts>
#include <optional>
#include <string>
#include <string_view>

namespace hcsat {

/// Exact rational. All weights and thresholds go through this type.
/// Unlike a bare mpq_class, the (num, den) constructor canonicalises, so
/// Rational(2, 4) == Rational(1, 2). There is no conversion from floating
/// point.
class Rational : public mpq_class {
 public:
  Rational() = default;
  Rational(const mpq_class& value) : mpq_class(value) {}
  template <class T, class U>
  Rational(const __gmp_expr<T, U>& expr) : mpq_class(expr) {}
  template <std::integral T>
  Rational(T value) : mpq_class(value) {}
  template <class N, class D>
  Rational(const N& num, const D& den) : mpq_class(mpz_class(num), mpz_class(den)) {
    canonicalize();
  }
};

/// Parses "a/b" or "a" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Always "numerator/denominator", also for integers ("3/1").
std::string to_string(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Binomial coefficient C(n, k) as an exact rational (0 when k > n).
Rational binomial(unsigned long n, unsigned long k);

/// The exact m-th root of a nonnegative rational, if it is rational.
std::optional<Rational> exact_root(const Rational& value, unsigned degree);

/// Smallest t/grid with t integer and t/grid >= value^(1/degree).
Rational root_ceil_on_grid(const Rational& value, unsigned degree,
                           const mpz_class& grid);

/// floor(value) for nonnegative values; saturates at max().
std::size_t floor_to_size(const Rational& value);

}  // namespace hcsat
