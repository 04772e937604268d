#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sullivan {

using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Parses "p" or "p/q" (optional leading sign); the result is canonicalized.
Rational parseRational(std::string_view text);

std::string toString(const Rational& q);

Integer factorial(unsigned n);

}  // namespace sullivan
