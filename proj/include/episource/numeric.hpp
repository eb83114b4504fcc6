#pragma once

// Exact arithmetic used by the likelihood and centrality code.

#include <cstdint>
#include <span>
#include <string>

#include <gmpxx.h>

namespace episource {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);  // 0 outside 0 <= k <= n

// Product of small factors, multiplied as a balanced tree.
BigInt product(std::span<const std::uint64_t> factors);

// Fixed-point rendering with `significant` significant digits, rounded half up.
std::string to_decimal(const Rational& q, int significant = 20);

// Integers print exactly; everything else as a 20-significant-digit decimal.
std::string to_display(const Rational& q);

double to_double(const Rational& q);

}  // namespace episource
