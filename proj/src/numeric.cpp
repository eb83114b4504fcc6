#include "episource/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace episource {

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

namespace {

BigInt product_range(std::span<const std::uint64_t> f) {
  if (f.empty()) return 1;
  if (f.size() <= 8) {
    BigInt acc = 1;
    for (auto x : f) acc *= static_cast<unsigned long>(x);
    return acc;
  }
  auto mid = f.size() / 2;
  return product_range(f.first(mid)) * product_range(f.subspan(mid));
}

}  // namespace

BigInt product(std::span<const std::uint64_t> factors) { return product_range(factors); }

std::string to_decimal(const Rational& q, int significant) {
  if (q == 0) return "0";
  Rational a = abs(q);
  std::string sign = q < 0 ? "-" : "";

  // exponent e with 10^e <= a < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto pow10 = [](long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
  };
  auto scaled = [&](long exp) {
    Rational s = a;
    if (exp >= 0) s /= Rational(pow10(exp)); else s *= Rational(pow10(-exp));
    return s;
  };
  while (scaled(e) >= 1) ++e;
  while (scaled(e) < Rational(1, 10)) --e;
  // now 0.1 <= a / 10^e < 1, so a has its leading digit at 10^(e-1)
  long shift = significant - e;
  Rational s = shift >= 0 ? Rational(a * Rational(pow10(shift))) : Rational(a / Rational(pow10(-shift)));
  BigInt digits = (s.get_num() * 2 + s.get_den()) / (s.get_den() * 2);
  std::string d = digits.get_str();
  if (static_cast<long>(d.size()) > significant) {  // rounding carried into a new digit
    ++e;
    --shift;
    d.pop_back();
  }
  // value = digits * 10^-shift
  std::string out;
  if (shift <= 0) {
    out = d + std::string(static_cast<std::size_t>(-shift), '0');
  } else if (static_cast<long>(d.size()) > shift) {
    out = d.substr(0, d.size() - static_cast<std::size_t>(shift)) + "." +
          d.substr(d.size() - static_cast<std::size_t>(shift));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(shift) - d.size(), '0') + d;
  }
  return sign + out;
}

std::string to_display(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_decimal(q, 20);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace episource
