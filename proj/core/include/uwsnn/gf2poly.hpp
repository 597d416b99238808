#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uwsnn {

/// Polynomial over GF(2). Bit i of `mask` is the coefficient of x^i.
struct BinaryPolynomial {
  std::uint64_t mask = 0;

  /// Index of the highest set bit; -1 for the zero polynomial.
  int degree() const {
    return mask == 0 ? -1 : 63 - std::countl_zero(mask);
  }

  /// Number of nonzero coefficients, constant term included.
  int weight() const { return std::popcount(mask); }

  bool is_zero() const { return mask == 0; }

  friend auto operator<=>(const BinaryPolynomial&, const BinaryPolynomial&) = default;
};

/// Modular arithmetic and primitivity tests accept degrees up to this bound;
/// products of reduced operands then stay inside one 64-bit word.
inline constexpr int kMaxPolynomialDegree = 32;

/// Exhaustive enumeration stays cheap up to this degree.
inline constexpr int kMaxEnumerationDegree = 24;

/// Parses expressions of the form "x^a+x^b+...+x+1". Whitespace and a capital
/// X are tolerated. Duplicate exponents and empty input are parse errors;
/// a result of degree < 1 is a domain error.
BinaryPolynomial parse_polynomial(std::string_view text);

/// Canonical form: descending exponents, lowercase x, "x" for exponent 1,
/// trailing "+1" for the constant term, no spaces.
std::string format_polynomial(BinaryPolynomial p);

BinaryPolynomial poly_mod(BinaryPolynomial a, BinaryPolynomial m);
BinaryPolynomial poly_mod_mul(BinaryPolynomial a, BinaryPolynomial b, BinaryPolynomial m);
BinaryPolynomial poly_mod_pow(BinaryPolynomial base, std::uint64_t exponent, BinaryPolynomial m);
BinaryPolynomial poly_gcd(BinaryPolynomial a, BinaryPolynomial b);

bool is_irreducible(BinaryPolynomial p);

/// True iff p is irreducible of degree n in [2, 32] and x generates the full
/// multiplicative group mod p: x^(2^n-1) = 1 and x^((2^n-1)/q) != 1 for every
/// prime q dividing 2^n - 1.
bool is_primitive(BinaryPolynomial p);

struct MersenneFactorization {
  int n = 0;
  std::vector<std::uint64_t> prime_factors;  // distinct primes of 2^n - 1, ascending
};

/// Complete prime factor set of 2^n - 1 by trial division, 1 <= n <= 32.
MersenneFactorization factor_mersenne(int n);

/// Euler phi of 2^n - 1.
std::uint64_t euler_phi_mersenne(int n);

/// All primitive polynomials of the given degree, ascending by coefficient
/// mask. The list length equals phi(2^n - 1) / n.
std::vector<BinaryPolynomial> enumerate_primitive(int degree);

}  // namespace uwsnn
