#include "uwsnn/gf2poly.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "uwsnn/errors.hpp"

namespace uwsnn {

namespace {

int top_bit(std::uint64_t v) { return 63 - std::countl_zero(v); }

std::uint64_t reduce_mask(std::uint64_t value, std::uint64_t modulus) {
  const int md = top_bit(modulus);
  while (value != 0) {
    const int d = top_bit(value);
    if (d < md) break;
    value ^= modulus << (d - md);
  }
  return value;
}

void check_modulus(BinaryPolynomial m) {
  if (m.is_zero() || m.degree() < 1) {
    throw std::domain_error("modulus must have degree >= 1");
  }
  if (m.degree() > kMaxPolynomialDegree) {
    throw std::domain_error("modulus degree exceeds supported bound of 32");
  }
}

std::vector<int> distinct_prime_factors(int n) {
  std::vector<int> primes;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

const BinaryPolynomial kOne{1};
const BinaryPolynomial kX{2};

}  // namespace

BinaryPolynomial parse_polynomial(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      compact.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (compact.empty()) throw ParseError("empty polynomial expression");

  std::uint64_t mask = 0;
  std::size_t pos = 0;
  while (pos <= compact.size()) {
    const std::size_t plus = compact.find('+', pos);
    const std::string_view term =
        std::string_view(compact).substr(pos, plus == std::string::npos ? plus : plus - pos);
    if (term.empty()) throw ParseError("empty term in polynomial expression");

    int exponent;
    if (term == "1") {
      exponent = 0;
    } else if (term == "x") {
      exponent = 1;
    } else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
      const char* first = term.data() + 2;
      const char* last = term.data() + term.size();
      const auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (ec != std::errc{} || ptr != last || exponent < 0) {
        throw ParseError("malformed exponent in term '" + std::string(term) + "'");
      }
      if (exponent > kMaxPolynomialDegree) {
        throw ParseError("exponent " + std::to_string(exponent) + " exceeds supported degree 32");
      }
    } else {
      throw ParseError("unrecognized term '" + std::string(term) + "'");
    }

    const std::uint64_t bit = std::uint64_t{1} << exponent;
    if (mask & bit) {
      throw ParseError("duplicate exponent " + std::to_string(exponent));
    }
    mask |= bit;

    if (plus == std::string::npos) break;
    pos = plus + 1;
  }

  const BinaryPolynomial p{mask};
  if (p.degree() < 1) {
    throw std::domain_error("polynomial must have degree >= 1");
  }
  return p;
}

std::string format_polynomial(BinaryPolynomial p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (!((p.mask >> k) & 1)) continue;
    if (!out.empty()) out.push_back('+');
    if (k == 0) {
      out.push_back('1');
    } else if (k == 1) {
      out.push_back('x');
    } else {
      out += "x^" + std::to_string(k);
    }
  }
  return out;
}

BinaryPolynomial poly_mod(BinaryPolynomial a, BinaryPolynomial m) {
  check_modulus(m);
  return BinaryPolynomial{reduce_mask(a.mask, m.mask)};
}

BinaryPolynomial poly_mod_mul(BinaryPolynomial a, BinaryPolynomial b, BinaryPolynomial m) {
  check_modulus(m);
  const std::uint64_t am = reduce_mask(a.mask, m.mask);
  std::uint64_t bm = reduce_mask(b.mask, m.mask);
  std::uint64_t product = 0;
  // Reduced operands have degree < 32, so the carryless product fits in 64 bits.
  while (bm != 0) {
    const int i = std::countr_zero(bm);
    product ^= am << i;
    bm &= bm - 1;
  }
  return BinaryPolynomial{reduce_mask(product, m.mask)};
}

BinaryPolynomial poly_mod_pow(BinaryPolynomial base, std::uint64_t exponent, BinaryPolynomial m) {
  check_modulus(m);
  BinaryPolynomial result = poly_mod(kOne, m);
  BinaryPolynomial acc = poly_mod(base, m);
  while (exponent != 0) {
    if (exponent & 1) result = poly_mod_mul(result, acc, m);
    acc = poly_mod_mul(acc, acc, m);
    exponent >>= 1;
  }
  return result;
}

BinaryPolynomial poly_gcd(BinaryPolynomial a, BinaryPolynomial b) {
  while (!b.is_zero()) {
    const BinaryPolynomial r{reduce_mask(a.mask, b.mask)};
    a = b;
    b = r;
  }
  return a;
}

bool is_irreducible(BinaryPolynomial p) {
  const int n = p.degree();
  if (n < 1) throw std::domain_error("irreducibility is defined for degree >= 1");
  if (n > kMaxPolynomialDegree) {
    throw std::domain_error("degree exceeds supported bound of 32");
  }
  if (n == 1) return true;
  if (!(p.mask & 1)) return false;  // divisible by x

  // Frobenius criterion: x^(2^n) = x (mod p), and for each prime q | n the
  // partial power x^(2^(n/q)) shares no factor with p.
  BinaryPolynomial r = kX;
  for (int i = 0; i < n; ++i) r = poly_mod_mul(r, r, p);
  if (r != kX) return false;

  for (const int q : distinct_prime_factors(n)) {
    BinaryPolynomial s = kX;
    for (int i = 0; i < n / q; ++i) s = poly_mod_mul(s, s, p);
    const BinaryPolynomial g = poly_gcd(BinaryPolynomial{s.mask ^ kX.mask}, p);
    if (g.degree() != 0) return false;
  }
  return true;
}

bool is_primitive(BinaryPolynomial p) {
  const int n = p.degree();
  if (n < 2 || n > kMaxPolynomialDegree) {
    throw std::domain_error("primitivity test supports degrees 2..32");
  }
  if (!is_irreducible(p)) return false;

  const std::uint64_t order = (std::uint64_t{1} << n) - 1;
  if (poly_mod_pow(kX, order, p) != kOne) return false;
  for (const std::uint64_t q : factor_mersenne(n).prime_factors) {
    if (poly_mod_pow(kX, order / q, p) == kOne) return false;
  }
  return true;
}

MersenneFactorization factor_mersenne(int n) {
  if (n < 1 || n > 32) {
    throw std::domain_error("factor_mersenne supports 1 <= n <= 32");
  }
  MersenneFactorization out;
  out.n = n;
  std::uint64_t rem = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t d = 3; d * d <= rem; d += 2) {
    if (rem % d == 0) {
      out.prime_factors.push_back(d);
      while (rem % d == 0) rem /= d;
    }
  }
  if (rem > 1) out.prime_factors.push_back(rem);
  return out;
}

std::uint64_t euler_phi_mersenne(int n) {
  const std::uint64_t m = (std::uint64_t{1} << n) - 1;
  std::uint64_t phi = m;
  for (const std::uint64_t p : factor_mersenne(n).prime_factors) {
    phi = phi / p * (p - 1);
  }
  return phi;
}

std::vector<BinaryPolynomial> enumerate_primitive(int degree) {
  if (degree < 2 || degree > kMaxEnumerationDegree) {
    throw std::domain_error("enumeration supports degrees 2..24");
  }
  std::vector<BinaryPolynomial> out;
  const std::uint64_t top = std::uint64_t{1} << degree;
  const std::uint64_t inner_count = std::uint64_t{1} << (degree - 1);
  for (std::uint64_t inner = 0; inner < inner_count; ++inner) {
    const BinaryPolynomial p{top | (inner << 1) | 1};
    if (p.weight() % 2 == 0) continue;  // even weight: divisible by x+1
    if (is_primitive(p)) out.push_back(p);
  }
  return out;
}

}  // namespace uwsnn
