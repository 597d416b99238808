#include "uwsnn/generator.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "uwsnn/errors.hpp"

namespace uwsnn {

Lfsr::Lfsr(BinaryPolynomial feedback, std::uint64_t seed) : feedback_(feedback) {
  const int n = feedback.degree();
  if (n < 2) {
    throw std::domain_error("LFSR feedback polynomial must have degree >= 2");
  }
  if (n > kMaxPolynomialDegree) {
    throw std::domain_error("LFSR feedback degree exceeds supported bound of 32");
  }
  if (!(feedback.mask & 1)) {
    throw std::domain_error("LFSR feedback polynomial must have constant term 1");
  }
  degree_ = n;
  for (int i = 0; i < n; ++i) {
    if ((feedback.mask >> (n - i)) & 1) taps_ |= std::uint64_t{1} << i;
  }
  state_ = seed & all_ones_seed(n);
  if (state_ == 0) {
    throw std::domain_error("LFSR state must not be all-zero");
  }
}

int Lfsr::step() {
  const int out = static_cast<int>(state_ & 1);
  const std::uint64_t fb = static_cast<std::uint64_t>(std::popcount(state_ & taps_) & 1);
  state_ = (state_ >> 1) | (fb << (degree_ - 1));
  return out;
}

int ShrinkingGenerator::next() {
  for (;;) {
    const int a = input_.step();
    const int c = control_.step();
    if (c) return a;
  }
}

std::uint64_t sg_period_length(int input_degree, int control_degree) {
  if (input_degree < 2 || control_degree < 2 || input_degree > kMaxPolynomialDegree ||
      control_degree > kMaxPolynomialDegree) {
    throw std::domain_error("component degrees must lie in 2..32");
  }
  const std::uint64_t input_period = (std::uint64_t{1} << input_degree) - 1;
  return input_period << (control_degree - 1);
}

std::string sg_full_period(BinaryPolynomial input_poly, BinaryPolynomial control_poly,
                           std::uint64_t input_seed, std::uint64_t control_seed,
                           std::uint64_t bit_budget) {
  if (!is_primitive(input_poly)) {
    throw std::domain_error("input polynomial " + format_polynomial(input_poly) +
                            " is not primitive");
  }
  if (!is_primitive(control_poly)) {
    throw std::domain_error("control polynomial " + format_polynomial(control_poly) +
                            " is not primitive");
  }
  const std::uint64_t length = sg_period_length(input_poly.degree(), control_poly.degree());
  if (length > bit_budget) {
    throw ResourceError("full period of " + std::to_string(length) +
                        " bits exceeds the bit budget of " + std::to_string(bit_budget));
  }
  ShrinkingGenerator generator{Lfsr(input_poly, input_seed), Lfsr(control_poly, control_seed)};
  std::string out(static_cast<std::size_t>(length), '0');
  for (char& c : out) c = static_cast<char>('0' + generator.next());
  return out;
}

std::string sg_full_period(BinaryPolynomial input_poly, BinaryPolynomial control_poly,
                           std::uint64_t bit_budget) {
  return sg_full_period(input_poly, control_poly, ~std::uint64_t{0}, ~std::uint64_t{0},
                        bit_budget);
}

std::string canonical_rotation(std::string_view bits) {
  if (bits.empty()) throw std::domain_error("cannot rotate an empty string");
  const std::size_t n = bits.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const char a = bits[(i + k) % n];
    const char b = bits[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  const std::size_t start = std::min(i, j);
  std::string out;
  out.reserve(n);
  out.append(bits.substr(start));
  out.append(bits.substr(0, start));
  return out;
}

}  // namespace uwsnn
