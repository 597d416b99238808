#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "uwsnn/gf2poly.hpp"

namespace uwsnn {

/// Fibonacci (external-XOR) LFSR. State bit i holds s_{t+i}; s_0 is emitted
/// first. New bits come from the reciprocal-tap recurrence
///
///   s_{t+n} = XOR of s_{t+i} over all i < n with c_{n-i} = 1,
///
/// where c_k are the feedback polynomial coefficients. With this convention a
/// primitive feedback of degree n yields an m-sequence of period 2^n - 1, and
/// the shrinking generator built on it matches the reference keystream pinned
/// in the acceptance suite.
class Lfsr {
 public:
  /// `seed` holds the initial state, bit i = s_i; it is masked to the
  /// register width and must be nonzero afterwards. The feedback polynomial
  /// needs degree >= 2 and constant term 1.
  Lfsr(BinaryPolynomial feedback, std::uint64_t seed);

  /// Emits s_0 and advances the register one clock.
  int step();

  int degree() const { return degree_; }
  std::uint64_t state() const { return state_; }
  BinaryPolynomial feedback() const { return feedback_; }

  /// All-ones seed for the given width.
  static std::uint64_t all_ones_seed(int degree) {
    return (std::uint64_t{1} << degree) - 1;
  }

 private:
  BinaryPolynomial feedback_;
  std::uint64_t taps_ = 0;  // bit i set when c_{n-i} = 1
  std::uint64_t state_ = 0;
  int degree_ = 0;
};

/// Two LFSRs clocked together; control bits of 1 select the simultaneous
/// input bit into the keystream, control bits of 0 drop it.
class ShrinkingGenerator {
 public:
  ShrinkingGenerator(Lfsr input, Lfsr control)
      : input_(input), control_(control) {}

  /// Clocks both registers until a keystream bit is produced.
  int next();

  int sg_degree() const { return input_.degree() + control_.degree(); }
  const Lfsr& input() const { return input_; }
  const Lfsr& control() const { return control_; }

 private:
  Lfsr input_;
  Lfsr control_;
};

inline constexpr std::uint64_t kDefaultKeystreamBitBudget = std::uint64_t{1} << 26;

/// (2^a - 1) * 2^(b-1): keystream bits in one full output period for input
/// degree a and control degree b.
std::uint64_t sg_period_length(int input_degree, int control_degree);

/// One full keystream period as an ASCII 0/1 string. Both polynomials must be
/// primitive; a period above the bit budget raises ResourceError.
std::string sg_full_period(BinaryPolynomial input_poly, BinaryPolynomial control_poly,
                           std::uint64_t input_seed, std::uint64_t control_seed,
                           std::uint64_t bit_budget = kDefaultKeystreamBitBudget);

/// Same with all-ones seeds for both registers.
std::string sg_full_period(BinaryPolynomial input_poly, BinaryPolynomial control_poly,
                           std::uint64_t bit_budget = kDefaultKeystreamBitBudget);

/// Lexicographically least rotation (Booth's algorithm).
std::string canonical_rotation(std::string_view bits);

}  // namespace uwsnn
