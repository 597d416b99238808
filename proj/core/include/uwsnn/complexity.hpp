#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uwsnn {

enum class UwsMode { kLinear, kCyclic };

/// Unique window size of a bit string: the smallest w such that all windows
/// of length w are pairwise distinct. Equals the longest repeated factor
/// length plus one.
struct UwsResult {
  std::int64_t uws = 0;
  std::int64_t longest_repeated_factor_length = 0;
  /// Lexicographically least repeated factor of maximal length; absent when
  /// nothing repeats.
  std::optional<std::string> witness;
  UwsMode mode = UwsMode::kLinear;
};

struct RepeatedFactor {
  std::int64_t length = 0;
  std::string witness;  // empty when length == 0
};

/// Suffix array of an arbitrary byte string (SA-IS, linear time).
std::vector<std::int32_t> suffix_array(std::string_view text);

/// Kasai LCP: lcp[i] = longest common prefix of the suffixes at sa[i-1] and
/// sa[i]; lcp[0] = 0.
std::vector<std::int32_t> lcp_array(std::string_view text,
                                    const std::vector<std::int32_t>& sa);

/// Longest factor occurring at least twice (overlaps allowed); the witness is
/// the lexicographically least among maximal ones.
RepeatedFactor longest_repeated_factor(std::string_view bits);

/// Smallest w with all contiguous length-w windows pairwise distinct.
UwsResult uws_linear(std::string_view bits);

/// Smallest w with all n wraparound windows pairwise distinct. Requires the
/// cyclic least period of the input to equal its length.
UwsResult uws_cyclic(std::string_view bits);

inline constexpr std::size_t kBruteForceLengthGuard = std::size_t{1} << 16;

/// Independent oracle: grows w from 1 and checks every window of that length
/// against a set until no duplicates remain. Guarded to 2^16 input bits.
UwsResult brute_force_uws(std::string_view bits, UwsMode mode = UwsMode::kLinear);

/// Smallest p >= 1 dividing bits.size() such that rotating by p is the
/// identity; equals the length iff all rotations are distinct.
std::size_t cyclic_least_period(std::string_view bits);

}  // namespace uwsnn
