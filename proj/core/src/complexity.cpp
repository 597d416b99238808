#include "uwsnn/complexity.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "uwsnn/errors.hpp"

namespace uwsnn {

namespace {

// SA-IS (suffix array by induced sorting). `s` holds values in [0, sigma)
// and must end with a unique smallest sentinel 0.
void sais_core(const std::vector<std::int32_t>& s, std::int32_t sigma,
               std::vector<std::int32_t>& sa) {
  const std::int32_t n = static_cast<std::int32_t>(s.size());
  sa.assign(static_cast<std::size_t>(n), -1);
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> is_s(static_cast<std::size_t>(n));
  is_s[static_cast<std::size_t>(n - 1)] = true;
  for (std::int32_t i = n - 2; i >= 0; --i) {
    const auto ui = static_cast<std::size_t>(i);
    is_s[ui] = s[ui] < s[ui + 1] || (s[ui] == s[ui + 1] && is_s[ui + 1]);
  }
  auto is_lms = [&](std::int32_t i) {
    return i > 0 && is_s[static_cast<std::size_t>(i)] && !is_s[static_cast<std::size_t>(i - 1)];
  };

  std::vector<std::int32_t> count(static_cast<std::size_t>(sigma), 0);
  for (const std::int32_t c : s) ++count[static_cast<std::size_t>(c)];
  std::vector<std::int32_t> heads(static_cast<std::size_t>(sigma));
  std::vector<std::int32_t> tails(static_cast<std::size_t>(sigma));
  auto reset_buckets = [&] {
    std::int32_t sum = 0;
    for (std::int32_t c = 0; c < sigma; ++c) {
      heads[static_cast<std::size_t>(c)] = sum;
      sum += count[static_cast<std::size_t>(c)];
      tails[static_cast<std::size_t>(c)] = sum;
    }
  };

  // Places the LMS suffixes in the given relative order, then induces L-type
  // suffixes left to right and S-type suffixes right to left.
  auto induce = [&](const std::vector<std::int32_t>& lms_order) {
    std::fill(sa.begin(), sa.end(), -1);
    reset_buckets();
    for (auto it = lms_order.rbegin(); it != lms_order.rend(); ++it) {
      sa[static_cast<std::size_t>(--tails[static_cast<std::size_t>(s[static_cast<std::size_t>(*it)])])] = *it;
    }
    reset_buckets();
    for (std::int32_t k = 0; k < n; ++k) {
      const std::int32_t j = sa[static_cast<std::size_t>(k)];
      if (j > 0 && !is_s[static_cast<std::size_t>(j - 1)]) {
        sa[static_cast<std::size_t>(heads[static_cast<std::size_t>(s[static_cast<std::size_t>(j - 1)])]++)] = j - 1;
      }
    }
    reset_buckets();
    for (std::int32_t k = n - 1; k >= 0; --k) {
      const std::int32_t j = sa[static_cast<std::size_t>(k)];
      if (j > 0 && is_s[static_cast<std::size_t>(j - 1)]) {
        sa[static_cast<std::size_t>(--tails[static_cast<std::size_t>(s[static_cast<std::size_t>(j - 1)])])] = j - 1;
      }
    }
  };

  std::vector<std::int32_t> lms;
  for (std::int32_t i = 1; i < n; ++i) {
    if (is_lms(i)) lms.push_back(i);
  }
  const std::int32_t m = static_cast<std::int32_t>(lms.size());

  induce(lms);

  if (m == 0) return;  // cannot happen with a sentinel, kept for clarity

  std::vector<std::int32_t> sorted_lms;
  sorted_lms.reserve(static_cast<std::size_t>(m));
  for (std::int32_t k = 0; k < n; ++k) {
    const std::int32_t j = sa[static_cast<std::size_t>(k)];
    if (is_lms(j)) sorted_lms.push_back(j);
  }

  // Two LMS substrings are equal iff their characters agree up to and
  // including the closing LMS position.
  auto lms_equal = [&](std::int32_t a, std::int32_t b) -> bool {
    if (a == n - 1 || b == n - 1) return false;  // the sentinel substring is unique
    if (s[static_cast<std::size_t>(a)] != s[static_cast<std::size_t>(b)]) return false;
    for (std::int32_t d = 1;; ++d) {
      const bool la = is_lms(a + d);
      const bool lb = is_lms(b + d);
      if (la && lb) return s[static_cast<std::size_t>(a + d)] == s[static_cast<std::size_t>(b + d)];
      if (la != lb) return false;
      if (s[static_cast<std::size_t>(a + d)] != s[static_cast<std::size_t>(b + d)]) return false;
    }
  };

  std::vector<std::int32_t> name_of(static_cast<std::size_t>(n), -1);
  std::int32_t names = 0;
  std::int32_t prev = -1;
  for (const std::int32_t p : sorted_lms) {
    if (prev >= 0 && !lms_equal(prev, p)) ++names;
    name_of[static_cast<std::size_t>(p)] = names;
    prev = p;
  }
  const std::int32_t name_count = names + 1;

  if (name_count < m) {
    std::vector<std::int32_t> reduced(static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) {
      reduced[static_cast<std::size_t>(i)] = name_of[static_cast<std::size_t>(lms[static_cast<std::size_t>(i)])];
    }
    std::vector<std::int32_t> reduced_sa;
    sais_core(reduced, name_count, reduced_sa);
    std::vector<std::int32_t> lms_sorted(static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) {
      lms_sorted[static_cast<std::size_t>(i)] = lms[static_cast<std::size_t>(reduced_sa[static_cast<std::size_t>(i)])];
    }
    induce(lms_sorted);
  } else {
    induce(sorted_lms);
  }
}

void require_bits(std::string_view bits) {
  if (bits.empty()) throw std::domain_error("bit string must not be empty");
  for (const char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
}

// Longest prefix shared by two start positions of `text`, restricted to
// starts below `limit`, via one SA+LCP sweep. Returns the best length and the
// lexicographically least witness start.
struct SharedPrefix {
  std::int64_t length = 0;
  std::int64_t start = -1;
};

SharedPrefix longest_shared_prefix(std::string_view text, std::size_t limit) {
  const auto sa = suffix_array(text);
  const auto lcp = lcp_array(text, sa);
  SharedPrefix best;
  std::int32_t run = std::numeric_limits<std::int32_t>::max();
  bool have_prev = false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (i > 0 && have_prev) run = std::min(run, lcp[i]);
    if (static_cast<std::size_t>(sa[i]) < limit) {
      if (have_prev && run > best.length) {
        best.length = run;
        best.start = sa[i];
      }
      have_prev = true;
      run = std::numeric_limits<std::int32_t>::max();
    }
  }
  return best;
}

}  // namespace

std::vector<std::int32_t> suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  if (n == 0) return {};
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()) - 2) {
    throw ResourceError("input too long for 32-bit suffix array indices");
  }
  std::vector<std::int32_t> s(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = static_cast<std::int32_t>(static_cast<unsigned char>(text[i])) + 1;
  }
  s[n] = 0;
  std::vector<std::int32_t> sa;
  sais_core(s, 257, sa);
  return std::vector<std::int32_t>(sa.begin() + 1, sa.end());
}

std::vector<std::int32_t> lcp_array(std::string_view text,
                                    const std::vector<std::int32_t>& sa) {
  const std::int32_t n = static_cast<std::int32_t>(text.size());
  std::vector<std::int32_t> rank(static_cast<std::size_t>(n));
  std::vector<std::int32_t> lcp(static_cast<std::size_t>(n), 0);
  for (std::int32_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(sa[static_cast<std::size_t>(i)])] = i;
  std::int32_t h = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    const std::int32_t r = rank[static_cast<std::size_t>(i)];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::int32_t j = sa[static_cast<std::size_t>(r - 1)];
    while (i + h < n && j + h < n &&
           text[static_cast<std::size_t>(i + h)] == text[static_cast<std::size_t>(j + h)]) {
      ++h;
    }
    lcp[static_cast<std::size_t>(r)] = h;
    if (h > 0) --h;
  }
  return lcp;
}

RepeatedFactor longest_repeated_factor(std::string_view bits) {
  require_bits(bits);
  const SharedPrefix best = longest_shared_prefix(bits, bits.size());
  if (best.length == 0) return {};
  return {best.length,
          std::string(bits.substr(static_cast<std::size_t>(best.start),
                                  static_cast<std::size_t>(best.length)))};
}

UwsResult uws_linear(std::string_view bits) {
  RepeatedFactor factor = longest_repeated_factor(bits);
  UwsResult result;
  result.mode = UwsMode::kLinear;
  result.longest_repeated_factor_length = factor.length;
  result.uws = factor.length + 1;
  if (factor.length > 0) result.witness = std::move(factor.witness);
  return result;
}

std::size_t cyclic_least_period(std::string_view bits) {
  const std::size_t n = bits.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool matches = true;
    for (std::size_t i = 0; matches && i < n; ++i) {
      matches = bits[i] == bits[(i + p) % n];
    }
    if (matches) return p;
  }
  return n;
}

UwsResult uws_cyclic(std::string_view bits) {
  require_bits(bits);
  const std::size_t n = bits.size();
  if (cyclic_least_period(bits) < n) {
    throw std::domain_error("sequence is not aperiodic over its length");
  }
  // Wraparound windows are substrings of bits + bits[0..n-2] starting below n.
  std::string doubled(bits);
  doubled.append(bits.substr(0, n - 1));
  const SharedPrefix best = longest_shared_prefix(doubled, n);

  UwsResult result;
  result.mode = UwsMode::kCyclic;
  result.longest_repeated_factor_length = best.length;
  result.uws = best.length + 1;
  if (best.length > 0) {
    result.witness = doubled.substr(static_cast<std::size_t>(best.start),
                                    static_cast<std::size_t>(best.length));
  }
  return result;
}

UwsResult brute_force_uws(std::string_view bits, UwsMode mode) {
  require_bits(bits);
  const std::size_t n = bits.size();
  if (n > kBruteForceLengthGuard) {
    throw ResourceError("brute-force UWS is guarded to 2^16 bits");
  }
  if (mode == UwsMode::kCyclic && cyclic_least_period(bits) < n) {
    throw std::domain_error("sequence is not aperiodic over its length");
  }

  std::string doubled;
  if (mode == UwsMode::kCyclic) {
    doubled = std::string(bits) + std::string(bits.substr(0, n - 1));
  }
  auto window = [&](std::size_t start, std::size_t w) -> std::string_view {
    if (mode == UwsMode::kLinear) return bits.substr(start, w);
    return std::string_view(doubled).substr(start, w);
  };

  std::string prev_witness;  // least duplicated window of length w-1
  for (std::size_t w = 1; w <= n; ++w) {
    const std::size_t window_count = mode == UwsMode::kLinear ? n - w + 1 : n;
    std::map<std::string_view, int> counts;
    for (std::size_t i = 0; i < window_count; ++i) ++counts[window(i, w)];
    bool has_duplicate = false;
    for (const auto& [value, count] : counts) {
      if (count >= 2) {
        has_duplicate = true;
        prev_witness = std::string(value);  // std::map iterates in lexicographic order
        break;
      }
    }
    if (!has_duplicate) {
      UwsResult result;
      result.mode = mode;
      result.uws = static_cast<std::int64_t>(w);
      result.longest_repeated_factor_length = static_cast<std::int64_t>(w) - 1;
      if (w > 1) result.witness = prev_witness;
      return result;
    }
  }
  // Every width up to n had a duplicate; cannot happen for the linear mode
  // (the single window of length n is vacuously unique) nor for an aperiodic
  // cyclic input (its n rotations are distinct).
  throw std::logic_error("no duplicate-free window width found");
}

}  // namespace uwsnn
