#pragma once
// Brute-force palindrome scans: the obviously-correct subroutines that both
// anchor the fast algorithms (bounded find, resume-from-lower-bound extend)
// and serve as the ground-truth oracle for all of them.

#include <cstdint>
#include <limits>

#include "palwild/core.hpp"

namespace palwild {

// Pass as `u` for an unbounded scan.
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

// Grows a palindrome centered at position c of s outward, comparing pairs
// (c-d, c+d) for d = 1, 2, ...; a solid-solid unequal pair consumes one unit
// of the mismatch budget k. Stops at the string boundary, at the (k+1)-th
// mismatch (which is not consumed), or after u successful extensions —
// consumed mismatches count as successful. Returns the reached radius
// (= min(u, maximal radius)) and the budget consumed within it. If `compares`
// is given, it is incremented once per symbol-pair comparison.
RadiusUsed naive_pal_find(const WildcardString& s, std::size_t c, std::int64_t u,
                          std::int64_t k, std::uint64_t* compares = nullptr);

struct ExtendResult {
  std::int64_t extension = 0;  // radius gained beyond r0
  std::int64_t used = 0;       // total budget consumed (including used0)
  bool operator==(const ExtendResult&) const = default;
};

// Resumes the same scan from a known k-palindrome of radius r0 with used0
// consumed mismatches at center c. The caller guarantees (r0, used0) is
// valid; the scan is split-invariant: find-to-u then extend lands exactly on
// the unbounded find, for any split point.
ExtendResult naive_pal_extend(const WildcardString& s, std::size_t c, std::int64_t r0,
                              std::int64_t used0, std::int64_t k,
                              std::uint64_t* compares = nullptr);

// Ground truth: maximal palindrome length and mismatch count at every center
// of s, by unbounded scans over the interleaved string. O(n * (n + k)).
CenteredRadiusArray brute_all_maximal(const WildcardString& s, std::int64_t k,
                                      std::uint64_t* compares = nullptr);

}  // namespace palwild
