#pragma once
// Mismatch-counting and match-flag convolutions for strings with wildcards,
// plus the clamped k-mismatch variant and palindromic self-alignment hits.
//
// Alignment layout (arrays of length n+m-1 for |text| = n, |pattern| = m,
// entries 1-based):
//   1 <= i < m : prefix overhang  — count over text[1..i] vs pattern[m-i+1..m]
//   m <= i <= n: full overlap     — count over text[i-m+1..i] vs pattern
//   n < i      : suffix overhang  — count over text[i-m+1..n] vs pattern[1..n-i+m]
// Only solid-solid unequal pairs count; wildcards match everything.
//
// All counting is bit-exact: transform-backed paths verify their rounding or
// use a modular transform, and every strategy returns identical integers.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "palwild/core.hpp"

namespace palwild {

// ---------------------------------------------------------------------------
// Strategy selection
// ---------------------------------------------------------------------------

struct ConvStrategy {
  enum class Variant {
    Naive,           // definitional O(nm) double loop
    PerCharacter,    // one indicator convolution pair per distinct solid symbol
    FrequencySplit,  // frequent symbols by convolution, rare by pair enumeration
  };
  Variant variant = Variant::PerCharacter;
  // Multiplier on the frequent/rare occurrence threshold sqrt(m / log2(m+1)).
  double threshold_scale = 1.0;
};

// Cost-based default: Naive for tiny inputs, PerCharacter while
// sigma * log2(len+1) <= sqrt(len * log2(len+1)), FrequencySplit beyond.
ConvStrategy pick_strategy(std::size_t len, std::size_t sigma);

// ---------------------------------------------------------------------------
// Convolutions
// ---------------------------------------------------------------------------

// Exact integer convolution: out[t] = sum_i a[i]*b[t-i], size |a|+|b|-1.
// Throws Error(PrecisionBound) if exactness cannot be guaranteed.
std::vector<std::int64_t> conv_int(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b);

// Aligned mismatch counts in the layout above.
std::vector<std::int64_t> cconv(const WildcardString& text, const WildcardString& pattern,
                                const ConvStrategy& strategy);
std::vector<std::int64_t> cconv(const WildcardString& text, const WildcardString& pattern);

// Match flags: 1 exactly where the aligned mismatch count is zero.
std::vector<std::uint8_t> mconv(const WildcardString& text, const WildcardString& pattern);

// ---------------------------------------------------------------------------
// k-mismatch convolution (solid strings of equal length)
// ---------------------------------------------------------------------------

// Clamped mismatch counts min(count, k+1); same alignments as cconv.
std::vector<std::int64_t> kconv_clamp(const WildcardString& s, const WildcardString& t,
                                      std::int64_t k);

// For each alignment of `pattern` fully inside `text` (1-based alignment a,
// window text[a .. a+m-1]), the 1-based position within the pattern of the
// k-th mismatch, or nullopt when fewer than k exist. Direct O(nm) reference.
std::vector<std::optional<std::size_t>> brute_pos_k(const WildcardString& text,
                                                    const WildcardString& pattern,
                                                    std::int64_t k);

using PosOracle = std::function<std::vector<std::optional<std::size_t>>(
    const WildcardString&, const WildcardString&, std::int64_t)>;

// Computes kconv via a mismatch-position oracle and the sentinel-padding
// reduction: the text half is padded with fresh sentinels so overhanging
// alignments become full ones, both sides gain k+1 mutually distinct fresh
// symbols so every alignment has at least k+1 mismatches, and each clamped
// count is reconstructed from the reported (k+1)-th mismatch position.
// Requires solid inputs; throws Error(SolidOnly) otherwise.
std::vector<std::int64_t> kconv_via_pos(const WildcardString& s, const WildcardString& t,
                                        std::int64_t k, const PosOracle& oracle = brute_pos_k);

// ---------------------------------------------------------------------------
// Palindromic self-alignment hits
// ---------------------------------------------------------------------------

// A certified palindromic factor [center-radius .. center+radius] (positions
// in the queried string) containing `used` <= k mismatching pairs.
struct PalHit {
  std::size_t center = 0;
  std::int64_t radius = 0;
  std::int64_t used = 0;
  bool operator==(const PalHit&) const = default;
};

// Aligns the window W = s[lo..hi] against its own reverse and reports every
// ODD-length palindromic prefix and suffix of W as a hit (centers are
// absolute positions of s). Even-length entries are computed by the
// convolution but discarded: on interleaved strings their mixed-parity pairs
// can spuriously match wildcards against boundary sentinels, and every real
// palindrome there is odd-length. For k > 0 a prefix/suffix qualifies while
// its aligned mismatch count is at most 2k (i.e. at most k mismatching
// pairs); `used` is count/2.
std::vector<PalHit> self_hits(const WildcardString& s, std::size_t lo, std::size_t hi,
                              std::int64_t k);
std::vector<PalHit> self_hits(const WildcardString& s, std::size_t lo, std::size_t hi,
                              std::int64_t k, const ConvStrategy& strategy);

}  // namespace palwild
