#pragma once
// (1+epsilon)-approximation of all maximal (k-)palindrome radii: a bounded
// naive pass makes small radii exact, then anchored windows of geometrically
// growing size harvest edge-touching palindromic factors; anchors thin as
// windows grow, keeping total work near-linear per iteration.

#include <cstdint>
#include <utility>
#include <vector>

#include "palwild/core.hpp"

namespace palwild {

// Window size u carried as an exact dyadic rational numerator / 2^shift, so
// u_i = u0 * (1 + delta)^i is bit-reproducible across platforms (delta is an
// exact dyadic fraction of the IEEE epsilon input).
class DyadicWindow {
 public:
  explicit DyadicWindow(std::int64_t value);

  // u *= (1 + num / 2^q), exactly.
  void grow(std::uint64_t num, std::uint32_t q);

  bool at_least(std::int64_t x) const;  // u >= x

  // min(ceil(u), cap); cap > 0.
  std::int64_t ceil_clamped(std::int64_t cap) const;

 private:
  std::vector<std::uint64_t> limbs_;  // little-endian base-2^64 numerator
  std::uint64_t shift_ = 0;           // denominator exponent
};

// Validated parameters: delta = epsilon/4 decomposed as the exact dyadic
// num/2^q (num odd), and u0 = the smallest power of two >= 1/delta (capped at
// 2^62; a cap that large forces the exact naive path regardless of input
// size). Halving the paper-facing epsilon/2 once more pays for rounding the
// real-valued window size up to an integer.
struct ApproxParams {
  double epsilon = 0.0;
  std::uint64_t delta_num = 0;
  std::uint32_t delta_q = 0;
  std::int64_t u0 = 0;

  // Throws Error(BadEpsilon) unless 0 < epsilon <= 0.5.
  static ApproxParams from_epsilon(double epsilon);

  double delta() const;  // exact value of delta_num / 2^delta_q
};

// Sorted anchor positions over the interleaved string: initially
// {i * u0/2 : i = 1..M} with M = count 2N/u0 padded up to a power of two, so
// the rightmost anchor (position >= N) survives every thinning. Anchors past
// the string are skipped at window formation, never deleted.
class AnchorSet {
 public:
  AnchorSet() = default;
  // Adopts an explicit (sorted, ascending) position list.
  explicit AnchorSet(std::vector<std::size_t> positions)
      : pos_(std::move(positions)) {}

  static AnchorSet initial(std::size_t N, std::int64_t u0);

  const std::vector<std::size_t>& positions() const { return pos_; }
  bool empty() const { return pos_.empty(); }

  // Keeps the 1-based even-indexed anchors (every second element).
  void thin();

  // Anchors with position <= N.
  std::size_t in_string_count(std::size_t N) const;

 private:
  std::vector<std::size_t> pos_;
};

// Radius center c is guaranteed to reach inside the window of half-width u
// around anchor a, clipped to [1, N]:
//   min(c - max(1, a-u), min(N, a+u) - c),
// floored at zero (an anchor whose window misses c certifies nothing).
std::int64_t rad(std::size_t c, std::size_t a, std::int64_t u, std::size_t N);

// The rad-maximizing anchor for center c among the two neighbors of c in the
// set; ties prefer the smaller position. Throws Error(EmptyInput) on an
// empty set.
std::size_t anchor_of(std::size_t c, const AnchorSet& anchors, std::int64_t u,
                      std::size_t N);

struct ApproxStats {
  std::int64_t u0 = 0;
  std::uint64_t iterations = 0;  // window passes (initial naive pass excluded)
  std::uint64_t thinnings = 0;
  // Recorded right after each thinning: (ceil of current u, anchors <= N).
  std::vector<std::pair<std::int64_t, std::size_t>> anchors_after_thinning;
};

struct ApproxResult {
  // Canonical per-center lengths, parity-normalized (see below).
  CenteredRadiusArray lengths;
  // Pre-normalization radii per interleaved position p at [p-1]: the raw
  // lower bounds satisfying raw <= true and true <= (1+epsilon) * raw.
  std::vector<RadiusUsed> raw_radii;
  ApproxStats stats;
};

// Full algorithm. Output lengths L satisfy L <= L_true and
// L_true <= (1+epsilon)*L per center (parity widening only ever raises the
// lower bound, so the radius-level ratio carries over to lengths); centers
// whose true radius is < u0 are exact. Throws Error(BadEpsilon) for epsilon
// outside (0, 0.5].
ApproxResult approx_all_maximal_detailed(const WildcardString& s, double epsilon,
                                         std::int64_t k);

CenteredRadiusArray approx_all_maximal(const WildcardString& s, double epsilon,
                                       std::int64_t k);

}  // namespace palwild
