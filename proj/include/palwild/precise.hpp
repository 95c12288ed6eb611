#pragma once
// Exact maximal (k-)palindromes in linear space, two phases over the
// interleaved string: growing-prefix self-convolutions give every center a
// radius lower bound with additive error < u, then a bounded naive extension
// finishes each center. Block size u balances the two phases.

#include <cstdint>
#include <optional>
#include <vector>

#include "palwild/core.hpp"

namespace palwild {

// Prefix boundaries min(i*u, N) for i = 1..ceil(N/u): strictly increasing,
// final boundary N.
struct BlockPlan {
  std::int64_t u = 1;
  std::vector<std::size_t> boundaries;

  // u is clamped into [1, N].
  static BlockPlan with_block_size(std::size_t N, std::int64_t u);
};

// Phase-balancing block size. N is the interleaved length, sigma the number
// of distinct solid symbols of the interleaved string. k = 0 balances
// convolution cost N*log2(N+1) per boundary against extension cost N*u,
// giving sqrt(N*log2(N+1)) (rounded to nearest); k > 0 replaces the
// convolution cost with the counting-strategy cost
//   cost_f(N, sigma) = ceil(N * min(sigma*log2(N+1), sqrt(N*log2(N+1)))),
// giving sqrt(cost_f). Clamped into [1, N].
std::int64_t default_block_size(std::size_t N, std::size_t sigma, std::int64_t k);

// Per-center-of-S' lower bounds after phase 1: entry [p-1] holds a realizable
// (radius, used) pair at position p, with true_radius - radius < u.
using RadiusLowerBound = std::vector<RadiusUsed>;

// Phase 1: for each prefix boundary b of the plan, harvest self_hits(S', 1,
// b, k); keep per center the maximal radius (ties: smaller used). Entries
// start at (0, 0).
RadiusLowerBound phase1_coarse(const WildcardString& sp, const BlockPlan& plan,
                               std::int64_t k);

struct PreciseStats {
  std::int64_t block_size = 0;       // u actually used
  std::uint64_t phase2_compares = 0; // symbol comparisons during extension
};

// Full algorithm: interleave, phase 1, naive extension per center, convert to
// canonical per-center lengths. Output equals brute_all_maximal(s, k) for
// every block size; u_override (clamped to [1, N]) replaces the default.
CenteredRadiusArray precise_all_maximal(const WildcardString& s, std::int64_t k,
                                        std::optional<std::int64_t> u_override = std::nullopt,
                                        PreciseStats* stats = nullptr);

}  // namespace palwild
