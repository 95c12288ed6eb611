#include "palwild/precise.hpp"

#include <algorithm>
#include <cmath>

#include "palwild/convolve.hpp"
#include "palwild/naive.hpp"

namespace palwild {

BlockPlan BlockPlan::with_block_size(std::size_t N, std::int64_t u) {
  BlockPlan plan;
  plan.u = std::clamp<std::int64_t>(u, 1, static_cast<std::int64_t>(N));
  const std::size_t step = static_cast<std::size_t>(plan.u);
  for (std::size_t b = step; b < N; b += step) plan.boundaries.push_back(b);
  plan.boundaries.push_back(N);
  return plan;
}

std::int64_t default_block_size(std::size_t N, std::size_t sigma, std::int64_t k) {
  const double nd = static_cast<double>(N);
  const double lg = std::log2(nd + 1.0);
  double u;
  if (k == 0) {
    u = std::sqrt(nd * lg);
  } else {
    const double per_boundary = std::min(static_cast<double>(sigma) * lg, std::sqrt(nd * lg));
    const double cost_f = std::ceil(nd * per_boundary);
    u = std::sqrt(cost_f);
  }
  return std::clamp<std::int64_t>(std::llround(u), 1, static_cast<std::int64_t>(N));
}

RadiusLowerBound phase1_coarse(const WildcardString& sp, const BlockPlan& plan,
                               std::int64_t k) {
  RadiusLowerBound best(sp.size());  // zero-initialized: (0, 0) is realizable
  for (std::size_t b : plan.boundaries) {
    for (const PalHit& h : self_hits(sp, 1, b, k)) {
      RadiusUsed& cur = best[h.center - 1];
      if (h.radius > cur.radius || (h.radius == cur.radius && h.used < cur.used)) {
        cur = {h.radius, h.used};
      }
    }
  }
  return best;
}

CenteredRadiusArray precise_all_maximal(const WildcardString& s, std::int64_t k,
                                        std::optional<std::int64_t> u_override,
                                        PreciseStats* stats) {
  const WildcardString sp = interleave(s);
  const std::size_t n = s.size();
  const std::size_t N = sp.size();

  const std::int64_t u = std::clamp<std::int64_t>(
      u_override.value_or(default_block_size(N, sp.sigma(), k)), 1,
      static_cast<std::int64_t>(N));
  if (stats) stats->block_size = u;

  RadiusLowerBound bound = phase1_coarse(sp, BlockPlan::with_block_size(N, u), k);

  std::uint64_t* compares = stats ? &stats->phase2_compares : nullptr;
  std::vector<RadiusUsed> per_position(N);
  for (std::size_t p = 2; p <= 2 * n; ++p) {
    const RadiusUsed& lb = bound[p - 1];
    const ExtendResult ext = naive_pal_extend(sp, p, lb.radius, lb.used, k, compares);
    per_position[p - 1] = {lb.radius + ext.extension, ext.used};
  }
  return deinterleave_radii(per_position, n);
}

}  // namespace palwild
