#include "palwild/naive.hpp"

namespace palwild {
namespace {

// Shared scan core: extends from radius d0 with used0 consumed mismatches
// until boundary, exhausted budget, or `limit` total radius.
RadiusUsed scan(const WildcardString& s, std::size_t c, std::int64_t d0,
                std::int64_t used0, std::int64_t limit, std::int64_t k,
                std::uint64_t* compares) {
  const std::int64_t n = static_cast<std::int64_t>(s.size());
  const std::int64_t ci = static_cast<std::int64_t>(c);
  std::int64_t d = d0;
  std::int64_t used = used0;
  while (d < limit) {
    const std::int64_t l = ci - d - 1;
    const std::int64_t r = ci + d + 1;
    if (l < 1 || r > n) break;
    if (compares) ++*compares;
    if (sym_match(s.at(static_cast<std::size_t>(l)), s.at(static_cast<std::size_t>(r)))) {
      ++d;
    } else if (used < k) {
      ++used;
      ++d;
    } else {
      break;  // (k+1)-th mismatch: scan ends, budget not consumed
    }
  }
  return {d, used};
}

}  // namespace

RadiusUsed naive_pal_find(const WildcardString& s, std::size_t c, std::int64_t u,
                          std::int64_t k, std::uint64_t* compares) {
  return scan(s, c, 0, 0, u, k, compares);
}

ExtendResult naive_pal_extend(const WildcardString& s, std::size_t c, std::int64_t r0,
                              std::int64_t used0, std::int64_t k,
                              std::uint64_t* compares) {
  const RadiusUsed full = scan(s, c, r0, used0, kUnbounded, k, compares);
  return {full.radius - r0, full.used};
}

CenteredRadiusArray brute_all_maximal(const WildcardString& s, std::int64_t k,
                                      std::uint64_t* compares) {
  const WildcardString sp = interleave(s);
  const std::size_t n = s.size();
  std::vector<RadiusUsed> per_position(sp.size());  // 1-based positions at [p-1]
  for (std::size_t p = 2; p <= 2 * n; ++p) {
    per_position[p - 1] = naive_pal_find(sp, p, kUnbounded, k, compares);
  }
  return deinterleave_radii(per_position, n);
}

}  // namespace palwild
