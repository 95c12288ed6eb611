#include "palwild/lce.hpp"

#include <algorithm>
#include <numeric>

namespace palwild {
namespace {

// Suffix array by prefix doubling with counting-sort passes: O(m log m).
// `text` is 0-based here; returns sa with sa[r] = start of rank-r suffix.
std::vector<std::uint32_t> build_suffix_array(const std::vector<Symbol>& text) {
  const std::size_t m = text.size();
  std::vector<std::uint32_t> sa(m), rank(m), tmp(m);
  std::iota(sa.begin(), sa.end(), 0);

  // Initial ranks: dense codes of the symbols.
  {
    std::vector<Symbol> sorted(text);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < m; ++i) {
      rank[i] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), text[i]) - sorted.begin());
    }
  }

  std::vector<std::uint32_t> count;
  for (std::size_t h = 1;; h *= 2) {
    // Sort by (rank[i], rank[i+h]) using two counting-sort passes.
    const auto key2 = [&](std::uint32_t i) -> std::uint32_t {
      return i + h < m ? rank[i + h] + 1 : 0;
    };
    const std::size_t buckets = m + 2;
    count.assign(buckets, 0);
    for (std::size_t i = 0; i < m; ++i) ++count[key2(static_cast<std::uint32_t>(i))];
    for (std::size_t i = 1; i < buckets; ++i) count[i] += count[i - 1];
    for (std::size_t i = m; i-- > 0;) tmp[--count[key2(sa[i])]] = sa[i];

    count.assign(buckets, 0);
    for (std::size_t i = 0; i < m; ++i) ++count[rank[i]];
    for (std::size_t i = 1; i < buckets; ++i) count[i] += count[i - 1];
    for (std::size_t i = m; i-- > 0;) sa[--count[rank[tmp[i]]]] = tmp[i];

    // Re-rank.
    tmp[sa[0]] = 0;
    bool all_distinct = true;
    for (std::size_t r = 1; r < m; ++r) {
      const std::uint32_t a = sa[r - 1], b = sa[r];
      const bool equal = rank[a] == rank[b] && key2(a) == key2(b);
      tmp[b] = tmp[a] + (equal ? 0 : 1);
      all_distinct = all_distinct && !equal;
    }
    rank.swap(tmp);
    if (all_distinct || rank[sa[m - 1]] == m - 1) break;
  }
  return sa;
}

}  // namespace

LceIndex::LceIndex(const WildcardString& s) : n_(s.size()), s_(s) {
  const Symbol sep = s.max_symbol() + 1;
  d_.reserve(2 * n_ + 1);
  d_.insert(d_.end(), s.symbols().begin(), s.symbols().end());
  d_.push_back(sep);
  d_.insert(d_.end(), s.symbols().rbegin(), s.symbols().rend());

  const std::size_t m = d_.size();
  const std::vector<std::uint32_t> sa = build_suffix_array(d_);
  rank_.assign(m, 0);
  for (std::size_t r = 0; r < m; ++r) rank_[sa[r]] = static_cast<std::uint32_t>(r);

  // Kasai's LCP: lcp_[r] = LCP(suffix at rank r, suffix at rank r-1).
  lcp_.assign(m, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rank_[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank_[i] - 1];
    if (h > 0) --h;
    while (i + h < m && j + h < m && d_[i + h] == d_[j + h]) ++h;
    lcp_[rank_[i]] = static_cast<std::uint32_t>(h);
  }

  log2_.assign(m + 1, 0);
  for (std::size_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  const std::size_t levels = log2_[m] + 1;
  st_.assign(levels, {});
  st_[0] = lcp_;
  for (std::size_t k = 1; k < levels; ++k) {
    const std::size_t span = std::size_t{1} << k;
    st_[k].resize(m + 1 - span);
    for (std::size_t i = 0; i + span <= m; ++i) {
      st_[k][i] = std::min(st_[k - 1][i], st_[k - 1][i + span / 2]);
    }
  }
}

std::uint32_t LceIndex::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t k = log2_[hi - lo + 1];
  return std::min(st_[k][lo], st_[k][hi + 1 - (std::size_t{1} << k)]);
}

std::size_t LceIndex::lce_d(std::size_t i, std::size_t j) const {
  const std::size_t m = d_.size();
  if (i == j) return m - i + 1;
  std::size_t a = rank_[i - 1], b = rank_[j - 1];
  if (a > b) std::swap(a, b);
  return range_min(a + 1, b);
}

std::size_t LceIndex::lce_fwd_rev(std::size_t i, std::size_t j) const {
  // reverse(s)[j..] lives at D position (n + 1) + j; the separator and the
  // end of D stop the match at the two remaining lengths.
  return lce_d(i, n_ + 1 + j);
}

FragmentJumper::FragmentJumper(const WildcardString& s) {
  const std::size_t n = s.size();
  start_.resize(n);
  end_.resize(n);
  std::size_t i = 1;
  while (i <= n) {
    if (!s.is_wildcard(i)) {
      start_[i - 1] = end_[i - 1] = i;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 <= n && s.is_wildcard(j + 1)) ++j;
    for (std::size_t p = i; p <= j; ++p) {
      start_[p - 1] = i;
      end_[p - 1] = j;
    }
    i = j + 1;
  }
}

std::int64_t lce_w(const LceIndex& idx, const FragmentJumper& frag, std::size_t i,
                   std::size_t j, LceStats* stats) {
  const std::size_t n = idx.n();
  if (i > n || j > n) return 0;
  const WildcardString& s = idx.str();
  const std::size_t limit = std::min(n - i + 1, n - j + 1);
  std::size_t d = 0;
  while (d < limit) {
    d += idx.lce_fwd_rev(i + d, j + d);
    if (stats) ++stats->solid_queries;
    if (d >= limit) break;
    // Stopped strictly inside both ranges on unequal codes: a wildcard on at
    // least one side continues the match, a solid-solid pair is a mismatch.
    const std::size_t pf = i + d;          // position in s
    const std::size_t qr = n - (j + d) + 1;  // reverse-side position, in s coordinates
    const bool wf = s.is_wildcard(pf);
    const bool wr = s.is_wildcard(qr);
    if (!wf && !wr) break;
    std::size_t adv = 0;
    if (wf) {
      adv = std::max(adv, frag.end_of(pf) - pf + 1);
      if (stats) ++stats->fragments_crossed;
    }
    if (wr) {
      adv = std::max(adv, qr - frag.start_of(qr) + 1);
      if (stats) ++stats->fragments_crossed;
    }
    d += std::min(adv, limit - d);
  }
  return static_cast<std::int64_t>(d);
}

RadiusUsed lce_k(const LceIndex& idx, const FragmentJumper& frag, std::size_t i,
                 std::size_t j, std::int64_t k, LceStats* stats) {
  const std::size_t n = idx.n();
  if (i > n || j > n) return {0, 0};
  const std::size_t limit = std::min(n - i + 1, n - j + 1);
  std::size_t d = 0;
  std::int64_t used = 0;
  while (true) {
    d += static_cast<std::size_t>(lce_w(idx, frag, i + d, j + d, stats));
    if (d >= limit || used == k) break;
    ++used;  // kangaroo over the solid-solid mismatch at offset d
    ++d;
  }
  return {static_cast<std::int64_t>(d), used};
}

CenteredRadiusArray all_maximal_lce(const WildcardString& s, std::int64_t k,
                                    LceStats* stats) {
  const WildcardString sp = interleave(s);
  const std::size_t n = s.size();
  const std::size_t N = sp.size();
  const LceIndex idx(sp);
  const FragmentJumper frag(sp);
  std::vector<RadiusUsed> per_position(N);
  for (std::size_t c = 2; c <= 2 * n; ++c) {
    per_position[c - 1] = lce_k(idx, frag, c + 1, N - c + 2, k, stats);
  }
  return deinterleave_radii(per_position, n);
}

}  // namespace palwild
