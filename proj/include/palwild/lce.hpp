#pragma once
// Longest-common-extension machinery: a suffix-array/LCP/RMQ index over
// s · SEP · reverse(s), wildcard-fragment jumps, and mismatch kangaroo jumps.
// Together these answer "how far does the palindrome at this center reach"
// in O(fragments crossed + mismatches) index queries per center.

#include <cstdint>
#include <vector>

#include "palwild/core.hpp"

namespace palwild {

// Query-cost instrumentation, accumulated across calls when passed in.
struct LceStats {
  std::uint64_t solid_queries = 0;     // RMQ-backed LCE lookups
  std::uint64_t fragments_crossed = 0; // wildcard fragments jumped over
};

// Constant-time solid LCE queries over D = s · SEP · reverse(s), where SEP is
// a unique solid separator and wildcards keep their own regular code (so
// aligned wildcard runs extend like ordinary equal symbols). Built with a
// prefix-doubling suffix array, Kasai's LCP, and a sparse-table RMQ:
// O(|D| log |D|) construction, O(1) queries.
class LceIndex {
 public:
  explicit LceIndex(const WildcardString& s);

  std::size_t n() const { return n_; }            // |s|
  std::size_t d_size() const { return d_.size(); }  // |D| = 2|s| + 1

  const WildcardString& str() const { return s_; }

  // Raw LCE of D[i..] and D[j..], 1-based. Symmetric; lce_d(i, i) = |D|-i+1.
  std::size_t lce_d(std::size_t i, std::size_t j) const;

  // Solid LCE between s[i..] and reverse(s)[j..] (both 1-based virtual
  // coordinates). The unique separator and the end of D bound the result by
  // the two remaining lengths automatically.
  std::size_t lce_fwd_rev(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_ = 0;
  WildcardString s_;
  std::vector<Symbol> d_;
  std::vector<std::uint32_t> rank_;             // rank_[i]: rank of suffix i+1
  std::vector<std::uint32_t> lcp_;              // lcp_[r]: LCP of ranks r, r-1
  std::vector<std::vector<std::uint32_t>> st_;  // sparse table over lcp_
  std::vector<std::uint32_t> log2_;

  std::uint32_t range_min(std::size_t lo, std::size_t hi) const;
};

// Per-position bounds of the wildcard fragment covering each position of s
// (a solid position is its own one-element "fragment").
class FragmentJumper {
 public:
  explicit FragmentJumper(const WildcardString& s);

  // 1-based; last / first position of the covering wildcard fragment.
  std::size_t end_of(std::size_t i) const { return end_[i - 1]; }
  std::size_t start_of(std::size_t i) const { return start_[i - 1]; }

 private:
  std::vector<std::size_t> start_, end_;
};

// Longest extension of s[i..] against reverse(s)[j..] under wildcard
// matching: alternates solid LCE queries with jumps to the end of whichever
// wildcard fragment reaches further. Performs at most
// 2 * (fragments crossed) + 1 solid queries.
std::int64_t lce_w(const LceIndex& idx, const FragmentJumper& frag, std::size_t i,
                   std::size_t j, LceStats* stats = nullptr);

// lce_w repeated across up to k solid-solid mismatches (each consumed
// mismatch extends the match by one and costs one budget unit). Returns the
// total extension and the budget consumed.
RadiusUsed lce_k(const LceIndex& idx, const FragmentJumper& frag, std::size_t i,
                 std::size_t j, std::int64_t k, LceStats* stats = nullptr);

// Maximal palindrome length and mismatch count at every center of s, via
// lce_k at the mirrored coordinates of the interleaved string. Output is
// identical to brute_all_maximal(s, k).
CenteredRadiusArray all_maximal_lce(const WildcardString& s, std::int64_t k,
                                    LceStats* stats = nullptr);

}  // namespace palwild
