#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "palwild/core.hpp"

using namespace palwild;

TEST_CASE("symbol codes assigned by first occurrence") {
  WildcardString s = WildcardString::from_text("ab?ba", '?');
  CHECK(s.size() == 5);
  CHECK(s.at(1) == kFirstUserSymbol);      // a
  CHECK(s.at(2) == kFirstUserSymbol + 1);  // b
  CHECK(s.at(3) == kWildcard);
  CHECK(s.at(4) == kFirstUserSymbol + 1);
  CHECK(s.at(5) == kFirstUserSymbol);
  CHECK(s.sigma() == 2);
  CHECK(s.is_wildcard(3));
  CHECK(s.is_solid(1));
}

TEST_CASE("empty input rejected") {
  CHECK_THROWS_AS(WildcardString::from_text("", '?'), Error);
  try {
    WildcardString::from_text("", '?');
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }
}

TEST_CASE("map_n maps N and n to wildcards") {
  WildcardString s = WildcardString::from_text("aNnb", '?', true);
  CHECK(s.is_wildcard(2));
  CHECK(s.is_wildcard(3));
  CHECK(s.sigma() == 2);
  WildcardString t = WildcardString::from_text("aNnb", '?', false);
  CHECK(t.is_solid(2));
  CHECK(t.sigma() == 4);
}

TEST_CASE("fragment decomposition matches worked example") {
  // ?aab???a?a has fragments [1..1], [5..7], [9..9]; G = 3.
  WildcardString s = WildcardString::from_text("?aab???a?a", '?');
  auto frags = s.wildcard_fragments();
  REQUIRE(frags.size() == 3);
  CHECK(frags[0].start == 1);
  CHECK(frags[0].end == 1);
  CHECK(frags[1].start == 5);
  CHECK(frags[1].end == 7);
  CHECK(frags[2].start == 9);
  CHECK(frags[2].end == 9);
  CHECK(s.fragment_count() == 3);
  CHECK(s.wildcard_positions() == 5);
}

TEST_CASE("fragment decomposition edge cases") {
  CHECK(WildcardString::from_text("aaa", '?').fragment_count() == 0);
  WildcardString all = WildcardString::from_text("???", '?');
  auto frags = all.wildcard_fragments();
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].start == 1);
  CHECK(frags[0].end == 3);
  CHECK(all.sigma() == 0);
  CHECK(all.max_symbol() == kWildcard);
}

TEST_CASE("fragment round trip and separation property") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + rng() % 40;
    WildcardString s = oracles::random_ws(rng, n, 2, 0.4);
    auto frags = s.wildcard_fragments();
    std::vector<bool> covered(n + 1, false);
    for (std::size_t fi = 0; fi < frags.size(); ++fi) {
      const auto& f = frags[fi];
      REQUIRE(f.start >= 1);
      REQUIRE(f.end <= n);
      REQUIRE(f.start <= f.end);
      for (std::size_t i = f.start; i <= f.end; ++i) {
        CHECK(s.is_wildcard(i));
        covered[i] = true;
      }
      // Maximality: neighbors are solid (or boundary).
      if (f.start > 1) CHECK(s.is_solid(f.start - 1));
      if (f.end < n) CHECK(s.is_solid(f.end + 1));
      // Separation from the previous fragment.
      if (fi > 0) CHECK(frags[fi - 1].end + 1 < f.start);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(covered[i] == s.is_wildcard(i));
    }
  }
}

TEST_CASE("sym_match truth table") {
  const Symbol a = kFirstUserSymbol, b = kFirstUserSymbol + 1;
  CHECK(sym_match(kWildcard, a));
  CHECK(sym_match(a, kWildcard));
  CHECK(sym_match(kWildcard, kWildcard));
  CHECK(sym_match(kWildcard, kSentinel));
  CHECK(sym_match(a, a));
  CHECK_FALSE(sym_match(a, b));
  CHECK_FALSE(sym_match(a, kSentinel));
  CHECK(sym_match(kSentinel, kSentinel));
}

TEST_CASE("mismatch count worked examples") {
  auto H = [](const std::string& x, const std::string& y) {
    return mismatch_count(oracles::ws_shared(x), oracles::ws_shared(y));
  };
  CHECK(H("abcdcbx", "xbcdcba") == 2);
  CHECK(H("b?", "ba") == 0);
  CHECK(H("ab", "ba") == 2);
  CHECK_THROWS_AS(H("ab", "abc"), Error);
}

TEST_CASE("mismatch count symmetry and self-zero") {
  std::mt19937_64 rng(102);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng() % 30;
    WildcardString s = oracles::random_ws(rng, n, 3, 0.3);
    WildcardString t = oracles::random_ws(rng, n, 3, 0.3);
    CHECK(mismatch_count(s, t) == mismatch_count(t, s));
    CHECK(mismatch_count(s, s) == 0);
  }
}

TEST_CASE("palindromic mismatch count worked examples") {
  CHECK(pal_mismatch_count(WildcardString::from_text("abcdcbx", '?')) == 1);
  CHECK(pal_mismatch_count(WildcardString::from_text("aba", '?')) == 0);
  CHECK(pal_mismatch_count(WildcardString::from_text("ab", '?')) == 1);
}

TEST_CASE("interleave layout") {
  WildcardString ab = WildcardString::from_text("ab", '?');
  WildcardString t = interleave(ab);
  REQUIRE(t.size() == 5);
  CHECK(t.at(1) == kSentinel);
  CHECK(t.at(2) == ab.at(1));
  CHECK(t.at(3) == kSentinel);
  CHECK(t.at(4) == ab.at(2));
  CHECK(t.at(5) == kSentinel);

  WildcardString a = interleave(WildcardString::from_text("a", '?'));
  REQUIRE(a.size() == 3);
  CHECK(a.at(1) == kSentinel);
  CHECK(a.at(3) == kSentinel);

  // "?b" -> $?$b$ and the fragment of the interleaved string is [2..2].
  WildcardString qb = interleave(WildcardString::from_text("?b", '?'));
  auto frags = qb.wildcard_fragments();
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].start == 2);
  CHECK(frags[0].end == 2);
}

TEST_CASE("deinterleave radii worked examples") {
  // S="aba": the interleaved string has radius 3 at position 4 -> t=3, length 3.
  {
    std::vector<RadiusUsed> r(7);
    r[3] = RadiusUsed{3, 0};  // p=4
    r[1] = RadiusUsed{1, 0};  // p=2 (radius 1: the single char)
    r[5] = RadiusUsed{1, 0};  // p=6
    CenteredRadiusArray arr = deinterleave_radii(r, 3);
    CHECK(arr.at_center(3).length == 3);
    CHECK(arr.at_center(1).length == 1);
    CHECK(arr.at_center(2).length == 0);
  }
  // S="aa": radius 2 at p=3 -> t=2, length 2.
  {
    std::vector<RadiusUsed> r(5);
    r[1] = RadiusUsed{1, 0};
    r[2] = RadiusUsed{2, 0};
    r[3] = RadiusUsed{1, 0};
    CenteredRadiusArray arr = deinterleave_radii(r, 2);
    CHECK(arr.at_center(2).length == 2);
  }
  // S="ab": radius 0 at p=3 -> t=2, length 0.
  {
    std::vector<RadiusUsed> r(5);
    r[1] = RadiusUsed{1, 0};
    r[2] = RadiusUsed{0, 0};
    r[3] = RadiusUsed{1, 0};
    CenteredRadiusArray arr = deinterleave_radii(r, 2);
    CHECK(arr.at_center(2).length == 0);
  }
}

TEST_CASE("deinterleave rejects parity violations") {
  std::vector<RadiusUsed> r(5);
  r[1] = RadiusUsed{2, 0};  // p=2 is a character position; radius must be odd
  r[2] = RadiusUsed{0, 0};
  r[3] = RadiusUsed{1, 0};
  CHECK_THROWS_AS(deinterleave_radii(r, 2), Error);
}

TEST_CASE("center domain arithmetic") {
  CHECK(center_is_character(1));
  CHECK_FALSE(center_is_character(2));
  // length-L factor centered at t: start+end-1 = t and end-start+1 = L.
  std::mt19937_64 rng(103);
  for (int it = 0; it < 200; ++it) {
    const std::size_t t = 1 + rng() % 100;
    std::int64_t L = static_cast<std::int64_t>(rng() % 20);
    if ((L % 2) != static_cast<std::int64_t>(t % 2)) ++L;
    if (L == 0) continue;
    const std::size_t st = factor_start(t, L);
    const std::size_t en = factor_end(t, L);
    CHECK(static_cast<std::int64_t>(en - st + 1) == L);
    CHECK(st + en - 1 == t);
  }
}

TEST_CASE("reversed copies symbols") {
  WildcardString s = WildcardString::from_text("ab?c", '?');
  WildcardString r = s.reversed();
  REQUIRE(r.size() == 4);
  CHECK(r.at(1) == s.at(4));
  CHECK(r.at(2) == s.at(3));
  CHECK(r.at(3) == s.at(2));
  CHECK(r.at(4) == s.at(1));
}

TEST_CASE("centered radius array bounds") {
  CenteredRadiusArray arr(3);
  CHECK(arr.centers() == 5);
  CHECK_THROWS_AS(arr.at_center(0), Error);
  CHECK_THROWS_AS(arr.at_center(6), Error);
}

TEST_CASE("thread cap env parsing") {
  // 0 / unset mean "implementation default", which is single-threaded.
  ::setenv("PALWILD_THREADS", "3", 1);
  CHECK(thread_cap() == 3);
  ::setenv("PALWILD_THREADS", "0", 1);
  CHECK(thread_cap() == 1);
  ::unsetenv("PALWILD_THREADS");
  CHECK(thread_cap() == 1);
}
