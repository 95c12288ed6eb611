#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "palwild/convolve.hpp"

using namespace palwild;

namespace {

const ConvStrategy kNaive{ConvStrategy::Variant::Naive, 1.0};
const ConvStrategy kPerChar{ConvStrategy::Variant::PerCharacter, 1.0};
const ConvStrategy kFreqSplit{ConvStrategy::Variant::FrequencySplit, 1.0};

std::vector<std::int64_t> v64(std::initializer_list<std::int64_t> xs) {
  return std::vector<std::int64_t>(xs);
}

}  // namespace

TEST_CASE("conv_int worked examples") {
  CHECK(conv_int(v64({1, 1}), v64({1, 1})) == v64({1, 2, 1}));
  CHECK(conv_int(v64({0}), v64({5})) == v64({0}));
  CHECK(conv_int(v64({1, 2, 3}), v64({4, 5})) == v64({4, 13, 22, 15}));
}

TEST_CASE("conv_int handles negatives and larger sizes exactly") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 12; ++it) {
    const std::size_t na = 1 + rng() % 300;
    const std::size_t nb = 1 + rng() % 300;
    std::vector<std::int64_t> a(na), b(nb);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 20001) - 10000;
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % 20001) - 10000;
    std::vector<std::int64_t> want(na + nb - 1, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) want[i + j] += a[i] * b[j];
    CHECK(conv_int(a, b) == want);
  }
}

TEST_CASE("cconv and mconv worked examples") {
  // T=ab?, P=ba: C=[0,2,0,0], M=[1,0,1,1].
  WildcardString T = oracles::ws_shared("ab?");
  WildcardString P = oracles::ws_shared("ba");
  CHECK(cconv(T, P) == v64({0, 2, 0, 0}));
  CHECK(mconv(T, P) == std::vector<std::uint8_t>({1, 0, 1, 1}));

  WildcardString a4 = oracles::ws_shared("aaaa");
  CHECK(cconv(a4, a4) == v64({0, 0, 0, 0, 0, 0, 0}));

  WildcardString ab = oracles::ws_shared("ab");
  CHECK(cconv(ab, ab) == v64({1, 0, 1}));

  WildcardString a1 = oracles::ws_shared("a");
  CHECK(mconv(a1, a1) == std::vector<std::uint8_t>({1}));
  CHECK(mconv(ab, oracles::ws_shared("ba")) == std::vector<std::uint8_t>({1, 0, 1}));
}

TEST_CASE("every strategy matches the definitional oracle") {
  std::mt19937_64 rng(11);
  const int sigmas[] = {1, 2, 4, 26};
  const double densities[] = {0.0, 0.2, 0.5};
  for (int it = 0; it < 120; ++it) {
    const int sigma = sigmas[it % 4];
    const double density = densities[(it / 4) % 3];
    const std::size_t n = 1 + rng() % 96;
    const std::size_t m = 1 + rng() % n;
    WildcardString T = oracles::random_ws(rng, n, sigma, density);
    WildcardString P = oracles::random_ws(rng, m, sigma, density);
    const auto want = oracles::cconv_def(T, P);
    CHECK(cconv(T, P, kNaive) == want);
    CHECK(cconv(T, P, kPerChar) == want);
    CHECK(cconv(T, P, kFreqSplit) == want);
    // Exotic thresholds force both the all-frequent and all-rare paths.
    CHECK(cconv(T, P, ConvStrategy{ConvStrategy::Variant::FrequencySplit, 0.0}) == want);
    CHECK(cconv(T, P, ConvStrategy{ConvStrategy::Variant::FrequencySplit, 1e9}) == want);
    // mconv flags must be the zero-test of the counts.
    const auto flags = mconv(T, P);
    REQUIRE(flags.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(static_cast<bool>(flags[i]) == (want[i] == 0));
    }
  }
}

TEST_CASE("count array bounds invariant") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng() % 60;
    const std::size_t m = 1 + rng() % n;
    WildcardString T = oracles::random_ws(rng, n, 2, 0.2);
    WildcardString P = oracles::random_ws(rng, m, 2, 0.2);
    const auto c = cconv(T, P);
    REQUIRE(c.size() == n + m - 1);
    for (std::size_t i = 1; i <= c.size(); ++i) {
      CHECK(c[i - 1] >= 0);
      CHECK(c[i - 1] <= static_cast<std::int64_t>(std::min({i, m, n + m - i})));
    }
  }
}

TEST_CASE("strategy auto-selection") {
  CHECK(pick_strategy(1, 1).variant == ConvStrategy::Variant::Naive);
  CHECK(pick_strategy(64, 2).variant == ConvStrategy::Variant::Naive);
  CHECK(pick_strategy(1024, 2).variant == ConvStrategy::Variant::PerCharacter);
  CHECK(pick_strategy(1024, 1024).variant == ConvStrategy::Variant::FrequencySplit);
}

TEST_CASE("kconv_clamp worked examples") {
  WildcardString ab = oracles::ws_shared("ab");
  CHECK(kconv_clamp(ab, ab, 0) == v64({1, 0, 1}));
  // Large k: clamp inactive, equals cconv.
  WildcardString T = oracles::ws_shared("abcabc");
  WildcardString P = oracles::ws_shared("cbacba");
  CHECK(kconv_clamp(T, P, 100) == cconv(T, P));
  // Fig. 1 strings with k=1: clamp at 2 inactive.
  CHECK(kconv_clamp(oracles::ws_shared("ab?"), oracles::ws_shared("ba"), 1) ==
        v64({0, 2, 0, 0}));
}

TEST_CASE("brute_pos_k reports the position of the k-th mismatch") {
  // text=abab, pattern=aa: alignments at text offsets 1..3.
  WildcardString T = oracles::ws_shared("abab");
  WildcardString P = oracles::ws_shared("aa");
  // offset 1: ab vs aa -> first mismatch at pattern position 2.
  // offset 2: ba vs aa -> first mismatch at pattern position 1.
  // offset 3: ab vs aa -> first mismatch at pattern position 2.
  auto p1 = brute_pos_k(T, P, 1);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0] == std::optional<std::size_t>(2));
  CHECK(p1[1] == std::optional<std::size_t>(1));
  CHECK(p1[2] == std::optional<std::size_t>(2));
  auto p2 = brute_pos_k(T, P, 2);
  for (const auto& v : p2) CHECK_FALSE(v.has_value());
}

TEST_CASE("kconv_via_pos worked examples") {
  WildcardString ab = oracles::ws_shared("ab");
  CHECK(kconv_via_pos(ab, ab, 0) == v64({1, 0, 1}));
  CHECK(kconv_via_pos(ab, ab, 0) == kconv_clamp(ab, ab, 0));

  WildcardString aa = oracles::ws_shared("aa");
  WildcardString bb = oracles::ws_shared("bb");
  CHECK(kconv_via_pos(aa, bb, 1) == v64({1, 2, 1}));

  WildcardString a1 = oracles::ws_shared("a");
  CHECK(kconv_via_pos(a1, a1, 5) == v64({0}));
}

TEST_CASE("kconv_via_pos rejects wildcards and unequal lengths") {
  WildcardString w = oracles::ws_shared("a?");
  WildcardString s = oracles::ws_shared("ab");
  CHECK_THROWS_AS(kconv_via_pos(w, s, 1), Error);
  CHECK_THROWS_AS(kconv_via_pos(s, oracles::ws_shared("abc"), 1), Error);
  try {
    kconv_via_pos(w, s, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SolidOnly);
  }
}

TEST_CASE("kconv_via_pos equals kconv_clamp exhaustively on small binary strings") {
  // Exhaustive over binary S,T with |S| = |T| <= 5, k in {0,1,2}.
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t sa = 0; sa < total; ++sa) {
      for (std::size_t tb = 0; tb < total; ++tb) {
        std::string s, t;
        for (std::size_t i = 0; i < n; ++i) {
          s.push_back((sa >> i) & 1 ? 'b' : 'a');
          t.push_back((tb >> i) & 1 ? 'b' : 'a');
        }
        WildcardString S = oracles::ws_shared(s);
        WildcardString T = oracles::ws_shared(t);
        for (std::int64_t k : {0, 1, 2}) {
          CHECK(kconv_via_pos(S, T, k) == kconv_clamp(S, T, k));
        }
      }
    }
  }
}

TEST_CASE("kconv_via_pos equals kconv_clamp on random larger solid strings") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng() % 64;
    WildcardString S = oracles::random_ws(rng, n, 2, 0.0);
    WildcardString T = oracles::random_ws(rng, n, 2, 0.0);
    for (std::int64_t k : {0, 1, 2}) {
      CHECK(kconv_via_pos(S, T, k) == kconv_clamp(S, T, k));
    }
  }
}

TEST_CASE("self_hits worked examples") {
  // Window b?b at [1..3], k=0: hits at centers 1,2,3 with radii 0,1,0.
  WildcardString s = oracles::ws_shared("b?baac?cec?cc");
  auto hits = self_hits(s, 1, 3, 0);
  CHECK(std::find(hits.begin(), hits.end(), PalHit{2, 1, 0}) != hits.end());
  CHECK(std::find(hits.begin(), hits.end(), PalHit{3, 0, 0}) != hits.end());
  CHECK(std::find(hits.begin(), hits.end(), PalHit{1, 0, 0}) != hits.end());

  // Single-character window: one hit, radius 0.
  auto one = self_hits(s, 4, 4, 3);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == PalHit{4, 0, 0});

  // W=abc with k=1: H(abc, cba)=2, so the full window is a 1-mismatch hit.
  WildcardString abc = oracles::ws_shared("abc");
  auto h3 = self_hits(abc, 1, 3, 1);
  CHECK(std::find(h3.begin(), h3.end(), PalHit{2, 1, 1}) != h3.end());
}

TEST_CASE("self_hits equals direct window enumeration") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 1 + rng() % 80;
    const int sigma = 1 + static_cast<int>(rng() % 3);
    WildcardString s = oracles::random_ws(rng, n, sigma, 0.3);
    const std::size_t lo = 1 + rng() % n;
    const std::size_t hi = lo + rng() % (n - lo + 1);
    for (std::int64_t k : {0, 1, 2}) {
      for (const ConvStrategy& st : {kNaive, kPerChar, kFreqSplit}) {
        auto hits = self_hits(s, lo, hi, k, st);
        // Oracle: every odd-length prefix and suffix of the window whose
        // palindromic mismatch count is within budget, exactly once.
        std::vector<PalHit> want;
        const std::size_t L = hi - lo + 1;
        auto factor = [&](std::size_t a, std::size_t b) {
          std::vector<Symbol> syms;
          for (std::size_t i = a; i <= b; ++i) syms.push_back(s.at(i));
          return WildcardString::from_symbols(std::move(syms));
        };
        for (std::size_t e = 1; e <= L; e += 2) {
          const std::int64_t mm = pal_mismatch_count(factor(lo, lo + e - 1));
          if (mm <= k) {
            want.push_back(PalHit{lo + (e - 1) / 2,
                                  static_cast<std::int64_t>((e - 1) / 2),
                                  k == 0 ? 0 : mm});
          }
        }
        for (std::size_t e = 1; e < L; e += 2) {  // suffixes W[L-e+1..L], e<L
          const std::int64_t mm = pal_mismatch_count(factor(hi - e + 1, hi));
          if (mm <= k) {
            want.push_back(PalHit{hi - (e - 1) / 2,
                                  static_cast<std::int64_t>((e - 1) / 2),
                                  k == 0 ? 0 : mm});
          }
        }
        auto key = [](const PalHit& h) {
          return std::tuple(h.center, h.radius, h.used);
        };
        std::sort(hits.begin(), hits.end(),
                  [&](const PalHit& a, const PalHit& b) { return key(a) < key(b); });
        std::sort(want.begin(), want.end(),
                  [&](const PalHit& a, const PalHit& b) { return key(a) < key(b); });
        CHECK(hits == want);
      }
    }
  }
}

TEST_CASE("window prefix and suffix counts equal the factor's palindromic count") {
  // The count certified by a window entry depends only on the factor, not
  // on where the window sits inside the string.
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + rng() % 40;
    WildcardString s = oracles::random_ws(rng, n, 2, 0.25);
    const std::size_t lo = 1 + rng() % n;
    const std::size_t hi = lo + rng() % (n - lo + 1);
    const std::size_t L = hi - lo + 1;
    auto hits = self_hits(s, lo, hi, 3);
    for (const PalHit& h : hits) {
      std::vector<Symbol> syms;
      for (std::size_t i = h.center - static_cast<std::size_t>(h.radius);
           i <= h.center + static_cast<std::size_t>(h.radius); ++i) {
        syms.push_back(s.at(i));
      }
      CHECK(h.used ==
            pal_mismatch_count(WildcardString::from_symbols(std::move(syms))));
      CHECK(h.radius <= static_cast<std::int64_t>(L));
    }
  }
}

TEST_CASE("self_hits rejects bad windows") {
  WildcardString s = oracles::ws_shared("abcd");
  CHECK_THROWS_AS(self_hits(s, 0, 2, 0), Error);
  CHECK_THROWS_AS(self_hits(s, 3, 2, 0), Error);
  CHECK_THROWS_AS(self_hits(s, 2, 5, 0), Error);
}
