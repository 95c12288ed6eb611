#include "palwild/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "conv_engine.hpp"

namespace palwild {
namespace {

using detail::BilinearTerm;
using detail::conv_bilinear;

// Distinct solid codes of one or two strings remapped to dense 1..sigma codes
// (wildcard stays 0). Keeps transform magnitudes minimal; any injective map
// preserves the mismatch structure.
struct DenseRemap {
  std::map<Symbol, std::int64_t> to_dense;

  void absorb(const WildcardString& s) {
    for (Symbol c : s.symbols())
      if (c != kWildcard) to_dense.emplace(c, 0);
  }
  void finalize() {
    std::int64_t next = 1;
    for (auto& [code, dense] : to_dense) dense = next++;
  }
  std::vector<std::int64_t> apply(const WildcardString& s) const {
    std::vector<std::int64_t> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Symbol c = s.symbols()[i];
      out[i] = c == kWildcard ? 0 : to_dense.at(c);
    }
    return out;
  }
};

std::vector<std::int64_t> powers(const std::vector<std::int64_t>& v, int e) {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t p = 1;
    for (int j = 0; j < e; ++j) p *= v[i];
    out[i] = p;
  }
  return out;
}

// Positions (0-based) of each dense code in `codes`.
std::vector<std::vector<std::size_t>> positions_by_code(const std::vector<std::int64_t>& codes,
                                                        std::size_t sigma) {
  std::vector<std::vector<std::size_t>> pos(sigma + 1);
  for (std::size_t i = 0; i < codes.size(); ++i)
    if (codes[i] != 0) pos[static_cast<std::size_t>(codes[i])].push_back(i);
  return pos;
}

std::vector<std::int64_t> indicator(const std::vector<std::size_t>& positions,
                                    std::size_t len, bool reversed) {
  std::vector<std::int64_t> v(len, 0);
  for (std::size_t p : positions) v[reversed ? len - 1 - p : p] = 1;
  return v;
}

double freq_threshold(std::size_t m, double scale) {
  const double lg = std::log2(static_cast<double>(m) + 1.0);
  return scale * std::sqrt(static_cast<double>(m) / lg);
}

// cconv by definition: one pass over all aligned symbol pairs.
std::vector<std::int64_t> cconv_naive(const WildcardString& text,
                                      const WildcardString& pattern) {
  const std::size_t n = text.size(), m = pattern.size();
  std::vector<std::int64_t> out(n + m - 1, 0);
  for (std::size_t x = 1; x <= n; ++x) {
    if (text.is_wildcard(x)) continue;
    const Symbol tx = text.at(x);
    for (std::size_t y = 1; y <= m; ++y) {
      if (pattern.is_wildcard(y)) continue;
      if (tx != pattern.at(y)) ++out[x - y + m - 1];  // alignment i = x - y + m
    }
  }
  return out;
}

constexpr std::size_t kSymbolBatch = 8;  // bounds transient indicator memory

// Transform-backed cconv: mismatches = (solid x solid pairs) - (equal pairs),
// with equal pairs per symbol either convolved (frequent) or enumerated
// (rare). PerCharacter treats every symbol as frequent.
std::vector<std::int64_t> cconv_transform(const WildcardString& text,
                                          const WildcardString& pattern,
                                          const ConvStrategy& strategy) {
  const std::size_t n = text.size(), m = pattern.size();
  const std::size_t out_len = n + m - 1;

  DenseRemap remap;
  remap.absorb(text);
  remap.absorb(pattern);
  remap.finalize();
  const std::size_t sigma = remap.to_dense.size();
  const std::vector<std::int64_t> tcodes = remap.apply(text);
  const std::vector<std::int64_t> pcodes = remap.apply(pattern);
  const auto tpos = positions_by_code(tcodes, sigma);
  const auto ppos = positions_by_code(pcodes, sigma);

  std::vector<std::size_t> tsolid, psolid;
  for (std::size_t a = 1; a <= sigma; ++a) {
    tsolid.insert(tsolid.end(), tpos[a].begin(), tpos[a].end());
    psolid.insert(psolid.end(), ppos[a].begin(), ppos[a].end());
  }

  // Solid-pair counts.
  std::vector<std::vector<std::int64_t>> base;
  base.push_back(indicator(tsolid, n, false));
  base.push_back(indicator(psolid, m, true));
  std::vector<std::int64_t> out = conv_bilinear(base, {{0, 1, 1}}, out_len);

  const bool split = strategy.variant == ConvStrategy::Variant::FrequencySplit;
  const double thr = freq_threshold(m, strategy.threshold_scale);

  std::vector<std::size_t> convolved;  // symbols whose equal pairs go through transforms
  for (std::size_t a = 1; a <= sigma; ++a) {
    if (tpos[a].empty() || ppos[a].empty()) continue;
    const bool frequent =
        !split || (std::min(tpos[a].size(), ppos[a].size()) >= thr);
    if (frequent) {
      convolved.push_back(a);
    } else {
      for (std::size_t x : tpos[a])
        for (std::size_t y : ppos[a]) --out[x + (m - 1 - y)];
    }
  }

  for (std::size_t off = 0; off < convolved.size(); off += kSymbolBatch) {
    const std::size_t batch = std::min(kSymbolBatch, convolved.size() - off);
    std::vector<std::vector<std::int64_t>> inputs;
    std::vector<BilinearTerm> terms;
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t a = convolved[off + b];
      inputs.push_back(indicator(tpos[a], n, false));
      inputs.push_back(indicator(ppos[a], m, true));
      terms.push_back({2 * b, 2 * b + 1, 1});
    }
    const std::vector<std::int64_t> eq = conv_bilinear(inputs, terms, out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] -= eq[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Self-alignment (window vs its own reverse). For a window W the aligned
// count at entry e equals the pair sum over positions x+z = e-1 (0-based),
// so both convolution factors come from W unreversed.
// ---------------------------------------------------------------------------

std::vector<std::int64_t> self_counts_naive(const std::vector<Symbol>& w) {
  const std::size_t len = w.size();
  std::vector<std::int64_t> out(2 * len - 1, 0);
  for (std::size_t x = 0; x < len; ++x) {
    if (w[x] == kWildcard) continue;
    for (std::size_t z = x + 1; z < len; ++z) {
      if (w[z] == kWildcard || w[z] == w[x]) continue;
      out[x + z] += 2;  // ordered pairs (x,z) and (z,x)
    }
  }
  return out;
}

std::vector<std::int64_t> self_counts_transform(const std::vector<Symbol>& w,
                                                const ConvStrategy& strategy) {
  const std::size_t len = w.size();
  const std::size_t out_len = 2 * len - 1;

  DenseRemap remap;
  std::map<Symbol, std::int64_t>& dense = remap.to_dense;
  for (Symbol c : w)
    if (c != kWildcard) dense.emplace(c, 0);
  remap.finalize();
  const std::size_t sigma = dense.size();
  std::vector<std::int64_t> codes(len);
  for (std::size_t i = 0; i < len; ++i)
    codes[i] = w[i] == kWildcard ? 0 : dense.at(w[i]);
  const auto pos = positions_by_code(codes, sigma);

  std::vector<std::size_t> solid;
  for (std::size_t a = 1; a <= sigma; ++a)
    solid.insert(solid.end(), pos[a].begin(), pos[a].end());

  std::vector<std::vector<std::int64_t>> base;
  base.push_back(indicator(solid, len, false));
  std::vector<std::int64_t> out = conv_bilinear(base, {{0, 0, 1}}, out_len);

  const bool split = strategy.variant == ConvStrategy::Variant::FrequencySplit;
  const double thr = freq_threshold(len, strategy.threshold_scale);

  std::vector<std::size_t> convolved;
  for (std::size_t a = 1; a <= sigma; ++a) {
    if (pos[a].empty()) continue;
    if (!split || pos[a].size() >= thr) {
      convolved.push_back(a);
    } else {
      for (std::size_t x : pos[a])
        for (std::size_t z : pos[a]) --out[x + z];
    }
  }

  for (std::size_t off = 0; off < convolved.size(); off += kSymbolBatch) {
    const std::size_t batch = std::min(kSymbolBatch, convolved.size() - off);
    std::vector<std::vector<std::int64_t>> inputs;
    std::vector<BilinearTerm> terms;
    for (std::size_t b = 0; b < batch; ++b) {
      inputs.push_back(indicator(pos[convolved[off + b]], len, false));
      terms.push_back({b, b, 1});
    }
    const std::vector<std::int64_t> eq = conv_bilinear(inputs, terms, out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] -= eq[i];
  }
  return out;
}

// Zero-test weights for match flags: with b the solid indicator and codes w
// (wildcard = 0), Z[s] = sum_{x+z=s} b_x b_z (w_x - w_z)^2 >= 0, and
// Z[s] = 0 iff no aligned solid-solid unequal pair. Expands to
// 2*conv(w^2, b) - 2*conv(w, w): three forward transforms, one inverse.
std::vector<std::int64_t> self_zero_weights(const std::vector<Symbol>& w) {
  const std::size_t len = w.size();
  DenseRemap remap;
  for (Symbol c : w)
    if (c != kWildcard) remap.to_dense.emplace(c, 0);
  remap.finalize();
  std::vector<std::int64_t> codes(len), ind(len);
  for (std::size_t i = 0; i < len; ++i) {
    codes[i] = w[i] == kWildcard ? 0 : remap.to_dense.at(w[i]);
    ind[i] = codes[i] == 0 ? 0 : 1;
  }

  std::vector<std::vector<std::int64_t>> inputs;
  inputs.push_back(std::move(codes));  // w
  inputs.push_back(powers(inputs[0], 2));
  inputs.push_back(std::move(ind));  // b
  return conv_bilinear(inputs, {{1, 2, 2}, {0, 0, -2}}, 2 * len - 1);
}

}  // namespace

ConvStrategy pick_strategy(std::size_t len, std::size_t sigma) {
  ConvStrategy s;
  if (len <= 64) {
    s.variant = ConvStrategy::Variant::Naive;
  } else {
    const double lg = std::log2(static_cast<double>(len) + 1.0);
    const double per_char = static_cast<double>(sigma) * lg;
    const double split = std::sqrt(static_cast<double>(len) * lg);
    s.variant = per_char <= split ? ConvStrategy::Variant::PerCharacter
                                  : ConvStrategy::Variant::FrequencySplit;
  }
  return s;
}

std::vector<std::int64_t> conv_int(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b) {
  return detail::conv_exact(a, b);
}

std::vector<std::int64_t> cconv(const WildcardString& text, const WildcardString& pattern,
                                const ConvStrategy& strategy) {
  if (strategy.variant == ConvStrategy::Variant::Naive) {
    return cconv_naive(text, pattern);
  }
  return cconv_transform(text, pattern, strategy);
}

std::vector<std::int64_t> cconv(const WildcardString& text, const WildcardString& pattern) {
  const std::size_t len = std::max(text.size(), pattern.size());
  return cconv(text, pattern, pick_strategy(len, std::max(text.sigma(), pattern.sigma())));
}

std::vector<std::uint8_t> mconv(const WildcardString& text, const WildcardString& pattern) {
  const std::size_t n = text.size(), m = pattern.size();
  const std::size_t out_len = n + m - 1;

  // Zero-test on the generic alignment layout: pair (x, y) of text/pattern
  // contributes at entry x - y + m (1-based), i.e. a plain convolution of
  // text vectors with reversed pattern vectors. With solid indicators bt/bp
  // and codes t/p (wildcard = 0),
  //   Z = conv(t^2, bp) + conv(bt, p^2) - 2*conv(t, p) >= 0 entrywise,
  // and an entry is 0 iff it has no aligned solid-solid unequal pair.
  DenseRemap remap;
  remap.absorb(text);
  remap.absorb(pattern);
  remap.finalize();
  const auto solid_ind = [](const std::vector<std::int64_t>& codes) {
    std::vector<std::int64_t> b(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) b[i] = codes[i] == 0 ? 0 : 1;
    return b;
  };
  const std::vector<std::int64_t> t = remap.apply(text);
  std::vector<std::int64_t> p = remap.apply(pattern);
  std::reverse(p.begin(), p.end());

  std::vector<std::vector<std::int64_t>> inputs;
  inputs.push_back(t);             // 0
  inputs.push_back(powers(t, 2));  // 1
  inputs.push_back(solid_ind(t));  // 2: bt
  inputs.push_back(p);             // 3
  inputs.push_back(powers(p, 2));  // 4
  inputs.push_back(solid_ind(p));  // 5: bp (already reversed with p)
  const std::vector<std::int64_t> z =
      conv_bilinear(inputs, {{1, 5, 1}, {2, 4, 1}, {0, 3, -2}}, out_len);

  std::vector<std::uint8_t> flags(out_len);
  for (std::size_t i = 0; i < out_len; ++i) flags[i] = z[i] == 0 ? 1 : 0;
  return flags;
}

std::vector<std::int64_t> kconv_clamp(const WildcardString& s, const WildcardString& t,
                                      std::int64_t k) {
  std::vector<std::int64_t> out = cconv(s, t);
  for (auto& v : out) v = std::min(v, k + 1);
  return out;
}

std::vector<std::optional<std::size_t>> brute_pos_k(const WildcardString& text,
                                                    const WildcardString& pattern,
                                                    std::int64_t k) {
  const std::size_t n = text.size(), m = pattern.size();
  if (m > n) {
    throw Error(ErrorCode::LengthMismatch, "brute_pos_k: pattern longer than text");
  }
  std::vector<std::optional<std::size_t>> out(n - m + 1);
  for (std::size_t a = 1; a + m - 1 <= n; ++a) {
    std::int64_t count = 0;
    for (std::size_t y = 1; y <= m; ++y) {
      if (!sym_match(text.at(a + y - 1), pattern.at(y))) {
        if (++count == k) {
          out[a - 1] = y;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::int64_t> kconv_via_pos(const WildcardString& s, const WildcardString& t,
                                        std::int64_t k, const PosOracle& oracle) {
  const std::size_t n = s.size();
  if (t.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "kconv_via_pos: |S| != |T|");
  }
  if (s.wildcard_positions() != 0 || t.wildcard_positions() != 0) {
    throw Error(ErrorCode::SolidOnly, "kconv_via_pos: inputs must be wildcard-free");
  }

  const Symbol base = std::max(s.max_symbol(), t.max_symbol());
  const Symbol pad = base + 1;  // text-side fresh sentinel
  const auto fresh = [&](std::size_t j) { return base + 2 + static_cast<Symbol>(j); };

  // One padded mismatch-position pass; returns the clamped count for the
  // alignment placing `pattern`'s real prefix against text[a..].
  const auto counts_against = [&](const WildcardString& text_side,
                                  const WildcardString& pattern_side) {
    std::vector<Symbol> text_pad(text_side.symbols());
    text_pad.insert(text_pad.end(), n + static_cast<std::size_t>(k) + 1, pad);
    std::vector<Symbol> pat_pad(pattern_side.symbols());
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j)
      pat_pad.push_back(fresh(j));
    const auto pos = oracle(WildcardString::from_symbols(std::move(text_pad)),
                            WildcardString::from_symbols(std::move(pat_pad)), k + 1);
    std::vector<std::int64_t> counts(n + 1, 0);
    for (std::size_t a = 1; a <= n; ++a) {
      if (!pos[a - 1].has_value()) {
        throw Error(ErrorCode::InternalInvariant,
                    "kconv_via_pos: padded alignment below k+1 mismatches");
      }
      const std::int64_t j = static_cast<std::int64_t>(*pos[a - 1]);
      const std::int64_t real_zone = static_cast<std::int64_t>(n - a + 1);
      counts[a] = j <= real_zone
                      ? k + 1
                      : static_cast<std::int64_t>(n) + k + 2 - static_cast<std::int64_t>(a) - j;
    }
    return counts;
  };

  const std::vector<std::int64_t> suffix_half = counts_against(s, t);  // entries n..2n-1
  const std::vector<std::int64_t> prefix_half = counts_against(t, s);  // entries 1..n-1

  std::vector<std::int64_t> out(2 * n - 1, 0);
  for (std::size_t a = 1; a <= n; ++a) out[a + n - 2] = suffix_half[a];
  for (std::size_t a = 2; a <= n; ++a) out[n - a] = prefix_half[a];  // entry i = n-a+1
  return out;
}

std::vector<PalHit> self_hits(const WildcardString& s, std::size_t lo, std::size_t hi,
                              std::int64_t k, const ConvStrategy& strategy) {
  if (lo < 1 || hi > s.size() || lo > hi) {
    throw Error(ErrorCode::LengthMismatch, "self_hits: window out of range");
  }
  const std::size_t len = hi - lo + 1;
  const std::vector<Symbol> w(s.symbols().begin() + (lo - 1), s.symbols().begin() + hi);

  // counts[e-1] = aligned mismatch count of entry e; for k = 0 the zero-test
  // weights stand in (any nonzero value disqualifies, exact count unneeded).
  std::vector<std::int64_t> counts;
  if (k == 0) {
    counts = strategy.variant == ConvStrategy::Variant::Naive ? self_counts_naive(w)
                                                              : self_zero_weights(w);
  } else if (strategy.variant == ConvStrategy::Variant::Naive) {
    counts = self_counts_naive(w);
  } else {
    counts = self_counts_transform(w, strategy);
  }

  const std::int64_t budget = 2 * k;
  std::vector<PalHit> hits;
  // Odd-length prefixes W[1..e].
  for (std::size_t e = 1; e <= len; e += 2) {
    const std::int64_t c = counts[e - 1];
    if (c <= budget) {
      hits.push_back({lo + (e - 1) / 2, static_cast<std::int64_t>((e - 1) / 2),
                      k == 0 ? 0 : c / 2});
    }
  }
  // Odd-length suffixes W[s0..len], s0 >= 2 (s0 = 1 is the whole window,
  // already reported as a prefix when odd).
  for (std::size_t s0 = 2 - (len % 2); s0 <= len; s0 += 2) {
    if (s0 < 2) continue;
    const std::int64_t c = counts[len + s0 - 2];
    if (c <= budget) {
      hits.push_back({lo - 1 + (s0 + len) / 2, static_cast<std::int64_t>((len - s0) / 2),
                      k == 0 ? 0 : c / 2});
    }
  }
  return hits;
}

std::vector<PalHit> self_hits(const WildcardString& s, std::size_t lo, std::size_t hi,
                              std::int64_t k) {
  const std::size_t len = hi >= lo ? hi - lo + 1 : 0;
  std::size_t sigma = 0;
  if (len > 64) {
    // Window sigma drives the strategy; a cheap scan over the window.
    std::vector<bool> seen;
    for (std::size_t i = lo; i <= hi; ++i) {
      Symbol c = s.at(i);
      if (c == kWildcard) continue;
      if (c >= seen.size()) seen.resize(c + 1, false);
      if (!seen[c]) {
        seen[c] = true;
        ++sigma;
      }
    }
  }
  return self_hits(s, lo, hi, k, pick_strategy(len, sigma));
}

}  // namespace palwild
