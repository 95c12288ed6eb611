#include "palwild/core.hpp"

#include <array>
#include <cstdlib>

namespace palwild {

WildcardString WildcardString::from_text(std::string_view text, char wildcard_char,
                                         bool map_n) {
  if (text.empty()) {
    throw Error(ErrorCode::EmptyInput, "empty input string");
  }
  std::array<Symbol, 256> code{};  // 0 = unassigned / wildcard
  code.fill(0);
  Symbol next = kFirstUserSymbol;
  std::vector<Symbol> syms;
  syms.reserve(text.size());
  for (char ch : text) {
    unsigned char b = static_cast<unsigned char>(ch);
    bool wild = (ch == wildcard_char) || (map_n && (ch == 'N' || ch == 'n'));
    if (wild) {
      syms.push_back(kWildcard);
      continue;
    }
    if (code[b] == 0) code[b] = next++;
    syms.push_back(code[b]);
  }
  return WildcardString(std::move(syms));
}

WildcardString WildcardString::from_symbols(std::vector<Symbol> symbols) {
  if (symbols.empty()) {
    throw Error(ErrorCode::EmptyInput, "empty symbol sequence");
  }
  return WildcardString(std::move(symbols));
}

WildcardString WildcardString::reversed() const {
  std::vector<Symbol> rev(syms_.rbegin(), syms_.rend());
  return WildcardString(std::move(rev));
}

std::vector<Fragment> WildcardString::wildcard_fragments() const {
  std::vector<Fragment> frags;
  std::size_t i = 1;
  const std::size_t n = size();
  while (i <= n) {
    if (is_wildcard(i)) {
      std::size_t j = i;
      while (j + 1 <= n && is_wildcard(j + 1)) ++j;
      frags.push_back({i, j});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return frags;
}

std::size_t WildcardString::fragment_count() const {
  return wildcard_fragments().size();
}

std::size_t WildcardString::wildcard_positions() const {
  std::size_t count = 0;
  for (Symbol s : syms_)
    if (s == kWildcard) ++count;
  return count;
}

std::size_t WildcardString::sigma() const {
  std::vector<bool> seen;
  std::size_t distinct = 0;
  for (Symbol s : syms_) {
    if (s == kWildcard) continue;
    if (s >= seen.size()) seen.resize(s + 1, false);
    if (!seen[s]) {
      seen[s] = true;
      ++distinct;
    }
  }
  return distinct;
}

Symbol WildcardString::max_symbol() const {
  Symbol m = 0;
  for (Symbol s : syms_)
    if (s > m) m = s;
  return m;
}

std::int64_t mismatch_count(const WildcardString& a, const WildcardString& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "mismatch_count: unequal lengths");
  }
  std::int64_t count = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    if (!sym_match(a.at(i), b.at(i))) ++count;
  }
  return count;
}

std::int64_t pal_mismatch_count(const WildcardString& s) {
  // Mismatching pairs (i, n+1-i) are counted twice by the forward/backward
  // comparison and never on the middle position, so the count is even.
  std::int64_t h = mismatch_count(s, s.reversed());
  return h / 2;
}

WildcardString interleave(const WildcardString& s) {
  const std::size_t n = s.size();
  std::vector<Symbol> out(2 * n + 1, kSentinel);
  for (std::size_t i = 1; i <= n; ++i) out[2 * i - 1] = s.at(i);
  return WildcardString::from_symbols(std::move(out));
}

CenteredRadiusArray deinterleave_radii(const std::vector<RadiusUsed>& per_position,
                                       std::size_t n) {
  if (per_position.size() != 2 * n + 1) {
    throw Error(ErrorCode::LengthMismatch,
                "deinterleave_radii: expected 2n+1 per-position entries");
  }
  CenteredRadiusArray out(n);
  for (std::size_t p = 2; p <= 2 * n; ++p) {
    const RadiusUsed& ru = per_position[p - 1];
    const std::size_t t = p - 1;
    if ((static_cast<std::size_t>(ru.radius) % 2) != (t % 2)) {
      throw Error(ErrorCode::InternalInvariant,
                  "deinterleave_radii: radius parity does not match center parity");
    }
    out.at_center(t) = CenterEntry{ru.radius, ru.used};
  }
  return out;
}

int thread_cap() {
  const char* env = std::getenv("PALWILD_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0) return 1;
  return v == 0 ? 1 : static_cast<int>(v);
}

}  // namespace palwild
