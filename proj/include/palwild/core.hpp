#pragma once
// Core types for palindrome detection in strings with wildcards:
// symbol alphabet, wildcard string, fragment bookkeeping, the center domain,
// and the boundary-sentinel interleaving used by all algorithms.
//
// Position convention: every public position/center index is 1-based, matching
// the algorithmic identities documented throughout (centers t in [1, 2n-1],
// string positions in [1, n]).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace palwild {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  EmptyInput,        // empty string / empty record
  LengthMismatch,    // operands of unequal required length
  BadEpsilon,        // epsilon outside (0, 0.5]
  SolidOnly,         // operation defined only for wildcard-free strings
  PrecisionBound,    // exact arithmetic guarantee would be exceeded
  InternalInvariant, // internal consistency violation (e.g. parity)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

// Symbols are small integer codes. Code 0 is the wildcard (matches anything);
// code 1 is the reserved solid boundary sentinel used by the interleaving;
// user symbols are assigned codes 2, 3, ... in order of first occurrence.
using Symbol = std::uint32_t;

inline constexpr Symbol kWildcard = 0;
inline constexpr Symbol kSentinel = 1;
inline constexpr Symbol kFirstUserSymbol = 2;

// Symmetric single-symbol match relation: equal codes match, and the wildcard
// matches every symbol. The sentinel is solid: it matches only itself (and
// the wildcard).
inline bool sym_match(Symbol a, Symbol b) {
  return a == b || a == kWildcard || b == kWildcard;
}

// ---------------------------------------------------------------------------
// WildcardString
// ---------------------------------------------------------------------------

struct Fragment {
  std::size_t start = 0;  // 1-based, inclusive
  std::size_t end = 0;    // 1-based, inclusive
};

class WildcardString {
 public:
  WildcardString() = default;

  // Builds a string from raw bytes. `wildcard_char` maps to the wildcard
  // symbol; when `map_n` is set, 'N' and 'n' also map to the wildcard. Every
  // other distinct byte receives its own solid code by first occurrence.
  // Throws Error(EmptyInput) on an empty text.
  static WildcardString from_text(std::string_view text, char wildcard_char = '?',
                                  bool map_n = false);

  // Builds directly from symbol codes (codes must be 0 or >= 1; no remapping).
  static WildcardString from_symbols(std::vector<Symbol> symbols);

  std::size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }

  // 1-based symbol access.
  Symbol at(std::size_t i) const { return syms_[i - 1]; }
  bool is_wildcard(std::size_t i) const { return syms_[i - 1] == kWildcard; }
  bool is_solid(std::size_t i) const { return syms_[i - 1] != kWildcard; }

  const std::vector<Symbol>& symbols() const { return syms_; }

  // Reversed copy.
  WildcardString reversed() const;

  // Maximal runs of wildcard positions, left to right.
  std::vector<Fragment> wildcard_fragments() const;

  // G: number of wildcard fragments.
  std::size_t fragment_count() const;

  // Number of wildcard positions.
  std::size_t wildcard_positions() const;

  // sigma: number of distinct solid symbols actually present.
  std::size_t sigma() const;

  // Largest symbol code present (0 for the all-wildcard string).
  Symbol max_symbol() const;

 private:
  explicit WildcardString(std::vector<Symbol> syms) : syms_(std::move(syms)) {}
  std::vector<Symbol> syms_;
};

// Palindromic mismatch count of S: half the Hamming-style mismatch count
// between S and its reverse, counting only solid-solid unequal pairs.
// S is a k-palindrome iff this is <= k. Example: "abcdcbx" -> 1.
std::int64_t pal_mismatch_count(const WildcardString& s);

// Mismatch count between equal-length strings under sym_match.
// Throws Error(LengthMismatch) if lengths differ.
std::int64_t mismatch_count(const WildcardString& a, const WildcardString& b);

// ---------------------------------------------------------------------------
// Center domain
// ---------------------------------------------------------------------------
//
// A string of length n has 2n-1 centers t in [1, 2n-1]:
//   odd  t -> character center (t+1)/2,
//   even t -> gap center between positions t/2 and t/2+1.
// Canonical per-center output is the maximal palindrome LENGTH at t (with its
// mismatch count); parity(length) == parity(t) always holds. For odd centers
// the radius in the usual sense is floor(length/2).

struct CenterEntry {
  std::int64_t length = 0;
  std::int64_t mismatches = 0;
  bool operator==(const CenterEntry&) const = default;
};

class CenteredRadiusArray {
 public:
  CenteredRadiusArray() = default;
  explicit CenteredRadiusArray(std::size_t n)
      : n_(n), entries_(n == 0 ? 0 : 2 * n - 1) {}

  std::size_t n() const { return n_; }
  std::size_t centers() const { return entries_.size(); }

  // 1-based center index t in [1, 2n-1].
  CenterEntry& at_center(std::size_t t) {
    check_center(t);
    return entries_[t - 1];
  }
  const CenterEntry& at_center(std::size_t t) const {
    check_center(t);
    return entries_[t - 1];
  }

  const std::vector<CenterEntry>& entries() const { return entries_; }

  bool operator==(const CenteredRadiusArray&) const = default;

 private:
  void check_center(std::size_t t) const {
    if (t < 1 || t > entries_.size()) {
      throw Error(ErrorCode::LengthMismatch, "center index out of range");
    }
  }

  std::size_t n_ = 0;
  std::vector<CenterEntry> entries_;
};

// True if center t carries odd-length (character-centered) palindromes.
inline bool center_is_character(std::size_t t) { return t % 2 == 1; }

// Factor [start, end] of a length-`length` palindrome at center t satisfies
// start + end - 1 == t and end - start + 1 == length; these helpers convert.
inline std::size_t factor_start(std::size_t t, std::int64_t length) {
  return (t + 2 - static_cast<std::size_t>(length)) / 2;
}
inline std::size_t factor_end(std::size_t t, std::int64_t length) {
  return factor_start(t, length) + static_cast<std::size_t>(length) - 1;
}

// ---------------------------------------------------------------------------
// Interleaving
// ---------------------------------------------------------------------------
//
// interleave(S) = $ S[1] $ S[2] $ ... $ S[n] $   (length N = 2n+1),
// with the solid boundary sentinel at every odd position and S[i] at 2i.
// Centered comparisons pair positions of equal parity, so wildcards (even
// positions) are never compared to sentinels (odd positions) and real
// palindromes in the interleaved string are exactly the odd-length ones.
// The maximal palindrome radius at interleaved position p equals the maximal
// palindrome LENGTH at center t = p - 1 of the original string.

WildcardString interleave(const WildcardString& s);

// A lower-bound or exact (radius, consumed budget) pair at some interleaved
// position; the shared currency of all algorithm phases.
struct RadiusUsed {
  std::int64_t radius = 0;
  std::int64_t used = 0;
  bool operator==(const RadiusUsed&) const = default;
};

// Converts fully-extended per-position results over interleave(S) (positions
// 1..2n+1; entries 2..2n are used) into the canonical center-indexed array of
// lengths. Validates the parity invariant and throws Error(InternalInvariant)
// on violation.
CenteredRadiusArray deinterleave_radii(const std::vector<RadiusUsed>& per_position,
                                       std::size_t n);

// Parses the PALWILD_THREADS environment variable: a cap on worker threads,
// where 0 or unset selects the implementation default (single-threaded).
// Malformed values are treated as unset.
int thread_cap();

}  // namespace palwild
