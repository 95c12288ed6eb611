#include "palwild/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "palwild/convolve.hpp"
#include "palwild/naive.hpp"

namespace palwild {
namespace {

using Limbs = std::vector<std::uint64_t>;

void trim(Limbs& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

Limbs shl(const Limbs& a, std::uint64_t bits) {
  const std::size_t words = bits / 64, rem = bits % 64;
  Limbs out(a.size() + words + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i + words] |= a[i] << rem;
    if (rem) out[i + words + 1] |= a[i] >> (64 - rem);
  }
  trim(out);
  return out;
}

Limbs mul_u64(const Limbs& a, std::uint64_t m) {
  Limbs out(a.size() + 1, 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned __int128 cur = static_cast<unsigned __int128>(a[i]) * m + carry;
    out[i] = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  out[a.size()] = static_cast<std::uint64_t>(carry);
  trim(out);
  return out;
}

void add_into(Limbs& a, const Limbs& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned __int128 cur =
        static_cast<unsigned __int128>(a[i]) + (i < b.size() ? b[i] : 0) + carry;
    a[i] = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry) a.push_back(static_cast<std::uint64_t>(carry));
}

int cmp(const Limbs& a, const Limbs& b) {
  std::size_t sa = a.size(), sb = b.size();
  while (sa > 1 && a[sa - 1] == 0) --sa;
  while (sb > 1 && b[sb - 1] == 0) --sb;
  if (sa != sb) return sa < sb ? -1 : 1;
  for (std::size_t i = sa; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

DyadicWindow::DyadicWindow(std::int64_t value)
    : limbs_{static_cast<std::uint64_t>(value)} {}

void DyadicWindow::grow(std::uint64_t num, std::uint32_t q) {
  Limbs next = shl(limbs_, q);
  add_into(next, mul_u64(limbs_, num));
  limbs_ = std::move(next);
  shift_ += q;
}

bool DyadicWindow::at_least(std::int64_t x) const {
  const Limbs rhs = shl(Limbs{static_cast<std::uint64_t>(x)}, shift_);
  return cmp(limbs_, rhs) >= 0;
}

std::int64_t DyadicWindow::ceil_clamped(std::int64_t cap) const {
  const std::size_t words = shift_ / 64, rem = shift_ % 64;
  bool sticky = false;
  for (std::size_t i = 0; i < std::min(words, limbs_.size()); ++i) {
    sticky = sticky || limbs_[i] != 0;
  }
  if (rem && words < limbs_.size()) {
    sticky = sticky || (limbs_[words] & ((std::uint64_t{1} << rem) - 1)) != 0;
  }
  Limbs whole{0};
  if (words < limbs_.size()) {
    whole.assign(limbs_.size() - words, 0);
    for (std::size_t i = words; i < limbs_.size(); ++i) {
      std::uint64_t w = limbs_[i] >> rem;
      if (rem && i + 1 < limbs_.size()) w |= limbs_[i + 1] << (64 - rem);
      whole[i - words] = w;
    }
    trim(whole);
  }
  if (whole.size() > 1 || whole[0] >= static_cast<std::uint64_t>(cap)) return cap;
  const std::int64_t v = static_cast<std::int64_t>(whole[0]) + (sticky ? 1 : 0);
  return std::min(v, cap);
}

ApproxParams ApproxParams::from_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 0.5)) {
    throw Error(ErrorCode::BadEpsilon, "epsilon must be in (0, 0.5]");
  }
  ApproxParams p;
  p.epsilon = epsilon;
  double delta = epsilon / 4.0;  // power-of-two scaling: exact
  if (delta <= 0.0) delta = std::numeric_limits<double>::denorm_min();

  int e2 = 0;
  const double f = std::frexp(delta, &e2);  // delta = f * 2^e2, f in [0.5, 1)
  std::uint64_t mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  std::uint32_t q = static_cast<std::uint32_t>(53 - e2);
  const int tz = std::countr_zero(mant);
  mant >>= tz;
  q -= static_cast<std::uint32_t>(tz);
  p.delta_num = mant;
  p.delta_q = q;

  // Smallest power of two 2^s >= 1/delta = 2^q/mant, i.e. minimal s with
  // mant >= 2^(q-s): s = q - bit_width(mant) + 1. Capped at 2^62.
  const std::int64_t s = static_cast<std::int64_t>(q) - std::bit_width(mant) + 1;
  p.u0 = std::int64_t{1} << std::min<std::int64_t>(std::max<std::int64_t>(s, 3), 62);
  return p;
}

double ApproxParams::delta() const {
  return std::ldexp(static_cast<double>(delta_num), -static_cast<int>(delta_q));
}

AnchorSet AnchorSet::initial(std::size_t N, std::int64_t u0) {
  AnchorSet set;
  const std::size_t count = (2 * N) / static_cast<std::size_t>(u0);
  if (count == 0) return set;
  const std::size_t padded = std::bit_ceil(count);
  const std::size_t half = static_cast<std::size_t>(u0) / 2;
  set.pos_.reserve(padded);
  for (std::size_t i = 1; i <= padded; ++i) set.pos_.push_back(i * half);
  return set;
}

void AnchorSet::thin() {
  std::vector<std::size_t> kept;
  kept.reserve(pos_.size() / 2);
  for (std::size_t i = 1; i < pos_.size(); i += 2) kept.push_back(pos_[i]);
  pos_ = std::move(kept);
}

std::size_t AnchorSet::in_string_count(std::size_t N) const {
  return static_cast<std::size_t>(
      std::upper_bound(pos_.begin(), pos_.end(), N) - pos_.begin());
}

std::int64_t rad(std::size_t c, std::size_t a, std::int64_t u, std::size_t N) {
  const std::int64_t ci = static_cast<std::int64_t>(c);
  const std::int64_t ai = static_cast<std::int64_t>(a);
  const std::int64_t lo = std::max<std::int64_t>(1, ai - u);
  const std::int64_t hi = std::min<std::int64_t>(static_cast<std::int64_t>(N), ai + u);
  // A window that does not cover c certifies nothing: floor at zero.
  return std::max<std::int64_t>(0, std::min(ci - lo, hi - ci));
}

std::size_t anchor_of(std::size_t c, const AnchorSet& anchors, std::int64_t u,
                      std::size_t N) {
  const std::vector<std::size_t>& pos = anchors.positions();
  if (pos.empty()) {
    throw Error(ErrorCode::EmptyInput, "anchor_of: empty anchor set");
  }
  const auto it = std::lower_bound(pos.begin(), pos.end(), c);
  std::size_t best_a = 0;
  std::int64_t best_r = std::numeric_limits<std::int64_t>::min();
  const auto consider = [&](std::size_t a) {
    const std::int64_t r = rad(c, a, u, N);
    if (r > best_r) {  // strict: the earlier (smaller) candidate wins ties
      best_r = r;
      best_a = a;
    }
  };
  if (it != pos.begin()) consider(*std::prev(it));
  if (it != pos.end()) consider(*it);
  return best_a;
}

ApproxResult approx_all_maximal_detailed(const WildcardString& s, double epsilon,
                                         std::int64_t k) {
  const ApproxParams params = ApproxParams::from_epsilon(epsilon);
  const WildcardString sp = interleave(s);
  const std::size_t n = s.size();
  const std::size_t N = sp.size();
  const std::int64_t Ni = static_cast<std::int64_t>(N);

  ApproxResult res;
  res.stats.u0 = params.u0;

  // Exact initialization up to radius u0: centers whose true radius is
  // <= u0 are finished here.
  std::vector<RadiusUsed> raw(N);
  for (std::size_t p = 2; p <= 2 * n; ++p) {
    raw[p - 1] = naive_pal_find(sp, p, params.u0, k);
  }

  const auto merge = [&raw](const PalHit& h) {
    RadiusUsed& cur = raw[h.center - 1];
    if (h.radius > cur.radius || (h.radius == cur.radius && h.used < cur.used)) {
      cur = {h.radius, h.used};
    }
  };

  AnchorSet anchors = AnchorSet::initial(N, params.u0);
  DyadicWindow u(params.u0);
  std::int64_t u_prime = params.u0;

  while (true) {
    const std::int64_t uhat = u.ceil_clamped(Ni);
    const std::size_t uh = static_cast<std::size_t>(uhat);
    for (std::size_t a : anchors.positions()) {
      const std::size_t lo = a > uh ? a - uh : 1;
      if (lo > N) continue;  // window entirely past the string
      const std::size_t hi = std::min(N, a + uh);
      for (const PalHit& h : self_hits(sp, lo, hi, k)) merge(h);
    }
    ++res.stats.iterations;
    if (u.at_least(Ni)) break;
    u.grow(params.delta_num, params.delta_q);
    if (u.at_least(2 * u_prime)) {
      u_prime *= 2;
      anchors.thin();
      ++res.stats.thinnings;
      res.stats.anchors_after_thinning.emplace_back(u.ceil_clamped(2 * Ni),
                                                    anchors.in_string_count(N));
      if (anchors.empty() && !u.at_least(Ni)) {
        throw Error(ErrorCode::InternalInvariant,
                    "anchor set emptied before the final window pass");
      }
    }
  }

  // Canonical lengths must have length parity == center parity. A raw radius
  // of the wrong parity is a window truncation of a strictly larger true
  // palindrome, so the next pair outward is a sentinel-sentinel pair (parity
  // places sentinels there), which always matches within bounds: widening by
  // one is safe, stays a lower bound, and consumes no budget.
  std::vector<RadiusUsed> normalized(N);
  for (std::size_t p = 2; p <= 2 * n; ++p) {
    RadiusUsed v = raw[p - 1];
    const std::size_t t = p - 1;
    if (static_cast<std::size_t>(v.radius) % 2 != t % 2) {
      const std::size_t r = static_cast<std::size_t>(v.radius) + 1;
      if (p <= r || p + r > N || sp.at(p - r) != kSentinel ||
          sp.at(p + r) != kSentinel) {
        throw Error(ErrorCode::InternalInvariant,
                    "parity widening left the sentinel structure");
      }
      v.radius += 1;
    }
    normalized[p - 1] = v;
  }
  res.lengths = deinterleave_radii(normalized, n);
  res.raw_radii = std::move(raw);
  return res;
}

CenteredRadiusArray approx_all_maximal(const WildcardString& s, double epsilon,
                                       std::int64_t k) {
  return approx_all_maximal_detailed(s, epsilon, k).lengths;
}

}  // namespace palwild
