#include "conv_engine.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "palwild/core.hpp"

namespace palwild::detail {
namespace {

// ---------------------------------------------------------------------------
// Magnitude bookkeeping
// ---------------------------------------------------------------------------

struct TermBound {
  long double total = 0.0L;  // sum over terms of |coeff| * max|a| * max|b| * minlen
};

std::int64_t max_abs(const std::vector<std::int64_t>& v) {
  std::int64_t m = 0;
  for (std::int64_t x : v) m = std::max(m, std::abs(x));
  return m;
}

std::size_t next_pow2(std::size_t x) {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

// Smallest transform size >= x of the form 2^a, 3*2^a, or 5*2^a: close to
// radix-2 speed (a single radix-3/5 pass at most), at most 25% overshoot, and
// only a handful of distinct plan sizes per run.
std::size_t next_smooth(std::size_t x) {
  static const std::vector<std::size_t> table = [] {
    std::vector<std::size_t> t;
    const std::size_t limit = std::size_t{1} << 26;
    for (std::size_t p2 = 2; p2 <= limit; p2 *= 2)
      for (std::size_t odd : {1, 3, 5})
        if (p2 <= limit / odd) t.push_back(odd * p2);
    std::sort(t.begin(), t.end());
    return t;
  }();
  const auto it = std::lower_bound(table.begin(), table.end(), x);
  return it != table.end() ? *it : next_pow2(x);
}

// ---------------------------------------------------------------------------
// Direct path
// ---------------------------------------------------------------------------

void conv_naive_add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                    std::int64_t coeff, std::vector<std::int64_t>& out) {
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == 0) continue;
    const std::int64_t ax = a[x] * coeff;
    const std::size_t lim = std::min(b.size(), out.size() - x);
    for (std::size_t y = 0; y < lim; ++y) out[x + y] += ax * b[y];
  }
}

// ---------------------------------------------------------------------------
// FFTW double path (plans cached per size, planner guarded by a mutex)
// ---------------------------------------------------------------------------

struct FftwPlans {
  fftw_plan fwd = nullptr;  // r2c
  fftw_plan inv = nullptr;  // c2r
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

FftwPlans plans_for(std::size_t m) {
  static std::map<std::size_t, FftwPlans> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<double> re(m);
  std::vector<std::complex<double>> cp(m / 2 + 1);
  FftwPlans p;
  p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(m), re.data(),
                               reinterpret_cast<fftw_complex*>(cp.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.inv = fftw_plan_dft_c2r_1d(static_cast<int>(m),
                               reinterpret_cast<fftw_complex*>(cp.data()), re.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(m, p);
  return p;
}

// Conservative forward+pointwise+inverse rounding-error estimate for one conv
// entry: eps * c * log2(M) * (per-term magnitude mass). The factor 8 leaves a
// wide margin over textbook FFT error constants; results are additionally
// verified entry by entry before rounding.
bool fft_is_safe(long double bound, std::size_t m) {
  const long double log_m = std::log2((long double)std::max<std::size_t>(m, 2));
  const long double err = 1.1e-16L * 8.0L * log_m * bound;
  return err < 0.25L;
}

bool conv_fftw(const std::vector<std::vector<std::int64_t>>& inputs,
               const std::vector<BilinearTerm>& terms, std::size_t out_len,
               std::vector<std::int64_t>& out) {
  const std::size_t m = next_smooth(out_len);
  FftwPlans plans = plans_for(m);
  const std::size_t spec_len = m / 2 + 1;

  // Callers (windowed self-convolutions in particular) issue very many
  // same-sized requests; reuse thread-local scratch instead of reallocating.
  thread_local std::vector<std::vector<std::complex<double>>> spectra;
  thread_local std::vector<double> re;
  thread_local std::vector<std::complex<double>> acc;
  if (spectra.size() < inputs.size()) spectra.resize(inputs.size());
  re.resize(m);

  // Transform each distinct participating input exactly once. Two reductions
  // avoid transforms entirely:
  //  - an input equal to an already-transformed one shares its spectrum
  //    (frequent when index, value, and indicator arrays coincide);
  //  - an input that is the elementwise reverse of a transformed one of the
  //    same length uses the DFT time-reversal identity: for real x of length
  //    L zero-padded to m,  DFT(rev x)[k] = conj(DFT(x)[k]) * e^{-2 pi i k (L-1)/m}.
  std::vector<char> needed(inputs.size(), 0);
  for (const BilinearTerm& t : terms) needed[t.i] = needed[t.j] = 1;
  std::vector<std::size_t> ref(inputs.size());
  std::vector<std::size_t> transformed;
  enum class Rel { None, Equal, Reversed };
  const auto find_source = [&](std::size_t idx) -> std::pair<Rel, std::size_t> {
    const auto& v = inputs[idx];
    for (std::size_t src : transformed) {
      const auto& w = inputs[src];
      if (w.size() != v.size()) continue;
      if (v == w) return {Rel::Equal, src};
      bool rev = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != w[v.size() - 1 - i]) {
          rev = false;
          break;
        }
      }
      if (rev) return {Rel::Reversed, src};
    }
    return {Rel::None, 0};
  };
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    ref[idx] = idx;
    if (!needed[idx]) continue;
    const auto& v = inputs[idx];
    const auto [rel, src] = v.empty() ? std::pair{Rel::None, std::size_t{0}}
                                      : find_source(idx);
    if (rel == Rel::Equal) {
      ref[idx] = src;
      continue;
    }
    spectra[idx].resize(spec_len);
    if (rel == Rel::Reversed) {
      const double theta = -2.0 * 3.14159265358979323846 *
                           static_cast<double>(v.size() - 1) / static_cast<double>(m);
      const std::complex<double> step = std::polar(1.0, theta);
      std::complex<double> twist(1.0, 0.0);
      const auto& base = spectra[src];
      for (std::size_t kk = 0; kk < spec_len; ++kk) {
        // Periodically re-anchor the rotation to keep drift negligible.
        if ((kk & 511u) == 0)
          twist = std::polar(1.0, theta * static_cast<double>(kk));
        spectra[idx][kk] = std::conj(base[kk]) * twist;
        twist *= step;
      }
      continue;
    }
    std::fill(re.begin(), re.end(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) re[i] = static_cast<double>(v[i]);
    fftw_execute_dft_r2c(plans.fwd, re.data(),
                         reinterpret_cast<fftw_complex*>(spectra[idx].data()));
    transformed.push_back(idx);
  }

  acc.assign(spec_len, {0.0, 0.0});
  for (const BilinearTerm& t : terms) {
    const double c = static_cast<double>(t.coeff);
    const auto& a = spectra[ref[t.i]];
    const auto& b = spectra[ref[t.j]];
    for (std::size_t kk = 0; kk < spec_len; ++kk) acc[kk] += c * (a[kk] * b[kk]);
  }
  fftw_execute_dft_c2r(plans.inv, reinterpret_cast<fftw_complex*>(acc.data()), re.data());

  const double scale = 1.0 / static_cast<double>(m);
  out.assign(out_len, 0);
  for (std::size_t i = 0; i < out_len; ++i) {
    const double v = re[i] * scale;
    const double r = std::nearbyint(v);
    if (std::fabs(v - r) > 0.3) return false;  // verification failed; caller falls back
    out[i] = static_cast<std::int64_t>(r);
  }
  return true;
}

// ---------------------------------------------------------------------------
// NTT over p = 2^64 - 2^32 + 1 (exact fallback)
// ---------------------------------------------------------------------------

constexpr std::uint64_t kP = 0xFFFFFFFF00000001ULL;  // 2^64 - 2^32 + 1

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s < a || s >= kP) s -= kP;
  return s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kP - b;
}

// Reduces a 128-bit product using 2^64 ≡ 2^32 - 1 (mod p), 2^96 ≡ -1 (mod p).
inline std::uint64_t reduce128(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
  std::uint64_t hi_hi = hi >> 32;
  std::uint64_t hi_lo = hi & 0xFFFFFFFFULL;
  std::uint64_t r = lo >= hi_hi ? lo - hi_hi : lo + kP - hi_hi;  // lo - hi_hi
  std::uint64_t t = (hi_lo << 32) - hi_lo;                       // hi_lo * (2^32 - 1)
  r += t;
  if (r < t || r >= kP) r -= kP;
  return r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return reduce128(static_cast<unsigned __int128>(a) * b);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base);
    base = mul_mod(base, base);
    exp >>= 1;
  }
  return r;
}

// In-place iterative radix-2 NTT; 7 generates the multiplicative group of p.
void ntt(std::vector<std::uint64_t>& a, bool invert) {
  const std::size_t m = a.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    std::uint64_t w = pow_mod(7, (kP - 1) / len);
    if (invert) w = pow_mod(w, kP - 2);
    for (std::size_t i = 0; i < m; i += len) {
      std::uint64_t cur = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::uint64_t u = a[i + j];
        std::uint64_t v = mul_mod(a[i + j + len / 2], cur);
        a[i + j] = add_mod(u, v);
        a[i + j + len / 2] = sub_mod(u, v);
        cur = mul_mod(cur, w);
      }
    }
  }
  if (invert) {
    std::uint64_t inv_m = pow_mod(m, kP - 2);
    for (auto& x : a) x = mul_mod(x, inv_m);
  }
}

void conv_ntt(const std::vector<std::vector<std::int64_t>>& inputs,
              const std::vector<BilinearTerm>& terms, std::size_t out_len,
              std::vector<std::int64_t>& out) {
  const std::size_t m = next_pow2(out_len);
  std::vector<std::vector<std::uint64_t>> spectra(inputs.size());
  std::vector<char> needed(inputs.size(), 0);
  for (const BilinearTerm& t : terms) needed[t.i] = needed[t.j] = 1;
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    if (!needed[idx]) continue;
    auto& sp = spectra[idx];
    sp.assign(m, 0);
    const auto& v = inputs[idx];
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::int64_t x = v[i];
      sp[i] = x >= 0 ? static_cast<std::uint64_t>(x) % kP
                     : kP - (static_cast<std::uint64_t>(-x) % kP);
    }
    ntt(sp, false);
  }
  std::vector<std::uint64_t> acc(m, 0);
  for (const BilinearTerm& t : terms) {
    const std::int64_t c = t.coeff;
    const std::uint64_t cm = c >= 0 ? static_cast<std::uint64_t>(c) % kP
                                    : kP - (static_cast<std::uint64_t>(-c) % kP);
    const auto& a = spectra[t.i];
    const auto& b = spectra[t.j];
    for (std::size_t kk = 0; kk < m; ++kk)
      acc[kk] = add_mod(acc[kk], mul_mod(cm, mul_mod(a[kk], b[kk])));
  }
  ntt(acc, true);
  out.assign(out_len, 0);
  for (std::size_t i = 0; i < out_len; ++i) {
    // Centered lift: values are exact for |value| < p/2.
    out[i] = acc[i] <= kP / 2 ? static_cast<std::int64_t>(acc[i])
                              : -static_cast<std::int64_t>(kP - acc[i]);
  }
}

}  // namespace

std::vector<std::int64_t> conv_bilinear(const std::vector<std::vector<std::int64_t>>& inputs,
                                        const std::vector<BilinearTerm>& terms,
                                        std::size_t out_len) {
  std::vector<std::int64_t> out;
  if (out_len == 0 || terms.empty()) {
    out.assign(out_len, 0);
    return out;
  }

  long double bound = 0.0L;
  long double direct_work = 0.0L;
  std::vector<std::int64_t> maxima(inputs.size(), -1);
  for (const BilinearTerm& t : terms) {
    if (maxima[t.i] < 0) maxima[t.i] = max_abs(inputs[t.i]);
    if (maxima[t.j] < 0) maxima[t.j] = max_abs(inputs[t.j]);
    const long double minlen =
        static_cast<long double>(std::min(inputs[t.i].size(), inputs[t.j].size()));
    bound += std::abs((long double)t.coeff) * (long double)maxima[t.i] *
             (long double)maxima[t.j] * minlen;
    direct_work += static_cast<long double>(inputs[t.i].size()) *
                   static_cast<long double>(inputs[t.j].size());
  }

  if (direct_work <= 16384.0L) {
    out.assign(out_len, 0);
    for (const BilinearTerm& t : terms)
      conv_naive_add(inputs[t.i], inputs[t.j], t.coeff, out);
    return out;
  }

  const std::size_t m = next_pow2(out_len);
  if (fft_is_safe(bound, m) && conv_fftw(inputs, terms, out_len, out)) {
    return out;
  }
  if (bound >= static_cast<long double>(kP / 2)) {
    throw Error(ErrorCode::PrecisionBound,
                "convolution magnitude exceeds the exact-arithmetic guarantee");
  }
  conv_ntt(inputs, terms, out_len, out);
  return out;
}

std::vector<std::int64_t> conv_exact(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::vector<std::int64_t>> inputs;
  inputs.push_back(a);
  inputs.push_back(b);
  return conv_bilinear(inputs, {{0, 1, 1}}, a.size() + b.size() - 1);
}

}  // namespace palwild::detail
