#include "alloc_counter.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::uint64_t> g_current{0};
std::atomic<std::uint64_t> g_peak{0};

void bump(std::uint64_t size) {
  const std::uint64_t cur =
      g_current.fetch_add(size, std::memory_order_relaxed) + size;
  std::uint64_t peak = g_peak.load(std::memory_order_relaxed);
  while (cur > peak &&
         !g_peak.compare_exchange_weak(peak, cur, std::memory_order_relaxed)) {
  }
}

// Each block is over-allocated so the payload can be preceded by two
// 64-bit slots: [-1] the payload size, [-2] the offset from the raw
// malloc pointer to the payload.  The payload is aligned as requested.
void* counted_alloc(std::size_t size, std::size_t alignment) {
  if (alignment < 2 * sizeof(std::uint64_t)) alignment = 2 * sizeof(std::uint64_t);
  const std::size_t slack = 2 * sizeof(std::uint64_t) + alignment;
  void* raw = std::malloc(size + slack);
  if (raw == nullptr) return nullptr;
  const std::uintptr_t base = reinterpret_cast<std::uintptr_t>(raw);
  const std::uintptr_t payload =
      (base + 2 * sizeof(std::uint64_t) + alignment - 1) & ~(alignment - 1);
  std::uint64_t* head = reinterpret_cast<std::uint64_t*>(payload);
  head[-1] = size;
  head[-2] = payload - base;
  bump(size);
  return reinterpret_cast<void*>(payload);
}

void counted_free(void* p) noexcept {
  if (p == nullptr) return;
  std::uint64_t* head = static_cast<std::uint64_t*>(p);
  const std::uint64_t size = head[-1];
  const std::uint64_t offset = head[-2];
  g_current.fetch_sub(size, std::memory_order_relaxed);
  std::free(reinterpret_cast<char*>(p) - offset);
}

void* counted_alloc_or_throw(std::size_t size, std::size_t alignment) {
  void* p = counted_alloc(size, alignment);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

struct Registrar {
  Registrar() { alloc_counter::install(); }
};
Registrar g_registrar;

}  // namespace

namespace alloc_counter {

palwild::cli::AllocStats stats() {
  palwild::cli::AllocStats s;
  s.current = g_current.load(std::memory_order_relaxed);
  s.peak = g_peak.load(std::memory_order_relaxed);
  return s;
}

void reset_peak() {
  g_peak.store(g_current.load(std::memory_order_relaxed),
               std::memory_order_relaxed);
}

void install() { palwild::cli::set_alloc_stats_provider(&stats, &reset_peak); }

}  // namespace alloc_counter

void* operator new(std::size_t size) {
  return counted_alloc_or_throw(size, alignof(std::max_align_t));
}
void* operator new[](std::size_t size) {
  return counted_alloc_or_throw(size, alignof(std::max_align_t));
}
void* operator new(std::size_t size, std::align_val_t al) {
  return counted_alloc_or_throw(size, static_cast<std::size_t>(al));
}
void* operator new[](std::size_t size, std::align_val_t al) {
  return counted_alloc_or_throw(size, static_cast<std::size_t>(al));
}
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  return counted_alloc(size, alignof(std::max_align_t));
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  return counted_alloc(size, alignof(std::max_align_t));
}
void* operator new(std::size_t size, std::align_val_t al,
                   const std::nothrow_t&) noexcept {
  return counted_alloc(size, static_cast<std::size_t>(al));
}
void* operator new[](std::size_t size, std::align_val_t al,
                     const std::nothrow_t&) noexcept {
  return counted_alloc(size, static_cast<std::size_t>(al));
}

void operator delete(void* p) noexcept { counted_free(p); }
void operator delete[](void* p) noexcept { counted_free(p); }
void operator delete(void* p, std::size_t) noexcept { counted_free(p); }
void operator delete[](void* p, std::size_t) noexcept { counted_free(p); }
void operator delete(void* p, std::align_val_t) noexcept { counted_free(p); }
void operator delete[](void* p, std::align_val_t) noexcept { counted_free(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept {
  counted_free(p);
}
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept {
  counted_free(p);
}
void operator delete(void* p, const std::nothrow_t&) noexcept { counted_free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept {
  counted_free(p);
}
void operator delete(void* p, std::align_val_t, const std::nothrow_t&) noexcept {
  counted_free(p);
}
void operator delete[](void* p, std::align_val_t, const std::nothrow_t&) noexcept {
  counted_free(p);
}
