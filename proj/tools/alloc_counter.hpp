// Global operator new/delete replacement that tracks live heap bytes.
// Link alloc_counter.cpp into a binary to enable it; the counters cover
// every allocation made through the C++ runtime in that binary.
#pragma once

#include "palwild/cli.hpp"

namespace alloc_counter {

// Live bytes right now and the high-water mark since the last reset.
palwild::cli::AllocStats stats();

// Reset the high-water mark to the current live total.
void reset_peak();

// Register this counter as the CLI's allocation-stats provider.  The
// static initializer in alloc_counter.cpp already does this; calling it
// again is harmless.
void install();

}  // namespace alloc_counter
