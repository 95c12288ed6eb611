#pragma once
// Command-line front end as a library: input parsing (plain text / FASTA),
// algorithm dispatch, deterministic TSV / JSON serialization, and the
// benchmark harness. The `palwild` binary is a thin wrapper over main_entry.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "palwild/core.hpp"

namespace palwild::cli {

enum class Algo { Naive, Lce, Precise, Approx };

const char* algo_name(Algo a);

struct RunConfig {
  Algo algo = Algo::Precise;
  std::int64_t k = 0;
  std::optional<double> epsilon;  // required iff algo == Approx
  char wildcard_char = '?';
  bool map_n = false;  // FASTA convention: 'N'/'n' are wildcards too
  enum class Format { Tsv, Json } format = Format::Tsv;
  bool longest_only = false;
  bool all_centers = false;  // emit zero-length centers as well
};

// One parsed input record; `value` is empty when the record failed to parse,
// with the reason in `error` (other records are still processed).
struct ParsedRecord {
  std::string id;
  std::optional<WildcardString> value;
  std::string error;
};

// Plain text (whole stream minus one trailing newline, record id "seq1") or
// FASTA ('>'-headed records, sequence lines concatenated, id = first header
// token). A leading '>' selects FASTA.
std::vector<ParsedRecord> parse_input(std::istream& in, char wildcard_char,
                                      bool map_n);

// Processes all records, writing results to `out` and per-record errors to
// `err`. Returns the process exit code: 0 on full success, 1 if any record
// failed.
int run(const RunConfig& cfg, std::istream& in, std::ostream& out,
        std::ostream& err);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<double> densities;
  std::vector<std::size_t> sigmas;
  std::vector<std::int64_t> ks;
  std::vector<Algo> algos;
  double epsilon = 0.25;  // used by approx rows
  std::uint64_t seed = 1;
  int reps = 1;
  bool dump_inputs = false;  // print generated inputs instead of timings
};

// Deterministic input generator used by the benchmark harness: string number
// `index` (0-based, in nested loop order sizes->densities->sigmas->ks->reps)
// comes from std::mt19937_64 seeded with seed + index * 0x9E3779B97F4A7C15;
// per position, one draw v decides wildcard (v % 1000000 < density * 1000000)
// and solid positions take a second draw w for the symbol alphabet[w % sigma].
std::string generate_input(std::uint64_t seed, std::uint64_t index, std::size_t n,
                           double density, std::size_t sigma);

// Runs the benchmark grid, writing CSV
// `algo,n,G,sigma,k,epsilon,seed,rep,millis,peak_mem_estimate` to `out`
// (epsilon empty for non-approx rows). With dump_inputs, writes the generated
// inputs in FASTA form instead. Returns the process exit code.
int bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err);

// Full argv interface: `palwild [options] [FILE|-]` or `palwild bench ...`.
// Exit codes: 0 success, 1 runtime error, 2 usage error.
int main_entry(int argc, const char* const* argv);

// Optional allocator-statistics hook (registered by the binary's allocation
// counter); feeds the bench peak_mem_estimate column.
struct AllocStats {
  std::uint64_t current = 0;
  std::uint64_t peak = 0;
};
using AllocStatsFn = AllocStats (*)();
using AllocResetFn = void (*)();
void set_alloc_stats_provider(AllocStatsFn stats, AllocResetFn reset_peak);

}  // namespace palwild::cli
