#include "palwild/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <istream>
#include <random>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "palwild/approx.hpp"
#include "palwild/lce.hpp"
#include "palwild/naive.hpp"
#include "palwild/precise.hpp"

namespace palwild::cli {
namespace {

AllocStatsFn g_alloc_stats = nullptr;
AllocResetFn g_alloc_reset = nullptr;

using ordered_json = nlohmann::ordered_json;

CenteredRadiusArray compute(Algo algo, std::int64_t k, std::optional<double> epsilon,
                            const WildcardString& s) {
  switch (algo) {
    case Algo::Naive:
      return brute_all_maximal(s, k);
    case Algo::Lce:
      return all_maximal_lce(s, k);
    case Algo::Precise:
      return precise_all_maximal(s, k);
    case Algo::Approx:
      return approx_all_maximal(s, epsilon.value(), k);
  }
  throw Error(ErrorCode::InternalInvariant, "unknown algorithm");
}

struct Hit {
  std::size_t center = 0;  // t in [1, 2n-1]
  std::size_t start = 0;
  std::size_t end = 0;  // start-1 for zero-length centers
  std::int64_t length = 0;
  std::int64_t mismatches = 0;
};

std::vector<Hit> hits_from_lengths(const CenteredRadiusArray& arr, bool all_centers,
                                   bool longest_only) {
  std::vector<Hit> hits;
  std::int64_t longest = 0;
  for (std::size_t t = 1; t <= arr.centers(); ++t) {
    const CenterEntry& e = arr.at_center(t);
    if (e.length == 0 && !all_centers) continue;
    Hit h;
    h.center = t;
    h.length = e.length;
    h.mismatches = e.mismatches;
    if (e.length > 0) {
      h.start = factor_start(t, e.length);
      h.end = factor_end(t, e.length);
    } else {
      h.start = (t + 2) / 2;
      h.end = h.start - 1;
    }
    longest = std::max(longest, e.length);
    hits.push_back(h);
  }
  if (longest_only) {
    std::erase_if(hits, [&](const Hit& h) { return h.length != longest; });
  }
  return hits;
}

void write_tsv_rows(std::ostream& out, const std::string& id,
                    const std::vector<Hit>& hits) {
  for (const Hit& h : hits) {
    out << id << '\t' << h.center << '\t' << h.start << '\t' << h.end << '\t'
        << h.length << '\t' << h.mismatches << '\n';
  }
}

void write_json_record(std::ostream& out, const RunConfig& cfg, const std::string& id,
                       const WildcardString& s, const std::vector<Hit>& hits) {
  ordered_json j;
  j["id"] = id;
  j["n"] = s.size();
  j["G"] = s.fragment_count();
  j["k"] = cfg.k;
  j["algo"] = algo_name(cfg.algo);
  if (cfg.algo == Algo::Approx) {
    j["epsilon"] = *cfg.epsilon;
    j["guarantee"] = 1.0 + *cfg.epsilon;
  }
  ordered_json arr = ordered_json::array();
  for (const Hit& h : hits) {
    arr.push_back(ordered_json{{"center", h.center},
                               {"start", h.start},
                               {"end", h.end},
                               {"length", h.length},
                               {"mismatches", h.mismatches}});
  }
  j["hits"] = std::move(arr);
  out << j.dump() << '\n';
}

std::string_view first_token(std::string_view s) {
  const std::size_t pos = s.find_first_of(" \t");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

}  // namespace

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Naive:
      return "naive";
    case Algo::Lce:
      return "lce";
    case Algo::Precise:
      return "precise";
    case Algo::Approx:
      return "approx";
  }
  return "?";
}

std::vector<ParsedRecord> parse_input(std::istream& in, char wildcard_char,
                                      bool map_n) {
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  std::vector<ParsedRecord> records;
  const auto emit = [&](std::string id, std::string_view text) {
    ParsedRecord r;
    r.id = std::move(id);
    try {
      r.value = WildcardString::from_text(text, wildcard_char, map_n);
    } catch (const Error& e) {
      r.error = e.what();
    }
    records.push_back(std::move(r));
  };

  if (!content.empty() && content.front() == '>') {
    std::string id;
    std::string seq;
    bool open = false;
    std::size_t ordinal = 0;
    std::string_view rest(content);
    while (!rest.empty()) {
      std::size_t eol = rest.find('\n');
      std::string_view line = rest.substr(0, eol);
      rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty() && line.front() == '>') {
        if (open) emit(std::move(id), seq);
        ++ordinal;
        id = std::string(first_token(line.substr(1)));
        if (id.empty()) id = "record" + std::to_string(ordinal);
        seq.clear();
        open = true;
      } else if (open) {
        seq.append(line);
      }
    }
    if (open) emit(std::move(id), seq);
  } else {
    std::string_view text(content);
    if (text.ends_with('\n')) text.remove_suffix(1);
    if (text.ends_with('\r')) text.remove_suffix(1);
    emit("seq1", text);
  }
  return records;
}

int run(const RunConfig& cfg, std::istream& in, std::ostream& out,
        std::ostream& err) {
  if (cfg.algo == Algo::Approx &&
      (!cfg.epsilon || !(*cfg.epsilon > 0.0 && *cfg.epsilon <= 0.5))) {
    err << "palwild: --algo approx requires --epsilon in (0, 0.5]\n";
    return 2;
  }
  const std::vector<ParsedRecord> records =
      parse_input(in, cfg.wildcard_char, cfg.map_n);

  if (cfg.format == RunConfig::Format::Tsv) {
    out << "record\tcenter\tstart\tend\tlength\tmismatches\n";
  }
  bool failed = false;
  for (const ParsedRecord& rec : records) {
    if (!rec.value) {
      err << "palwild: record '" << rec.id << "': " << rec.error << '\n';
      failed = true;
      continue;
    }
    CenteredRadiusArray arr;
    try {
      arr = compute(cfg.algo, cfg.k, cfg.epsilon, *rec.value);
    } catch (const Error& e) {
      err << "palwild: record '" << rec.id << "': " << e.what() << '\n';
      failed = true;
      continue;
    }
    const std::vector<Hit> hits =
        hits_from_lengths(arr, cfg.all_centers, cfg.longest_only);
    if (cfg.format == RunConfig::Format::Tsv) {
      write_tsv_rows(out, rec.id, hits);
    } else {
      write_json_record(out, cfg, rec.id, *rec.value, hits);
    }
  }
  return failed ? 1 : 0;
}

std::string generate_input(std::uint64_t seed, std::uint64_t index, std::size_t n,
                           double density, std::size_t sigma) {
  static constexpr std::string_view kAlphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::mt19937_64 rng(seed + index * 0x9E3779B97F4A7C15ULL);
  const std::uint64_t cut =
      static_cast<std::uint64_t>(std::llround(density * 1000000.0));
  const std::size_t sig = std::clamp<std::size_t>(sigma, 1, kAlphabet.size());
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 1000000 < cut) {
      s.push_back('?');
    } else {
      s.push_back(kAlphabet[rng() % sig]);
    }
  }
  return s;
}

int bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchConfig c = cfg;
  if (c.sizes.empty()) c.sizes = {1024};
  if (c.densities.empty()) c.densities = {0.25};
  if (c.sigmas.empty()) c.sigmas = {4};
  if (c.ks.empty()) c.ks = {0};
  if (c.algos.empty()) c.algos = {Algo::Precise};

  if (!c.dump_inputs) {
    out << "algo,n,G,sigma,k,epsilon,seed,rep,millis,peak_mem_estimate\n";
  }
  std::uint64_t index = 0;
  for (std::size_t n : c.sizes) {
    for (double density : c.densities) {
      for (std::size_t sigma : c.sigmas) {
        for (std::int64_t k : c.ks) {
          for (int rep = 1; rep <= c.reps; ++rep) {
            const std::string text =
                generate_input(c.seed, index, n, density, sigma);
            ++index;
            if (c.dump_inputs) {
              char head[160];
              std::snprintf(head, sizeof(head),
                            ">bench-%llu n=%zu density=%g sigma=%zu k=%lld rep=%d",
                            static_cast<unsigned long long>(index - 1), n, density,
                            sigma, static_cast<long long>(k), rep);
              out << head << '\n' << text << '\n';
              continue;
            }
            WildcardString s = WildcardString::from_text(text, '?', false);
            const std::size_t G = s.fragment_count();
            for (Algo algo : c.algos) {
              if (g_alloc_reset) g_alloc_reset();
              const auto t0 = std::chrono::steady_clock::now();
              try {
                compute(algo, k, c.epsilon, s);
              } catch (const Error& e) {
                err << "palwild: bench " << algo_name(algo) << " n=" << n << ": "
                    << e.what() << '\n';
                return 1;
              }
              const auto t1 = std::chrono::steady_clock::now();
              const double ms =
                  std::chrono::duration<double, std::milli>(t1 - t0).count();
              const std::uint64_t peak = g_alloc_stats ? g_alloc_stats().peak : 0;
              char eps_col[32] = "";
              if (algo == Algo::Approx) {
                std::snprintf(eps_col, sizeof(eps_col), "%g", c.epsilon);
              }
              char row[256];
              std::snprintf(row, sizeof(row),
                            "%s,%zu,%zu,%zu,%lld,%s,%llu,%d,%.3f,%llu\n",
                            algo_name(algo), n, G, sigma, static_cast<long long>(k),
                            eps_col, static_cast<unsigned long long>(c.seed), rep, ms,
                            static_cast<unsigned long long>(peak));
              out << row;
            }
          }
        }
      }
    }
  }
  return 0;
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"maximal palindromic factors of strings with wildcards"};
  app.name("palwild");

  std::string algo_str = "precise";
  std::string format_str = "tsv";
  std::string wildcard_str = "?";
  std::string file = "-";
  double epsilon = 0.0;
  RunConfig cfg;

  app.add_option("--algo", algo_str, "algorithm: naive | lce | precise | approx")
      ->check(CLI::IsMember({"naive", "lce", "precise", "approx"}));
  app.add_option("--k", cfg.k, "mismatch budget (default 0)")
      ->check(CLI::NonNegativeNumber);
  CLI::Option* eps_opt =
      app.add_option("--epsilon", epsilon, "approximation parameter in (0, 0.5]");
  app.add_option("--wildcard", wildcard_str, "wildcard character (default '?')");
  app.add_flag("--map-n", cfg.map_n, "treat 'N'/'n' as wildcards too");
  app.add_option("--format", format_str, "output format: tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}));
  app.add_flag("--longest", cfg.longest_only, "emit only the longest hits");
  app.add_flag("--all-centers", cfg.all_centers, "emit zero-length centers too");
  app.add_option("file", file, "input file, or - for stdin");

  BenchConfig bench_cfg;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "benchmark harness with generated inputs");
  std::vector<std::string> bench_algos = {"precise"};
  bench_cmd->add_option("--sizes", bench_cfg.sizes, "input lengths")
      ->delimiter(',');
  bench_cmd->add_option("--densities", bench_cfg.densities, "wildcard densities")
      ->delimiter(',');
  bench_cmd->add_option("--sigmas", bench_cfg.sigmas, "alphabet sizes")
      ->delimiter(',');
  bench_cmd->add_option("--ks", bench_cfg.ks, "mismatch budgets")->delimiter(',');
  bench_cmd->add_option("--algos", bench_algos, "algorithms to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"naive", "lce", "precise", "approx"}));
  bench_cmd->add_option("--epsilon", bench_cfg.epsilon, "epsilon for approx rows");
  bench_cmd->add_option("--seed", bench_cfg.seed, "generator seed");
  bench_cmd->add_option("--reps", bench_cfg.reps, "repetitions per configuration")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--dump-inputs", bench_cfg.dump_inputs,
                      "print generated inputs instead of timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (bench_cmd->parsed()) {
    bench_cfg.algos.clear();
    for (const std::string& a : bench_algos) {
      if (a == "naive") bench_cfg.algos.push_back(Algo::Naive);
      if (a == "lce") bench_cfg.algos.push_back(Algo::Lce);
      if (a == "precise") bench_cfg.algos.push_back(Algo::Precise);
      if (a == "approx") bench_cfg.algos.push_back(Algo::Approx);
    }
    return bench(bench_cfg, std::cout, std::cerr);
  }

  if (algo_str == "naive") cfg.algo = Algo::Naive;
  if (algo_str == "lce") cfg.algo = Algo::Lce;
  if (algo_str == "precise") cfg.algo = Algo::Precise;
  if (algo_str == "approx") cfg.algo = Algo::Approx;
  cfg.format = format_str == "json" ? RunConfig::Format::Json : RunConfig::Format::Tsv;
  if (wildcard_str.size() != 1) {
    std::cerr << "palwild: --wildcard expects a single character\n";
    return 2;
  }
  cfg.wildcard_char = wildcard_str[0];
  if (eps_opt->count() > 0) {
    cfg.epsilon = epsilon;
  }
  if (cfg.algo == Algo::Approx &&
      (!cfg.epsilon || !(*cfg.epsilon > 0.0 && *cfg.epsilon <= 0.5))) {
    std::cerr << "palwild: --algo approx requires --epsilon in (0, 0.5]\n";
    return 2;
  }

  if (file == "-") {
    return run(cfg, std::cin, std::cout, std::cerr);
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "palwild: cannot open '" << file << "'\n";
    return 1;
  }
  return run(cfg, in, std::cout, std::cerr);
}

void set_alloc_stats_provider(AllocStatsFn stats, AllocResetFn reset_peak) {
  g_alloc_stats = stats;
  g_alloc_reset = reset_peak;
}

}  // namespace palwild::cli
