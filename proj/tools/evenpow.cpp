// evenpow: scan for powers of two whose decimal digits are all even, and
// poke at the measure-theoretic side of the same question.
//
// subcommands: sieve, verify, scan-exact, measure, summability, heuristic,
// orbit. Run with no arguments for the flag grammar.

#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "evenpow/exact.hpp"
#include "evenpow/measure.hpp"
#include "evenpow/orbit.hpp"
#include "evenpow/sieve.hpp"

namespace {

void usage(FILE* out) {
  std::fprintf(out,
    "usage: evenpow <subcommand> [flags]\n"
    "\n"
    "  sieve --start <p> --end <p> [--digits <D=54>] [--threads <T=available>]\n"
    "        [--partition blocks|stride] [--checkpoint <path>]\n"
    "        [--checkpoint-interval <N=10^8>] [--hits <path>]\n"
    "        [--verify-limit <n=10^6>]\n"
    "      scan exponents p in [start, end] for an all-<=4 tail of 2^p\n"
    "  verify <n>\n"
    "      exact check: are all decimal digits of 2^n even?\n"
    "  scan-exact --max-n <N>\n"
    "      exhaustive exact scan, lists both solution families\n"
    "  measure --d <d> | --d-max <d>\n"
    "      target-set measures: one depth, or a table up to a depth\n"
    "  summability --d-max <d>\n"
    "      rigorous upper bound for the total expected hit measure\n"
    "  heuristic [--mode paper|exact]\n"
    "      expected count of solutions from the digit model\n"
    "  orbit --x0 <decimal> --k-max <K> --d-cap <d> [--samples <S> --seed <s>]\n"
    "      rotation-orbit hit simulation; --samples switches to ensemble mode\n");
}

uint64_t parse_u64(const char* flag, const char* s) {
  if (s == nullptr || *s == '\0' || *s == '-')
    throw std::invalid_argument(std::string(flag) + ": expected a nonnegative integer");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0')
    throw std::invalid_argument(std::string(flag) + ": bad integer '" + s + "'");
  return v;
}

int parse_int(const char* flag, const char* s) {
  uint64_t v = parse_u64(flag, s);
  if (v > 1u << 30)
    throw std::invalid_argument(std::string(flag) + ": value out of range");
  return static_cast<int>(v);
}

const char* next_arg(const char* flag, int argc, char** argv, int& i) {
  if (i + 1 >= argc)
    throw std::invalid_argument(std::string(flag) + ": missing value");
  return argv[++i];
}

int cmd_sieve(int argc, char** argv) {
  evenpow::ScanConfig cfg;
  bool have_start = false, have_end = false;
  for (int i = 0; i < argc; ++i) {
    const char* a = argv[i];
    if (!std::strcmp(a, "--start")) {
      cfg.p_start = parse_u64(a, next_arg(a, argc, argv, i));
      have_start = true;
    } else if (!std::strcmp(a, "--end")) {
      cfg.p_end = parse_u64(a, next_arg(a, argc, argv, i));
      have_end = true;
    } else if (!std::strcmp(a, "--digits")) {
      cfg.digits = parse_int(a, next_arg(a, argc, argv, i));
    } else if (!std::strcmp(a, "--threads")) {
      cfg.workers = static_cast<unsigned>(parse_int(a, next_arg(a, argc, argv, i)));
    } else if (!std::strcmp(a, "--partition")) {
      const char* v = next_arg(a, argc, argv, i);
      if (!std::strcmp(v, "blocks")) {
        cfg.partition = evenpow::ScanConfig::Partition::blocks;
      } else if (!std::strcmp(v, "stride")) {
        cfg.partition = evenpow::ScanConfig::Partition::stride;
      } else {
        throw std::invalid_argument("--partition: expected blocks or stride");
      }
    } else if (!std::strcmp(a, "--checkpoint")) {
      cfg.checkpoint_path = next_arg(a, argc, argv, i);
    } else if (!std::strcmp(a, "--checkpoint-interval")) {
      cfg.checkpoint_interval = parse_u64(a, next_arg(a, argc, argv, i));
    } else if (!std::strcmp(a, "--hits")) {
      cfg.hits_path = next_arg(a, argc, argv, i);
    } else if (!std::strcmp(a, "--verify-limit")) {
      cfg.verify_limit = parse_u64(a, next_arg(a, argc, argv, i));
    } else {
      throw std::invalid_argument(std::string("sieve: unknown flag ") + a);
    }
  }
  if (!have_start || !have_end)
    throw std::invalid_argument("sieve: --start and --end are required");

  evenpow::ScanReport rep = evenpow::scan_range(cfg);
  for (const evenpow::SieveHit& h : rep.hits)
    std::printf("%s\n", evenpow::format_hit_line(h).c_str());
  std::printf("scanned=%" PRIu64 " hits=%zu throughput=%.6g resumed=%s\n",
              rep.exponents_scanned, rep.hits.size(), rep.throughput,
              rep.resumed ? "true" : "false");
  return 0;
}

int cmd_verify(int argc, char** argv) {
  if (argc != 1) throw std::invalid_argument("verify: expected exactly one exponent");
  uint64_t n = parse_u64("verify", argv[0]);
  evenpow::VerifyStatus st = evenpow::verify_even_power(n);
  std::string value = evenpow::pow2_exact(n).to_string();
  std::printf("n=%" PRIu64 " 2^n=%s all_even=%s\n", n, value.c_str(),
              st == evenpow::VerifyStatus::confirmed_solution ? "true" : "false");
  return 0;
}

int cmd_scan_exact(int argc, char** argv) {
  uint64_t n_max = 0;
  bool have = false;
  for (int i = 0; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--max-n")) {
      n_max = parse_u64("--max-n", next_arg("--max-n", argc, argv, i));
      have = true;
    } else {
      throw std::invalid_argument(std::string("scan-exact: unknown flag ") + argv[i]);
    }
  }
  if (!have) throw std::invalid_argument("scan-exact: --max-n is required");

  evenpow::ScanExactResult res = evenpow::scan_exact(n_max);
  std::printf("n-solutions:\n");
  for (uint64_t n : res.even_n) std::printf("%" PRIu64 "\n", n);
  std::printf("p-solutions:\n");
  for (uint64_t p : res.le4_p) std::printf("%" PRIu64 "\n", p);
  return 0;
}

void print_measure_row(const evenpow::MeasureReport& r) {
  if (std::isnan(r.decay_rate))
    std::printf("%d\t%.15g\t%.15g\t-\n", r.d, r.exact_measure, r.upper_bound);
  else
    std::printf("%d\t%.15g\t%.15g\t%.15g\n", r.d, r.exact_measure,
                r.upper_bound, r.decay_rate);
}

int cmd_measure(int argc, char** argv) {
  int d = 0, d_max = 0;
  for (int i = 0; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--d")) {
      d = parse_int("--d", next_arg("--d", argc, argv, i));
    } else if (!std::strcmp(argv[i], "--d-max")) {
      d_max = parse_int("--d-max", next_arg("--d-max", argc, argv, i));
    } else {
      throw std::invalid_argument(std::string("measure: unknown flag ") + argv[i]);
    }
  }
  if ((d == 0) == (d_max == 0))
    throw std::invalid_argument("measure: exactly one of --d or --d-max is required");
  std::vector<evenpow::MeasureReport> rows;
  if (d != 0)
    rows.push_back(evenpow::measure_B_d(d));
  else
    rows = evenpow::measure_table(d_max);
  std::printf("d\texact_measure\tupper_bound\tdecay_rate\n");
  for (const evenpow::MeasureReport& r : rows) print_measure_row(r);
  return 0;
}

int cmd_summability(int argc, char** argv) {
  int d_max = 0;
  for (int i = 0; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--d-max")) {
      d_max = parse_int("--d-max", next_arg("--d-max", argc, argv, i));
    } else {
      throw std::invalid_argument(std::string("summability: unknown flag ") + argv[i]);
    }
  }
  if (d_max == 0) throw std::invalid_argument("summability: --d-max is required");

  evenpow::SummabilityReport rep = evenpow::summability(d_max);
  std::printf("d\tmeasure\n");
  for (int i = 0; i < rep.d_max; ++i)
    std::printf("%d\t%.15g\n", i + 1, rep.per_d_measures[i]);
  std::printf("multiplicity_bound=%d\n", rep.multiplicity_bound);
  std::printf("partial_sum=%.15g\n", rep.partial_sum);
  std::printf("tail_bound=%.15g\n", rep.tail_bound);
  std::printf("total_upper_bound=%.15g\n", rep.total());
  return 0;
}

int cmd_heuristic(int argc, char** argv) {
  evenpow::HeuristicMode mode = evenpow::HeuristicMode::paper_geometric;
  for (int i = 0; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--mode")) {
      const char* v = next_arg("--mode", argc, argv, i);
      if (!std::strcmp(v, "paper")) {
        mode = evenpow::HeuristicMode::paper_geometric;
      } else if (!std::strcmp(v, "exact")) {
        mode = evenpow::HeuristicMode::exact_dk;
      } else {
        throw std::invalid_argument("--mode: expected paper or exact");
      }
    } else {
      throw std::invalid_argument(std::string("heuristic: unknown flag ") + argv[i]);
    }
  }
  std::printf("mode=%s\n", mode == evenpow::HeuristicMode::paper_geometric
                               ? "paper_geometric"
                               : "exact_dk");
  std::printf("expected_count=%.15g\n", evenpow::heuristic_expected_count(mode));
  return 0;
}

int cmd_orbit(int argc, char** argv) {
  evenpow::OrbitConfig cfg;
  bool have_x0 = false, have_kmax = false, have_dcap = false, ensemble = false;
  for (int i = 0; i < argc; ++i) {
    const char* a = argv[i];
    if (!std::strcmp(a, "--x0")) {
      cfg.x0 = next_arg(a, argc, argv, i);
      have_x0 = true;
    } else if (!std::strcmp(a, "--k-max")) {
      cfg.k_max = parse_u64(a, next_arg(a, argc, argv, i));
      have_kmax = true;
    } else if (!std::strcmp(a, "--d-cap")) {
      cfg.d_cap = parse_int(a, next_arg(a, argc, argv, i));
      have_dcap = true;
    } else if (!std::strcmp(a, "--samples")) {
      cfg.sample_count = parse_u64(a, next_arg(a, argc, argv, i));
      ensemble = true;
    } else if (!std::strcmp(a, "--seed")) {
      cfg.rng_seed = parse_u64(a, next_arg(a, argc, argv, i));
    } else {
      throw std::invalid_argument(std::string("orbit: unknown flag ") + a);
    }
  }
  if (!have_x0 || !have_kmax || !have_dcap)
    throw std::invalid_argument("orbit: --x0, --k-max and --d-cap are required");

  if (ensemble) {
    evenpow::EnsembleStats st = evenpow::ensemble_stats(cfg);
    std::printf("samples=%" PRIu64 " seed=%" PRIu64 " k_max=%" PRIu64 " d_cap=%d\n",
                cfg.sample_count, cfg.rng_seed, cfg.k_max, cfg.d_cap);
    std::printf("generator=%s\n", st.generator.c_str());
    std::printf("mean_hits=%.6f\n", st.mean_hits);
    std::printf("max_hits=%" PRIu64 "\n", st.max_hits);
    std::printf("histogram:\n");
    for (const auto& [count, times] : st.histogram)
      std::printf("%" PRIu64 "\t%" PRIu64 "\n", count, times);
  } else {
    evenpow::OrbitReport rep = evenpow::orbit_hits(cfg);
    std::printf("x0=%s k_max=%" PRIu64 " d_cap=%d\n", cfg.x0.c_str(), cfg.k_max,
                cfg.d_cap);
    std::printf("truncated=%s\n", rep.truncated ? "true" : "false");
    std::printf("hit_count=%" PRIu64 "\n", rep.hit_count);
    for (uint64_t k : rep.hit_ks) std::printf("k=%" PRIu64 "\n", k);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  const std::string cmd = argv[1];
  try {
    if (cmd == "sieve") return cmd_sieve(argc - 2, argv + 2);
    if (cmd == "verify") return cmd_verify(argc - 2, argv + 2);
    if (cmd == "scan-exact") return cmd_scan_exact(argc - 2, argv + 2);
    if (cmd == "measure") return cmd_measure(argc - 2, argv + 2);
    if (cmd == "summability") return cmd_summability(argc - 2, argv + 2);
    if (cmd == "heuristic") return cmd_heuristic(argc - 2, argv + 2);
    if (cmd == "orbit") return cmd_orbit(argc - 2, argv + 2);
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
      usage(stdout);
      return 0;
    }
    std::fprintf(stderr, "evenpow: unknown subcommand '%s'\n", cmd.c_str());
    usage(stderr);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
