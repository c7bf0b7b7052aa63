#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evenpow/residue.hpp"

namespace evenpow {

struct ScanConfig {
  uint64_t p_start = 0;
  uint64_t p_end = 0;
  int digits = 54;
  unsigned workers = 0;  // 0 = one per hardware thread
  enum class Partition { blocks, stride } partition = Partition::blocks;
  std::string checkpoint_path;  // empty = no checkpointing
  uint64_t checkpoint_interval = 100000000ull;  // exponents between writes
  std::string hits_path;        // empty = no hit log file
  uint64_t verify_limit = 1000000ull;  // exact-verify hits with n <= this
};

enum class HitStatus { confirmed_solution, refuted, unverified };

const char* to_string(HitStatus s);

struct SieveHit {
  uint64_t p = 0;
  uint64_t n = 0;            // p + 1, the exponent of the even-digit candidate
  std::string tail_digits;   // trailing digits of 2^p, exactly D characters
  HitStatus status = HitStatus::unverified;
  double wall_time = 0.0;    // seconds into the scan; in-memory only
};

// One line of the hit log: p, n, tail_digits, status, tab-separated. The
// checkpoint file reuses the same record format, so the line must never
// grow timestamp or locale-dependent fields.
std::string format_hit_line(const SieveHit& h);

struct WorkerPlan {
  uint64_t seed_exponent = 0;
  uint64_t step = 1;
  uint64_t count = 0;
};

// Splits [p_start, p_end] across workers: contiguous near-equal blocks
// (advanced by doubling) or arithmetic progressions with stride equal to
// the worker count (advanced by one modular multiply). Plans cover the
// range exactly once; trailing plans may be empty when the range is small.
std::vector<WorkerPlan> partition_range(uint64_t p_start, uint64_t p_end,
                                        unsigned workers,
                                        ScanConfig::Partition strategy);

struct ScanReport {
  std::vector<SieveHit> hits;      // sorted by p
  uint64_t exponents_scanned = 0;  // tested by this invocation
  double throughput = 0.0;         // exponents per second, approximate
  bool resumed = false;
};

// Tests every p in [p_start, p_end] for an all-<=4 tail of 2^p mod 10^D.
// Workers own disjoint exponent sets and report to a single aggregator
// thread (the caller's); hits are flushed to the log strictly in p order
// once no unfinished worker could still produce a smaller p, which makes
// the log byte-identical across worker counts, partition strategies, and
// checkpoint/resume splits. Hits with n <= verify_limit get an exact
// verdict inline; larger ones are logged unverified.
ScanReport scan_range(const ScanConfig& cfg);

struct Checkpoint {
  int digits = 0;
  uint64_t next_p = 0;          // first unscanned exponent
  std::vector<SieveHit> hits;   // every recorded hit has p < next_p
};

// Line-oriented text, written via temp file + rename so a crash never
// leaves a half-written file behind. Readers reject version, width, or
// record corruption with std::runtime_error rather than guessing.
Checkpoint read_checkpoint(const std::string& path);
void write_checkpoint(const std::string& path, const Checkpoint& cp);

}  // namespace evenpow
