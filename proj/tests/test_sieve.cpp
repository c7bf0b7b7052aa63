#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "evenpow/exact.hpp"
#include "evenpow/sieve.hpp"

using evenpow::ScanConfig;
using evenpow::ScanReport;
using evenpow::SieveHit;
using evenpow::HitStatus;
using evenpow::WorkerPlan;
using evenpow::partition_range;
using evenpow::scan_range;
using evenpow::Checkpoint;
using evenpow::read_checkpoint;
using evenpow::write_checkpoint;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("evenpow_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const char* name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<uint64_t> hit_ps(const ScanReport& r) {
  std::vector<uint64_t> out;
  for (const SieveHit& h : r.hits) out.push_back(h.p);
  return out;
}

ScanConfig basic(uint64_t p_start, uint64_t p_end) {
  ScanConfig cfg;
  cfg.p_start = p_start;
  cfg.p_end = p_end;
  cfg.workers = 2;
  return cfg;
}

SieveHit make_hit(uint64_t p, int digits) {
  SieveHit h;
  h.p = p;
  h.n = p + 1;
  h.tail_digits = evenpow::pow2_mod(p, digits).to_decimal_string();
  h.status = HitStatus::confirmed_solution;
  return h;
}

}  // namespace

TEST_CASE("sieve: partition examples") {
  auto stride = partition_range(0, 9, 2, ScanConfig::Partition::stride);
  REQUIRE(stride.size() == 2);
  CHECK(stride[0].seed_exponent == 0);
  CHECK(stride[0].step == 2);
  CHECK(stride[0].count == 5);  // 0 2 4 6 8
  CHECK(stride[1].seed_exponent == 1);
  CHECK(stride[1].step == 2);
  CHECK(stride[1].count == 5);  // 1 3 5 7 9

  auto blocks = partition_range(0, 9, 2, ScanConfig::Partition::blocks);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].seed_exponent == 0);
  CHECK(blocks[0].step == 1);
  CHECK(blocks[0].count == 5);  // [0,4]
  CHECK(blocks[1].seed_exponent == 5);
  CHECK(blocks[1].step == 1);
  CHECK(blocks[1].count == 5);  // [5,9]

  CHECK_THROWS_AS(partition_range(0, 9, 0, ScanConfig::Partition::blocks),
                  std::invalid_argument);
  CHECK_THROWS_AS(partition_range(9, 0, 2, ScanConfig::Partition::blocks),
                  std::invalid_argument);
}

TEST_CASE("sieve: partitions cover the range exactly once") {
  for (auto strategy :
       {ScanConfig::Partition::blocks, ScanConfig::Partition::stride}) {
    for (unsigned workers : {1u, 2u, 3u, 7u, 8u, 64u}) {
      for (auto [lo, hi] : std::vector<std::pair<uint64_t, uint64_t>>{
               {0, 10000}, {5, 5}, {17, 40}, {0, 2}}) {
        std::vector<int> seen(hi - lo + 1, 0);
        for (const WorkerPlan& plan : partition_range(lo, hi, workers, strategy)) {
          uint64_t p = plan.seed_exponent;
          for (uint64_t i = 0; i < plan.count; ++i, p += plan.step) {
            REQUIRE(p >= lo);
            REQUIRE(p <= hi);
            seen[p - lo] += 1;
          }
        }
        for (int c : seen) CHECK(c == 1);
      }
    }
  }
}

TEST_CASE("sieve: known range finds the known exponents") {
  ScanReport r = scan_range(basic(0, 100));
  CHECK(hit_ps(r) == std::vector<uint64_t>{0, 1, 2, 5, 10});
  for (const SieveHit& h : r.hits) {
    CHECK(h.status == HitStatus::confirmed_solution);
    CHECK(h.n == h.p + 1);
    CHECK(h.tail_digits.size() == 54);
    for (char c : h.tail_digits) CHECK(c <= '4');
  }
  CHECK(r.exponents_scanned == 101);
  CHECK_FALSE(r.resumed);
  CHECK(r.throughput > 0.0);

  CHECK(scan_range(basic(11, 11)).hits.empty());
}

TEST_CASE("sieve: agrees with the exact scan and is deterministic") {
  std::vector<uint64_t> want;  // ground truth from the exact chain
  for (uint64_t p : evenpow::scan_exact(100000).le4_p)
    if (p + 1 <= 100000) want.push_back(p);

  ScanConfig cfg = basic(0, 100000 - 1);
  std::vector<std::string> logs;
  for (unsigned workers : {1u, 3u}) {
    for (auto strategy :
         {ScanConfig::Partition::blocks, ScanConfig::Partition::stride}) {
      cfg.workers = workers;
      cfg.partition = strategy;
      ScanReport r = scan_range(cfg);
      CHECK(hit_ps(r) == want);
      std::string log;
      for (const SieveHit& h : r.hits) log += evenpow::format_hit_line(h) + "\n";
      logs.push_back(log);
    }
  }
  for (size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] == logs[0]);
}

TEST_CASE("sieve: hits at width D persist at smaller widths") {
  ScanConfig cfg = basic(0, 100000);
  ScanReport at54 = scan_range(cfg);
  cfg.digits = 36;
  ScanReport at36 = scan_range(cfg);
  cfg.digits = 18;
  ScanReport at18 = scan_range(cfg);

  auto contains_all = [](const std::vector<uint64_t>& sup,
                         const std::vector<uint64_t>& sub) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
  };
  CHECK(contains_all(hit_ps(at36), hit_ps(at54)));
  CHECK(contains_all(hit_ps(at18), hit_ps(at36)));
}

TEST_CASE("sieve: verify limit splits statuses") {
  ScanConfig cfg = basic(0, 100);
  cfg.verify_limit = 5;
  ScanReport r = scan_range(cfg);
  REQUIRE(hit_ps(r) == std::vector<uint64_t>{0, 1, 2, 5, 10});
  CHECK(r.hits[0].status == HitStatus::confirmed_solution);  // n=1
  CHECK(r.hits[1].status == HitStatus::confirmed_solution);  // n=2
  CHECK(r.hits[2].status == HitStatus::confirmed_solution);  // n=3
  CHECK(r.hits[3].status == HitStatus::unverified);          // n=6 > 5
  CHECK(r.hits[4].status == HitStatus::unverified);          // n=11
}

TEST_CASE("sieve: config validation") {
  CHECK_THROWS_AS(scan_range(basic(5, 4)), std::invalid_argument);
  ScanConfig cfg = basic(0, 10);
  cfg.digits = 0;
  CHECK_THROWS_AS(scan_range(cfg), std::invalid_argument);
  cfg.digits = 73;
  CHECK_THROWS_AS(scan_range(cfg), std::invalid_argument);
  cfg = basic(0, 10);
  cfg.checkpoint_interval = 0;
  CHECK_THROWS_AS(scan_range(cfg), std::invalid_argument);
}

TEST_CASE("sieve: hit line format") {
  SieveHit h = make_hit(10, 54);
  std::string line = evenpow::format_hit_line(h);
  CHECK(line == "10\t11\t" + std::string(50, '0') + "1024\tconfirmed_solution");
  h.status = HitStatus::unverified;
  CHECK(evenpow::format_hit_line(h).find("\tunverified") != std::string::npos);
}

TEST_CASE("sieve: checkpoint round trip") {
  TempDir dir;
  std::string path = dir.file("cp.txt");
  Checkpoint cp;
  cp.digits = 54;
  cp.next_p = 123457;
  cp.hits = {make_hit(0, 54), make_hit(10, 54)};
  write_checkpoint(path, cp);

  Checkpoint back = read_checkpoint(path);
  CHECK(back.digits == cp.digits);
  CHECK(back.next_p == cp.next_p);
  REQUIRE(back.hits.size() == 2);
  CHECK(back.hits[0].p == 0);
  CHECK(back.hits[1].p == 10);
  CHECK(back.hits[1].tail_digits == cp.hits[1].tail_digits);
  CHECK(back.hits[1].status == HitStatus::confirmed_solution);
}

TEST_CASE("sieve: corrupt checkpoints are rejected") {
  TempDir dir;
  auto write_raw = [&](const char* name, const std::string& body) {
    std::ofstream out(dir.file(name));
    out << body;
    return dir.file(name);
  };
  std::string tail54(53, '0');

  CHECK_THROWS_AS(read_checkpoint(dir.file("missing.txt")), std::runtime_error);
  CHECK_THROWS_AS(
      read_checkpoint(write_raw("h.txt", "other-format v9\nD=54\nnext_p=0\n")),
      std::runtime_error);
  CHECK_THROWS_AS(
      read_checkpoint(write_raw("d.txt", "evenpow-checkpoint v1\nD=x\nnext_p=0\n")),
      std::runtime_error);
  CHECK_THROWS_AS(
      read_checkpoint(write_raw("t.txt", "evenpow-checkpoint v1\nD=54\n")),
      std::runtime_error);
  // hit past next_p
  CHECK_THROWS_AS(read_checkpoint(write_raw(
                      "p.txt", "evenpow-checkpoint v1\nD=54\nnext_p=5\n10\t11\t" +
                                   tail54 + "1\tunverified\n")),
                  std::runtime_error);
  // n != p+1
  CHECK_THROWS_AS(read_checkpoint(write_raw(
                      "n.txt", "evenpow-checkpoint v1\nD=54\nnext_p=20\n10\t12\t" +
                                   tail54 + "1\tunverified\n")),
                  std::runtime_error);
  // tail width off by one
  CHECK_THROWS_AS(read_checkpoint(write_raw(
                      "w.txt", "evenpow-checkpoint v1\nD=54\nnext_p=20\n10\t11\t" +
                                   std::string(53, '0') + "\tunverified\n")),
                  std::runtime_error);
  // tail digit out of the sieve's range
  CHECK_THROWS_AS(read_checkpoint(write_raw(
                      "g.txt", "evenpow-checkpoint v1\nD=54\nnext_p=20\n10\t11\t" +
                                   tail54 + "9\tunverified\n")),
                  std::runtime_error);
  // out of order
  CHECK_THROWS_AS(
      read_checkpoint(write_raw("o.txt",
                                "evenpow-checkpoint v1\nD=54\nnext_p=20\n10\t11\t" +
                                    tail54 + "1\tunverified\n2\t3\t" + tail54 +
                                    "4\tunverified\n")),
      std::runtime_error);
}

TEST_CASE("sieve: resume guards") {
  TempDir dir;
  ScanConfig cfg = basic(0, 1000);
  cfg.checkpoint_path = dir.file("cp.txt");
  scan_range(cfg);

  // width change refuses to resume
  cfg.digits = 36;
  CHECK_THROWS_AS(scan_range(cfg), std::runtime_error);

  // gap between checkpoint and requested range refuses to resume
  cfg.digits = 54;
  cfg.p_start = 5000;
  cfg.p_end = 6000;
  CHECK_THROWS_AS(scan_range(cfg), std::runtime_error);

  // unwritable checkpoint path fails before scanning
  ScanConfig bad = basic(0, 10);
  bad.checkpoint_path = "/nonexistent_dir_for_sure/cp.txt";
  CHECK_THROWS_AS(scan_range(bad), std::runtime_error);
}

TEST_CASE("sieve: interrupted and resumed scans write identical bytes") {
  TempDir dir;
  const uint64_t end = 200000;
  const uint64_t interval = 50000;

  ScanConfig whole = basic(0, end);
  whole.checkpoint_path = dir.file("cp_whole.txt");
  whole.hits_path = dir.file("hits_whole.tsv");
  whole.checkpoint_interval = interval;
  scan_range(whole);

  ScanConfig staged = basic(0, end);
  staged.checkpoint_path = dir.file("cp_staged.txt");
  staged.hits_path = dir.file("hits_staged.tsv");
  staged.checkpoint_interval = interval;
  bool resumed_any = false;
  for (uint64_t stop = interval; stop <= end; stop += interval) {
    staged.p_end = stop - 1;  // halt exactly at each checkpoint boundary
    resumed_any |= scan_range(staged).resumed;
  }
  staged.p_end = end;
  ScanReport last = scan_range(staged);

  CHECK(resumed_any);
  CHECK(last.resumed);
  CHECK(slurp(staged.hits_path) == slurp(whole.hits_path));
  Checkpoint a = read_checkpoint(whole.checkpoint_path);
  Checkpoint b = read_checkpoint(staged.checkpoint_path);
  CHECK(a.next_p == end + 1);
  CHECK(b.next_p == end + 1);
  CHECK(a.hits.size() == b.hits.size());

  // resumed report still carries the full ordered hit list
  CHECK(hit_ps(last) == std::vector<uint64_t>{0, 1, 2, 5, 10});
}
