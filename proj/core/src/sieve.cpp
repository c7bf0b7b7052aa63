#include "evenpow/sieve.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>
#include <utility>

#include "evenpow/exact.hpp"

namespace evenpow {

namespace {

// Workers report progress once per batch; the batch also sets the grain of
// frontier advancement, hit flushing, and checkpoint cadence rounding.
constexpr uint64_t kProgressBatch = 1ull << 16;

struct Event {
  enum class Kind { hit, progress, done };
  Kind kind;
  unsigned worker;
  uint64_t p;  // hit: the hit exponent; progress/done: next unscanned exponent
  std::string tail;
};

// single-consumer FIFO; hits are rare and progress is batched, so a mutex
// around a deque is nowhere near contention
class EventQueue {
 public:
  void push(Event e) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      q_.push_back(std::move(e));
    }
    cv_.notify_one();
  }
  Event pop() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return !q_.empty(); });
    Event e = std::move(q_.front());
    q_.pop_front();
    return e;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Event> q_;
};

void validate(const ScanConfig& cfg) {
  if (cfg.p_start > cfg.p_end)
    throw std::invalid_argument("scan: p_start > p_end");
  if (cfg.p_end == UINT64_MAX)
    throw std::invalid_argument("scan: p_end too large");
  if (cfg.digits < Residue::kMinDigits || cfg.digits > Residue::kMaxDigits)
    throw std::invalid_argument("scan: digits must be in [" +
                                std::to_string(Residue::kMinDigits) + ", " +
                                std::to_string(Residue::kMaxDigits) + "]");
  if (cfg.checkpoint_interval == 0)
    throw std::invalid_argument("scan: checkpoint interval must be >= 1");
}

HitStatus parse_status(const std::string& s) {
  if (s == "confirmed_solution") return HitStatus::confirmed_solution;
  if (s == "refuted") return HitStatus::refuted;
  if (s == "unverified") return HitStatus::unverified;
  throw std::runtime_error("unknown hit status: " + s);
}

SieveHit parse_hit_line(const std::string& line, int digits) {
  size_t a = line.find('\t');
  size_t b = (a == std::string::npos) ? a : line.find('\t', a + 1);
  size_t c = (b == std::string::npos) ? b : line.find('\t', b + 1);
  if (c == std::string::npos)
    throw std::runtime_error("malformed hit record: " + line);
  SieveHit h;
  try {
    h.p = std::stoull(line.substr(0, a));
    h.n = std::stoull(line.substr(a + 1, b - a - 1));
  } catch (const std::exception&) {
    throw std::runtime_error("malformed hit record: " + line);
  }
  h.tail_digits = line.substr(b + 1, c - b - 1);
  h.status = parse_status(line.substr(c + 1));
  if (h.n != h.p + 1)
    throw std::runtime_error("hit record with n != p+1: " + line);
  if (h.tail_digits.size() != static_cast<size_t>(digits))
    throw std::runtime_error("hit record tail width mismatch: " + line);
  for (char ch : h.tail_digits)
    if (ch < '0' || ch > '4')
      throw std::runtime_error("hit record tail has a digit > 4: " + line);
  return h;
}

}  // namespace

const char* to_string(HitStatus s) {
  switch (s) {
    case HitStatus::confirmed_solution: return "confirmed_solution";
    case HitStatus::refuted: return "refuted";
    case HitStatus::unverified: return "unverified";
  }
  return "unverified";
}

std::string format_hit_line(const SieveHit& h) {
  return std::to_string(h.p) + '\t' + std::to_string(h.n) + '\t' +
         h.tail_digits + '\t' + to_string(h.status);
}

std::vector<WorkerPlan> partition_range(uint64_t p_start, uint64_t p_end,
                                        unsigned workers,
                                        ScanConfig::Partition strategy) {
  if (workers < 1)
    throw std::invalid_argument("partition_range: workers must be >= 1");
  if (p_start > p_end)
    throw std::invalid_argument("partition_range: p_start > p_end");
  const uint64_t total = p_end - p_start + 1;
  std::vector<WorkerPlan> plans(workers);
  if (strategy == ScanConfig::Partition::blocks) {
    uint64_t base = total / workers;
    uint64_t rem = total % workers;
    uint64_t at = p_start;
    for (unsigned t = 0; t < workers; ++t) {
      uint64_t count = base + (t < rem ? 1 : 0);
      plans[t] = {at, 1, count};
      at += count;
    }
  } else {
    for (unsigned t = 0; t < workers; ++t) {
      uint64_t count = (t < total) ? (total - 1 - t) / workers + 1 : 0;
      plans[t] = {p_start + t, workers, count};
    }
  }
  return plans;
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "evenpow-checkpoint v1")
    throw std::runtime_error("unrecognized checkpoint header in " + path);
  Checkpoint cp;
  if (!std::getline(in, line) || line.rfind("D=", 0) != 0)
    throw std::runtime_error("checkpoint missing D line in " + path);
  try {
    cp.digits = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw std::runtime_error("bad D line in " + path);
  }
  if (!std::getline(in, line) || line.rfind("next_p=", 0) != 0)
    throw std::runtime_error("checkpoint missing next_p line in " + path);
  try {
    cp.next_p = std::stoull(line.substr(7));
  } catch (const std::exception&) {
    throw std::runtime_error("bad next_p line in " + path);
  }
  uint64_t prev = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SieveHit h = parse_hit_line(line, cp.digits);
    if (h.p >= cp.next_p)
      throw std::runtime_error("checkpoint records a hit at or past next_p: " + line);
    if (!first && h.p <= prev)
      throw std::runtime_error("checkpoint hits out of order near: " + line);
    prev = h.p;
    first = false;
    cp.hits.push_back(std::move(h));
  }
  return cp;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
    out << "evenpow-checkpoint v1\nD=" << cp.digits << "\nnext_p=" << cp.next_p
        << "\n";
    for (const SieveHit& h : cp.hits) out << format_hit_line(h) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("short write on checkpoint: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move checkpoint into place: " + path);
}

ScanReport scan_range(const ScanConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  unsigned workers = cfg.workers;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }

  ScanReport report;
  uint64_t effective_start = cfg.p_start;

  if (!cfg.checkpoint_path.empty() &&
      std::filesystem::exists(cfg.checkpoint_path)) {
    Checkpoint cp = read_checkpoint(cfg.checkpoint_path);
    if (cp.digits != cfg.digits)
      throw std::runtime_error(
          "checkpoint width D=" + std::to_string(cp.digits) +
          " does not match configured D=" + std::to_string(cfg.digits) +
          "; refusing to resume");
    if (cp.next_p < cfg.p_start)
      throw std::runtime_error(
          "checkpoint ends before the requested range begins; refusing to "
          "resume across the gap");
    effective_start = cp.next_p;
    report.hits = std::move(cp.hits);
    report.resumed = true;
  }

  // The log is rewritten from recorded state and then appended to, so an
  // interrupted run plus its resume produce the same bytes as one run.
  std::ofstream hits_out;
  if (!cfg.hits_path.empty()) {
    hits_out.open(cfg.hits_path, std::ios::trunc);
    if (!hits_out)
      throw std::runtime_error("cannot open hits file: " + cfg.hits_path);
    for (const SieveHit& h : report.hits) hits_out << format_hit_line(h) << '\n';
    hits_out.flush();
    if (!hits_out)
      throw std::runtime_error("cannot write hits file: " + cfg.hits_path);
  }

  // records the resume point and doubles as a writability probe, so a bad
  // path fails here, before any scanning
  if (!cfg.checkpoint_path.empty())
    write_checkpoint(cfg.checkpoint_path,
                     {cfg.digits, effective_start, report.hits});

  if (effective_start > cfg.p_end) return report;  // nothing left to scan

  const uint64_t span = cfg.p_end - effective_start + 1;
  const auto plans = partition_range(effective_start, cfg.p_end, workers,
                                     cfg.partition);

  EventQueue queue;
  std::vector<std::thread> pool;
  unsigned launched = 0;
  for (size_t t = 0; t < plans.size(); ++t) {
    if (plans[t].count == 0) continue;
    ++launched;
    pool.emplace_back([&queue, &cfg, plan = plans[t], t] {
      Residue r = pow2_mod(plan.seed_exponent, cfg.digits);
      const bool by_double = plan.step == 1;
      const Residue factor = by_double ? Residue::from_u64(2, cfg.digits)
                                       : pow2_mod(plan.step, cfg.digits);
      uint64_t p = plan.seed_exponent;
      uint64_t since = 0;
      for (uint64_t i = 0; i < plan.count; ++i) {
        if (digits_all_le4(r))
          queue.push({Event::Kind::hit, static_cast<unsigned>(t), p,
                      r.to_decimal_string()});
        r = by_double ? double_mod(r) : mul_mod(r, factor);
        p += plan.step;
        if (++since == kProgressBatch) {
          since = 0;
          queue.push({Event::Kind::progress, static_cast<unsigned>(t), p, {}});
        }
      }
      queue.push({Event::Kind::done, static_cast<unsigned>(t), p, {}});
    });
  }

  // Aggregator (this thread). A pending hit is flushed only when every
  // unfinished worker has moved past its exponent; that makes the flush
  // order, and with it the log bytes, a pure function of the range.
  std::vector<uint64_t> next_unscanned(plans.size(), UINT64_MAX);
  for (size_t t = 0; t < plans.size(); ++t)
    if (plans[t].count > 0) next_unscanned[t] = plans[t].seed_exponent;

  auto frontier = [&] {
    uint64_t f = UINT64_MAX;
    for (uint64_t v : next_unscanned) f = std::min(f, v);
    return std::min(f, cfg.p_end + 1);
  };

  using Pending = std::pair<uint64_t, std::string>;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;

  auto flush_ready = [&](uint64_t fr) {
    while (!pending.empty() && pending.top().first < fr) {
      SieveHit h;
      h.p = pending.top().first;
      h.n = h.p + 1;
      h.tail_digits = pending.top().second;
      pending.pop();
      h.wall_time = elapsed();
      if (h.n <= cfg.verify_limit)
        h.status = verify_even_power(h.n, cfg.verify_limit) ==
                           VerifyStatus::confirmed_solution
                       ? HitStatus::confirmed_solution
                       : HitStatus::refuted;
      else
        h.status = HitStatus::unverified;
      report.hits.push_back(std::move(h));
      if (hits_out.is_open()) {
        hits_out << format_hit_line(report.hits.back()) << '\n';
        hits_out.flush();
      }
    }
  };

  uint64_t last_checkpoint_at = effective_start;
  unsigned done_count = 0;
  try {
    while (done_count < launched) {
      Event e = queue.pop();
      if (e.kind == Event::Kind::hit) {
        pending.push({e.p, std::move(e.tail)});
        continue;
      }
      if (e.kind == Event::Kind::done) {
        next_unscanned[e.worker] = UINT64_MAX;
        ++done_count;
      } else {
        next_unscanned[e.worker] = e.p;
      }
      const uint64_t fr = frontier();
      flush_ready(fr);
      if (!cfg.checkpoint_path.empty() && fr <= cfg.p_end &&
          fr - last_checkpoint_at >= cfg.checkpoint_interval) {
        write_checkpoint(cfg.checkpoint_path, {cfg.digits, fr, report.hits});
        last_checkpoint_at = fr;
      }
    }
  } catch (...) {
    // workers run bounded plans and never block on the queue; let them
    // finish so thread destruction is safe, then rethrow
    for (auto& th : pool) th.join();
    throw;
  }
  for (auto& th : pool) th.join();
  flush_ready(cfg.p_end + 1);

  if (!cfg.checkpoint_path.empty())
    write_checkpoint(cfg.checkpoint_path,
                     {cfg.digits, cfg.p_end + 1, report.hits});

  if (hits_out.is_open() && !hits_out)
    throw std::runtime_error("cannot write hits file: " + cfg.hits_path);

  report.exponents_scanned = span;
  const double secs = elapsed();
  report.throughput = secs > 0.0 ? double(span) / secs : 0.0;
  return report;
}

}  // namespace evenpow
