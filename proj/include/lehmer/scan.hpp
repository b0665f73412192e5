#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <zlib.h>

#include "json.hpp"
#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/lehmer_engine.hpp"
#include "lehmer/sieve.hpp"

namespace lehmer {

inline constexpr unsigned kCheckpointSchema = 1;
inline constexpr u64 kDefaultScanLimit = 100'000'000;

struct ScanHit {
  u64 n = 0;
  u64 exact_k = 0;
  bool composite = false;

  friend bool operator==(const ScanHit&, const ScanHit&) = default;
};

// Progress of a scan over [lo, hi]; `next` is the first unscanned integer.
struct ScanCheckpoint {
  u64 lo = 2;
  u64 hi = 2;
  u64 next = 2;
  std::vector<ScanHit> hits;
  unsigned schema_version = kCheckpointSchema;

  bool complete() const noexcept { return next > hi; }
  std::size_t composite_hits() const {
    return static_cast<std::size_t>(std::count_if(hits.begin(), hits.end(), [](const ScanHit& h) { return h.composite; }));
  }

  friend bool operator==(const ScanCheckpoint&, const ScanCheckpoint&) = default;
};

// A composite n with phi(n) | n - 1 turned up. Carries its full verdict and
// the last committed progress.
class CompositeHitError : public Error {
 public:
  CompositeHitError(LehmerVerdict verdict, ScanCheckpoint partial)
      : Error("composite n = " + verdict.n.str() + " satisfies phi(n) | n - 1 with k = " +
              (verdict.exact_k ? verdict.exact_k->str() : "?")),
        verdict_(std::move(verdict)),
        partial_(std::move(partial)) {}

  const LehmerVerdict& verdict() const noexcept { return verdict_; }
  const ScanCheckpoint& partial() const noexcept { return partial_; }

 private:
  LehmerVerdict verdict_;
  ScanCheckpoint partial_;
};

// Worker count from LEHMER_JOBS, defaulting to 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("LEHMER_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

struct ScanOptions {
  unsigned jobs = default_jobs();
  u64 segment_size = 1 << 16;
  u64 limit = kDefaultScanLimit;
  // Written after every committed batch; resumed from when it already exists.
  std::optional<std::filesystem::path> checkpoint_path;
  // Called after each commit; returning true stops the scan there.
  std::function<bool(const ScanCheckpoint&)> stop_after;
};

// --- checkpoint persistence ------------------------------------------------

inline nlohmann::json checkpoint_payload(const ScanCheckpoint& cp) {
  nlohmann::json hits = nlohmann::json::array();
  for (const auto& h : cp.hits) hits.push_back({h.n, h.exact_k, h.composite ? 1 : 0});
  return {{"lo", cp.lo}, {"hi", cp.hi}, {"next", cp.next}, {"hits", std::move(hits)}};
}

inline std::uint32_t crc32_of(const std::string& text) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  crc = ::crc32(crc, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size()));
  return static_cast<std::uint32_t>(crc);
}

inline std::string serialize_checkpoint(const ScanCheckpoint& cp) {
  nlohmann::json payload = checkpoint_payload(cp);
  nlohmann::json doc = {{"schema_version", cp.schema_version},
                        {"crc32", crc32_of(payload.dump())},
                        {"payload", std::move(payload)}};
  return doc.dump() + "\n";
}

inline ScanCheckpoint parse_checkpoint(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptCheckpoint(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    ScanCheckpoint cp;
    cp.schema_version = doc.at("schema_version").get<unsigned>();
    if (cp.schema_version != kCheckpointSchema) {
      throw CorruptCheckpoint("unsupported checkpoint schema_version " + std::to_string(cp.schema_version));
    }
    const auto& payload = doc.at("payload");
    if (crc32_of(payload.dump()) != doc.at("crc32").get<std::uint32_t>()) {
      throw CorruptCheckpoint("checkpoint CRC32 mismatch");
    }
    cp.lo = payload.at("lo").get<u64>();
    cp.hi = payload.at("hi").get<u64>();
    cp.next = payload.at("next").get<u64>();
    for (const auto& h : payload.at("hits")) {
      cp.hits.push_back({h.at(0).get<u64>(), h.at(1).get<u64>(), h.at(2).get<int>() != 0});
    }
    if (cp.lo > cp.next || cp.next > cp.hi + 1) throw CorruptCheckpoint("checkpoint next lies outside [lo, hi+1]");
    for (std::size_t i = 0; i < cp.hits.size(); ++i) {
      const auto& h = cp.hits[i];
      if (h.n < cp.lo || h.n >= cp.next) throw CorruptCheckpoint("checkpoint hit outside the scanned range");
      if (i > 0 && cp.hits[i - 1].n >= h.n) throw CorruptCheckpoint("checkpoint hits not strictly ascending");
    }
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptCheckpoint(std::string("malformed checkpoint: ") + e.what());
  }
}

// write temp, fsync, rename.
inline void save_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp) {
  const std::string text = serialize_checkpoint(cp);
  const std::filesystem::path tmp = path.string() + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error("cannot open " + tmp.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < text.size()) {
    ssize_t w = ::write(fd, text.data() + written, text.size() - written);
    if (w < 0) {
      int err = errno;
      ::close(fd);
      throw Error("cannot write " + tmp.string() + ": " + std::strerror(err));
    }
    written += static_cast<std::size_t>(w);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    throw Error("cannot flush " + tmp.string() + ": " + std::strerror(errno));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline ScanCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read checkpoint " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_checkpoint(buf.str());
  } catch (const CorruptCheckpoint& e) {
    throw CorruptCheckpoint(path.string() + ": " + e.what());
  }
}

// --- scanning --------------------------------------------------------------

namespace detail {

struct SegmentResult {
  std::vector<ScanHit> hits;
  std::optional<u64> composite_hit;
};

inline SegmentResult scan_segment(u64 a, u64 b, const std::vector<u64>& base_primes) {
  SegmentResult out;
  auto phi = phi_segment(a, b, base_primes);
  for (u64 n = a; n <= b; ++n) {
    u64 f = phi[n - a];
    if ((n - 1) % f != 0) continue;
    bool composite = f != n - 1;
    out.hits.push_back({n, (n - 1) / f, composite});
    if (composite && !out.composite_hit) out.composite_hit = n;
  }
  return out;
}

}  // namespace detail

// Continue a scan from its checkpoint to completion (or until stop_after).
inline ScanCheckpoint continue_scan(ScanCheckpoint cp, const ScanOptions& options = {}) {
  if (cp.lo < 2 || cp.lo > cp.hi || cp.hi > options.limit) {
    throw InvalidArgument("scan range must satisfy 2 <= lo <= hi <= " + std::to_string(options.limit) +
                          ", got [" + std::to_string(cp.lo) + ", " + std::to_string(cp.hi) + "]");
  }
  const auto base = primes_up_to(isqrt(cp.hi) + 1);
  const unsigned jobs = std::max(1U, options.jobs);
  const u64 seg = std::max<u64>(1, options.segment_size);
  while (!cp.complete()) {
    std::vector<std::pair<u64, u64>> batch;
    for (u64 a = cp.next; a <= cp.hi && batch.size() < jobs;) {
      u64 b = (cp.hi - a < seg) ? cp.hi : a + seg - 1;
      batch.emplace_back(a, b);
      a = b + 1;
      if (b == cp.hi) break;
    }
    std::vector<detail::SegmentResult> results(batch.size());
    std::vector<std::exception_ptr> errors(batch.size());
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          results[i] = detail::scan_segment(batch[i].first, batch[i].second, base);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      if (results[i].composite_hit) throw CompositeHitError(lehmer_check(*results[i].composite_hit), cp);
    }
    for (auto& r : results) cp.hits.insert(cp.hits.end(), r.hits.begin(), r.hits.end());
    cp.next = batch.back().second + 1;
    if (options.checkpoint_path) save_checkpoint(*options.checkpoint_path, cp);
    if (options.stop_after && !cp.complete() && options.stop_after(cp)) break;
  }
  return cp;
}

// All n in [lo, hi] with phi(n) | n - 1. Resumes from options.checkpoint_path
// when that file exists and describes the same range.
inline ScanCheckpoint scan_totient_divisibility(u64 lo, u64 hi, const ScanOptions& options = {}) {
  ScanCheckpoint cp;
  cp.lo = lo;
  cp.hi = hi;
  cp.next = lo;
  if (options.checkpoint_path && std::filesystem::exists(*options.checkpoint_path)) {
    ScanCheckpoint saved = load_checkpoint(*options.checkpoint_path);
    if (saved.lo != lo || saved.hi != hi) {
      throw InvalidArgument("checkpoint " + options.checkpoint_path->string() + " covers [" +
                            std::to_string(saved.lo) + ", " + std::to_string(saved.hi) + "], not the requested range");
    }
    cp = std::move(saved);
  }
  return continue_scan(std::move(cp), options);
}

}  // namespace lehmer
