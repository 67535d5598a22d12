#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wolstenholme/congruence.hpp"
#include "wolstenholme/report.hpp"

// Prime-range scanning: enumerates (spec, p) verification tasks over a prime
// interval, runs them on a worker pool, and writes one report record per
// task in a deterministic order (ascending p, then n, then k) that does not
// depend on the thread count. Progress is checkpointed after every chunk of
// 64 primes so an interrupted scan can resume.

namespace wst {

enum class ScanMode { named, optimized, exceptional };

std::string to_string(ScanMode mode);
ScanMode scan_mode_from_string(const std::string& text);

struct ScanConfig {
  ScanMode mode = ScanMode::named;
  NamedTag tag = NamedTag::wolstenholme; // named mode only
  unsigned long n_min = 0;               // n for optimized/exceptional/easycong,
  unsigned long n_max = 0;               // index j for zhao
  std::vector<Int> k_set = {Int(2)};     // sorted and deduplicated at run time
  unsigned long p_min = 5;
  unsigned long p_max = 100;
  unsigned slack = 2;
  std::string out_path;
  ReportFormat format = ReportFormat::json;
  unsigned threads = 1;
  std::string checkpoint_path; // empty: no checkpointing
};

// FNV-1a (64-bit) over the canonical task-defining fields: mode, tag, the n
// range, the k set, p_min, slack, and format. p_max, threads, and file paths
// are excluded so a finished scan can be resumed to a larger p_max and a
// resume may change the worker count.
std::uint64_t config_hash(const ScanConfig& config);

struct ScanCheckpoint {
  std::uint64_t config_hash = 0;
  unsigned long last_completed_prime = 0;
  std::size_t partial_result_count = 0;
};

// Single JSON object {"config_hash", "last_completed_prime",
// "partial_result_count"}; written atomically (temp file + rename).
std::string serialize_checkpoint(const ScanCheckpoint& cp);
ScanCheckpoint parse_checkpoint(const std::string& text);

struct ScanOutcome {
  std::size_t total = 0;       // records in the output file
  std::size_t failures = 0;    // records with holds == false
  std::size_t exceptional = 0; // records with one extra power of p
  bool ok = false;             // failures == 0; maps to process exit code
  std::vector<CongruenceReport> reports;
};

// Runs the scan, writing the report file (and checkpoint) as it goes.
// Throws config_error on an invalid configuration, io_error on filesystem
// trouble, resume_mismatch when an existing checkpoint belongs to a
// different configuration or disagrees with the output file on disk.
ScanOutcome run_scan(const ScanConfig& config);

} // namespace wst
