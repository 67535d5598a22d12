#include "wolstenholme/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wolstenholme/errors.hpp"

namespace wst {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kPrimesPerChunk = 64;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw io_error("read failure on '" + path + "'");
  }
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw io_error("cannot open '" + tmp + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw io_error("write failure on '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw io_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

bool mode_uses_k(const ScanConfig& c) {
  if (c.mode != ScanMode::named) {
    return true;
  }
  return c.tag == NamedTag::glaisher || c.tag == NamedTag::easycong ||
         c.tag == NamedTag::sc1;
}

bool mode_uses_n(const ScanConfig& c) {
  if (c.mode != ScanMode::named) {
    return true;
  }
  return c.tag == NamedTag::easycong || c.tag == NamedTag::zhao;
}

void validate(const ScanConfig& c) {
  if (c.p_min < 3) {
    throw config_error("scan: prime range bounds must be at least 3");
  }
  if (c.p_max < c.p_min) {
    throw config_error("scan: prime range is empty (p_max < p_min)");
  }
  if (c.threads < 1) {
    throw config_error("scan: threads must be at least 1");
  }
  if (c.out_path.empty()) {
    throw config_error("scan: an output path is required");
  }
  if (c.n_max < c.n_min) {
    throw config_error("scan: n range is empty (n_max < n_min)");
  }
  if (mode_uses_k(c)) {
    if (c.k_set.empty()) {
      throw config_error("scan: k set must not be empty");
    }
    Int floor = (c.mode == ScanMode::named && c.tag == NamedTag::glaisher) ? 2 : 1;
    if (c.mode != ScanMode::exceptional) { // exceptional admits any integer k
      for (const Int& k : c.k_set) {
        if (k < floor) {
          throw config_error("scan: k = " + k.get_str() + " is below the minimum " +
                             floor.get_str() + " for this mode");
        }
      }
    }
  }
  if (c.mode == ScanMode::named && c.tag == NamedTag::zhao && c.n_min < 1) {
    throw config_error("scan: zhao index range must start at 1");
  }
}

// Is p admissible for the whole scan mode at all (cheap per-p filter)?
// Per-n admissibility is handled during task enumeration.
bool prime_admissible(const ScanConfig& c, unsigned long p) {
  if (c.mode == ScanMode::optimized) {
    return p >= 3;
  }
  if (c.mode == ScanMode::exceptional) {
    return p >= 2 * c.n_min + 3;
  }
  switch (c.tag) {
    case NamedTag::wolstenholme: return p >= 5;
    case NamedTag::glaisher: return p >= 5;
    case NamedTag::van_hamme: return p >= 7;
    case NamedTag::mestrovic: return p >= 11;
    case NamedTag::easycong: return p >= 2 * c.n_min + 5;
    case NamedTag::sc1: return p >= 3 && p != 5;
    case NamedTag::sc2: return p >= 3;
    case NamedTag::zhao: return p >= c.n_min + 3;
    case NamedTag::propextra: return p >= 3;
    case NamedTag::glaisher_h1: return p >= 5;
  }
  return false;
}

void append_tasks_for_prime(const ScanConfig& c,
                            const std::shared_ptr<BernoulliCache>& cache,
                            unsigned long p, std::vector<VerifyTask>& out) {
  if (!prime_admissible(c, p)) {
    return;
  }
  Int pz(p);
  if (c.mode == ScanMode::optimized) {
    for (unsigned long n = c.n_min; n <= c.n_max; ++n) {
      for (const Int& k : c.k_set) {
        out.push_back(VerifyTask{OptimizedSpec{n, k}, pz, c.slack});
      }
    }
    return;
  }
  if (c.mode == ScanMode::exceptional) {
    for (unsigned long n = c.n_min; n <= c.n_max; ++n) {
      if (p < 2 * n + 3) {
        break;
      }
      for (const Int& k : c.k_set) {
        out.push_back(VerifyTask{ExceptionalSpec{n, k, cache}, pz, c.slack});
      }
    }
    return;
  }
  switch (c.tag) {
    case NamedTag::easycong:
      for (unsigned long n = c.n_min; n <= c.n_max; ++n) {
        if (p < 2 * n + 5) {
          break;
        }
        for (const Int& k : c.k_set) {
          NamedCheck check{c.tag, static_cast<long>(n), k};
          out.push_back(VerifyTask{check, pz, c.slack});
        }
      }
      return;
    case NamedTag::zhao:
      for (unsigned long j = c.n_min; j <= c.n_max; ++j) {
        if (j > p - 3) {
          break;
        }
        NamedCheck check{c.tag, static_cast<long>(j), Int(2)};
        out.push_back(VerifyTask{check, pz, c.slack});
      }
      return;
    case NamedTag::glaisher:
    case NamedTag::sc1:
      for (const Int& k : c.k_set) {
        NamedCheck check{c.tag, 0, k};
        out.push_back(VerifyTask{check, pz, c.slack});
      }
      return;
    default: {
      NamedCheck check{c.tag, 0, Int(2)};
      out.push_back(VerifyTask{check, pz, c.slack});
      return;
    }
  }
}

std::vector<Int> canonical_k_set(const std::vector<Int>& k_set) {
  std::vector<Int> ks = k_set;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

} // namespace

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::named: return "named";
    case ScanMode::optimized: return "optimized";
    case ScanMode::exceptional: return "exceptional";
  }
  throw std::logic_error("to_string: bad ScanMode");
}

ScanMode scan_mode_from_string(const std::string& text) {
  if (text == "named") return ScanMode::named;
  if (text == "optimized") return ScanMode::optimized;
  if (text == "exceptional") return ScanMode::exceptional;
  throw parse_error("scan mode: expected named, optimized, or exceptional; got '" +
                    text + "'");
}

std::uint64_t config_hash(const ScanConfig& config) {
  std::ostringstream canon;
  canon << "scan/v1|mode=" << to_string(config.mode);
  canon << "|tag=" << (config.mode == ScanMode::named ? to_string(config.tag) : "-");
  if (mode_uses_n(config)) {
    canon << "|n=" << config.n_min << ".." << config.n_max;
  } else {
    canon << "|n=-";
  }
  canon << "|k=";
  if (mode_uses_k(config)) {
    bool first = true;
    for (const Int& k : canonical_k_set(config.k_set)) {
      if (!first) canon << ',';
      canon << k.get_str();
      first = false;
    }
  } else {
    canon << '-';
  }
  canon << "|pmin=" << config.p_min;
  canon << "|slack=" << config.slack;
  canon << "|format=" << to_string(config.format);

  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : canon.str()) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string serialize_checkpoint(const ScanCheckpoint& cp) {
  json j;
  j["config_hash"] = std::to_string(cp.config_hash);
  j["last_completed_prime"] = std::to_string(cp.last_completed_prime);
  j["partial_result_count"] = cp.partial_result_count;
  return j.dump(2) + "\n";
}

ScanCheckpoint parse_checkpoint(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("checkpoint: ") + e.what());
  }
  if (!j.is_object() || !j.contains("config_hash") ||
      !j.contains("last_completed_prime") || !j.contains("partial_result_count")) {
    throw parse_error(
        "checkpoint: expected an object with config_hash, last_completed_prime, "
        "partial_result_count");
  }
  ScanCheckpoint cp;
  try {
    if (!j["config_hash"].is_string() || !j["last_completed_prime"].is_string()) {
      throw std::invalid_argument("wrong type");
    }
    cp.config_hash = std::stoull(j["config_hash"].get<std::string>());
    cp.last_completed_prime = std::stoul(j["last_completed_prime"].get<std::string>());
    if (!j["partial_result_count"].is_number_unsigned()) {
      throw std::invalid_argument("wrong type");
    }
    cp.partial_result_count = j["partial_result_count"].get<std::size_t>();
  } catch (const std::exception&) {
    throw parse_error("checkpoint: malformed field values");
  }
  return cp;
}

ScanOutcome run_scan(const ScanConfig& raw_config) {
  validate(raw_config);
  ScanConfig config = raw_config;
  config.k_set = canonical_k_set(config.k_set);

  std::shared_ptr<BernoulliCache> cache;
  if (config.mode == ScanMode::exceptional) {
    if (const char* dir = std::getenv("WOLSTENHOLME_CACHE_DIR")) {
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) {
        throw io_error("cannot create cache directory '" + std::string(dir) + "'");
      }
      cache = std::make_shared<BernoulliCache>(std::string(dir) +
                                               "/bernoulli-cache.txt");
    }
  }

  std::uint64_t hash = config_hash(config);
  unsigned long start = config.p_min;
  std::vector<CongruenceReport> accumulated;

  bool checkpointing = !config.checkpoint_path.empty();
  if (checkpointing && fs::exists(config.checkpoint_path)) {
    ScanCheckpoint cp = parse_checkpoint(read_text_file(config.checkpoint_path));
    if (cp.config_hash != hash) {
      throw resume_mismatch(
          "checkpoint belongs to a different scan configuration; delete it to start "
          "over");
    }
    if (cp.partial_result_count > 0) {
      if (!fs::exists(config.out_path)) {
        throw resume_mismatch("checkpoint claims " +
                              std::to_string(cp.partial_result_count) +
                              " records but the output file is missing");
      }
      accumulated = parse_reports(read_text_file(config.out_path), config.format);
      if (accumulated.size() < cp.partial_result_count) {
        throw resume_mismatch("output file has fewer records than the checkpoint "
                              "claims; delete both to start over");
      }
      // Records past the checkpoint belong to an interrupted chunk; redo them.
      accumulated.resize(cp.partial_result_count);
    }
    if (cp.last_completed_prime + 1 > start) {
      start = cp.last_completed_prime + 1;
    }
  }

  std::vector<unsigned long> primes;
  if (start <= config.p_max) {
    for (std::uint64_t p : primes_in_range(start, config.p_max)) {
      primes.push_back(static_cast<unsigned long>(p));
    }
  }

  std::size_t chunks_written = 0;
  for (std::size_t base = 0; base < primes.size(); base += kPrimesPerChunk) {
    std::size_t upper = std::min(primes.size(), base + kPrimesPerChunk);
    std::vector<VerifyTask> tasks;
    for (std::size_t i = base; i < upper; ++i) {
      append_tasks_for_prime(config, cache, primes[i], tasks);
    }
    std::vector<CongruenceReport> results = run_batch(tasks, config.threads);
    accumulated.insert(accumulated.end(), results.begin(), results.end());

    atomic_write_file(config.out_path, serialize_reports(accumulated, config.format));
    if (checkpointing) {
      ScanCheckpoint cp{hash, primes[upper - 1], accumulated.size()};
      atomic_write_file(config.checkpoint_path, serialize_checkpoint(cp));
    }
    if (cache) {
      cache->flush();
    }
    ++chunks_written;
  }

  if (chunks_written == 0) {
    // Nothing new to do; still guarantee the output file exists and matches.
    atomic_write_file(config.out_path, serialize_reports(accumulated, config.format));
    if (checkpointing) {
      unsigned long last = start > config.p_min ? start - 1 : 0;
      ScanCheckpoint cp{hash, last, accumulated.size()};
      atomic_write_file(config.checkpoint_path, serialize_checkpoint(cp));
    }
  }

  ScanOutcome outcome;
  outcome.total = accumulated.size();
  for (const CongruenceReport& r : accumulated) {
    if (!r.holds) ++outcome.failures;
    if (r.exceptional) ++outcome.exceptional;
  }
  outcome.ok = outcome.failures == 0;
  outcome.reports = std::move(accumulated);
  return outcome;
}

} // namespace wst
