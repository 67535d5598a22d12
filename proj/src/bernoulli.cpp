#include "wolstenholme/bernoulli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/mhs.hpp"

namespace wst {

namespace {

std::mutex bernoulli_mu;
std::vector<Rat> bernoulli_memo; // B_0, B_1, ...

// Extends the memo through index m using
//   sum_{j=0}^{m} C(m+1, j) B_j = 0   (m >= 1),
// i.e. B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j.
void extend_bernoulli(unsigned long m) {
  if (bernoulli_memo.empty()) {
    bernoulli_memo.emplace_back(1);
  }
  while (bernoulli_memo.size() <= m) {
    unsigned long r = bernoulli_memo.size();
    if (r % 2 == 1 && r > 1) {
      bernoulli_memo.emplace_back(0);
      continue;
    }
    Rat sum(0);
    Int binom(1); // C(r+1, j), updated incrementally
    for (unsigned long j = 0; j < r; ++j) {
      if (bernoulli_memo[j] != 0) {
        sum += Rat(binom) * bernoulli_memo[j];
      }
      binom = binom * (r + 1 - j) / (j + 1);
    }
    bernoulli_memo.push_back(-sum / Rat(r + 1));
  }
}

} // namespace

Rat bernoulli_exact(unsigned long m, unsigned long bound) {
  if (m > bound) {
    throw resource_limit("bernoulli_exact: index beyond the configured bound");
  }
  std::lock_guard<std::mutex> lock(bernoulli_mu);
  extend_bernoulli(m);
  return bernoulli_memo[m];
}

Residue bernoulli_mod_p(unsigned long m, const Int& p) {
  if (p < 5 || !is_prime(p)) {
    throw std::domain_error("bernoulli_mod_p: p must be a prime >= 5");
  }
  Int pm1 = p - 1;
  if (mpz_divisible_p(Int(m).get_mpz_t(), pm1.get_mpz_t())) {
    throw pole_at_p("bernoulli_mod_p: v_p(B_m) = -1 when (p-1) | m");
  }
  if (m % 2 != 0 || m < 2 || Int(m) > p - 3) {
    throw std::domain_error("bernoulli_mod_p: need even m with 2 <= m <= p-3");
  }
  // sum_{a=1}^{p-1} a^m == p * B_m (mod p^2) in this range.
  Int p2 = p * p;
  Int sum(0), t;
  Int exponent(m);
  unsigned long pu = mpz_get_ui(p.get_mpz_t());
  for (unsigned long a = 1; a < pu; ++a) {
    t = a;
    mpz_powm(t.get_mpz_t(), t.get_mpz_t(), exponent.get_mpz_t(), p2.get_mpz_t());
    sum += t;
  }
  mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), p2.get_mpz_t());
  if (!mpz_divisible_p(sum.get_mpz_t(), p.get_mpz_t())) {
    throw error("bernoulli_mod_p: power sum not divisible by p");
  }
  Int lifted = sum / p;
  return Residue(p, 1, lifted);
}

Residue bernoulli_via_mhs(unsigned long n, const Int& p) {
  if (!is_prime(p) || p < Int(2 * n + 5)) {
    throw std::domain_error("bernoulli_via_mhs: need a prime p >= 2n+5");
  }
  // H({1}^{2n+2}; p-1) == -B_{p-3-2n}/(2n+3) * p (mod p^2), so dividing the
  // residue by p and scaling by -(2n+3) recovers B_{p-3-2n} mod p.
  ElemMhsVector row = elem_mhs_mod(p, 2, 2 * n + 2);
  const Int& h = row.values[2 * n + 2];
  if (!mpz_divisible_p(h.get_mpz_t(), p.get_mpz_t())) {
    throw error("bernoulli_via_mhs: harmonic sum not divisible by p");
  }
  Int lifted = h / p;
  Residue base(p, 1, lifted);
  return -(Residue(p, 1, Int(2 * n + 3)) * base);
}

bool is_exceptional_bernoulli(unsigned long n, const Int& p) {
  return bernoulli_via_mhs(n, p).is_zero();
}

Residue bernoulli_via_mhs_cached(unsigned long n, const Int& p, BernoulliCache* cache) {
  if (cache != nullptr) {
    if (auto hit = cache->lookup(p, n)) {
      return Residue(p, 1, *hit);
    }
  }
  Residue r = bernoulli_via_mhs(n, p);
  if (cache != nullptr) {
    cache->store(p, n, r.value());
  }
  return r;
}

// ---- disk cache ----

BernoulliCache::BernoulliCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in.is_open()) {
    return; // absent file = empty cache
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string ps, ns, rs;
    if (!(fields >> ps >> ns >> rs)) {
      throw parse_error("bernoulli cache: line " + std::to_string(lineno) +
                        ": expected 'p n residue'");
    }
    try {
      entries_[{Int(ps), std::stoul(ns)}] = Int(rs);
    } catch (const std::exception&) {
      throw parse_error("bernoulli cache: line " + std::to_string(lineno) +
                        ": malformed integer");
    }
  }
}

std::optional<Int> BernoulliCache::lookup(const Int& p, unsigned long n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find({p, n});
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void BernoulliCache::store(const Int& p, unsigned long n, const Int& residue) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entries_.emplace(std::make_pair(p, n), residue);
  if (!inserted) {
    if (it->second != residue) {
      throw error("bernoulli cache: conflicting residue for existing entry");
    }
    return;
  }
  dirty_ = true;
}

void BernoulliCache::flush() {
  std::lock_guard<std::mutex> lock(mu_);
  if (!dirty_) {
    return;
  }
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out.is_open()) {
      throw io_error("bernoulli cache: cannot write " + tmp);
    }
    // std::map keeps (p, n) order, which is exactly the file order contract.
    for (const auto& [key, residue] : entries_) {
      out << key.first << ' ' << key.second << ' ' << residue << '\n';
    }
    if (!out.good()) {
      throw io_error("bernoulli cache: write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) {
    throw io_error("bernoulli cache: atomic rename failed for " + path_);
  }
  dirty_ = false;
}

std::size_t BernoulliCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

} // namespace wst
