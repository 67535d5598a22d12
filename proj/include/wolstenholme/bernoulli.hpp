#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "wolstenholme/numeric.hpp"
#include "wolstenholme/residue.hpp"

// Bernoulli numbers three ways: exact rationals from the defining recurrence,
// residues mod p from power sums, and residues mod p recovered from harmonic
// sums. The routes are independent, which is what makes their agreement a
// meaningful check.

namespace wst {

// B_m exactly (B_1 = -1/2 convention). Values are memoized process-wide;
// throws resource_limit beyond `bound`.
Rat bernoulli_exact(unsigned long m, unsigned long bound = 2000);

// B_m mod p for even 2 <= m <= p-3, through sum_{a=1}^{p-1} a^m == p B_m
// (mod p^2). Throws pole_at_p when (p-1) | m (where v_p(B_m) = -1).
Residue bernoulli_mod_p(unsigned long m, const Int& p);

// B_{p-3-2n} mod p recovered from H({1}^{2n+2}; p-1) mod p^2; needs
// p >= 2n+5.
Residue bernoulli_via_mhs(unsigned long n, const Int& p);

// True iff p divides the numerator of B_{p-2n-3} (p >= 2n+5).
bool is_exceptional_bernoulli(unsigned long n, const Int& p);

// Line-per-record disk cache of bernoulli_via_mhs residues: "p n residue",
// sorted by (p, n). Reads tolerate a missing file; writes go through a
// temporary and an atomic rename.
class BernoulliCache {
 public:
  explicit BernoulliCache(std::string path);

  std::optional<Int> lookup(const Int& p, unsigned long n) const;
  void store(const Int& p, unsigned long n, const Int& residue);
  void flush(); // io_error on failure

  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::string path_;
  std::map<std::pair<Int, unsigned long>, Int> entries_;
  bool dirty_ = false;
};

// Cache-aware wrapper around bernoulli_via_mhs (cache may be null).
Residue bernoulli_via_mhs_cached(unsigned long n, const Int& p, BernoulliCache* cache);

} // namespace wst
