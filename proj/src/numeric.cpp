#include "wolstenholme/numeric.hpp"

#include <stdexcept>

#include "wolstenholme/errors.hpp"

namespace wst {

Rat make_rat(const Int& numerator, const Int& denominator) {
  if (denominator == 0) {
    throw std::domain_error("make_rat: zero denominator");
  }
  Rat q(numerator, denominator);
  q.canonicalize();
  return q;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r; // powers of a canonical rational stay canonical
}

Int int_binomial(unsigned long a, unsigned long b) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

Int int_binomial(const Int& m, unsigned long b) {
  Int r;
  mpz_bin_ui(r.get_mpz_t(), m.get_mpz_t(), b);
  return r;
}

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < lo || hi < 2) {
    return out;
  }
  if (hi > (1ull << 31)) {
    throw resource_limit("primes_in_range: upper bound too large for a plain sieve");
  }
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (!composite[i]) {
      for (std::uint64_t j = i * i; j <= hi; j += i) {
        composite[j] = true;
      }
    }
  }
  for (std::uint64_t i = lo < 2 ? 2 : lo; i <= hi; ++i) {
    if (!composite[i]) {
      out.push_back(i);
    }
  }
  return out;
}

std::optional<long> padic_valuation(const Rat& q, const Int& p) {
  if (p < 2) {
    throw std::domain_error("padic_valuation: p must be at least 2");
  }
  if (q == 0) {
    return std::nullopt;
  }
  Int t;
  long vn = static_cast<long>(
      mpz_remove(t.get_mpz_t(), mpq_numref(q.get_mpq_t()), p.get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(t.get_mpz_t(), mpq_denref(q.get_mpq_t()), p.get_mpz_t()));
  return vn - vd;
}

} // namespace wst
