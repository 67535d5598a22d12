#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

// Exact integer/rational groundwork: GMP-backed types plus the handful of
// number-theoretic helpers everything else builds on.

namespace wst {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class getters return expression templates; these force plain values.
inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

// num/den in lowest terms with positive denominator; throws on den == 0.
Rat make_rat(const Int& numerator, const Int& denominator);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, unsigned long e);

// C(a, b) for machine-size non-negative arguments; 0 whenever b > a.
Int int_binomial(unsigned long a, unsigned long b);

// C(m, b) for arbitrary integer m via the falling factorial
// m (m-1) ... (m-b+1) / b!; always an integer.
Int int_binomial(const Int& m, unsigned long b);

bool is_prime(const Int& n);

// Primes in [lo, hi], ascending. Plain sieve; refuses absurd ranges.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// v_p(q); std::nullopt encodes +infinity (q == 0).
std::optional<long> padic_valuation(const Rat& q, const Int& p);

} // namespace wst
