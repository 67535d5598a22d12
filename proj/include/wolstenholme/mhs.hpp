#pragma once

#include <cstddef>
#include <vector>

#include "wolstenholme/numeric.hpp"
#include "wolstenholme/polynomial.hpp"
#include "wolstenholme/residue.hpp"

// Multiple harmonic sums
//   H(l1,...,lj; n) = sum over n >= i1 > i2 > ... > ij >= 1 of
//                     i1^{-l1} * ... * ij^{-lj},
// with H(; n) = 1 and H(...; n) = 0 when n < depth. The depth-j sums of ones,
// H({1}^j; n), are the elementary symmetric functions e_j(1, 1/2, ..., 1/n)
// and get dedicated exact and mod-p^m evaluators.

namespace wst {

struct Composition {
  std::vector<unsigned> parts; // exponents l1, ..., lj, each >= 1

  std::size_t depth() const { return parts.size(); }
  unsigned long weight() const {
    unsigned long w = 0;
    for (unsigned p : parts) w += p;
    return w;
  }
};

// Brute-force nested summation (memoized on suffix and upper bound); the
// reference oracle for everything else. Throws resource_limit when the raw
// index-tuple count C(n, depth) exceeds tuple_limit.
Rat mhs_exact(const Composition& lambda, unsigned long n,
              unsigned long tuple_limit = 10'000'000ul);

// H({1}^j; n) exactly, via the truncated product recurrence over Q.
Rat elem_mhs_exact(unsigned long j, unsigned long n);

// The whole row H({1}^0; n), ..., H({1}^jmax; n).
std::vector<Rat> elem_mhs_exact_row(unsigned long n, unsigned long jmax);

// Row of residues H({1}^j; p-1) mod p^m for j = 0..jmax.
struct ElemMhsVector {
  Int p;
  unsigned m = 0;
  Int modulus;              // p^m
  std::vector<Int> values;  // values[j] in [0, p^m)

  Residue at(std::size_t j) const;
};

// O(p * jmax) ring operations: one pass i = 1..p-1 updating the truncated
// product with 1/i (batch-inverted), entirely in Z/p^m.
ElemMhsVector elem_mhs_mod(const Int& p, unsigned m, unsigned long jmax);

// f_n(T) = C((n+1)(T+1)-1, n) = prod_{j=1}^{n} (1 + (n+1) T / j)
//        = sum_j (n+1)^j H({1}^j; n) T^j.
RatPoly f_poly(unsigned long n);

// The alternating self-reference of f_n's coefficients:
//   (n+1)^j H({1}^j;n) + sum_{i>=j} (-1)^{n+i+1} C(i,j) (n+1)^i H({1}^i;n),
// identically zero for all 0 <= j <= n.
Rat rep0_residual(unsigned long n, unsigned long j);

// Coefficients b_0..b_n with b_j = (k-1)^j + c_j + (-1)^{n+j+1} sum_{i<=j}
// C(j,i) c_i; these satisfy C(k(n+1)-1, n) = sum_j b_j (n+1)^j H({1}^j; n)
// for every integer k and data vector c.
std::vector<Rat> identity_coefficients(unsigned long n, const Int& k,
                                       const std::vector<Rat>& c);

// C(m, kk) for any integer m, evaluated through harmonic sums:
//   (-1)^kk sum_{j=0}^{kk} (-1)^j (m+1)^j H({1}^j; kk).
Rat binomial_via_lehmer(const Int& m, unsigned long kk);

} // namespace wst
