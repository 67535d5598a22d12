#pragma once

#include <vector>

#include "wolstenholme/matrix.hpp"
#include "wolstenholme/numeric.hpp"
#include "wolstenholme/polynomial.hpp"

// The extremal coefficient polynomials b_{j,n}(T): for 0 <= j <= 2n the
// unique polynomial of degree <= 2n with
//   (C1)  b_{j,n}(T) == (T-1)^j  mod (T-1)^{n+1}
//   (C2)  b_{j,n}(T) == (-T)^j   mod T^{n+1}
// (zero for n+1 <= j <= 2n). Two independent constructions are provided: a
// two-modulus interpolation and a binomial-matrix recipe; tests pin their
// agreement.

namespace wst {

// A data vector (k; c_0..c_N) defining coefficients
//   b_j = (k-1)^j + c_j + (-1)^{j+1} sum_{i<=j} C(j,i) c_i.
struct WolstenholmeData {
  Int k;
  std::vector<Rat> c; // entries beyond the stored length read as zero
  unsigned long N = 0;
};

std::vector<Rat> coefficients_from_data(const WolstenholmeData& data);

struct ExtremalPolynomial {
  unsigned long j = 0;
  unsigned long n = 0;
  IntPoly poly;
};

// Interpolation route: solve (C1)+(C2) by the two-modulus construction with
// degree <= 2n+1 allowed, then assert the top coefficient vanishes.
ExtremalPolynomial extremal_poly_crt(unsigned long j, unsigned long n);

// Matrix route: rows j = 0..n from the binomial recipe
//   b = ((k-1)^0..(k-1)^n) - D_n M_n^{-1} ((k-1)^{n+1}..(k-1)^{2n}),
// with M_n = [(-1)^{n+i} C(n+1+i, j)] (n x n, determinant +-1) and
// D_n = [(-1)^{i+1} C(i,j) + delta_{ij}] ((n+1) x n), read as polynomial
// identities in u = k-1 and converted to the T = k variable.
std::vector<ExtremalPolynomial> extremal_polys_matrix(unsigned long n);

// Process-wide cached lookup (interpolation route).
const IntPoly& extremal_poly(unsigned long j, unsigned long n);

// The canonical integer data vector that zeroes b_{n+1}..b_{2n}: solves
// M_n x = -((k-1)^{n+1}..(k-1)^{2n}) and pads with zeros (N = 2n).
WolstenholmeData optimal_data(unsigned long n, const Int& k);

// The two coefficients after the optimal window and their combination
// C_n(k) = (n+1) b_{2n+1} + b_{2n+2} = k^{n+1} (k-1)^{n+1}.
struct ExtensionPair {
  unsigned long n = 0;
  Int k;
  Rat b_odd;  // b_{2n+1}
  Rat b_even; // b_{2n+2}
  Rat c_value;
};

ExtensionPair extension_pair(unsigned long n, const Int& k);

// Same, as polynomials in k.
struct SymbolicExtensionPair {
  IntPoly b_odd;
  IntPoly b_even;
  IntPoly c_value;
};

SymbolicExtensionPair extension_pair_symbolic(unsigned long n);

// det [C(b+i, j)]_{0 <= i, j < n}; equal to 1 for every n, b >= 0.
Int matrix_Mnb_det(unsigned long n, unsigned long b);

} // namespace wst
