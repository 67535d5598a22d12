#include "wolstenholme/extremal.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "wolstenholme/errors.hpp"

namespace wst {

namespace {

// M_n = [(-1)^{n+i} C(n+1+i, j)], 0 <= i, j <= n-1.
IntMatrix matrix_M(unsigned long n) {
  IntMatrix m(n, n);
  for (unsigned long i = 0; i < n; ++i) {
    bool negative = (n + i) % 2 == 1;
    for (unsigned long j = 0; j < n; ++j) {
      Int c = int_binomial(n + 1 + i, j);
      m.at(i, j) = negative ? Int(-c) : c;
    }
  }
  return m;
}

// Row i of the correction map: (-1)^{i+1} C(i, j) + delta_{ij}, j < n.
Int correction_entry(unsigned long i, unsigned long j) {
  Int c = int_binomial(i, j);
  if (i % 2 == 0) {
    c = -c;
  }
  if (i == j) {
    c += 1;
  }
  return c;
}

// x_i(u) = -(M_n^{-1} (u^{n+1}, ..., u^{2n}))_i as integer polynomials in u.
std::vector<IntPoly> solved_tail_polys(unsigned long n) {
  IntMatrix minv = inverse_unimodular(matrix_M(n));
  std::vector<IntPoly> x(n);
  for (unsigned long i = 0; i < n; ++i) {
    std::vector<Int> c(2 * n + 1, Int(0));
    for (unsigned long l = 0; l < n; ++l) {
      c[n + 1 + l] = -minv.at(i, l);
    }
    x[i] = IntPoly(std::move(c));
  }
  return x;
}

IntPoly u_to_k(const IntPoly& g) {
  // g is a polynomial in u = k - 1; rewriting in k means evaluating g(T - 1).
  return g.taylor_shift(Int(-1));
}

} // namespace

std::vector<Rat> coefficients_from_data(const WolstenholmeData& data) {
  std::vector<Rat> b(data.N + 1, Rat(0));
  Int km1 = data.k - 1;
  auto c = [&](unsigned long i) { return i < data.c.size() ? data.c[i] : Rat(0); };
  for (unsigned long j = 0; j <= data.N; ++j) {
    Rat corr(0);
    for (unsigned long i = 0; i <= j; ++i) {
      corr += Rat(int_binomial(j, i)) * c(i);
    }
    bool plus = (j + 1) % 2 == 0;
    b[j] = Rat(pow_int(km1, j)) + c(j) + (plus ? corr : -corr);
  }
  return b;
}

ExtremalPolynomial extremal_poly_crt(unsigned long j, unsigned long n) {
  if (j > 2 * n) {
    throw std::domain_error("extremal_poly_crt: need j <= 2n");
  }
  ExtremalPolynomial out;
  out.j = j;
  out.n = n;
  if (j > n) {
    return out; // zero satisfies both congruences once j >= n+1
  }
  // (C2) residue: (-T)^j reduced mod T^{n+1}; (C1) residue: (T-1)^j, which in
  // the shifted basis is the single monomial u^j.
  RatPoly r1 = RatPoly::monomial(j % 2 == 0 ? Rat(1) : Rat(-1), j);
  RatPoly r2 = RatPoly::monomial(Rat(1), j);
  RatPoly f = poly_crt(r1, n + 1, r2, n + 1);
  if (f.degree() == 2 * static_cast<long>(n) + 1) {
    throw degree_assertion("extremal_poly_crt: top coefficient did not vanish");
  }
  out.poly = to_integer(f);
  return out;
}

std::vector<ExtremalPolynomial> extremal_polys_matrix(unsigned long n) {
  std::vector<IntPoly> x = solved_tail_polys(n);
  std::vector<ExtremalPolynomial> out(n + 1);
  for (unsigned long j = 0; j <= n; ++j) {
    IntPoly b = IntPoly::monomial(Int(1), j);
    for (unsigned long i = 0; i < n; ++i) {
      Int w = correction_entry(j, i);
      if (w != 0) {
        b = b + w * x[i];
      }
    }
    out[j] = ExtremalPolynomial{j, n, u_to_k(b)};
  }
  return out;
}

const IntPoly& extremal_poly(unsigned long j, unsigned long n) {
  static std::mutex mu;
  static std::map<std::pair<unsigned long, unsigned long>, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(j, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, extremal_poly_crt(j, n).poly).first;
  }
  return it->second;
}

WolstenholmeData optimal_data(unsigned long n, const Int& k) {
  Int km1 = k - 1;
  std::vector<Int> rhs(n);
  for (unsigned long i = 0; i < n; ++i) {
    rhs[i] = -pow_int(km1, n + 1 + i);
  }
  std::vector<Int> x = solve_unimodular(matrix_M(n), rhs);
  WolstenholmeData data;
  data.k = k;
  data.N = 2 * n;
  data.c.assign(2 * n + 1, Rat(0));
  for (unsigned long i = 0; i < n; ++i) {
    data.c[i] = Rat(x[i]);
  }
  return data;
}

ExtensionPair extension_pair(unsigned long n, const Int& k) {
  WolstenholmeData data = optimal_data(n, k);
  data.N = 2 * n + 2;
  std::vector<Rat> b = coefficients_from_data(data);
  ExtensionPair out;
  out.n = n;
  out.k = k;
  out.b_odd = b[2 * n + 1];
  out.b_even = b[2 * n + 2];
  out.c_value = Rat(n + 1) * out.b_odd + out.b_even;
  return out;
}

SymbolicExtensionPair extension_pair_symbolic(unsigned long n) {
  std::vector<IntPoly> x = solved_tail_polys(n);
  IntPoly b_odd = IntPoly::monomial(Int(1), 2 * n + 1);
  IntPoly b_even = IntPoly::monomial(Int(1), 2 * n + 2);
  for (unsigned long i = 0; i < n; ++i) {
    // Signs (-1)^{l+1} at l = 2n+1 (plus) and l = 2n+2 (minus).
    b_odd = b_odd + int_binomial(2 * n + 1, i) * x[i];
    b_even = b_even - int_binomial(2 * n + 2, i) * x[i];
  }
  SymbolicExtensionPair out;
  out.b_odd = u_to_k(b_odd);
  out.b_even = u_to_k(b_even);
  out.c_value = Int(n + 1) * out.b_odd + out.b_even;
  return out;
}

Int matrix_Mnb_det(unsigned long n, unsigned long b) {
  IntMatrix m(n, n);
  for (unsigned long i = 0; i < n; ++i) {
    for (unsigned long j = 0; j < n; ++j) {
      m.at(i, j) = int_binomial(b + i, j);
    }
  }
  return determinant(std::move(m));
}

} // namespace wst
