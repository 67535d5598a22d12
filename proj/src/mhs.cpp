#include "wolstenholme/mhs.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "wolstenholme/errors.hpp"

namespace wst {

namespace {

// H(lambda[pos:]; n), memoized per top-level call on (pos, n).
Rat mhs_recurse(const Composition& lambda, std::size_t pos, unsigned long n,
                std::map<std::pair<std::size_t, unsigned long>, Rat>& memo) {
  std::size_t remaining = lambda.parts.size() - pos;
  if (remaining == 0) {
    return Rat(1);
  }
  if (n < remaining) {
    return Rat(0);
  }
  auto key = std::make_pair(pos, n);
  if (auto it = memo.find(key); it != memo.end()) {
    return it->second;
  }
  Rat total(0);
  for (unsigned long i = remaining; i <= n; ++i) {
    Rat term = mhs_recurse(lambda, pos + 1, i - 1, memo);
    if (term == 0) continue;
    total += term / Rat(pow_int(Int(i), lambda.parts[pos]));
  }
  memo.emplace(key, total);
  return total;
}

} // namespace

Rat mhs_exact(const Composition& lambda, unsigned long n,
              unsigned long tuple_limit) {
  for (unsigned part : lambda.parts) {
    if (part == 0) {
      throw std::domain_error("mhs_exact: composition parts must be positive");
    }
  }
  if (lambda.depth() > n) {
    return Rat(0); // includes the empty-sum convention for any n < depth
  }
  // The naive sum ranges over C(n, depth) strictly decreasing index tuples.
  if (int_binomial(n, lambda.depth()) > Int(tuple_limit)) {
    throw resource_limit("mhs_exact: index-tuple count exceeds the configured bound");
  }
  std::map<std::pair<std::size_t, unsigned long>, Rat> memo;
  return mhs_recurse(lambda, 0, n, memo);
}

std::vector<Rat> elem_mhs_exact_row(unsigned long n, unsigned long jmax) {
  // Truncated product of (1 + T/i), i = 1..n; coefficient j is e_j(1,...,1/n).
  std::vector<Rat> e(jmax + 1, Rat(0));
  e[0] = 1;
  unsigned long top = 0;
  for (unsigned long i = 1; i <= n; ++i) {
    Rat inv = make_rat(Int(1), Int(i));
    if (top < jmax) {
      ++top;
    }
    for (unsigned long j = top; j >= 1; --j) {
      e[j] += inv * e[j - 1];
    }
  }
  return e;
}

Rat elem_mhs_exact(unsigned long j, unsigned long n) {
  if (j > n) {
    return Rat(0);
  }
  return elem_mhs_exact_row(n, j)[j];
}

Residue ElemMhsVector::at(std::size_t j) const {
  if (j >= values.size()) {
    throw std::out_of_range("ElemMhsVector::at: entry not computed");
  }
  return Residue(p, m, values[j]);
}

ElemMhsVector elem_mhs_mod(const Int& p, unsigned m, unsigned long jmax) {
  if (p < 2 || !is_prime(p)) {
    throw std::domain_error("elem_mhs_mod: p must be prime");
  }
  if (m == 0) {
    throw std::domain_error("elem_mhs_mod: m must be positive");
  }
  ElemMhsVector out;
  out.p = p;
  out.m = m;
  mpz_pow_ui(out.modulus.get_mpz_t(), p.get_mpz_t(), m);
  out.values.assign(jmax + 1, Int(0));
  out.values[0] = 1;
  if (p == 2) {
    // p - 1 = 1: the product has the single factor (1 + T), handled directly.
    if (jmax >= 1) {
      out.values[1] = 1;
    }
    return out;
  }

  if (mpz_fits_ulong_p(p.get_mpz_t()) == 0) {
    throw resource_limit("elem_mhs_mod: p too large for the O(p) pass");
  }
  const mpz_srcptr pm = out.modulus.get_mpz_t();
  unsigned long pu = mpz_get_ui(p.get_mpz_t());

  // Batch inversion of 1..p-1 mod p^m: prefix products, one invert, walk back.
  std::vector<Int> prefix(pu); // prefix[i] = i! mod p^m, prefix[0] = 1
  prefix[0] = 1;
  for (unsigned long i = 1; i < pu; ++i) {
    prefix[i] = prefix[i - 1] * i;
    mpz_mod(prefix[i].get_mpz_t(), prefix[i].get_mpz_t(), pm);
  }
  Int run; // inverse of i! mod p^m while walking i downward
  if (mpz_invert(run.get_mpz_t(), prefix[pu - 1].get_mpz_t(), pm) == 0) {
    throw not_invertible("elem_mhs_mod: factorial not invertible");
  }
  std::vector<Int> inv(pu); // inv[i] = i^{-1} mod p^m for i >= 1
  Int t;
  for (unsigned long i = pu - 1; i >= 1; --i) {
    t = run * prefix[i - 1];
    mpz_mod(inv[i].get_mpz_t(), t.get_mpz_t(), pm);
    run *= i;
    mpz_mod(run.get_mpz_t(), run.get_mpz_t(), pm);
  }

  // e <- e + (1/i) * shift(e), truncated at jmax.
  unsigned long top = 0;
  for (unsigned long i = 1; i < pu; ++i) {
    if (top < jmax) {
      ++top;
    }
    const mpz_srcptr ii = inv[i].get_mpz_t();
    for (unsigned long j = top; j >= 1; --j) {
      t = out.values[j - 1];
      mpz_mul(t.get_mpz_t(), t.get_mpz_t(), ii);
      mpz_add(t.get_mpz_t(), t.get_mpz_t(), out.values[j].get_mpz_t());
      mpz_mod(out.values[j].get_mpz_t(), t.get_mpz_t(), pm);
    }
  }
  return out;
}

RatPoly f_poly(unsigned long n) {
  std::vector<Rat> e = elem_mhs_exact_row(n, n);
  std::vector<Rat> c(n + 1);
  Int np1(n + 1);
  Int power(1);
  for (unsigned long j = 0; j <= n; ++j) {
    c[j] = Rat(power) * e[j];
    power *= np1;
  }
  return RatPoly(std::move(c));
}

Rat rep0_residual(unsigned long n, unsigned long j) {
  if (j > n) {
    throw std::domain_error("rep0_residual: need j <= n");
  }
  std::vector<Rat> e = elem_mhs_exact_row(n, n);
  Int np1(n + 1);
  Rat total = Rat(pow_int(np1, j)) * e[j];
  for (unsigned long i = j; i <= n; ++i) {
    Rat term = Rat(int_binomial(i, j) * pow_int(np1, i)) * e[i];
    if ((n + i + 1) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

std::vector<Rat> identity_coefficients(unsigned long n, const Int& k,
                                       const std::vector<Rat>& c) {
  std::vector<Rat> b(n + 1, Rat(0));
  Int km1 = k - 1;
  auto data = [&](unsigned long i) { return i < c.size() ? c[i] : Rat(0); };
  for (unsigned long j = 0; j <= n; ++j) {
    Rat corr(0);
    for (unsigned long i = 0; i <= j; ++i) {
      corr += Rat(int_binomial(j, i)) * data(i);
    }
    bool plus = (n + j + 1) % 2 == 0;
    b[j] = Rat(pow_int(km1, j)) + data(j) + (plus ? corr : -corr);
  }
  return b;
}

Rat binomial_via_lehmer(const Int& m, unsigned long kk) {
  std::vector<Rat> e = elem_mhs_exact_row(kk, kk);
  Int m1 = m + 1;
  Rat total(0);
  Int power(1);
  for (unsigned long j = 0; j <= kk; ++j) {
    Rat term = Rat(power) * e[j];
    if (j % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
    power *= m1;
  }
  return (kk % 2 == 0) ? total : -total;
}

} // namespace wst
