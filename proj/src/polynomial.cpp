#include "wolstenholme/polynomial.hpp"

namespace wst {

RatPoly to_rational(const IntPoly& f) {
  std::vector<Rat> c;
  c.reserve(f.coefficients().size());
  for (const Int& x : f.coefficients()) {
    c.emplace_back(x);
  }
  return RatPoly(std::move(c));
}

IntPoly to_integer(const RatPoly& f) {
  std::vector<Int> c;
  c.reserve(f.coefficients().size());
  for (const Rat& x : f.coefficients()) {
    if (den(x) != 1) {
      throw error("to_integer: non-integer coefficient " + x.get_str());
    }
    c.push_back(num(x));
  }
  return IntPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) {
    throw std::domain_error("divmod: division by the zero polynomial");
  }
  std::vector<Rat> rem = a.coefficients();
  long db = b.degree();
  if (a.degree() < db) {
    return {RatPoly(), a};
  }
  std::vector<Rat> quot(static_cast<std::size_t>(a.degree() - db) + 1, Rat(0));
  Rat lead = b.coeff(static_cast<std::size_t>(db));
  for (long i = a.degree(); i >= db; --i) {
    Rat q = rem[static_cast<std::size_t>(i)] / lead;
    if (q == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = q;
    for (long j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
    }
  }
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

bool divides(const IntPoly& b, const IntPoly& a) {
  if (b.is_zero()) {
    return a.is_zero();
  }
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  (void)q;
  return r.is_zero();
}

RatPoly poly_crt(const RatPoly& r1, unsigned e1, const RatPoly& r2_shifted,
                 unsigned e2) {
  if (e1 == 0 || e2 == 0) {
    throw std::domain_error("poly_crt: moduli exponents must be positive");
  }
  RatPoly r1t = r1.truncated(e1);

  // Work in u = T - 1. Need h(u) = g(u+1) with
  //   (1+u)^e1 * h(u) == r2(u) - r1(u+1)   (mod u^e2).
  RatPoly s = (r2_shifted.truncated(e2) - r1t.taylor_shift(Rat(1))).truncated(e2);

  // (1+u)^{-e1} mod u^e2 has coefficients C(-e1, i) = (-1)^i C(e1+i-1, i).
  std::vector<Rat> inv(e2, Rat(0));
  for (unsigned i = 0; i < e2; ++i) {
    Int c = int_binomial(static_cast<unsigned long>(e1) + i - 1, i);
    inv[i] = (i % 2 == 0) ? Rat(c) : Rat(-c);
  }

  RatPoly h = (s * RatPoly(std::move(inv))).truncated(e2);
  RatPoly g = h.taylor_shift(Rat(-1)); // back to the T variable
  RatPoly f = r1t + g.shifted_up(e1);

  if (f.degree() >= static_cast<long>(e1) + static_cast<long>(e2)) {
    throw degree_assertion("poly_crt: degree bound violated");
  }
  return f;
}

} // namespace wst
