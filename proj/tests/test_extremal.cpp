// Extremal coefficient polynomials: both construction routes, the data-vector
// coefficient map, the optimal-data solver, and the extension pair.
#include <doctest.h>

#include <random>
#include <vector>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/extremal.hpp"
#include "wolstenholme/numeric.hpp"
#include "wolstenholme/polynomial.hpp"

using namespace wst;

namespace {

IntPoly int_poly_pow(const IntPoly& base, unsigned long e) {
  IntPoly acc = IntPoly::constant(Int(1));
  for (unsigned long i = 0; i < e; ++i) {
    acc = acc * base;
  }
  return acc;
}

const IntPoly kT = IntPoly::monomial(Int(1), 1);
const IntPoly kTm1 = IntPoly({Int(-1), Int(1)});

} // namespace

TEST_CASE("coefficients from data: pinned vectors") {
  // All-zero data gives the plain powers of k-1.
  WolstenholmeData plain{Int(5), {}, 4};
  std::vector<Rat> b = coefficients_from_data(plain);
  REQUIRE(b.size() == 5);
  for (unsigned long j = 0; j <= 4; ++j) {
    CHECK(b[j] == Rat(pow_int(Int(4), j)));
  }

  // A single entry c_0 = (k-1)^2 collapses the vector to (1, k(k-1), 0).
  for (long k = -3; k <= 5; ++k) {
    Rat c0 = Rat(pow_int(Int(k - 1), 2));
    WolstenholmeData d{Int(k), {c0}, 2};
    std::vector<Rat> v = coefficients_from_data(d);
    CHECK(v[0] == 1);
    CHECK(v[1] == Rat(Int(k) * Int(k - 1)));
    CHECK(v[2] == 0);
  }

  WolstenholmeData six{Int(2), {Rat(49), Rat(-18), Rat(4)}, 6};
  std::vector<Rat> w = coefficients_from_data(six);
  std::vector<Rat> expected{Rat(1), Rat(14), Rat(-12), Rat(8),
                            Rat(0), Rat(0),  Rat(0)};
  CHECK(w == expected);
}

TEST_CASE("matrix recipe: pinned small tables") {
  std::vector<ExtremalPolynomial> n0 = extremal_polys_matrix(0);
  REQUIRE(n0.size() == 1);
  CHECK(n0[0].poly == IntPoly::constant(Int(1)));

  std::vector<ExtremalPolynomial> n1 = extremal_polys_matrix(1);
  REQUIRE(n1.size() == 2);
  CHECK(n1[0].poly == IntPoly::constant(Int(1)));
  CHECK(n1[1].poly == IntPoly({Int(0), Int(-1), Int(1)}));
  CHECK(n1[1].poly.str() == "T^2-T");

  std::vector<ExtremalPolynomial> n2 = extremal_polys_matrix(2);
  REQUIRE(n2.size() == 3);
  CHECK(n2[1].poly == IntPoly({Int(0), Int(-1), Int(0), Int(2), Int(-1)}));
  CHECK(n2[2].poly == IntPoly({Int(0), Int(0), Int(1), Int(-2), Int(1)}));

  std::vector<ExtremalPolynomial> n3 = extremal_polys_matrix(3);
  REQUIRE(n3.size() == 4);
  CHECK(n3[1].poly.str() == "2*T^6-6*T^5+5*T^4-T");
  CHECK(n3[2].poly.str() == "-2*T^6+6*T^5-5*T^4+T^2");
  CHECK(n3[3].poly.str() == "T^6-3*T^5+3*T^4-T^3");
}

TEST_CASE("interpolation route: pinned values and degenerate inputs") {
  for (unsigned long n = 0; n <= 6; ++n) {
    CHECK(extremal_poly_crt(0, n).poly == IntPoly::constant(Int(1)));
    for (unsigned long j = n + 1; j <= 2 * n; ++j) {
      CHECK(extremal_poly_crt(j, n).poly.is_zero());
    }
  }
  CHECK(extremal_poly_crt(3, 3).poly.str() == "T^6-3*T^5+3*T^4-T^3");
  IntPoly b13 = extremal_poly_crt(1, 3).poly;
  CHECK(b13.str() == "2*T^6-6*T^5+5*T^4-T");
  CHECK(b13.eval(Int(2)) == 14);
  CHECK(b13.eval(Int(3)) == 402);
  CHECK_THROWS_AS(extremal_poly_crt(7, 3), std::domain_error);
}

TEST_CASE("both construction routes agree") {
  for (unsigned long n = 0; n <= 8; ++n) {
    std::vector<ExtremalPolynomial> rows = extremal_polys_matrix(n);
    for (unsigned long j = 0; j <= n; ++j) {
      CHECK(rows[j].poly == extremal_poly_crt(j, n).poly);
      CHECK(rows[j].poly == extremal_poly(j, n));
    }
  }
}

TEST_CASE("defining congruence conditions and degree bound") {
  for (unsigned long n = 0; n <= 8; ++n) {
    IntPoly t_mod = int_poly_pow(kT, n + 1);
    IntPoly tm1_mod = int_poly_pow(kTm1, n + 1);
    for (unsigned long j = 0; j <= n; ++j) {
      const IntPoly& b = extremal_poly(j, n);
      CHECK(b.degree() <= 2 * static_cast<long>(n));
      IntPoly minus_t_j = int_poly_pow(-kT, j);
      IntPoly tm1_j = int_poly_pow(kTm1, j);
      CHECK(divides(t_mod, b - minus_t_j));
      CHECK(divides(tm1_mod, b - tm1_j));
      // T^j (T-1)^j divides the whole polynomial.
      CHECK(divides(int_poly_pow(kT * kTm1, j), b));
    }
    // Top of the range: b_{n,n} = T^n (T-1)^n exactly.
    CHECK(extremal_poly(n, n) == int_poly_pow(kT * kTm1, n));
  }
}

TEST_CASE("first two rows always sum to T^2 - T") {
  IntPoly target({Int(0), Int(-1), Int(1)});
  for (unsigned long n = 1; n <= 10; ++n) {
    CHECK(extremal_poly(1, n) + extremal_poly(2, n) == target);
  }
}

TEST_CASE("symmetric polynomials expand over the extremal rows") {
  // For f with f(T) = f(-1-T) and deg <= 2n, the monomial coefficients a_j
  // of f satisfy sum_j a_j b_{j,n}(T) = f(T-1).
  std::mt19937_64 rng(424242u);
  std::uniform_int_distribution<long> pick(-5, 5);
  for (unsigned long n = 1; n <= 6; ++n) {
    RatPoly f;
    RatPoly half_shifted({make_rat(Int(1), Int(2)), Rat(1)}); // T + 1/2
    for (unsigned long i = 0; 2 * i <= 2 * n; ++i) {
      RatPoly basis = RatPoly::constant(Rat(1));
      for (unsigned long t = 0; t < 2 * i; ++t) {
        basis = basis * half_shifted;
      }
      f = f + Rat(pick(rng)) * basis;
    }
    RatPoly combo;
    for (unsigned long j = 0; j <= 2 * n; ++j) {
      combo = combo + f.coeff(j) * to_rational(extremal_poly(j, n));
    }
    CHECK(combo == f.taylor_shift(Rat(-1)));
  }
}

TEST_CASE("swap symmetry in the data and in the polynomials") {
  // c_j = -(k-1)^j turns the coefficient vector into powers of -k.
  for (long k = -4; k <= 6; ++k) {
    unsigned long N = 5;
    std::vector<Rat> c(N + 1);
    for (unsigned long j = 0; j <= N; ++j) {
      c[j] = -Rat(pow_int(Int(k - 1), j));
    }
    std::vector<Rat> b = coefficients_from_data(WolstenholmeData{Int(k), c, N});
    for (unsigned long j = 0; j <= N; ++j) {
      CHECK(b[j] == Rat(pow_int(Int(-k), j)));
    }
  }
  // b_{j,n}(k) = b_{j,n}(1-k).
  for (unsigned long n = 0; n <= 6; ++n) {
    for (unsigned long j = 0; j <= n; ++j) {
      const IntPoly& b = extremal_poly(j, n);
      for (long k = -10; k <= 10; ++k) {
        CHECK(b.eval(Int(k)) == b.eval(Int(1 - k)));
      }
    }
  }
}

TEST_CASE("optimal data zeroes the upper window") {
  WolstenholmeData d12 = optimal_data(1, Int(2));
  CHECK(d12.N == 2);
  REQUIRE(d12.c.size() == 3);
  CHECK(d12.c[0] == 1);
  CHECK(d12.c[1] == 0);
  CHECK(d12.c[2] == 0);
  std::vector<Rat> b12 = coefficients_from_data(d12);
  CHECK(b12 == std::vector<Rat>{Rat(1), Rat(2), Rat(0)});

  WolstenholmeData d32 = optimal_data(3, Int(2));
  CHECK(d32.N == 6);
  CHECK(d32.c[0] == 49);
  CHECK(d32.c[1] == -18);
  CHECK(d32.c[2] == 4);
  for (std::size_t i = 3; i < d32.c.size(); ++i) {
    CHECK(d32.c[i] == 0);
  }

  WolstenholmeData d0 = optimal_data(0, Int(7));
  std::vector<Rat> b0 = coefficients_from_data(d0);
  CHECK(b0 == std::vector<Rat>{Rat(1)});

  // General property: integral data, zero tail, and b_j = b_{j,n}(k).
  for (unsigned long n = 0; n <= 6; ++n) {
    for (long k = -10; k <= 10; ++k) {
      WolstenholmeData d = optimal_data(n, Int(k));
      std::vector<Rat> b = coefficients_from_data(d);
      REQUIRE(b.size() == 2 * n + 1);
      for (const Rat& q : d.c) {
        CHECK(den(q) == 1);
      }
      for (unsigned long j = 0; j <= n; ++j) {
        CHECK(b[j] == Rat(extremal_poly(j, n).eval(Int(k))));
      }
      for (unsigned long j = n + 1; j <= 2 * n; ++j) {
        CHECK(b[j] == 0);
      }
    }
  }
}

TEST_CASE("extension pair and its closed form") {
  for (long k = -3; k <= 5; ++k) {
    ExtensionPair e = extension_pair(0, Int(k));
    CHECK(e.b_odd == Rat(Int(k - 1)));
    CHECK(e.b_even == Rat(pow_int(Int(k - 1), 2)));
    CHECK(e.c_value == Rat(Int(k) * Int(k - 1)));
  }
  CHECK(extension_pair(1, Int(2)).c_value == 4);

  for (unsigned long n = 0; n <= 5; ++n) {
    SymbolicExtensionPair s = extension_pair_symbolic(n);
    CHECK(s.c_value == int_poly_pow(kT * kTm1, n + 1));
    // Monic of degrees 2n+1 and 2n+2, both divisible by (k-1)^{n+1}.
    CHECK(s.b_odd.degree() == static_cast<long>(2 * n + 1));
    CHECK(s.b_even.degree() == static_cast<long>(2 * n + 2));
    CHECK(s.b_odd.coeff(2 * n + 1) == 1);
    CHECK(s.b_even.coeff(2 * n + 2) == 1);
    IntPoly divisor = int_poly_pow(kTm1, n + 1);
    CHECK(divides(divisor, s.b_odd));
    CHECK(divides(divisor, s.b_even));
    // Numeric evaluations line up with the symbolic polynomials.
    for (long k = -4; k <= 4; ++k) {
      ExtensionPair e = extension_pair(n, Int(k));
      CHECK(e.b_odd == Rat(s.b_odd.eval(Int(k))));
      CHECK(e.b_even == Rat(s.b_even.eval(Int(k))));
      CHECK(e.c_value ==
            Rat(pow_int(Int(k), n + 1) * pow_int(Int(k - 1), n + 1)));
    }
  }
}

TEST_CASE("binomial matrix determinants are one") {
  CHECK(matrix_Mnb_det(1, 9) == 1);
  CHECK(matrix_Mnb_det(4, 3) == 1);
  CHECK(matrix_Mnb_det(12, 12) == 1);
  for (unsigned long n = 1; n <= 8; ++n) {
    for (unsigned long b = 0; b <= 8; ++b) {
      CHECK(matrix_Mnb_det(n, b) == 1);
    }
  }
}
