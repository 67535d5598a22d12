#include "wolstenholme/congruence.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/mhs.hpp"

namespace wst {

namespace {

// Exact equality checks fall back to a saturated mod check above this bound
// (the exact route walks all p-1 harmonic entries over Q).
constexpr unsigned long kExactEqualityLimit = 2000;

void require_odd_prime(const Int& p, const char* where) {
  if (p == 2) {
    throw unsupported_prime(std::string(where) + ": p = 2 is outside the engine");
  }
  if (!is_prime(p)) {
    throw std::domain_error(std::string(where) + ": p must be prime");
  }
}

// Rows H({1}^j; p-1) mod p^m are shared heavily across k within a scan;
// keep a bounded process-wide cache.
ElemMhsVector elem_row_cached(const Int& p, unsigned m, unsigned long jmax) {
  static std::mutex mu;
  static std::map<std::tuple<Int, unsigned, unsigned long>, ElemMhsVector> cache;
  auto key = std::make_tuple(p, m, jmax);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) {
      return it->second;
    }
  }
  ElemMhsVector row = elem_mhs_mod(p, m, jmax);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() >= 1024) {
      cache.clear();
    }
    cache.emplace(std::move(key), row);
  }
  return row;
}

// sum_j coeffs[j] * p^j * H({1}^j; p-1) as a residue in the row's ring;
// terms with p^j == 0 (mod p^m) are skipped.
Residue weighted_row_sum(const ElemMhsVector& row, const std::vector<Int>& coeffs) {
  Int acc(0), t, pj(1);
  for (std::size_t j = 0; j < coeffs.size() && j < row.values.size(); ++j) {
    if (j >= row.m) {
      break; // p^j vanishes mod p^m from here on
    }
    t = coeffs[j] * pj;
    t *= row.values[j];
    acc += t;
    pj *= row.p;
  }
  mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), row.modulus.get_mpz_t());
  return Residue(row.p, row.m, acc);
}

std::vector<Int> reduce_all(const std::vector<Rat>& values, const Int& p, unsigned m) {
  std::vector<Int> out;
  out.reserve(values.size());
  for (const Rat& q : values) {
    out.push_back(padic_reduce(q, p, m).value());
  }
  return out;
}

// Exact value of C(kp-1, p-1) for any integer k (p machine-sized).
Int binom_kp_exact(const Int& k, const Int& p) {
  Int top = k * p - 1;
  return int_binomial(top, mpz_get_ui(p.get_mpz_t()) - 1);
}

// Exact rational right-hand side sum_{j<=N} b_j p^j H({1}^j; p-1).
Rat rhs_exact(const std::vector<Rat>& b, unsigned long N, const Int& p) {
  unsigned long pm1 = mpz_get_ui(p.get_mpz_t()) - 1;
  unsigned long jmax = std::min(N, pm1);
  std::vector<Rat> row = elem_mhs_exact_row(pm1, jmax);
  Rat acc(0);
  Int pj(1);
  for (unsigned long j = 0; j <= jmax; ++j) {
    acc += b[j] * Rat(pj) * row[j];
    pj *= p;
  }
  return acc;
}

struct EqualityOutcome {
  ResidualValuation achieved;
  bool holds = false;
};

// Exact-equality branch: verified by exact rational evaluation (p small
// enough) plus a high-precision modular cross-check; beyond the size limit
// only the modular evidence is used.
EqualityOutcome check_exact_equality(const std::vector<Rat>& b, unsigned long N,
                                     const Int& k, const Int& p, unsigned big_m) {
  EqualityOutcome out;
  Residue lhs_mod = binom_kp_mod(k, p, big_m);
  ElemMhsVector row = elem_row_cached(p, big_m, std::min<unsigned long>(
                                                    N, mpz_get_ui(p.get_mpz_t()) - 1));
  Residue rhs_mod = weighted_row_sum(row, reduce_all(b, p, big_m));
  Residue diff_mod = lhs_mod - rhs_mod;

  if (mpz_get_ui(p.get_mpz_t()) > kExactEqualityLimit) {
    out.achieved = residual_valuation(diff_mod);
    out.holds = diff_mod.is_zero();
    return out;
  }

  Rat diff = Rat(binom_kp_exact(k, p)) - rhs_exact(b, N, p);
  if (diff == 0) {
    if (!diff_mod.is_zero()) {
      throw std::logic_error("equality check: exact and modular routes disagree");
    }
    out.achieved = ResidualValuation{ResidualValuation::Kind::infinite, 0};
    out.holds = true;
  } else {
    auto v = padic_valuation(diff, p);
    out.achieved = ResidualValuation{ResidualValuation::Kind::exact, *v};
    out.holds = false;
  }
  return out;
}

// Measurement core shared by verify_optimized (which gates k >= 1) and the
// classification path (which admits any integer k).
CongruenceReport measure_optimized(unsigned long n, const Int& k, const Int& p,
                                   unsigned slack) {
  require_odd_prime(p, "verify_optimized");
  CongruenceReport rep;
  rep.kind = "optimized";
  rep.n = static_cast<long>(n);
  rep.k = k;
  rep.p = p;

  std::vector<Rat> b;
  b.reserve(n + 1);
  for (unsigned long j = 0; j <= n; ++j) {
    b.emplace_back(extremal_poly(j, n).eval(k));
  }

  if (p <= Int(2 * n + 1)) {
    rep.required = std::nullopt;
    auto outcome = check_exact_equality(b, n, k, p, 2 * static_cast<unsigned>(n) + 6);
    rep.achieved = outcome.achieved;
    rep.holds = outcome.holds;
    rep.exceptional = false;
    return rep;
  }

  long required = (p == Int(2 * n + 3)) ? static_cast<long>(2 * n + 2)
                                        : static_cast<long>(2 * n + 3);
  rep.required = required;
  unsigned m = static_cast<unsigned>(required) + slack;
  Residue lhs = binom_kp_mod(k, p, m);
  ElemMhsVector row = elem_row_cached(p, m, n);
  Residue rhs = weighted_row_sum(row, reduce_all(b, p, m));
  rep.achieved = residual_valuation(lhs - rhs);
  rep.holds = rep.achieved.meets(required);
  rep.exceptional = rep.achieved.meets(required + 1);
  return rep;
}

struct Classification {
  ExceptionalClass klass = ExceptionalClass::none;
  CongruenceReport measured;
};

Classification classify_with_measurement(unsigned long n, const Int& k, const Int& p,
                                         unsigned slack, BernoulliCache* cache) {
  require_odd_prime(p, "classify_exceptional");
  if (p < Int(2 * n + 3)) {
    throw prime_too_small("classify_exceptional: need p >= 2n+3");
  }
  Int kr;
  mpz_mod(kr.get_mpz_t(), k.get_mpz_t(), p.get_mpz_t());
  bool k_flag = (kr == 0 || kr == 1);
  bool bern_flag = false;
  if (p >= Int(2 * n + 5)) {
    bern_flag = bernoulli_via_mhs_cached(n, p, cache).is_zero();
  }

  Classification out;
  if (k_flag && bern_flag) {
    out.klass = ExceptionalClass::both;
  } else if (k_flag) {
    out.klass = ExceptionalClass::k_residue;
  } else if (bern_flag) {
    out.klass = ExceptionalClass::bernoulli;
  }

  out.measured = measure_optimized(n, k, p, std::max(slack, 1u));
  bool predicted = out.klass != ExceptionalClass::none;
  if (predicted != out.measured.exceptional) {
    throw std::logic_error("classify_exceptional: prediction and measurement disagree at p=" +
                           p.get_str());
  }
  out.measured.klass = to_string(out.klass);
  return out;
}

long general_required(unsigned long N, const Int& p, bool& equality) {
  equality = false;
  Int Nn(N);
  if (Nn >= p - 1) {
    equality = true;
    return 0;
  }
  if (Nn == p - 2) {
    return static_cast<long>(N + 1);
  }
  if (Nn == p - 3) {
    return static_cast<long>(N + 2);
  }
  // N <= p-4 from here.
  return static_cast<long>(N % 2 == 0 ? N + 3 : N + 2);
}

void require_p_integral_data(const WolstenholmeData& data, const Int& p) {
  for (const Rat& q : data.c) {
    auto v = padic_valuation(q, p);
    if (v.has_value() && *v < 0) {
      throw bad_prime("verify_general: p divides a data denominator");
    }
  }
}

} // namespace

std::string to_string(ExceptionalClass c) {
  switch (c) {
    case ExceptionalClass::none:
      return "none";
    case ExceptionalClass::k_residue:
      return "k";
    case ExceptionalClass::bernoulli:
      return "bernoulli";
    case ExceptionalClass::both:
      return "both";
  }
  throw std::logic_error("to_string: bad ExceptionalClass");
}

ExceptionalClass exceptional_class_from_string(const std::string& text) {
  if (text == "none") return ExceptionalClass::none;
  if (text == "k") return ExceptionalClass::k_residue;
  if (text == "bernoulli") return ExceptionalClass::bernoulli;
  if (text == "both") return ExceptionalClass::both;
  throw parse_error("exceptional class: cannot parse '" + text + "'");
}

Residue binom_kp_mod(const Int& k, const Int& p, unsigned m) {
  if (!is_prime(p)) {
    throw std::domain_error("binom_kp_mod: p must be prime");
  }
  if (m == 0) {
    throw std::domain_error("binom_kp_mod: m must be positive");
  }
  if (mpz_fits_ulong_p(p.get_mpz_t()) == 0) {
    throw resource_limit("binom_kp_mod: p too large for the O(p) pass");
  }
  Int pm;
  mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
  unsigned long pu = mpz_get_ui(p.get_mpz_t());

  Int kp = k * p;
  mpz_mod(kp.get_mpz_t(), kp.get_mpz_t(), pm.get_mpz_t());
  Int num(1), den(1), t;
  const mpz_srcptr pmz = pm.get_mpz_t();
  for (unsigned long i = 1; i < pu; ++i) {
    t = kp - i;
    mpz_mul(num.get_mpz_t(), num.get_mpz_t(), t.get_mpz_t());
    mpz_mod(num.get_mpz_t(), num.get_mpz_t(), pmz);
    mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), i);
    mpz_mod(den.get_mpz_t(), den.get_mpz_t(), pmz);
  }
  if (mpz_invert(t.get_mpz_t(), den.get_mpz_t(), pmz) == 0) {
    throw not_invertible("binom_kp_mod: (p-1)! not invertible");
  }
  num *= t;
  return Residue(p, m, num);
}

CongruenceReport verify_optimized(unsigned long n, const Int& k, const Int& p,
                                  unsigned slack) {
  if (k < 1) {
    throw std::domain_error("verify_optimized: k must be a positive integer");
  }
  return measure_optimized(n, k, p, slack);
}

CongruenceReport verify_general(const WolstenholmeData& data, const Int& p,
                                unsigned slack) {
  require_odd_prime(p, "verify_general");
  require_p_integral_data(data, p);

  CongruenceReport rep;
  rep.kind = "general";
  rep.n = static_cast<long>(data.N);
  rep.k = data.k;
  rep.p = p;

  std::vector<Rat> b = coefficients_from_data(data);
  bool equality = false;
  long required = general_required(data.N, p, equality);

  if (equality) {
    rep.required = std::nullopt;
    auto outcome =
        check_exact_equality(b, data.N, data.k, p, static_cast<unsigned>(data.N) + 4);
    rep.achieved = outcome.achieved;
    rep.holds = outcome.holds;
    rep.exceptional = false;
    return rep;
  }

  rep.required = required;
  unsigned m = static_cast<unsigned>(required) + slack;
  Residue lhs = binom_kp_mod(data.k, p, m);
  unsigned long jmax = std::min<unsigned long>(data.N, m - 1);
  ElemMhsVector row = elem_row_cached(p, m, jmax);
  Residue rhs = weighted_row_sum(row, reduce_all(b, p, m));
  rep.achieved = residual_valuation(lhs - rhs);
  rep.holds = rep.achieved.meets(required);
  rep.exceptional = rep.achieved.meets(required + 1);
  return rep;
}

ErrorTermReport error_term(const WolstenholmeData& data, const Int& p) {
  require_odd_prime(p, "error_term");
  require_p_integral_data(data, p);

  ErrorTermReport rep;
  rep.p = p;
  rep.N = data.N;
  rep.data = data;
  unsigned long N = data.N;
  Int Nn(N);

  unsigned m = 0;
  if (Nn >= p - 1) {
    rep.case_id = 4;
    m = static_cast<unsigned>(N) + 4;
  } else if (Nn == p - 2) {
    rep.case_id = 3;
    m = static_cast<unsigned>(N) + 2;
  } else if (Nn == p - 3) {
    rep.case_id = 2;
    m = static_cast<unsigned>(N) + 3;
  } else {
    rep.case_id = 1;
    m = static_cast<unsigned>(N) + (N % 2 == 0 ? 4 : 3);
  }

  // Measured E_N = C(kp-1, p-1) - sum_{j<=N} b_j p^j H_j in Z/p^m.
  std::vector<Rat> b = coefficients_from_data(data);
  Residue lhs = binom_kp_mod(data.k, p, m);
  unsigned long jmax = std::min<unsigned long>(N, m - 1);
  ElemMhsVector row = elem_row_cached(p, m, jmax);
  rep.actual = lhs - weighted_row_sum(row, reduce_all(b, p, m));

  // Predicted leading term, built from the extension coefficients b_{N+1},
  // b_{N+2} and a Bernoulli residue mod p.
  WolstenholmeData extended = data;
  extended.N = N + 2;
  std::vector<Rat> bext = coefficients_from_data(extended);

  auto lift = [&](const Residue& unit, unsigned long exponent) {
    return Residue(p, m, unit.value() * pow_int(p, exponent));
  };

  switch (rep.case_id) {
    case 1: {
      if (N % 2 == 0) {
        // -B_{p-3-N}/(N+3) * ((N+2)/2 * b_{N+1} + b_{N+2}) * p^{N+3}
        unsigned long idx = mpz_get_ui(Int(p - 3 - Nn).get_mpz_t());
        Residue bern = bernoulli_mod_p(idx, p);
        Rat weight = Rat(N + 2) / Rat(2) * bext[N + 1] + bext[N + 2];
        Residue unit = -(bern * mod_inverse(Int(N + 3), p, 1) * padic_reduce(weight, p, 1));
        rep.predicted = lift(unit, N + 3);
      } else {
        // -B_{p-2-N}/(N+2) * b_{N+1} * p^{N+2}
        unsigned long idx = mpz_get_ui(Int(p - 2 - Nn).get_mpz_t());
        Residue bern = bernoulli_mod_p(idx, p);
        Residue unit =
            -(bern * mod_inverse(Int(N + 2), p, 1) * padic_reduce(bext[N + 1], p, 1));
        rep.predicted = lift(unit, N + 2);
      }
      break;
    }
    case 2: {
      // (b_{N+1}/2 - b_{N+2}) * p^{N+2}
      Rat weight = bext[N + 1] / Rat(2) - bext[N + 2];
      rep.predicted = lift(padic_reduce(weight, p, 1), N + 2);
      break;
    }
    case 3: {
      // -b_{N+1} * p^{N+1}
      rep.predicted = lift(-padic_reduce(bext[N + 1], p, 1), N + 1);
      break;
    }
    case 4: {
      // E_N = 0 exactly: the sum saturates at j = p-1.
      rep.predicted = Residue(p, m, Int(0));
      if (mpz_get_ui(p.get_mpz_t()) <= kExactEqualityLimit) {
        Rat diff = Rat(binom_kp_exact(data.k, p)) - rhs_exact(b, N, p);
        if ((diff == 0) != rep.actual.is_zero()) {
          throw std::logic_error("error_term: exact and modular routes disagree");
        }
      }
      break;
    }
    default:
      throw std::logic_error("error_term: bad case");
  }

  rep.match = rep.predicted == rep.actual;
  return rep;
}

ExceptionalClass classify_exceptional(unsigned long n, const Int& k, const Int& p,
                                      BernoulliCache* cache) {
  return classify_with_measurement(n, k, p, 1, cache).klass;
}

std::string to_string(NamedTag tag) {
  switch (tag) {
    case NamedTag::wolstenholme: return "wolstenholme";
    case NamedTag::glaisher: return "glaisher";
    case NamedTag::van_hamme: return "van_hamme";
    case NamedTag::mestrovic: return "mestrovic";
    case NamedTag::easycong: return "easycong";
    case NamedTag::sc1: return "sc1";
    case NamedTag::sc2: return "sc2";
    case NamedTag::zhao: return "zhao";
    case NamedTag::propextra: return "propextra";
    case NamedTag::glaisher_h1: return "glaisher_h1";
  }
  throw std::logic_error("to_string: bad NamedTag");
}

NamedTag named_tag_from_string(const std::string& text) {
  if (text == "wolstenholme") return NamedTag::wolstenholme;
  if (text == "glaisher") return NamedTag::glaisher;
  if (text == "van_hamme") return NamedTag::van_hamme;
  if (text == "mestrovic") return NamedTag::mestrovic;
  if (text == "easycong") return NamedTag::easycong;
  if (text == "sc1") return NamedTag::sc1;
  if (text == "sc2") return NamedTag::sc2;
  if (text == "zhao") return NamedTag::zhao;
  if (text == "propextra") return NamedTag::propextra;
  if (text == "glaisher_h1") return NamedTag::glaisher_h1;
  throw parse_error("named tag: unknown '" + text + "'");
}

namespace {

CongruenceReport named_binomial_check(const NamedCheck& check, const Int& p,
                                      long required, unsigned slack,
                                      const std::vector<Rat>& coeffs,
                                      unsigned long jmax) {
  CongruenceReport rep;
  rep.kind = to_string(check.tag);
  rep.p = p;
  rep.required = required;
  unsigned m = static_cast<unsigned>(required) + slack;
  Residue lhs = binom_kp_mod(check.k, p, m);
  ElemMhsVector row = elem_row_cached(p, m, jmax);
  Residue rhs = weighted_row_sum(row, reduce_all(coeffs, p, m));
  rep.achieved = residual_valuation(lhs - rhs);
  rep.holds = rep.achieved.meets(required);
  rep.exceptional = rep.achieved.meets(required + 1);
  return rep;
}

} // namespace

CongruenceReport verify_named(const NamedCheck& check, const Int& p, unsigned slack) {
  if (!is_prime(p)) {
    throw std::domain_error("verify_named: p must be prime");
  }
  switch (check.tag) {
    case NamedTag::wolstenholme: {
      if (p < 5) {
        throw prime_out_of_range("wolstenholme: valid for primes p >= 5");
      }
      NamedCheck c = check;
      c.k = 2;
      auto rep = named_binomial_check(c, p, 3, slack, {Rat(1)}, 0);
      rep.k = Int(2);
      return rep;
    }
    case NamedTag::glaisher: {
      if (check.k < 2) {
        throw std::domain_error("glaisher: needs k >= 2");
      }
      if (p < 5) {
        throw prime_out_of_range("glaisher: valid for primes p >= 5");
      }
      auto rep = named_binomial_check(check, p, 3, slack, {Rat(1)}, 0);
      rep.k = check.k;
      return rep;
    }
    case NamedTag::van_hamme: {
      if (p < 7) {
        throw prime_out_of_range("van_hamme: valid for primes p >= 7");
      }
      NamedCheck c = check;
      c.k = 2;
      auto rep = named_binomial_check(c, p, 5, slack, {Rat(1), Rat(2)}, 1);
      rep.k = Int(2);
      return rep;
    }
    case NamedTag::mestrovic: {
      if (p < 11) {
        throw prime_out_of_range("mestrovic: valid for primes p >= 11");
      }
      NamedCheck c = check;
      c.k = 2;
      auto rep = named_binomial_check(c, p, 7, slack, {Rat(1), Rat(-2), Rat(4)}, 2);
      rep.k = Int(2);
      return rep;
    }
    case NamedTag::easycong: {
      if (check.n < 0) {
        throw std::domain_error("easycong: needs n >= 0");
      }
      unsigned long n = static_cast<unsigned long>(check.n);
      if (p < Int(2 * n + 5)) {
        throw prime_out_of_range("easycong: valid for primes p >= 2n+5");
      }
      std::vector<Rat> coeffs(2 * n + 1);
      Int km1 = check.k - 1;
      for (unsigned long j = 0; j <= 2 * n; ++j) {
        coeffs[j] = Rat(pow_int(km1, j));
      }
      auto rep = named_binomial_check(check, p, static_cast<long>(2 * n + 3), slack,
                                      coeffs, 2 * n);
      rep.n = check.n;
      rep.k = check.k;
      return rep;
    }
    case NamedTag::sc1: {
      if (p < 3 || p == 5) {
        throw prime_out_of_range("sc1: valid for odd primes p != 5");
      }
      std::vector<Rat> coeffs = {Rat(1), Rat(check.k * (check.k - 1))};
      auto rep = named_binomial_check(check, p, 5, slack, coeffs, 1);
      rep.k = check.k;
      return rep;
    }
    case NamedTag::sc2: {
      if (p < 3) {
        throw prime_out_of_range("sc2: valid for odd primes");
      }
      NamedCheck c = check;
      c.k = 2;
      std::vector<Rat> coeffs = {Rat(1), Rat(14), Rat(-12), Rat(8)};
      auto rep = named_binomial_check(c, p, 9, slack, coeffs, 3);
      rep.k = Int(2);
      return rep;
    }
    case NamedTag::zhao: {
      long j = check.n;
      if (j < 1 || Int(j) > p - 3) {
        throw prime_out_of_range("zhao: needs 1 <= j <= p-3");
      }
      CongruenceReport rep;
      rep.kind = "zhao";
      rep.n = j;
      rep.p = p;
      unsigned long ju = static_cast<unsigned long>(j);
      if (ju % 2 == 0) {
        // H_j == -B_{p-1-j}/(j+1) * p (mod p^2)
        rep.required = 2;
        ElemMhsVector row = elem_row_cached(p, 2, ju);
        unsigned long idx = mpz_get_ui(Int(p - 1 - j).get_mpz_t());
        Residue unit = -(bernoulli_mod_p(idx, p) * mod_inverse(Int(ju + 1), p, 1));
        Residue prediction(p, 2, unit.value() * p);
        rep.achieved = residual_valuation(row.at(ju) - prediction);
        rep.holds = rep.achieved.meets(2);
        rep.exceptional = rep.achieved.meets(3);
      } else {
        // H_j == -(j+1)/(2(j+2)) * B_{p-2-j} * p^2 (mod p^3)
        rep.required = 3;
        ElemMhsVector row = elem_row_cached(p, 3, ju);
        unsigned long idx = mpz_get_ui(Int(p - 2 - j).get_mpz_t());
        Residue unit = -(bernoulli_mod_p(idx, p) * Residue(p, 1, Int(ju + 1)) *
                         mod_inverse(Int(2 * (ju + 2)), p, 1));
        Residue prediction(p, 3, unit.value() * p * p);
        rep.achieved = residual_valuation(row.at(ju) - prediction);
        rep.holds = rep.achieved.meets(3);
        rep.exceptional = rep.achieved.meets(4);
      }
      return rep;
    }
    case NamedTag::propextra: {
      if (p < 3) {
        throw prime_out_of_range("propextra: valid for odd primes");
      }
      CongruenceReport rep;
      rep.kind = "propextra";
      rep.p = p;
      rep.required = 2;
      unsigned long pu = mpz_get_ui(p.get_mpz_t());
      ElemMhsVector row = elem_row_cached(p, 2, pu + 1);
      // H_{p-2} == p/2 (mod p^2)
      Residue half_p(p, 2, mod_inverse(Int(2), p, 2).value() * p);
      Residue d1 = row.at(pu - 2) - half_p;
      // H_{p-1} == -1 (mod p)
      Residue d2 = Residue(p, 1, row.values[pu - 1]) - Residue(p, 1, Int(-1));
      // H_j = 0 for j >= p (degree of the defining product is p-1)
      bool tail_zero = row.values[pu] == 0 && row.values[pu + 1] == 0;
      rep.achieved = residual_valuation(d1);
      rep.holds = rep.achieved.meets(2) && d2.is_zero() && tail_zero;
      rep.exceptional = false;
      return rep;
    }
    case NamedTag::glaisher_h1: {
      if (p < 5) {
        throw prime_out_of_range("glaisher_h1: valid for primes p >= 5");
      }
      CongruenceReport rep;
      rep.kind = "glaisher_h1";
      rep.p = p;
      rep.required = 3;
      ElemMhsVector row = elem_row_cached(p, 3, 1);
      unsigned long idx = mpz_get_ui(Int(p - 3).get_mpz_t());
      Residue unit = -(bernoulli_mod_p(idx, p) * mod_inverse(Int(3), p, 1));
      Residue prediction(p, 3, unit.value() * p * p);
      rep.achieved = residual_valuation(row.at(1) - prediction);
      rep.holds = rep.achieved.meets(3);
      rep.exceptional = rep.achieved.meets(4);
      return rep;
    }
  }
  throw std::logic_error("verify_named: bad tag");
}

std::optional<Int> uniqueness_search(unsigned long n, const Int& k,
                                     const std::vector<Rat>& candidate,
                                     const Int& p_min, const Int& p_max) {
  if (candidate.size() != n + 1) {
    throw std::domain_error("uniqueness_search: candidate must have n+1 entries");
  }
  if (p_min < Int(2 * n + 5)) {
    throw std::domain_error("uniqueness_search: need p_min >= 2n+5");
  }
  unsigned m = static_cast<unsigned>(2 * n + 2);
  auto primes = primes_in_range(mpz_get_ui(p_min.get_mpz_t()),
                                mpz_get_ui(p_max.get_mpz_t()));
  for (unsigned long pv : primes) {
    Int p(pv);
    bool integral = true;
    for (const Rat& q : candidate) {
      auto v = padic_valuation(q, p);
      if (v.has_value() && *v < 0) {
        integral = false; // congruence undefined at p: the candidate fails
        break;
      }
    }
    if (!integral) {
      return p;
    }
    Residue lhs = binom_kp_mod(k, p, m);
    ElemMhsVector row = elem_row_cached(p, m, n);
    Residue rhs = weighted_row_sum(row, reduce_all(candidate, p, m));
    if (lhs != rhs) {
      return p;
    }
  }
  return std::nullopt;
}

CongruenceReport run_task(const VerifyTask& task) {
  if (const auto* opt = std::get_if<OptimizedSpec>(&task.spec)) {
    return verify_optimized(opt->n, opt->k, task.p, task.slack);
  }
  if (const auto* gen = std::get_if<GeneralSpec>(&task.spec)) {
    return verify_general(gen->data, task.p, task.slack);
  }
  if (const auto* named = std::get_if<NamedCheck>(&task.spec)) {
    return verify_named(*named, task.p, task.slack);
  }
  const auto& exc = std::get<ExceptionalSpec>(task.spec);
  auto result = classify_with_measurement(exc.n, exc.k, task.p,
                                          std::max(task.slack, 1u), exc.cache.get());
  CongruenceReport rep = std::move(result.measured);
  rep.kind = "exceptional";
  return rep;
}

std::vector<CongruenceReport> run_batch(const std::vector<VerifyTask>& tasks,
                                        unsigned threads) {
  std::vector<CongruenceReport> reports(tasks.size());
  if (tasks.empty()) {
    return reports;
  }
  unsigned workers = std::max(1u, std::min<unsigned>(threads, tasks.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      reports[i] = run_task(tasks[i]);
    }
    return reports;
  }
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) {
        return;
      }
      try {
        reports[i] = run_task(tasks[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& failure : failures) {
    if (failure) {
      std::rethrow_exception(failure); // lowest task index wins: deterministic
    }
  }
  return reports;
}

} // namespace wst
