// Acceptance gate: one self-timed check per release criterion, each printing
// exactly one PASS/FAIL line. Exit status is nonzero if any check fails or
// overruns its time budget.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "wolstenholme/bernoulli.hpp"
#include "wolstenholme/congruence.hpp"
#include "wolstenholme/extremal.hpp"
#include "wolstenholme/mhs.hpp"
#include "wolstenholme/numeric.hpp"
#include "wolstenholme/polynomial.hpp"
#include "wolstenholme/residue.hpp"
#include "wolstenholme/scan.hpp"
#include "wolstenholme/tables.hpp"

using namespace wst;

namespace {

namespace fs = std::filesystem;

int g_failures = 0;

// Throw this (or any std::exception) inside a check body to fail it.
struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& detail) {
  if (!ok) {
    throw check_failure(detail);
  }
}

void run_check(const std::string& name, double budget_seconds,
               const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    body();
  } catch (const std::exception& e) {
    failure = e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  bool in_budget = elapsed < budget_seconds;
  if (failure.empty() && in_budget) {
    std::printf("PASS: %s [%.2f s <= %.0f s]\n", name.c_str(), elapsed,
                budget_seconds);
  } else if (failure.empty()) {
    std::printf("FAIL: %s - exceeded time budget [%.2f s > %.0f s]\n",
                name.c_str(), elapsed, budget_seconds);
    ++g_failures;
  } else {
    std::printf("FAIL: %s - %s [%.2f s]\n", name.c_str(), failure.c_str(),
                elapsed);
    ++g_failures;
  }
  std::fflush(stdout);
}

std::string poly_mismatch(unsigned long n, unsigned long j,
                          const std::string& got, const std::string& want) {
  std::ostringstream ss;
  ss << "row n=" << n << ", j=" << j << ": got " << got << ", want " << want;
  return ss.str();
}

// f(-1-T): negate odd coefficients, then shift the argument by one.
RatPoly reflected(const RatPoly& f) {
  std::vector<Rat> c = f.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) {
    c[i] = -c[i];
  }
  return RatPoly(std::move(c)).taylor_shift(Rat(1));
}

void check_tables() {
  static const long grid_k2[6][6] = {
      {1},
      {1, 2},
      {1, -2, 4},
      {1, 14, -12, 8},
      {1, -66, 68, -40, 16},
      {1, 382, -380, 248, -112, 32}};
  static const long grid_k3[6][6] = {
      {1},
      {1, 6},
      {1, -30, 36},
      {1, 402, -396, 216},
      {1, -6078, 6084, -3672, 1296},
      {1, 102786, -102780, 66312, -29808, 7776}};
  TableDocument doc = emit_tables(5, {Int(2), Int(3)});
  require(doc.k_values == std::vector<Int>{Int(2), Int(3)}, "k values");
  for (unsigned long n = 0; n <= 5; ++n) {
    for (unsigned long j = 0; j <= n; ++j) {
      require(doc.value_grids[0][n][j] == grid_k2[n][j],
              poly_mismatch(n, j, doc.value_grids[0][n][j].get_str(),
                            std::to_string(grid_k2[n][j])));
      require(doc.value_grids[1][n][j] == grid_k3[n][j],
              poly_mismatch(n, j, doc.value_grids[1][n][j].get_str(),
                            std::to_string(grid_k3[n][j])));
    }
  }
  static const char* rows[4][4] = {
      {"1"},
      {"1", "T^2-T"},
      {"1", "-T^4+2*T^3-T", "T^4-2*T^3+T^2"},
      {"1", "2*T^6-6*T^5+5*T^4-T", "-2*T^6+6*T^5-5*T^4+T^2",
       "T^6-3*T^5+3*T^4-T^3"}};
  for (unsigned long n = 0; n <= 3; ++n) {
    for (unsigned long j = 0; j <= n; ++j) {
      std::string got = doc.polynomial_rows[n][j].str();
      require(got == rows[n][j], poly_mismatch(n, j, got, rows[n][j]));
    }
  }
  const IntPoly& b13 = doc.polynomial_rows[3][1];
  require(b13.eval(Int(2)) == 14, "degree-6 row at T=2");
  require(b13.eval(Int(3)) == 402, "degree-6 row at T=3");
}

void check_binomial_at_scale() {
  for (std::uint64_t p : primes_in_range(5, 10000)) {
    Int pz(static_cast<unsigned long>(p));
    if (binom_kp_mod(Int(2), pz, 3).value() != 1) {
      require(false, "failed at p=" + pz.get_str());
    }
  }
}

void check_scaled_binomials() {
  for (std::uint64_t p : primes_in_range(5, 500)) {
    Int pz(static_cast<unsigned long>(p));
    for (long k = 2; k <= 20; ++k) {
      if (binom_kp_mod(Int(k), pz, 3).value() != 1) {
        require(false,
                "failed at k=" + std::to_string(k) + ", p=" + pz.get_str());
      }
    }
  }
}

void check_deeper_binomials() {
  for (std::uint64_t p : primes_in_range(7, 5000)) {
    Int pz(static_cast<unsigned long>(p));
    CongruenceReport rep = verify_named({NamedTag::van_hamme}, pz, 0);
    require(rep.holds, "fifth-power check failed at p=" + pz.get_str());
  }
  for (std::uint64_t p : primes_in_range(11, 2000)) {
    Int pz(static_cast<unsigned long>(p));
    CongruenceReport rep = verify_named({NamedTag::mestrovic}, pz, 0);
    require(rep.holds, "seventh-power check failed at p=" + pz.get_str());
  }
}

void check_optimized_grid() {
  for (unsigned long n = 0; n <= 5; ++n) {
    for (std::uint64_t p : primes_in_range(2 * n + 5, 1000)) {
      Int pz(static_cast<unsigned long>(p));
      for (long k = 1; k <= 10; ++k) {
        CongruenceReport rep = verify_optimized(n, Int(k), pz, 0);
        require(rep.required == static_cast<long>(2 * n + 3) && rep.holds,
                "main branch failed at n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ", p=" + pz.get_str());
      }
    }
    // Boundary prime p = 2n+3: one power less.
    unsigned long q = 2 * n + 3;
    if (is_prime(Int(q))) {
      for (long k = 1; k <= 10; ++k) {
        CongruenceReport rep = verify_optimized(n, Int(k), Int(q), 0);
        require(rep.required == static_cast<long>(2 * n + 2) && rep.holds,
                "boundary branch failed at n=" + std::to_string(n) +
                    ", k=" + std::to_string(k));
      }
    }
    // Odd primes p <= 2n+1: exact equality, checked modularly and exactly.
    for (std::uint64_t p : primes_in_range(3, 2 * n + 1)) {
      for (long k = 1; k <= 10; ++k) {
        CongruenceReport rep =
            verify_optimized(n, Int(k), Int(static_cast<unsigned long>(p)), 0);
        require(!rep.required.has_value() && rep.holds &&
                    rep.achieved.kind == ResidualValuation::Kind::infinite,
                "equality branch failed at n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ", p=" + std::to_string(p));
      }
    }
  }
}

void check_exceptional_classification() {
  // Grid agreement: the classifier cross-checks prediction vs measurement
  // internally and throws on any disagreement.
  for (unsigned long n = 0; n <= 3; ++n) {
    for (std::uint64_t p : primes_in_range(2 * n + 3, 300)) {
      Int pz(static_cast<unsigned long>(p));
      bool bern = p >= 2 * n + 5 && is_exceptional_bernoulli(n, pz);
      for (long k = 1; k <= 12; ++k) {
        ExceptionalClass c = classify_exceptional(n, Int(k), pz);
        bool k_hit = static_cast<unsigned long>(k) % p <= 1;
        bool got_k = c == ExceptionalClass::k_residue || c == ExceptionalClass::both;
        bool got_b = c == ExceptionalClass::bernoulli || c == ExceptionalClass::both;
        require(got_k == k_hit && got_b == bern,
                "class mismatch at n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ", p=" + pz.get_str());
      }
    }
  }
  // Full sweep: exactly one Bernoulli-exceptional prime below 20000 at n=0.
  fs::path dir = fs::temp_directory_path() /
                 ("wolsten-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  ScanConfig cfg;
  cfg.mode = ScanMode::exceptional;
  cfg.n_min = 0;
  cfg.n_max = 0;
  cfg.k_set = {Int(2)};
  cfg.p_min = 3;
  cfg.p_max = 20000;
  cfg.threads = 8;
  cfg.out_path = (dir / "exceptional-sweep.json").string();
  ScanOutcome outcome = run_scan(cfg);
  std::vector<Int> hits;
  for (const CongruenceReport& r : outcome.reports) {
    if (r.klass == "bernoulli" || r.klass == "both") {
      hits.push_back(r.p);
    }
  }
  fs::remove_all(dir);
  require(outcome.ok, "sweep contains failing congruences");
  require(hits.size() == 1 && hits[0] == 16843,
          "expected the single special prime 16843, found " +
              std::to_string(hits.size()) + " hit(s)");
  require(binom_kp_mod(Int(2), Int(16843), 4).value() == 1,
          "fourth-power confirmation at 16843");
}

void check_identity_suites() {
  for (unsigned long n = 0; n <= 60; ++n) {
    for (unsigned long j = 0; j <= n; ++j) {
      require(rep0_residual(n, j) == 0,
              "self-reference residual at n=" + std::to_string(n) +
                  ", j=" + std::to_string(j));
    }
  }
  std::mt19937_64 rng(193700u);
  std::uniform_int_distribution<long> pick_k(-10, 10);
  std::uniform_int_distribution<long> pick_num(-30, 30);
  std::uniform_int_distribution<long> pick_den(1, 12);
  for (unsigned long n = 0; n <= 40; ++n) {
    std::vector<Rat> row = elem_mhs_exact_row(n, n);
    for (int trial = 0; trial < 50; ++trial) {
      Int k(pick_k(rng));
      std::vector<Rat> c(n + 1);
      for (auto& q : c) {
        q = make_rat(Int(pick_num(rng)), Int(pick_den(rng)));
      }
      std::vector<Rat> b = identity_coefficients(n, k, c);
      Rat rhs(0);
      for (unsigned long j = 0; j <= n; ++j) {
        rhs += b[j] * Rat(pow_int(Int(n + 1), j)) * row[j];
      }
      require(rhs == Rat(int_binomial(Int(k * Int(n + 1) - 1), n)),
              "weighted-coefficient identity at n=" + std::to_string(n));
    }
  }
  for (unsigned long n = 0; n <= 100; ++n) {
    RatPoly f = f_poly(n);
    RatPoly g = reflected(f);
    if (n % 2 == 1) {
      g = -g;
    }
    require(g == f, "reflection symmetry at n=" + std::to_string(n));
  }
  for (long m = -20; m <= 200; ++m) {
    for (unsigned long kk = 0; kk <= 50; ++kk) {
      if (binomial_via_lehmer(Int(m), kk) != Rat(int_binomial(Int(m), kk))) {
        require(false, "harmonic binomial at m=" + std::to_string(m) +
                           ", k=" + std::to_string(kk));
      }
    }
  }
}

void check_extremal_machinery() {
  for (unsigned long n = 0; n <= 12; ++n) {
    std::vector<ExtremalPolynomial> rows = extremal_polys_matrix(n);
    for (unsigned long j = 0; j <= n; ++j) {
      require(rows[j].poly == extremal_poly_crt(j, n).poly,
              "construction mismatch at j=" + std::to_string(j) +
                  ", n=" + std::to_string(n));
    }
    require(n == 0 || extremal_poly(1, n) + extremal_poly(2, n) ==
                          IntPoly({Int(0), Int(-1), Int(1)}),
            "first two rows at n=" + std::to_string(n));
  }
  for (unsigned long n = 1; n <= 25; ++n) {
    for (unsigned long b = 0; b <= 25; ++b) {
      require(matrix_Mnb_det(n, b) == 1,
              "determinant at n=" + std::to_string(n) + ", b=" + std::to_string(b));
    }
  }
  for (unsigned long n = 0; n <= 8; ++n) {
    SymbolicExtensionPair s = extension_pair_symbolic(n);
    IntPoly target = IntPoly::constant(Int(1));
    IntPoly tt1({Int(0), Int(-1), Int(1)}); // T^2 - T
    for (unsigned long i = 0; i <= n; ++i) {
      target = target * tt1;
    }
    require(s.c_value == target,
            "extension combination at n=" + std::to_string(n));
    for (unsigned long j = 0; j <= n; ++j) {
      const IntPoly& bjn = extremal_poly(j, n);
      for (long k = -10; k <= 10; ++k) {
        require(bjn.eval(Int(k)) == bjn.eval(Int(1 - k)),
                "swap symmetry at j=" + std::to_string(j) +
                    ", n=" + std::to_string(n) + ", k=" + std::to_string(k));
      }
    }
  }
}

void check_bernoulli_routes() {
  for (std::uint64_t pv : primes_in_range(3, 500)) {
    Int p(static_cast<unsigned long>(pv));
    for (unsigned long m = 2; m + 3 <= pv && m <= 400; m += 2) {
      require(bernoulli_mod_p(m, p) == padic_reduce(bernoulli_exact(m), p, 1),
              "power sums vs recurrence at m=" + std::to_string(m) +
                  ", p=" + p.get_str());
    }
    for (unsigned long n = 0; 2 * n + 5 <= pv; ++n) {
      unsigned long idx = pv - 3 - 2 * n;
      Residue via_h = bernoulli_via_mhs(n, p);
      require(via_h == bernoulli_mod_p(idx, p),
              "harmonic route vs power sums at n=" + std::to_string(n) +
                  ", p=" + p.get_str());
      if (idx <= 400) {
        require(via_h == padic_reduce(bernoulli_exact(idx), p, 1),
                "harmonic route vs recurrence at n=" + std::to_string(n) +
                    ", p=" + p.get_str());
      }
    }
    if (pv >= 5) {
      require(verify_named({NamedTag::glaisher_h1}, p).holds,
              "depth-one harmonic sum vs Bernoulli at p=" + p.get_str());
    }
  }
}

void check_error_terms() {
  ErrorTermReport worked = error_term(WolstenholmeData{Int(2), {}, 1}, Int(7));
  require(worked.case_id == 1 && worked.match &&
              worked.predicted.value() == 2058 && worked.actual.value() == 2058,
          "worked instance at p=7, N=1");

  std::mt19937_64 rng(300u);
  std::uniform_int_distribution<long> pick_k(-6, 8);
  std::uniform_int_distribution<long> pick_c(-15, 15);
  std::vector<std::uint64_t> primes = primes_in_range(3, 300);
  auto random_data = [&](unsigned long N) {
    WolstenholmeData data;
    data.k = Int(pick_k(rng));
    data.N = N;
    data.c.resize(N + 1);
    for (auto& q : data.c) {
      q = Rat(pick_c(rng));
    }
    return data;
  };
  // Case 1: N <= p-4 (the even and odd sub-cases mix randomly).
  int done = 0;
  while (done < 200) {
    Int p(static_cast<unsigned long>(primes[rng() % primes.size()]));
    unsigned long pu = mpz_get_ui(p.get_mpz_t());
    if (pu < 5) continue;
    unsigned long N = rng() % std::min<unsigned long>(pu - 3, 14);
    ErrorTermReport rep = error_term(random_data(N), p);
    require(rep.case_id == 1 && rep.match,
            "case 1 failed at p=" + p.get_str() + ", N=" + std::to_string(N));
    ++done;
  }
  // Cases 2-4 fix N relative to p.
  for (int case_id = 2; case_id <= 4; ++case_id) {
    done = 0;
    while (done < 200) {
      std::uint64_t pv = primes[rng() % primes.size()];
      if (case_id != 4 && pv < 5) continue; // keep N >= 0 honest at p = 3
      unsigned long N = case_id == 2   ? pv - 3
                        : case_id == 3 ? pv - 2
                                       : pv - 1 + rng() % 3;
      ErrorTermReport rep = error_term(random_data(N), Int(static_cast<unsigned long>(pv)));
      require(rep.case_id == case_id && rep.match,
              "case " + std::to_string(case_id) + " failed at p=" +
                  std::to_string(pv) + ", N=" + std::to_string(N));
      ++done;
    }
  }
}

void check_determinism() {
  fs::path dir = fs::temp_directory_path() /
                 ("wolsten-acceptance-det-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  ScanConfig one;
  one.mode = ScanMode::named;
  one.tag = NamedTag::glaisher;
  one.k_set = {Int(2), Int(3), Int(4), Int(5)};
  one.p_min = 5;
  one.p_max = 300;
  one.threads = 1;
  one.out_path = (dir / "threads-1.json").string();
  ScanConfig eight = one;
  eight.threads = 8;
  eight.out_path = (dir / "threads-8.json").string();
  run_scan(one);
  run_scan(eight);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  require(slurp(one.out_path) == slurp(eight.out_path),
          "scan output differs between 1 and 8 threads");

  ScanConfig whole;
  whole.mode = ScanMode::optimized;
  whole.n_min = 0;
  whole.n_max = 1;
  whole.k_set = {Int(2), Int(3)};
  whole.p_min = 5;
  whole.p_max = 120;
  whole.out_path = (dir / "whole.json").string();
  whole.checkpoint_path = (dir / "whole.checkpoint").string();
  run_scan(whole);

  ScanConfig staged = whole;
  staged.out_path = (dir / "staged.json").string();
  staged.checkpoint_path = (dir / "staged.checkpoint").string();
  staged.p_max = 60;
  run_scan(staged);
  staged.p_max = 120;
  staged.threads = 8;
  run_scan(staged);
  require(slurp(staged.out_path) == slurp(whole.out_path),
          "resumed scan differs from the single run");
  fs::remove_all(dir);
}

void check_uniqueness_probes() {
  std::optional<Int> hit =
      uniqueness_search(1, Int(1), {Rat(1), Rat(1)}, Int(7), Int(100));
  require(hit.has_value() && *hit == 7,
          "perturbed coefficients must fail at p=7");
  require(!uniqueness_search(1, Int(1), {Rat(1), Rat(0)}, Int(7), Int(100))
               .has_value(),
          "degenerate coefficients must never fail");
  for (unsigned long n = 0; n <= 3; ++n) {
    for (long k = 2; k <= 3; ++k) {
      std::vector<Rat> candidate;
      for (unsigned long j = 0; j <= n; ++j) {
        candidate.push_back(Rat(extremal_poly(j, n).eval(Int(k))));
      }
      require(!uniqueness_search(n, Int(k), candidate, Int(2 * n + 5), Int(500))
                   .has_value(),
              "reference coefficients failed below 500 at n=" +
                  std::to_string(n) + ", k=" + std::to_string(k));
    }
  }
}

} // namespace

int main() {
  run_check("criterion 1 - reference tables reproduce exactly", 1, check_tables);
  run_check("criterion 2 - cubic congruence for all primes up to 10000 "
            "(single thread)",
            60, check_binomial_at_scale);
  run_check("criterion 3 - cubic congruence across multipliers 2..20 up to 500",
            30, check_scaled_binomials);
  run_check("criterion 4 - fifth-power (to 5000) and seventh-power (to 2000) "
            "congruences",
            120, check_deeper_binomials);
  run_check("criterion 5 - optimized congruence grid n<=5, k<=10, p<=1000 "
            "with boundary and equality branches",
            180, check_optimized_grid);
  run_check("criterion 6 - exceptional classification grid and the 20000 sweep",
            300, check_exceptional_classification);
  run_check("criterion 7 - identity suites (self-reference, data vectors, "
            "reflection, harmonic binomials)",
            60, check_identity_suites);
  run_check("criterion 8 - extremal machinery (both routes, determinants, "
            "extension pair, swap symmetry)",
            60, check_extremal_machinery);
  run_check("criterion 9 - Bernoulli routes agree to 500", 120,
            check_bernoulli_routes);
  run_check("criterion 10 - error-term predictions, 200 samples per case", 60,
            check_error_terms);
  run_check("criterion 11 - byte-identical scans across threads and resume",
            120, check_determinism);
  run_check("addendum - uniqueness probes", 60, check_uniqueness_probes);

  if (g_failures == 0) {
    std::printf("acceptance: all 12 checks passed\n");
    return 0;
  }
  std::printf("acceptance: %d check(s) failed\n", g_failures);
  return 1;
}
