#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wolstenholme/bernoulli.hpp"
#include "wolstenholme/extremal.hpp"
#include "wolstenholme/numeric.hpp"
#include "wolstenholme/residue.hpp"

// The congruence engine: verifies
//   C(kp-1, p-1) == sum_{j=0}^{N} b_j p^j H({1}^j; p-1)   (mod p^E)
// in its optimized form (b_j = b_{j,n}(k), N = 2n, E = 2n+3 for p >= 2n+5,
// E = 2n+2 for p = 2n+3, exact equality for odd p <= 2n+1), in its general
// data-vector form (E depending on N against p), plus error-term leading
// coefficients, exceptional-case classification, a family of named checks,
// and a uniqueness probe.

namespace wst {

enum class ExceptionalClass { none, k_residue, bernoulli, both };

std::string to_string(ExceptionalClass c);
ExceptionalClass exceptional_class_from_string(const std::string& text);

// Flat result record; mirrors the serialized schema exactly so that
// parse(serialize(r)) == r.
struct CongruenceReport {
  std::string kind;             // "optimized", "general", or a named tag
  std::optional<long> n;        // n, N, or the index j for zhao
  std::optional<Int> k;
  Int p;
  std::optional<long> required; // nullopt: exact equality demanded
  ResidualValuation achieved;
  bool holds = false;
  bool exceptional = false;
  std::string klass;            // classification ("" when not classified)

  friend bool operator==(const CongruenceReport&, const CongruenceReport&) = default;
};

// C(kp-1, p-1) mod p^m in O(p) ring operations, via
// prod_{i=1}^{p-1} (kp - i) / i; valid for every integer k.
Residue binom_kp_mod(const Int& k, const Int& p, unsigned m);

// Optimized congruence at (n, k, p), measured at required+slack. Demands the
// odd prime and k >= 1; p <= 2n+1 turns into an exact-equality check.
CongruenceReport verify_optimized(unsigned long n, const Int& k, const Int& p,
                                  unsigned slack = 2);

// General data-vector congruence; required exponent depends on N against p:
// N+3 (N even <= p-4), N+2 (N odd <= p-4 or N = p-3), N+1 (N = p-2), exact
// equality (N >= p-1). Throws bad_prime when p divides a data denominator.
CongruenceReport verify_general(const WolstenholmeData& data, const Int& p,
                                unsigned slack = 2);

// Leading error term of the general congruence, predicted vs measured.
struct ErrorTermReport {
  Int p;
  unsigned long N = 0;
  WolstenholmeData data;
  int case_id = 0; // 1: N <= p-4, 2: N = p-3, 3: N = p-2, 4: N >= p-1
  Residue predicted;
  Residue actual;
  bool match = false;
};

ErrorTermReport error_term(const WolstenholmeData& data, const Int& p);

// Theorem-predicted classification of extra valuation at (n, k, p), cross-
// checked against the measured congruence run one exponent above required.
// Accepts any integer k; requires p >= 2n+3 (prime_too_small below).
ExceptionalClass classify_exceptional(unsigned long n, const Int& k, const Int& p,
                                      BernoulliCache* cache = nullptr);

enum class NamedTag {
  wolstenholme, // C(2p-1, p-1) == 1 (mod p^3), p >= 5
  glaisher,     // C(kp-1, p-1) == 1 (mod p^3), k >= 2, p >= 5
  van_hamme,    // C(2p-1, p-1) == 1 + 2p H_1 (mod p^5), p >= 7
  mestrovic,    // C(2p-1, p-1) == 1 - 2p H_1 + 4p^2 H_2 (mod p^7), p >= 11
  easycong,     // C(kp-1, p-1) == sum (k-1)^j p^j H_j (mod p^{2n+3}), p >= 2n+5
  sc1,          // C(kp-1, p-1) == 1 + k(k-1) p H_1 (mod p^5), p odd, p != 5
  sc2,          // C(2p-1, p-1) == 1 + 14p H_1 - 12p^2 H_2 + 8p^3 H_3 (mod p^9)
  zhao,         // H_j mod p^2 / p^3 in terms of Bernoulli numbers, 1 <= j <= p-3
  propextra,    // H_{p-2} == p/2 (mod p^2), H_{p-1} == -1 (mod p), H_{>=p} = 0
  glaisher_h1,  // H_1 == -(B_{p-3}/3) p^2 (mod p^3), p >= 5
};

std::string to_string(NamedTag tag);
NamedTag named_tag_from_string(const std::string& text);

struct NamedCheck {
  NamedTag tag = NamedTag::wolstenholme;
  long n = 0; // easycong's n; zhao's index j
  Int k = 2;  // glaisher / easycong / sc1
};

// Named congruence at p; prime_out_of_range below the tag's threshold.
// zhao/propextra/glaisher_h1 measure at a fixed exponent (their right-hand
// sides are only determined to that precision), ignoring slack.
CongruenceReport verify_named(const NamedCheck& check, const Int& p,
                              unsigned slack = 2);

// First prime in [p_min, p_max] where the candidate coefficient vector fails
// the mod-p^{2n+2} congruence, or nullopt if none does. p_min >= 2n+5.
std::optional<Int> uniqueness_search(unsigned long n, const Int& k,
                                     const std::vector<Rat>& candidate,
                                     const Int& p_min, const Int& p_max);

// ---- deterministic batch execution ----

struct OptimizedSpec {
  unsigned long n = 0;
  Int k;
};

struct GeneralSpec {
  WolstenholmeData data;
};

struct ExceptionalSpec {
  unsigned long n = 0;
  Int k;
  std::shared_ptr<BernoulliCache> cache; // optional
};

using CongruenceSpec = std::variant<OptimizedSpec, GeneralSpec, NamedCheck, ExceptionalSpec>;

struct VerifyTask {
  CongruenceSpec spec;
  Int p;
  unsigned slack = 2;
};

CongruenceReport run_task(const VerifyTask& task);

// Runs tasks on `threads` workers; reports come back in input order no
// matter the thread count.
std::vector<CongruenceReport> run_batch(const std::vector<VerifyTask>& tasks,
                                        unsigned threads);

} // namespace wst
