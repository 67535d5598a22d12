#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy for the library. Everything derives from wst::error so
// callers can catch broadly; the concrete types exist because tests and the
// CLI distinguish between them.

namespace wst {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// gcd(a, p) > 1 when inverting in Z/p^m.
struct not_invertible : error {
  using error::error;
};

// A rational with p in the denominator where a p-integral value is required.
struct not_p_integral : error {
  using error::error;
};

// A brute-force evaluation would exceed its configured work bound.
struct resource_limit : error {
  using error::error;
};

// An interpolation/CRT solution violated its promised degree bound.
struct degree_assertion : error {
  using error::error;
};

// Bernoulli residue requested at an index where v_p(B_m) < 0.
struct pole_at_p : error {
  using error::error;
};

// p = 2 (or otherwise outside the engine's domain).
struct unsupported_prime : error {
  using error::error;
};

// p divides a denominator of the supplied data vector.
struct bad_prime : error {
  using error::error;
};

// p below the threshold a classification requires.
struct prime_too_small : error {
  using error::error;
};

// p outside the validity range of a named congruence.
struct prime_out_of_range : error {
  using error::error;
};

// Matrix expected to have determinant +-1 does not.
struct not_unimodular : error {
  using error::error;
};

// CLI / scan configuration problems.
struct config_error : error {
  using error::error;
};

// Filesystem failures (missing paths, failed writes).
struct io_error : error {
  using error::error;
};

// Checkpoint does not match the scan configuration or output file.
struct resume_mismatch : error {
  using error::error;
};

// Malformed report/checkpoint input; message carries line/field context.
struct parse_error : error {
  using error::error;
};

} // namespace wst
