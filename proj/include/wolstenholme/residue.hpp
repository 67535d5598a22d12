#pragma once

#include <optional>
#include <string>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/numeric.hpp"

// Elements of Z/p^m with canonical representatives in [0, p^m), plus the
// p-adic reduction/valuation helpers used throughout the congruence engine.

namespace wst {

class Residue {
 public:
  Residue() = default; // null residue (modulus 0); assignment target only

  Residue(Int p, unsigned m, const Int& value);

  const Int& prime() const { return p_; }
  unsigned exponent() const { return m_; }
  const Int& modulus() const { return pm_; }
  const Int& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Residue inverse() const; // not_invertible when p | value
  Residue pow(unsigned long e) const;

  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a);
  friend bool operator==(const Residue& a, const Residue& b);
  friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

 private:
  static void require_same_ring(const Residue& a, const Residue& b);

  Int p_;
  unsigned m_ = 0;
  Int pm_;
  Int v_;
};

// a^{-1} in Z/p^m; not_invertible when gcd(a, p) > 1.
Residue mod_inverse(const Int& a, const Int& p, unsigned m);

// Image of a p-integral rational in Z/p^m; not_p_integral when v_p(q) < 0.
Residue padic_reduce(const Rat& q, const Int& p, unsigned m);

// What is known about v_p of the integer a residue stands for: the residue
// pins the valuation exactly when nonzero, and only as ">= m" when zero.
// `infinite` is reserved for differences proven zero by exact arithmetic.
struct ResidualValuation {
  enum class Kind { exact, at_least, infinite };

  Kind kind = Kind::exact;
  long value = 0; // meaningless for infinite

  bool meets(long required) const {
    return kind == Kind::infinite || value >= required;
  }
  std::string str() const;
  static ResidualValuation parse(const std::string& text); // parse_error

  friend bool operator==(const ResidualValuation&, const ResidualValuation&) = default;
};

ResidualValuation residual_valuation(const Residue& difference);

} // namespace wst
