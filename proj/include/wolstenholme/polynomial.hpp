#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/numeric.hpp"

// Dense univariate polynomials over exact coefficient rings (Int or Rat),
// stored ascending with no trailing zeros; the zero polynomial is the empty
// list and has degree -1.

namespace wst {

template <class T>
class Poly {
 public:
  Poly() = default;

  explicit Poly(std::vector<T> coefficients) : c_(std::move(coefficients)) {
    normalize();
  }

  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }

  static Poly monomial(const T& coefficient, std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coefficient;
    return Poly(std::move(c));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }

  // Coefficient of T^i, defined (as zero) beyond the degree.
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x + c_[i];
    }
    return acc;
  }

  // f mod T^e
  Poly truncated(std::size_t e) const {
    std::vector<T> c(c_.begin(),
                     c_.begin() + static_cast<long>(std::min(e, c_.size())));
    return Poly(std::move(c));
  }

  // f * T^e
  Poly shifted_up(std::size_t e) const {
    if (is_zero()) {
      return *this;
    }
    std::vector<T> c(c_.size() + e, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      c[i + e] = c_[i];
    }
    return Poly(std::move(c));
  }

  // f(T + a), computed by Horner over the coefficient ring: O(deg^2).
  Poly taylor_shift(const T& a) const {
    Poly acc;
    Poly shift(std::vector<T>{a, T(1)}); // T + a
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * shift + constant(c_[i]);
    }
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator-(const Poly& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) {
      return Poly();
    }
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(c));
  }

  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Pretty form like "2*T^6-6*T^5+5*T^4-T"; "0" for the zero polynomial.
  std::string str(const char* var = "T") const {
    if (is_zero()) {
      return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const T& c = c_[i];
      if (c == 0) continue;
      T a = c < 0 ? T(-c) : c;
      if (first) {
        if (c < 0) out << "-";
        first = false;
      } else {
        out << (c < 0 ? "-" : "+");
      }
      if (i == 0) {
        out << a;
      } else {
        if (!(a == 1)) out << a << "*";
        out << var;
        if (i > 1) out << "^" << i;
      }
    }
    return out.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) {
      c_.pop_back();
    }
  }

  std::vector<T> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

RatPoly to_rational(const IntPoly& f);

// Throws wst::error when some coefficient is not an integer.
IntPoly to_integer(const RatPoly& f);

// Quotient/remainder; exact division available whenever the divisor's leading
// coefficient is invertible in the coefficient ring (always, over Rat).
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

// True iff b divides a exactly over the rationals.
bool divides(const IntPoly& b, const IntPoly& a);

// The unique f of degree < e1 + e2 with
//   f == r1                  (mod T^e1)      and
//   f == r2 in the shifted basis (mod (T-1)^e2),
// where r2's coefficient list is read against powers of (T-1).
// Solved by undetermined coefficients: f = r1 + T^e1 * g forces
// g(u+1) == (r2(u) - r1(u+1)) * (1+u)^{-e1}  (mod u^e2),  u = T-1.
RatPoly poly_crt(const RatPoly& r1, unsigned e1, const RatPoly& r2_shifted,
                 unsigned e2);

} // namespace wst
