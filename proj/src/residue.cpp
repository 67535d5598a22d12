#include "wolstenholme/residue.hpp"

#include <stdexcept>
#include <utility>

namespace wst {

Residue::Residue(Int p, unsigned m, const Int& value) : p_(std::move(p)), m_(m) {
  if (p_ < 2 || m_ == 0) {
    throw std::domain_error("Residue: need p >= 2 and m >= 1");
  }
  mpz_pow_ui(pm_.get_mpz_t(), p_.get_mpz_t(), m_);
  mpz_mod(v_.get_mpz_t(), value.get_mpz_t(), pm_.get_mpz_t());
}

void Residue::require_same_ring(const Residue& a, const Residue& b) {
  if (a.m_ == 0 || b.m_ == 0) {
    throw std::invalid_argument("Residue: arithmetic on a null residue");
  }
  if (a.p_ != b.p_ || a.m_ != b.m_) {
    throw std::invalid_argument("Residue: mixed moduli p^m");
  }
}

Residue operator+(const Residue& a, const Residue& b) {
  Residue::require_same_ring(a, b);
  Residue r = a;
  r.v_ += b.v_;
  if (r.v_ >= r.pm_) {
    r.v_ -= r.pm_;
  }
  return r;
}

Residue operator-(const Residue& a, const Residue& b) {
  Residue::require_same_ring(a, b);
  Residue r = a;
  r.v_ -= b.v_;
  if (r.v_ < 0) {
    r.v_ += r.pm_;
  }
  return r;
}

Residue operator*(const Residue& a, const Residue& b) {
  Residue::require_same_ring(a, b);
  Residue r = a;
  r.v_ *= b.v_;
  mpz_mod(r.v_.get_mpz_t(), r.v_.get_mpz_t(), r.pm_.get_mpz_t());
  return r;
}

Residue operator-(const Residue& a) {
  if (a.m_ == 0) {
    throw std::invalid_argument("Residue: negating a null residue");
  }
  Residue r = a;
  if (r.v_ != 0) {
    r.v_ = r.pm_ - r.v_;
  }
  return r;
}

bool operator==(const Residue& a, const Residue& b) {
  return a.p_ == b.p_ && a.m_ == b.m_ && a.v_ == b.v_;
}

Residue Residue::inverse() const {
  if (m_ == 0) {
    throw std::invalid_argument("Residue: inverting a null residue");
  }
  Residue r = *this;
  if (mpz_invert(r.v_.get_mpz_t(), v_.get_mpz_t(), pm_.get_mpz_t()) == 0) {
    throw not_invertible("Residue::inverse: value shares a factor with p");
  }
  return r;
}

Residue Residue::pow(unsigned long e) const {
  if (m_ == 0) {
    throw std::invalid_argument("Residue: powering a null residue");
  }
  Residue r = *this;
  Int exp(e);
  mpz_powm(r.v_.get_mpz_t(), v_.get_mpz_t(), exp.get_mpz_t(), pm_.get_mpz_t());
  return r;
}

Residue mod_inverse(const Int& a, const Int& p, unsigned m) {
  return Residue(p, m, a).inverse();
}

Residue padic_reduce(const Rat& q, const Int& p, unsigned m) {
  auto v = padic_valuation(q, p);
  if (v.has_value() && *v < 0) {
    throw not_p_integral("padic_reduce: denominator divisible by p");
  }
  Residue d(p, m, den(q));
  Residue n(p, m, num(q));
  return n * d.inverse();
}

std::string ResidualValuation::str() const {
  switch (kind) {
    case Kind::exact:
      return std::to_string(value);
    case Kind::at_least:
      return ">=" + std::to_string(value);
    case Kind::infinite:
      return "inf";
  }
  throw std::logic_error("ResidualValuation::str: bad kind");
}

ResidualValuation ResidualValuation::parse(const std::string& text) {
  ResidualValuation r;
  try {
    if (text == "inf") {
      r.kind = Kind::infinite;
      r.value = 0;
    } else if (text.rfind(">=", 0) == 0) {
      r.kind = Kind::at_least;
      r.value = std::stol(text.substr(2));
    } else {
      r.kind = Kind::exact;
      r.value = std::stol(text);
    }
  } catch (const std::logic_error&) {
    throw parse_error("ResidualValuation: cannot parse '" + text + "'");
  }
  return r;
}

ResidualValuation residual_valuation(const Residue& difference) {
  ResidualValuation r;
  if (difference.is_zero()) {
    r.kind = ResidualValuation::Kind::at_least;
    r.value = static_cast<long>(difference.exponent());
    return r;
  }
  // 0 < value < p^m, so the valuation of any lift equals that of the value.
  Int t;
  r.kind = ResidualValuation::Kind::exact;
  r.value = static_cast<long>(mpz_remove(
      t.get_mpz_t(), difference.value().get_mpz_t(), difference.prime().get_mpz_t()));
  return r;
}

} // namespace wst
