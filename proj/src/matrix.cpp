#include "wolstenholme/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace wst {

namespace {

// Rational Gaussian elimination on [M | rhs...]; returns the solution columns.
// Caller guarantees M is square and invertible.
std::vector<std::vector<Rat>> solve_rational(const IntMatrix& m,
                                             const std::vector<std::vector<Int>>& rhs) {
  std::size_t n = m.rows();
  std::size_t w = rhs.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + w, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Rat(m.at(i, j));
    }
    for (std::size_t c = 0; c < w; ++c) {
      a[i][n + c] = Rat(rhs[c][i]);
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) {
      ++piv;
    }
    if (piv == n) {
      throw not_unimodular("solve_unimodular: singular matrix");
    }
    std::swap(a[piv], a[col]);
    Rat inv = Rat(1) / a[col][col];
    for (std::size_t j = col; j < n + w; ++j) {
      a[col][j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = col; j < n + w; ++j) {
        a[i][j] -= f * a[col][j];
      }
    }
  }
  std::vector<std::vector<Rat>> out(w, std::vector<Rat>(n));
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      out[c][i] = a[i][n + c];
    }
  }
  return out;
}

void require_square(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::domain_error("matrix: square matrix required");
  }
}

} // namespace

Int determinant(IntMatrix m) {
  require_square(m);
  std::size_t n = m.rows();
  if (n == 0) {
    return Int(1);
  }
  Int sign(1), prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m.at(piv, k) == 0) {
        ++piv;
      }
      if (piv == n) {
        return Int(0);
      }
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(k, j), m.at(piv, j));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Bareiss update: every division below is exact.
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::vector<Int> solve_unimodular(const IntMatrix& m, const std::vector<Int>& v) {
  require_square(m);
  if (v.size() != m.rows()) {
    throw std::domain_error("solve_unimodular: size mismatch");
  }
  Int d = determinant(m);
  if (d != 1 && d != -1) {
    throw not_unimodular("solve_unimodular: determinant is " + d.get_str());
  }
  if (m.rows() == 0) {
    return {};
  }
  auto sol = solve_rational(m, {v});
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Rat& q : sol[0]) {
    if (den(q) != 1) {
      throw error("solve_unimodular: non-integral solution entry " + q.get_str());
    }
    out.push_back(num(q));
  }
  return out;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  require_square(m);
  Int d = determinant(m);
  if (d != 1 && d != -1) {
    throw not_unimodular("inverse_unimodular: determinant is " + d.get_str());
  }
  std::size_t n = m.rows();
  IntMatrix inv(n, n);
  if (n == 0) {
    return inv;
  }
  std::vector<std::vector<Int>> unit(n, std::vector<Int>(n, Int(0)));
  for (std::size_t c = 0; c < n; ++c) {
    unit[c][c] = 1;
  }
  auto cols = solve_rational(m, unit);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const Rat& q = cols[c][i];
      if (den(q) != 1) {
        throw error("inverse_unimodular: non-integral inverse entry");
      }
      inv.at(i, c) = num(q);
    }
  }
  return inv;
}

} // namespace wst
