#pragma once

#include <cstddef>
#include <vector>

#include "wolstenholme/errors.hpp"
#include "wolstenholme/numeric.hpp"

// Small dense integer matrices: enough exact linear algebra for the
// coefficient recipes (division-free determinants, solving against
// determinant +-1 matrices with guaranteed integer solutions).

namespace wst {

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(IntMatrix m);

// Solves M x = v for square M with det = +-1; the solution is integral by
// Cramer's rule. Throws not_unimodular otherwise.
std::vector<Int> solve_unimodular(const IntMatrix& m, const std::vector<Int>& v);

// Inverse of a determinant +-1 matrix (integer entries).
IntMatrix inverse_unimodular(const IntMatrix& m);

} // namespace wst
