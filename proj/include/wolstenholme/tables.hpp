#pragma once

#include <string>
#include <vector>

#include "wolstenholme/extremal.hpp"
#include "wolstenholme/numeric.hpp"
#include "wolstenholme/report.hpp"

// Reference tables for the extremal polynomials: the coefficient rows
// b_{j,n}(T) for 0 <= j <= n <= n_max, and the value grids b_{j,n}(k) for
// each requested k. Rows are triangular; row n has n+1 entries.

namespace wst {

struct TableDocument {
  unsigned long n_max = 0;
  std::vector<Int> k_values; // sorted, deduplicated

  // polynomial_rows[n][j] = b_{j,n}(T)
  std::vector<std::vector<IntPoly>> polynomial_rows;

  // value_grids[i][n][j] = b_{j,n}(k_values[i])
  std::vector<std::vector<std::vector<Int>>> value_grids;
};

// Builds both tables; n_max is capped at 12 (the polynomial construction
// cost grows quickly with n). Throws std::domain_error beyond the cap.
TableDocument emit_tables(unsigned long n_max, const std::vector<Int>& k_set);

// JSON: {"n_max": ..., "polynomials": [{"n", "entries": [poly strings]}],
//        "values": [{"k": "decimal", "rows": [{"n", "entries": [decimals]}]}]}
// CSV: columns  section,n,j,k,entry  with section in {polynomial, value} and
// an empty k cell on polynomial rows.
std::string render_tables(const TableDocument& doc, ReportFormat format);

} // namespace wst
