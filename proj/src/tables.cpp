#include "wolstenholme/tables.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wst {

TableDocument emit_tables(unsigned long n_max, const std::vector<Int>& k_set) {
  if (n_max > 12) {
    throw std::domain_error("emit_tables: n_max is capped at 12");
  }
  TableDocument doc;
  doc.n_max = n_max;
  doc.k_values = k_set;
  std::sort(doc.k_values.begin(), doc.k_values.end());
  doc.k_values.erase(std::unique(doc.k_values.begin(), doc.k_values.end()),
                     doc.k_values.end());

  doc.polynomial_rows.resize(n_max + 1);
  for (unsigned long n = 0; n <= n_max; ++n) {
    doc.polynomial_rows[n].reserve(n + 1);
    for (unsigned long j = 0; j <= n; ++j) {
      doc.polynomial_rows[n].push_back(extremal_poly(j, n));
    }
  }

  doc.value_grids.resize(doc.k_values.size());
  for (std::size_t i = 0; i < doc.k_values.size(); ++i) {
    doc.value_grids[i].resize(n_max + 1);
    for (unsigned long n = 0; n <= n_max; ++n) {
      doc.value_grids[i][n].reserve(n + 1);
      for (unsigned long j = 0; j <= n; ++j) {
        doc.value_grids[i][n].push_back(
            doc.polynomial_rows[n][j].eval(doc.k_values[i]));
      }
    }
  }
  return doc;
}

namespace {

std::string render_csv(const TableDocument& doc) {
  std::ostringstream out;
  out << "section,n,j,k,entry\n";
  for (unsigned long n = 0; n <= doc.n_max; ++n) {
    for (unsigned long j = 0; j <= n; ++j) {
      out << "polynomial," << n << ',' << j << ",,"
          << doc.polynomial_rows[n][j].str("T") << '\n';
    }
  }
  for (std::size_t i = 0; i < doc.k_values.size(); ++i) {
    for (unsigned long n = 0; n <= doc.n_max; ++n) {
      for (unsigned long j = 0; j <= n; ++j) {
        out << "value," << n << ',' << j << ',' << doc.k_values[i].get_str()
            << ',' << doc.value_grids[i][n][j].get_str() << '\n';
      }
    }
  }
  return out.str();
}

std::string render_json(const TableDocument& doc) {
  using nlohmann::json;
  json root;
  root["n_max"] = doc.n_max;
  json polys = json::array();
  for (unsigned long n = 0; n <= doc.n_max; ++n) {
    json row;
    row["n"] = n;
    json entries = json::array();
    for (unsigned long j = 0; j <= n; ++j) {
      entries.push_back(doc.polynomial_rows[n][j].str("T"));
    }
    row["entries"] = entries;
    polys.push_back(row);
  }
  root["polynomials"] = polys;
  json grids = json::array();
  for (std::size_t i = 0; i < doc.k_values.size(); ++i) {
    json grid;
    grid["k"] = doc.k_values[i].get_str();
    json rows = json::array();
    for (unsigned long n = 0; n <= doc.n_max; ++n) {
      json row;
      row["n"] = n;
      json entries = json::array();
      for (unsigned long j = 0; j <= n; ++j) {
        entries.push_back(doc.value_grids[i][n][j].get_str());
      }
      row["entries"] = entries;
      rows.push_back(row);
    }
    grid["rows"] = rows;
    grids.push_back(grid);
  }
  root["values"] = grids;
  return root.dump(2) + "\n";
}

} // namespace

std::string render_tables(const TableDocument& doc, ReportFormat format) {
  return format == ReportFormat::csv ? render_csv(doc) : render_json(doc);
}

} // namespace wst
