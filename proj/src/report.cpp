#include "wolstenholme/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wolstenholme/errors.hpp"

namespace wst {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader = "kind,n,k,p,required,achieved,holds,exceptional,class";

void require_plain_cell(const std::string& text, const char* field) {
  if (text.find_first_of(",\"\n\r") != std::string::npos) {
    throw io_error(std::string("serialize: '") + field +
                   "' contains a delimiter and cannot be written as CSV");
  }
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

bool parse_bool_cell(const std::string& text, std::size_t line, const char* field) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw parse_error("csv line " + std::to_string(line) + ": field '" + field +
                    "' must be true or false, got '" + text + "'");
}

Int parse_int_cell(const std::string& text, std::size_t line, const char* field) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw parse_error("csv line " + std::to_string(line) + ": field '" + field +
                      "' is not a decimal integer: '" + text + "'");
  }
}

long parse_long_cell(const std::string& text, std::size_t line, const char* field) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception&) {
    throw parse_error("csv line " + std::to_string(line) + ": field '" + field +
                      "' is not an integer: '" + text + "'");
  }
}

std::string serialize_csv(const std::vector<CongruenceReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const CongruenceReport& r : reports) {
    require_plain_cell(r.kind, "kind");
    require_plain_cell(r.klass, "class");
    out << r.kind << ',';
    if (r.n.has_value()) out << *r.n;
    out << ',';
    if (r.k.has_value()) out << r.k->get_str();
    out << ',';
    out << r.p.get_str() << ',';
    if (r.required.has_value()) out << *r.required;
    out << ',';
    out << r.achieved.str() << ',';
    out << bool_cell(r.holds) << ',';
    out << bool_cell(r.exceptional) << ',';
    out << r.klass << '\n';
  }
  return out.str();
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<CongruenceReport> parse_csv(const std::string& text) {
  std::vector<CongruenceReport> reports;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!saw_header) {
      if (line != kCsvHeader) {
        throw parse_error("csv line 1: expected header '" + std::string(kCsvHeader) +
                          "', got '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells = split_cells(line);
    if (cells.size() != 9) {
      throw parse_error("csv line " + std::to_string(line_no) + ": expected 9 fields, got " +
                        std::to_string(cells.size()));
    }
    CongruenceReport r;
    r.kind = cells[0];
    if (r.kind.empty()) {
      throw parse_error("csv line " + std::to_string(line_no) + ": field 'kind' is empty");
    }
    if (!cells[1].empty()) r.n = parse_long_cell(cells[1], line_no, "n");
    if (!cells[2].empty()) r.k = parse_int_cell(cells[2], line_no, "k");
    if (cells[3].empty()) {
      throw parse_error("csv line " + std::to_string(line_no) + ": field 'p' is empty");
    }
    r.p = parse_int_cell(cells[3], line_no, "p");
    if (!cells[4].empty()) r.required = parse_long_cell(cells[4], line_no, "required");
    try {
      r.achieved = ResidualValuation::parse(cells[5]);
    } catch (const parse_error& e) {
      throw parse_error("csv line " + std::to_string(line_no) + ": field 'achieved': " +
                        e.what());
    }
    r.holds = parse_bool_cell(cells[6], line_no, "holds");
    r.exceptional = parse_bool_cell(cells[7], line_no, "exceptional");
    r.klass = cells[8];
    reports.push_back(std::move(r));
  }
  if (!saw_header) {
    throw parse_error("csv: input is empty, expected a header line");
  }
  return reports;
}

json report_to_json(const CongruenceReport& r) {
  json j;
  j["kind"] = r.kind;
  j["n"] = r.n.has_value() ? json(*r.n) : json(nullptr);
  j["k"] = r.k.has_value() ? json(r.k->get_str()) : json(nullptr);
  j["p"] = r.p.get_str();
  j["required"] = r.required.has_value() ? json(*r.required) : json(nullptr);
  j["achieved"] = r.achieved.str();
  j["holds"] = r.holds;
  j["exceptional"] = r.exceptional;
  j["class"] = r.klass;
  return j;
}

std::string json_context(std::size_t index, const char* field) {
  return "json record " + std::to_string(index) + ": field '" + field + "'";
}

CongruenceReport report_from_json(const json& j, std::size_t index) {
  if (!j.is_object()) {
    throw parse_error("json record " + std::to_string(index) + ": expected an object");
  }
  static const char* kFields[] = {"kind",     "n",     "k",           "p",    "required",
                                  "achieved", "holds", "exceptional", "class"};
  for (const char* field : kFields) {
    if (!j.contains(field)) {
      throw parse_error(json_context(index, field) + " is missing");
    }
  }
  CongruenceReport r;
  if (!j["kind"].is_string()) {
    throw parse_error(json_context(index, "kind") + " must be a string");
  }
  r.kind = j["kind"].get<std::string>();
  if (!j["n"].is_null()) {
    if (!j["n"].is_number_integer()) {
      throw parse_error(json_context(index, "n") + " must be an integer or null");
    }
    r.n = j["n"].get<long>();
  }
  if (!j["k"].is_null()) {
    if (!j["k"].is_string()) {
      throw parse_error(json_context(index, "k") + " must be a decimal string or null");
    }
    try {
      r.k = Int(j["k"].get<std::string>());
    } catch (const std::invalid_argument&) {
      throw parse_error(json_context(index, "k") + " is not a decimal integer");
    }
  }
  if (!j["p"].is_string()) {
    throw parse_error(json_context(index, "p") + " must be a decimal string");
  }
  try {
    r.p = Int(j["p"].get<std::string>());
  } catch (const std::invalid_argument&) {
    throw parse_error(json_context(index, "p") + " is not a decimal integer");
  }
  if (!j["required"].is_null()) {
    if (!j["required"].is_number_integer()) {
      throw parse_error(json_context(index, "required") + " must be an integer or null");
    }
    r.required = j["required"].get<long>();
  }
  if (!j["achieved"].is_string()) {
    throw parse_error(json_context(index, "achieved") + " must be a string");
  }
  try {
    r.achieved = ResidualValuation::parse(j["achieved"].get<std::string>());
  } catch (const parse_error& e) {
    throw parse_error(json_context(index, "achieved") + ": " + e.what());
  }
  if (!j["holds"].is_boolean() || !j["exceptional"].is_boolean()) {
    throw parse_error(json_context(index, "holds/exceptional") + " must be booleans");
  }
  r.holds = j["holds"].get<bool>();
  r.exceptional = j["exceptional"].get<bool>();
  if (!j["class"].is_string()) {
    throw parse_error(json_context(index, "class") + " must be a string");
  }
  r.klass = j["class"].get<std::string>();
  return r;
}

} // namespace

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return "json";
    case ReportFormat::csv:
      return "csv";
  }
  throw std::logic_error("to_string: bad ReportFormat");
}

ReportFormat report_format_from_string(const std::string& text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  throw parse_error("report format: expected json or csv, got '" + text + "'");
}

std::string serialize_reports(const std::vector<CongruenceReport>& reports,
                              ReportFormat format) {
  if (format == ReportFormat::csv) {
    return serialize_csv(reports);
  }
  json arr = json::array();
  for (const CongruenceReport& r : reports) {
    arr.push_back(report_to_json(r));
  }
  return arr.dump(2) + "\n";
}

std::vector<CongruenceReport> parse_reports(const std::string& text,
                                            ReportFormat format) {
  if (format == ReportFormat::csv) {
    return parse_csv(text);
  }
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("json: ") + e.what());
  }
  if (!arr.is_array()) {
    throw parse_error("json: top-level value must be an array of records");
  }
  std::vector<CongruenceReport> reports;
  reports.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    reports.push_back(report_from_json(arr[i], i));
  }
  return reports;
}

} // namespace wst
