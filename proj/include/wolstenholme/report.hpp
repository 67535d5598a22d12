#pragma once

#include <string>
#include <vector>

#include "wolstenholme/congruence.hpp"

// Serialization of congruence reports. Both formats are lossless: parsing a
// serialized batch reproduces the records field by field, and serialization
// is byte-deterministic for a given record sequence. Arbitrarily large
// integers (k, p) travel as decimal strings.

namespace wst {

enum class ReportFormat { json, csv };

std::string to_string(ReportFormat format);
ReportFormat report_format_from_string(const std::string& text);

// JSON: an array of flat objects
//   {"kind": ..., "n": long|null, "k": "decimal"|null, "p": "decimal",
//    "required": long|null, "achieved": "v"|">=v"|"inf",
//    "holds": bool, "exceptional": bool, "class": string}
// CSV: header  kind,n,k,p,required,achieved,holds,exceptional,class
// with empty cells for absent n/k/required and an empty class cell when no
// classification was run.
std::string serialize_reports(const std::vector<CongruenceReport>& reports,
                              ReportFormat format);

// Inverse of serialize_reports; throws parse_error with a line- or
// record-level diagnostic on malformed input.
std::vector<CongruenceReport> parse_reports(const std::string& text,
                                            ReportFormat format);

} // namespace wst
