// wolsten: exact computations around binomial-coefficient congruences —
// harmonic sums, extremal polynomials, single congruence checks, and
// checkpointed prime-range scans with machine-readable reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wolstenholme/bernoulli.hpp"
#include "wolstenholme/congruence.hpp"
#include "wolstenholme/errors.hpp"
#include "wolstenholme/mhs.hpp"
#include "wolstenholme/report.hpp"
#include "wolstenholme/scan.hpp"
#include "wolstenholme/tables.hpp"

namespace {

using wst::Int;
using wst::Rat;

Int parse_int(const std::string& text) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw wst::parse_error("'" + text + "' is not an integer");
  }
}

Rat parse_rat(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Rat(parse_int(text));
  }
  return wst::make_rat(parse_int(text.substr(0, slash)),
                       parse_int(text.substr(slash + 1)));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      throw wst::parse_error("empty entry in list '" + text + "'");
    }
    out.push_back(item);
  }
  if (out.empty()) {
    throw wst::parse_error("empty list");
  }
  return out;
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  for (const std::string& item : split_list(text)) {
    out.push_back(parse_int(item));
  }
  return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const Int& v : parse_int_list(text)) {
    if (v < 1 || !v.fits_uint_p()) {
      throw wst::parse_error("'" + v.get_str() + "' is not a positive machine integer");
    }
    out.push_back(static_cast<unsigned>(v.get_ui()));
  }
  return out;
}

void parse_range(const std::string& text, unsigned long& lo, unsigned long& hi) {
  std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoul(text);
      return;
    }
    lo = std::stoul(text.substr(0, dots));
    hi = std::stoul(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw wst::parse_error("'" + text + "' is not a number or A..B range");
  }
}

void write_or_print(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw wst::io_error("cannot open '" + out_path + "' for writing");
  }
  out << content;
  if (!out.flush()) {
    throw wst::io_error("write failure on '" + out_path + "'");
  }
}

std::string report_line(const wst::CongruenceReport& r) {
  std::ostringstream out;
  out << "kind=" << r.kind;
  if (r.n.has_value()) out << " n=" << *r.n;
  if (r.k.has_value()) out << " k=" << r.k->get_str();
  out << " p=" << r.p.get_str();
  if (r.required.has_value()) {
    out << " required=" << *r.required;
  } else {
    out << " required=equality";
  }
  out << " achieved=" << r.achieved.str();
  out << " holds=" << (r.holds ? "yes" : "no");
  out << " exceptional=" << (r.exceptional ? "yes" : "no");
  if (!r.klass.empty()) out << " class=" << r.klass;
  return out.str();
}

int emit_report(const wst::CongruenceReport& rep, const std::string& format,
                const std::string& out_path) {
  if (format == "text") {
    std::string line = report_line(rep) + "\n";
    write_or_print(line, out_path);
  } else {
    wst::ReportFormat fmt = wst::report_format_from_string(format);
    write_or_print(wst::serialize_reports({rep}, fmt), out_path);
    if (!out_path.empty()) {
      std::cout << report_line(rep) << '\n';
    }
  }
  return rep.holds ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of binomial-coefficient congruences "
               "modulo prime powers"};
  app.require_subcommand(1);

  // ---- tables ----
  auto* tables = app.add_subcommand(
      "tables", "Extremal polynomial coefficient rows and value grids");
  unsigned long tables_n = 5;
  std::string tables_k = "2,3";
  std::string tables_format = "csv";
  std::string tables_out;
  tables->add_option("--n", tables_n, "Largest n (rows 0..n, capped at 12)");
  tables->add_option("--k", tables_k, "Comma-separated k values for the grids");
  tables->add_option("--format", tables_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  tables->add_option("--out", tables_out, "Output path (default: stdout)");

  // ---- mhs ----
  auto* mhs = app.add_subcommand(
      "mhs", "Multiple harmonic sums, exact or modulo a prime power");
  std::string mhs_lambda;
  unsigned long mhs_ones = 0;
  unsigned long mhs_n = 0;
  std::string mhs_prime;
  unsigned mhs_exp = 2;
  mhs->add_option("--lambda", mhs_lambda,
                  "Composition as comma-separated exponents, e.g. 2,1,1");
  mhs->add_option("--ones", mhs_ones, "Depth j of H({1}^j; n)");
  mhs->add_option("--n", mhs_n, "Upper summation bound n (exact evaluation)");
  mhs->add_option("--prime", mhs_prime,
                  "Reduce mod prime^exp instead of exact evaluation "
                  "(--ones mode; uses n = prime-1)");
  mhs->add_option("--exp", mhs_exp, "Exponent for the modulus (default 2)");

  // ---- poly ----
  auto* poly = app.add_subcommand("poly", "Extremal polynomials b_{j,n}");
  unsigned long poly_j = 1;
  unsigned long poly_n = 1;
  std::string poly_method = "crt";
  std::string poly_eval;
  poly->add_option("--j", poly_j, "Index j")->required();
  poly->add_option("--n", poly_n, "Index n")->required();
  poly->add_option("--method", poly_method,
                   "Construction route: crt (interpolation) or matrix")
      ->check(CLI::IsMember({"crt", "matrix"}));
  poly->add_option("--eval", poly_eval, "Also evaluate at this integer");

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "Check one congruence at one prime");
  std::string verify_named;
  long verify_n = 0;
  std::string verify_k = "2";
  std::string verify_c;
  unsigned long verify_cap = 0;
  unsigned long verify_p = 0;
  unsigned verify_slack = 2;
  std::string verify_format = "text";
  std::string verify_out;
  verify->add_option("--named", verify_named,
                     "Named check: wolstenholme, glaisher, van_hamme, mestrovic, "
                     "easycong, sc1, sc2, zhao, propextra, glaisher_h1");
  verify->add_option("--n", verify_n, "n (optimized/easycong) or index j (zhao)");
  verify->add_option("--k", verify_k, "k");
  verify->add_option("--c", verify_c,
                     "Data vector c_0,c_1,... (rationals) for a general check");
  verify->add_option("--cap", verify_cap, "Truncation bound N for a general check");
  verify->add_option("--prime", verify_p, "The prime p")->required();
  verify->add_option("--slack", verify_slack,
                     "Extra powers of p measured above the required exponent");
  verify->add_option("--format", verify_format, "text, json, or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_option("--out", verify_out, "Write the report to this path");

  // ---- scan ----
  auto* scan = app.add_subcommand(
      "scan", "Verify a congruence family over a range of primes");
  std::string scan_mode = "named";
  std::string scan_named = "wolstenholme";
  std::string scan_n = "0";
  std::string scan_k = "2";
  std::string scan_primes;
  unsigned scan_slack = 2;
  std::string scan_out;
  std::string scan_format = "json";
  unsigned scan_threads = 1;
  std::string scan_checkpoint;
  scan->add_option("--mode", scan_mode, "named, optimized, or exceptional")
      ->check(CLI::IsMember({"named", "optimized", "exceptional"}));
  scan->add_option("--named", scan_named, "Named check tag (named mode)");
  scan->add_option("--n", scan_n, "n (or range A..B)");
  scan->add_option("--k", scan_k, "Comma-separated k values");
  scan->add_option("--primes", scan_primes, "Prime range A..B")->required();
  scan->add_option("--slack", scan_slack, "Extra powers of p to measure");
  scan->add_option("--out", scan_out, "Report file path")->required();
  scan->add_option("--format", scan_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--threads", scan_threads, "Worker thread count");
  scan->add_option("--checkpoint", scan_checkpoint,
                   "Checkpoint file path (enables resume)");

  // ---- bernoulli ----
  auto* bern = app.add_subcommand(
      "bernoulli", "Bernoulli numbers, exact or modulo a prime");
  unsigned long bern_m = 0;
  unsigned long bern_n = 0;
  std::string bern_prime;
  bern->add_option("--m", bern_m, "Index m of B_m");
  bern->add_option("--n", bern_n,
                   "With --prime: compute B_{p-3-2n} mod p through harmonic sums");
  bern->add_option("--prime", bern_prime, "Reduce modulo this prime");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tables) {
      wst::TableDocument doc = wst::emit_tables(tables_n, parse_int_list(tables_k));
      write_or_print(
          wst::render_tables(doc, wst::report_format_from_string(tables_format)),
          tables_out);
      return 0;
    }

    if (*mhs) {
      bool ones_mode = mhs->count("--ones") > 0;
      if (ones_mode == !mhs_lambda.empty()) {
        std::cerr << "mhs: give exactly one of --lambda or --ones\n";
        return 2;
      }
      if (!mhs_prime.empty()) {
        if (!ones_mode) {
          std::cerr << "mhs: modular evaluation is available for --ones rows\n";
          return 2;
        }
        Int p = parse_int(mhs_prime);
        wst::ElemMhsVector row = wst::elem_mhs_mod(p, mhs_exp, mhs_ones);
        std::cout << "H({1}^" << mhs_ones << "; " << Int(p - 1).get_str() << ") = "
                  << row.values[mhs_ones].get_str() << "  (mod " << p.get_str()
                  << "^" << mhs_exp << ")\n";
        return 0;
      }
      if (mhs->count("--n") == 0) {
        std::cerr << "mhs: exact evaluation needs --n\n";
        return 2;
      }
      Rat value;
      if (ones_mode) {
        value = wst::elem_mhs_exact(mhs_ones, mhs_n);
      } else {
        wst::Composition lambda{parse_unsigned_list(mhs_lambda)};
        value = wst::mhs_exact(lambda, mhs_n);
      }
      std::cout << value.get_str() << '\n';
      return 0;
    }

    if (*poly) {
      wst::IntPoly b = poly_method == "crt"
                           ? wst::extremal_poly_crt(poly_j, poly_n).poly
                           : wst::extremal_polys_matrix(poly_n).at(poly_j).poly;
      std::cout << "b[" << poly_j << "," << poly_n << "](T) = " << b.str("T") << '\n';
      if (!poly_eval.empty()) {
        Int at = parse_int(poly_eval);
        std::cout << "b[" << poly_j << "," << poly_n << "](" << at.get_str()
                  << ") = " << b.eval(at).get_str() << '\n';
      }
      return 0;
    }

    if (*verify) {
      Int p(verify_p);
      wst::CongruenceReport rep;
      bool general = !verify_c.empty() || verify->count("--cap") > 0;
      if (!verify_named.empty()) {
        wst::NamedCheck check{wst::named_tag_from_string(verify_named), verify_n,
                              parse_int(verify_k)};
        rep = wst::verify_named(check, p, verify_slack);
      } else if (general) {
        wst::WolstenholmeData data;
        data.k = parse_int(verify_k);
        if (!verify_c.empty()) {
          for (const std::string& item : split_list(verify_c)) {
            data.c.push_back(parse_rat(item));
          }
        }
        data.N = verify->count("--cap") > 0
                     ? verify_cap
                     : (data.c.empty() ? 0 : data.c.size() - 1);
        rep = wst::verify_general(data, p, verify_slack);
      } else if (verify->count("--n") > 0) {
        if (verify_n < 0) {
          std::cerr << "verify: n must be non-negative\n";
          return 2;
        }
        rep = wst::verify_optimized(static_cast<unsigned long>(verify_n),
                                    parse_int(verify_k), p, verify_slack);
      } else {
        std::cerr << "verify: give --named TAG, --n N (optimized), or --c/--cap "
                     "(general)\n";
        return 2;
      }
      return emit_report(rep, verify_format, verify_out);
    }

    if (*scan) {
      wst::ScanConfig config;
      config.mode = wst::scan_mode_from_string(scan_mode);
      config.tag = wst::named_tag_from_string(scan_named);
      parse_range(scan_n, config.n_min, config.n_max);
      config.k_set = parse_int_list(scan_k);
      parse_range(scan_primes, config.p_min, config.p_max);
      config.slack = scan_slack;
      config.out_path = scan_out;
      config.format = wst::report_format_from_string(scan_format);
      config.threads = scan_threads;
      config.checkpoint_path = scan_checkpoint;

      wst::ScanOutcome outcome = wst::run_scan(config);
      std::cout << "records=" << outcome.total << " failures=" << outcome.failures
                << " exceptional=" << outcome.exceptional << " -> "
                << config.out_path << '\n';
      return outcome.ok ? 0 : 1;
    }

    if (*bern) {
      if (bern->count("--n") > 0) {
        if (bern_prime.empty()) {
          std::cerr << "bernoulli: --n needs --prime\n";
          return 2;
        }
        Int p = parse_int(bern_prime);
        wst::Residue r = wst::bernoulli_via_mhs(bern_n, p);
        Int index = p - 3 - Int(2 * bern_n);
        std::cout << "B_" << index.get_str() << " = " << r.value().get_str()
                  << "  (mod " << p.get_str() << ")\n";
        return 0;
      }
      if (bern->count("--m") == 0) {
        std::cerr << "bernoulli: give --m (with optional --prime) or --n --prime\n";
        return 2;
      }
      if (!bern_prime.empty()) {
        Int p = parse_int(bern_prime);
        wst::Residue r = wst::bernoulli_mod_p(bern_m, p);
        std::cout << "B_" << bern_m << " = " << r.value().get_str() << "  (mod "
                  << p.get_str() << ")\n";
        return 0;
      }
      std::cout << "B_" << bern_m << " = " << wst::bernoulli_exact(bern_m).get_str()
                << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
