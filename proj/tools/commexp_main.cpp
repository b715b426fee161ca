// Command line front end: analyze | sweep | catalog | selftest.
// Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
// 2 invalid input or arguments, 3 internal invariant failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/errors.hpp"
#include "commexp/json_io.hpp"
#include "commexp/selfcheck.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw commexp::ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

commexp::Tolerances make_tol(double eps_entry) {
  if (!(eps_entry > 0.0) || eps_entry >= 1.0) {
    throw commexp::ValidationError("--tol must be in (0, 1)");
  }
  commexp::Tolerances tol;
  tol.eps_entry = eps_entry;
  return tol;
}

int cmd_analyze(const std::string& input, int tmax, double eps_entry) {
  auto [a, b] = commexp::parse_pair_json(read_input(input));
  commexp::AnalysisReport r = commexp::analyze(a, b, tmax, make_tol(eps_entry));
  std::cout << commexp::emit_report_json(r) << "\n";
  for (const std::string& note : r.notes) {
    std::cerr << "note: " << note << "\n";
    if (note.rfind("cross-check failure:", 0) == 0) return kInternal;
  }
  return kOk;
}

int cmd_sweep(const std::string& input, int tmax, double eps_entry) {
  auto [a, b] = commexp::parse_pair_json(read_input(input));
  std::cout << commexp::emit_sweep_json_lines(
      commexp::sweep_table(a, b, tmax, make_tol(eps_entry)));
  return kOk;
}

int cmd_catalog(bool list, const std::string& name) {
  const auto& entries = commexp::catalog();
  if (list) {
    std::cout << commexp::emit_catalog_names_json(entries) << "\n";
    return kOk;
  }
  for (const commexp::NamedPair& p : entries) {
    if (p.name == name) {
      std::cout << commexp::emit_named_pair_json(p) << "\n";
      return kOk;
    }
  }
  throw commexp::ValidationError("unknown catalog pair: " + name);
}

int cmd_selftest(int seeds, int tmax, bool inject_fault) {
  commexp::SelftestSummary s =
      commexp::run_selftest(seeds, tmax, commexp::Tolerances{}, inject_fault);
  std::cout << commexp::emit_selftest_json(s) << "\n";
  if (s.failed != 0) {
    std::cerr << "selftest: " << s.failed << " invariant violation(s)\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commuting-exponential analysis for complex matrix pairs of dimension <= 3"};
  app.require_subcommand(1);

  std::string input = "-";
  int tmax = 50;
  double tol = 1e-9;

  CLI::App* analyze = app.add_subcommand("analyze", "Full report for a pair (JSON to stdout)");
  analyze->add_option("input", input, "Pair file {\"A\": ..., \"B\": ...}, '-' for stdin");
  analyze->add_option("--tmax", tmax, "Integer sweep bound (default 50)");
  analyze->add_option("--tol", tol, "Entrywise comparison tolerance (default 1e-9)");

  CLI::App* sweep = app.add_subcommand("sweep", "Per-t deviation table (JSON lines)");
  sweep->add_option("input", input, "Pair file {\"A\": ..., \"B\": ...}, '-' for stdin");
  sweep->add_option("--tmax", tmax, "Integer sweep bound (default 50)");
  sweep->add_option("--tol", tol, "Entrywise comparison tolerance (default 1e-9)");

  bool list = false;
  std::string name;
  CLI::App* cat = app.add_subcommand("catalog", "Fixed study pairs");
  CLI::Option* opt_list = cat->add_flag("--list", list, "Print the pair names");
  CLI::Option* opt_name = cat->add_option("--name", name, "Print one pair with its expected facts");
  opt_list->excludes(opt_name);

  int seeds = 8;
  int st_tmax = 20;
  bool inject_fault = false;
  CLI::App* self = app.add_subcommand("selftest", "Run the built-in invariant suites");
  self->add_option("--seeds", seeds, "Seeds per randomized suite (default 8)");
  self->add_option("--tmax", st_tmax, "Sweep bound inside the suites (default 20)");
  self->add_flag("--inject-fault", inject_fault, "Sabotage a tolerance; must fail")
      ->group("");  // test hook, hidden from help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*analyze) {
      if (tmax < 1) throw commexp::ValidationError("--tmax must be >= 1");
      return cmd_analyze(input, tmax, tol);
    }
    if (*sweep) {
      if (tmax < 1) throw commexp::ValidationError("--tmax must be >= 1");
      return cmd_sweep(input, tmax, tol);
    }
    if (*cat) {
      if (!list && name.empty()) {
        throw commexp::ValidationError("catalog requires --list or --name NAME");
      }
      return cmd_catalog(list, name);
    }
    if (*self) {
      if (seeds < 1) throw commexp::ValidationError("--seeds must be >= 1");
      if (st_tmax < 1) throw commexp::ValidationError("--tmax must be >= 1");
      return cmd_selftest(seeds, st_tmax, inject_fault);
    }
  } catch (const commexp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadInput;
}
