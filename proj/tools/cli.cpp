#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlbox/box.hpp"
#include "nlbox/distillation.hpp"
#include "nlbox/games.hpp"
#include "nlbox/io.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/search.hpp"
#include "nlbox/symmetry.hpp"
#include "nlbox/wiring.hpp"

namespace nlbox::cli {

namespace {

using nlohmann::json;

enum class Format { kTable, kCsv, kJson };

/// Thrown for bad flag values discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a box fails validation; carries the rendered report.
struct InvalidBox : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoxSource {
  std::string file;
  std::string family;
  double eps = 0.1;
  double delta = 0.0;
  double eta = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("box", file, "Box JSON file");
    cmd->add_option("--family", family, "Built-in box instead of a file")
        ->check(CLI::IsMember({"pr", "noise", "eps", "eps-delta", "isotropic"}));
    cmd->add_option("--eps", eps, "eps for the eps and eps-delta families");
    cmd->add_option("--delta", delta, "delta for the eps-delta family");
    cmd->add_option("--eta", eta, "eta for the isotropic family");
  }

  Box load() const {
    if (file.empty() == family.empty()) throw UsageError("give exactly one of a box file or --family");
    if (!family.empty()) {
      try {
        if (family == "pr") return pr();
        if (family == "noise") return noise();
        if (family == "eps") return p_eps(eps);
        if (family == "eps-delta") return p_eps_delta(eps, delta);
        return isotropic(eta);
      } catch (const BoxError& e) {
        throw UsageError(e.what());
      }
    }
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      return box_from_json(buffer.str());
    } catch (const ParseError& e) {
      throw UsageError(file + ": " + e.what());
    }
  }
};

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

json box_json(const Box& box) {
  json rows = json::array();
  for (const auto& row : box.matrix()) rows.push_back(row);
  return json{{"matrix", rows}};
}

json strategy_json(AdaptiveStrategy s) {
  json second = json::array();
  json output = json::array();
  for (int x = 0; x < 2; ++x) {
    second.push_back({s.second_input(x, 0), s.second_input(x, 1)});
    output.push_back({json{s.output(x, 0, 0), s.output(x, 0, 1)}, json{s.output(x, 1, 0), s.output(x, 1, 1)}});
  }
  return json{{"code", s.code()},
              {"first_box", s.first_box()},
              {"first_input", {s.first_input(0), s.first_input(1)}},
              {"second_input", second},
              {"output", output}};
}

void print_matrix(std::ostream& out, const Box& box) {
  out << "matrix (rows xy = 00 01 10 11, columns ab = 00 01 10 11)\n";
  for (const auto& row : box.matrix()) {
    out << " ";
    for (double v : row) out << ' ' << std::setw(10) << fixed(v);
    out << '\n';
  }
}

/// Validates the box and throws InvalidBox with the report when it fails.
void require_valid_box(const Box& box, double tol) {
  const auto report = validate(box, tol);
  if (report.ok()) return;
  std::string msg = "invalid box:";
  for (const auto& v : report.violations) msg += "\n  " + v.describe();
  throw InvalidBox(msg);
}

void require_non_signaling_box(const Box& box, double tol) {
  require_valid_box(box, tol);
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) {
    throw InvalidBox("box is signaling (marginal discrepancy " + format_double(ns.max_discrepancy) + ")");
  }
}

std::pair<int, int> parse_range(const std::string& text, int cap) {
  int first = 0;
  int last = 0;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      first = last = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string lhs = text.substr(0, dots);
      const std::string rhs = text.substr(dots + 2);
      first = std::stoi(lhs, &used);
      if (used != lhs.size()) throw std::invalid_argument(text);
      last = std::stoi(rhs, &used);
      if (used != rhs.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "', expected N or A..B");
  }
  if (first < 1 || last < first) throw UsageError("range must satisfy 1 <= A <= B");
  if (last > cap) throw UsageError("n above the cap of " + std::to_string(cap) + " (raise it with --max-n)");
  return {first, last};
}

// ---- commands --------------------------------------------------------------

int cmd_validate(const Box& box, Format format, double tol, std::ostream& out) {
  const auto report = validate(box, tol);
  auto kind_name = [](Violation::Kind k) {
    switch (k) {
      case Violation::Kind::kNegativeEntry: return "negative_entry";
      case Violation::Kind::kEntryAboveOne: return "entry_above_one";
      case Violation::Kind::kRowSum: return "row_sum";
      case Violation::Kind::kNotFinite: return "not_finite";
    }
    return "unknown";
  };
  std::optional<SignalingCheck> ns;
  if (report.ok()) ns = is_non_signaling(box, tol);
  switch (format) {
    case Format::kJson: {
      json violations = json::array();
      for (const auto& v : report.violations) {
        violations.push_back({{"row", v.row}, {"col", v.col}, {"kind", kind_name(v.kind)}, {"residual", v.residual}});
      }
      json doc{{"valid", report.ok()}, {"violations", violations}};
      if (ns) {
        doc["non_signaling"] = ns->non_signaling;
        doc["max_marginal_discrepancy"] = ns->max_discrepancy;
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "row,col,kind,residual\n";
      for (const auto& v : report.violations) {
        out << v.row << ',' << v.col << ',' << kind_name(v.kind) << ',' << format_double(v.residual) << '\n';
      }
      break;
    case Format::kTable:
      if (report.ok()) {
        out << "valid\n";
        out << "non-signaling: " << (ns->non_signaling ? "yes" : "no") << " (max marginal discrepancy "
            << format_double(ns->max_discrepancy) << ")\n";
      } else {
        out << "invalid\n";
        for (const auto& v : report.violations) out << "  " << v.describe() << '\n';
      }
      break;
  }
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_chsh(const Box& box, Format format, double tol, std::ostream& out) {
  require_valid_box(box, tol);
  const auto ns = is_non_signaling(box, tol);
  const auto c = correlators(box);
  const auto values = chsh_values(c);
  const double nonlocality = nl(c);
  std::optional<bool> local;
  if (ns.non_signaling) local = is_local(box, tol);
  switch (format) {
    case Format::kCsv: out << chsh_csv(box); break;
    case Format::kJson: {
      json chsh = json::array();
      for (const auto& v : values) chsh.push_back({{"x", v.x}, {"y", v.y}, {"sign", v.sign}, {"value", v.value}});
      json doc{{"correlators", {{"x00", c.x00}, {"x01", c.x01}, {"x10", c.x10}, {"x11", c.x11}}},
               {"chsh", chsh},
               {"nl", nonlocality},
               {"non_signaling", ns.non_signaling},
               {"local", local ? json(*local) : json(nullptr)}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kTable:
      out << "correlators  X00=" << fixed(c.x00) << "  X01=" << fixed(c.x01) << "  X10=" << fixed(c.x10)
          << "  X11=" << fixed(c.x11) << '\n';
      out << "chsh values\n";
      for (const auto& v : values) {
        out << "  xy=" << v.x << v.y << ' ' << (v.sign > 0 ? '+' : '-') << "  " << fixed(v.value) << '\n';
      }
      out << "NL " << fixed(nonlocality) << '\n';
      out << "local: " << (local ? (*local ? "yes" : "no") : "undefined (box is signaling)") << '\n';
      break;
  }
  return kExitOk;
}

int cmd_quantum(const Box& box, Format format, double tol, std::ostream& out) {
  require_non_signaling_box(box, tol);
  const auto verdict = is_quantum_box(box, tol);
  const auto c = correlators(box);
  const bool tsirelson = tsirelson_check(c, tol);
  switch (format) {
    case Format::kJson:
      out << json{{"quantum", verdict.quantum},
                  {"worst_slack", verdict.worst_slack},
                  {"full_box", verdict.full_box},
                  {"tsirelson", tsirelson},
                  {"nl", nl(c)}}
                 .dump(2)
          << '\n';
      break;
    case Format::kCsv:
      out << "quantum,worst_slack,full_box,tsirelson,nl\n"
          << verdict.quantum << ',' << format_double(verdict.worst_slack) << ',' << verdict.full_box << ','
          << tsirelson << ',' << format_double(nl(c)) << '\n';
      break;
    case Format::kTable:
      out << "quantum (arcsine criterion): " << (verdict.quantum ? "yes" : "no") << " (worst slack "
          << format_double(verdict.worst_slack) << ")\n";
      if (!verdict.full_box) out << "note: marginals are not uniform; verdict covers the correlators only\n";
      out << "within Tsirelson bound: " << (tsirelson ? "yes" : "no") << " (NL " << fixed(nl(c)) << ")\n";
      break;
  }
  return kExitOk;
}

int cmd_distill(const FamilyParams& params, const std::string& range, int max_n, Format format, double tol,
                std::ostream& out) {
  if (max_n < 1 || max_n > kMaxXorCopies) {
    throw UsageError("--max-n must be in [1, " + std::to_string(kMaxXorCopies) + "]");
  }
  const auto [first, last] = parse_range(range, max_n);
  DistillationReport report;
  try {
    report = distillation_report(params, first, last, tol);
  } catch (const BoxError& e) {
    throw UsageError(e.what());
  }
  switch (format) {
    case Format::kCsv:
      out << "n,eps,delta,nl_in,nl_out,quantum,distillable\n";
      for (const auto& row : report.rows) {
        out << row.n << ',' << format_double(params.eps) << ',' << format_double(params.delta) << ','
            << format_double(report.nl_in) << ',' << format_double(row.nl_brute) << ','
            << (row.resource_quantum ? "true" : "false") << ',' << (row.distilled ? "true" : "false") << '\n';
      }
      break;
    case Format::kJson: {
      json rows = json::array();
      for (const auto& row : report.rows) {
        rows.push_back({{"n", row.n},
                        {"nl_closed", row.nl_closed},
                        {"nl_brute", row.nl_brute},
                        {"quantum", row.resource_quantum},
                        {"distillable", row.distilled}});
      }
      out << json{{"eps", params.eps}, {"delta", params.delta}, {"nl_in", report.nl_in}, {"rows", rows}}.dump(2)
          << '\n';
      break;
    }
    case Format::kTable:
      out << "eps " << compact(params.eps) << "  delta " << compact(params.delta) << "  NL_in "
          << fixed(report.nl_in, 9) << '\n';
      out << std::setw(4) << "n" << std::setw(16) << "nl_closed" << std::setw(16) << "nl_brute" << std::setw(9)
          << "quantum" << std::setw(13) << "distillable" << '\n';
      for (const auto& row : report.rows) {
        out << std::setw(4) << row.n << std::setw(16) << fixed(row.nl_closed, 9) << std::setw(16)
            << fixed(row.nl_brute, 9) << std::setw(9) << (row.resource_quantum ? "yes" : "no") << std::setw(13)
            << (row.distilled ? "yes" : "no") << '\n';
      }
      break;
  }
  return kExitOk;
}

int cmd_optimize(const OptimizerSettings& settings, Format format, std::ostream& out) {
  std::optional<Optimum> optimum;
  try {
    optimum = find_quantum_distillation_optimum(settings);
  } catch (const BoxError& e) {
    throw UsageError(e.what());
  }
  switch (format) {
    case Format::kJson: {
      json doc{{"feasible", optimum.has_value()}};
      if (optimum) {
        doc["n"] = optimum->n;
        doc["eps"] = optimum->eps;
        doc["delta"] = optimum->delta;
        doc["nl_in"] = optimum->nl_in;
        doc["nl_out"] = optimum->nl_out;
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "feasible,n,eps,delta,nl_in,nl_out\n";
      if (optimum) {
        out << "true," << optimum->n << ',' << format_double(optimum->eps) << ',' << format_double(optimum->delta)
            << ',' << format_double(optimum->nl_in) << ',' << format_double(optimum->nl_out) << '\n';
      } else {
        out << "false,,,,,\n";
      }
      break;
    case Format::kTable:
      if (!optimum) {
        out << "no quantum-realizable distillable point\n";
        break;
      }
      out << "nl_out " << fixed(optimum->nl_out) << '\n'
          << "n " << optimum->n << '\n'
          << "eps " << fixed(optimum->eps, 5) << '\n'
          << "delta " << fixed(optimum->delta, 5) << '\n'
          << "nl_in " << fixed(optimum->nl_in) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_search(const Box& box, int jobs, Format format, double tol, std::ostream& out) {
  require_non_signaling_box(box, tol);
  const auto result = search_2copy(box, jobs, tol);
  switch (format) {
    case Format::kJson:
    case Format::kCsv:  // the result is nested; CSV callers get JSON as well
      out << json{{"input", box_json(result.input)},
                  {"nl_in", result.nl_in},
                  {"nl_out", result.nl_out},
                  {"distilled", result.nl_out - result.nl_in > tol},
                  {"best_wiring", {{"alice", strategy_json(result.best.alice)}, {"bob", strategy_json(result.best.bob)}}},
                  {"strategies",
                   {{"raw", result.raw_strategies},
                    {"behavior_classes", result.behavior_classes},
                    {"canonical_classes", result.canonical_classes}}},
                  {"pairs_evaluated", result.pairs_evaluated},
                  {"max_signaling", result.max_signaling},
                  {"wall_seconds", result.wall_seconds}}
                 .dump(2)
          << '\n';
      break;
    case Format::kTable:
      out << "NL_in  " << fixed(result.nl_in, 9) << '\n'
          << "NL_out " << fixed(result.nl_out, 9) << '\n'
          << "distilled: " << (result.nl_out - result.nl_in > tol ? "yes" : "no") << '\n'
          << "alice: " << result.best.alice.describe() << '\n'
          << "bob:   " << result.best.bob.describe() << '\n'
          << "strategies per side: " << result.raw_strategies << " raw, " << result.behavior_classes
          << " behaviours, " << result.canonical_classes << " classes\n"
          << "pairs evaluated: " << result.pairs_evaluated << "  (" << fixed(result.wall_seconds, 2) << " s)\n";
      break;
  }
  return kExitOk;
}

int cmd_depolarize(const Box& box, Format format, double tol, std::ostream& out) {
  require_non_signaling_box(box, tol);
  const Box iso = depolarize(box, tol);
  const double eta = chsh_s(correlators(iso)) / 4.0;
  switch (format) {
    case Format::kJson: out << box_to_json(iso) << '\n'; break;
    case Format::kCsv:
      out << "p00,p01,p10,p11\n";
      for (const auto& row : iso.matrix()) {
        out << format_double(row[0]) << ',' << format_double(row[1]) << ',' << format_double(row[2]) << ','
            << format_double(row[3]) << '\n';
      }
      break;
    case Format::kTable:
      print_matrix(out, iso);
      out << "eta " << fixed(eta, 9) << "  NL " << fixed(nl(iso), 9) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_game(const Box& box, int depth, Format format, double tol, std::ostream& out) {
  require_non_signaling_box(box, tol);
  if (depth < 1 || depth > kMaxXorCopies) throw UsageError("--depth must be in [1, 16]");
  const AndGameStrategy strategy{box, depth};
  const double success = and_game_success(strategy, tol);
  const double closed = and_game_success_closed(strategy, tol);
  const double classical = classical_and_optimum();
  const Box used = depth == 1 ? box : compose_xor(box, depth, tol);
  const double s = chsh_s(correlators(used));
  switch (format) {
    case Format::kJson:
      out << json{{"nl_resource", nl(box)},
                  {"depth", depth},
                  {"s", s},
                  {"success", success},
                  {"success_closed_form", closed},
                  {"classical", classical},
                  {"margin", success - classical}}
                 .dump(2)
          << '\n';
      break;
    case Format::kCsv:
      out << "nl_resource,depth,s,success,success_closed_form,classical,margin\n"
          << format_double(nl(box)) << ',' << depth << ',' << format_double(s) << ',' << format_double(success)
          << ',' << format_double(closed) << ',' << format_double(classical) << ','
          << format_double(success - classical) << '\n';
      break;
    case Format::kTable:
      out << "resource NL " << fixed(nl(box)) << ", distilled with " << depth << " cop" << (depth == 1 ? "y" : "ies")
          << '\n'
          << "S " << fixed(s) << '\n'
          << "success " << fixed(success) << " (closed form " << fixed(closed) << ")\n"
          << "classical optimum " << fixed(classical) << '\n'
          << "margin " << std::showpos << fixed(success - classical) << std::noshowpos << '\n';
      break;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of binary non-signaling boxes"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::string format_name = "table";
  int jobs = 1;
  app.add_option("--tol", tol, "Numeric tolerance for every check")->check(CLI::PositiveNumber);
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--jobs", jobs, "Worker threads for search")->check(CLI::Range(1, 256));
  app.fallthrough();

  BoxSource validate_src, chsh_src, quantum_src, search_src, depol_src, game_src;
  auto* validate_cmd = app.add_subcommand("validate", "Check that a box is a valid conditional distribution");
  validate_src.attach(validate_cmd);
  auto* chsh_cmd = app.add_subcommand("chsh", "Correlators, CHSH values and NL");
  chsh_src.attach(chsh_cmd);
  auto* quantum_cmd = app.add_subcommand("quantum", "Quantum realizability of a box");
  quantum_src.attach(quantum_cmd);

  auto* distill_cmd = app.add_subcommand("distill", "XOR-protocol distillation table for the eps/eps-delta families");
  std::string distill_family = "eps";
  FamilyParams distill_params{0.1, 0.0};
  std::string n_range = "1..5";
  int max_n = 10;
  distill_cmd->add_option("--family", distill_family)->check(CLI::IsMember({"eps", "eps-delta"}));
  distill_cmd->add_option("--eps", distill_params.eps);
  distill_cmd->add_option("--delta", distill_params.delta);
  distill_cmd->add_option("--n", n_range, "Copies, N or A..B inclusive");
  distill_cmd->add_option("--max-n", max_n, "Largest n accepted (at most 16)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Best quantum resource for XOR distillation");
  OptimizerSettings settings;
  double fixed_delta = -1.0;
  optimize_cmd->add_option("--n-max", settings.n_max);
  optimize_cmd->add_option("--coarse-step", settings.coarse_step);
  optimize_cmd->add_option("--resolution", settings.resolution);
  optimize_cmd->add_option("--fix-delta", fixed_delta, "Pin delta instead of searching it");

  auto* search_cmd = app.add_subcommand("search", "Exhaustive search over two-copy adaptive wirings");
  search_src.attach(search_cmd);
  auto* depol_cmd = app.add_subcommand("depolarize", "Isotropic box with the same CHSH value");
  depol_src.attach(depol_cmd);
  auto* game_cmd = app.add_subcommand("game", "Distributed AND game with a (distilled) resource");
  game_src.attach(game_cmd);
  int depth = 1;
  game_cmd->add_option("--depth", depth, "XOR-distill the resource over this many copies first");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Format format = format_name == "csv" ? Format::kCsv : format_name == "json" ? Format::kJson : Format::kTable;
  try {
    if (*validate_cmd) return cmd_validate(validate_src.load(), format, tol, out);
    if (*chsh_cmd) return cmd_chsh(chsh_src.load(), format, tol, out);
    if (*quantum_cmd) return cmd_quantum(quantum_src.load(), format, tol, out);
    if (*distill_cmd) {
      if (distill_family == "eps") distill_params.delta = 0.0;
      return cmd_distill(distill_params, n_range, max_n, format, tol, out);
    }
    if (*optimize_cmd) {
      settings.tol = tol;
      if (fixed_delta >= 0.0) settings.fixed_delta = fixed_delta;
      return cmd_optimize(settings, format, out);
    }
    if (*search_cmd) return cmd_search(search_src.load(), jobs, format, tol, out);
    if (*depol_cmd) return cmd_depolarize(depol_src.load(), format, tol, out);
    if (*game_cmd) return cmd_game(game_src.load(), depth, format, tol, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidBox& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const BoxError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace nlbox::cli
