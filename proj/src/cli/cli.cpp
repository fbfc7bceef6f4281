#include "mordell/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "mordell/error.hpp"
#include "mordell/family.hpp"
#include "mordell/heights.hpp"
#include "mordell/search.hpp"

namespace mordell::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr const char* kSchemaVersion = "1";
constexpr unsigned kDefaultPrecision = 50;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json record(const std::string& command, json inputs, json results, json timings) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["results"] = std::move(results);
  r["timings"] = std::move(timings);
  return r;
}

json point_json(const CurvePoint& P) {
  if (P.is_infinity()) return json{{"infinity", true}};
  return json{{"x", to_string(P.x())}, {"y", to_string(P.y())}};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

long parse_long(const std::string& what, const std::string& v) {
  try {
    std::size_t used = 0;
    const long r = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ParseError("invalid integer for " + what + ": '" + v + "'");
  }
}

/// Settings resolved as flag > MORDELL_PRECISION (precision only) > config > default.
struct Settings {
  unsigned precision = kDefaultPrecision;
  std::int64_t denom_bound = 8;
  std::int64_t numer_bound = 1'000'000;
  unsigned jobs = 1;
  double time_budget = 600.0;
  std::uint64_t rho_budget = 100'000'000;  // Pollard rho iterations per composite
};

Settings resolve(const std::string& config_path) {
  Settings s;
  std::map<std::string, std::string> cfg;
  if (!config_path.empty()) cfg = read_config(config_path);
  auto from_config = [&](const char* key, auto& field) {
    if (auto it = cfg.find(key); it != cfg.end())
      field = static_cast<std::remove_reference_t<decltype(field)>>(parse_long(key, it->second));
  };
  from_config("precision", s.precision);
  from_config("denom_bound", s.denom_bound);
  from_config("numer_bound", s.numer_bound);
  from_config("jobs", s.jobs);
  from_config("rho_budget", s.rho_budget);
  if (auto it = cfg.find("time_budget"); it != cfg.end()) s.time_budget = static_cast<double>(parse_long("time_budget", it->second));
  if (const char* env = std::getenv("MORDELL_PRECISION"); env != nullptr && *env != '\0')
    s.precision = static_cast<unsigned>(parse_long("MORDELL_PRECISION", env));
  return s;
}

// ---------------------------------------------------------------- verify

int cmd_verify(bool as_json, const std::string& mutate, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  family::Transcription t = family::Transcription::printed();
  if (!mutate.empty()) {
    // NAME or NAME@SLOT; slot 0 is the numerator scale, see FactoredExpr.
    std::string name = mutate;
    std::size_t slot = 2;  // first coefficient of the first numerator factor
    if (const auto at = mutate.find('@'); at != std::string::npos) {
      name = mutate.substr(0, at);
      slot = static_cast<std::size_t>(parse_long("mutation slot", mutate.substr(at + 1)));
    }
    family::FactoredExpr* e = t.find(name);
    if (e == nullptr) {
      err << "error: unknown mutation target '" << name << "'\n";
      return kUsage;
    }
    if (slot >= e->slot_count()) {
      err << "error: mutation slot " << slot << " out of range for " << name << " (" << e->slot_count()
          << " slots)\n";
      return kUsage;
    }
    e->perturb(slot, +1);
  }
  const family::VerificationReport rep = family::verify_all_identities(t);
  const double elapsed = ms_since(t0);
  std::size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.passed ? 1 : 0;

  if (as_json) {
    json ids = json::array();
    for (const auto& c : rep.checks)
      ids.push_back(json{{"name", c.name}, {"anchor", c.anchor}, {"passed", c.passed}, {"residual", c.residual}});
    json results{{"all_passed", rep.all_passed()}, {"passed", passed}, {"total", rep.checks.size()}, {"identities", ids}};
    json inputs{{"mutate", mutate.empty() ? json(nullptr) : json(mutate)}};
    out << record("verify", inputs, results, json{{"verify_ms", elapsed}}).dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks) {
      out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.anchor << "]\n";
      if (!c.passed) out << "      residual: " << c.residual << "\n";
    }
    out << passed << "/" << rep.checks.size() << " identities verified as exact zeros in Q(m), Q(k), Q(n)\n";
  }
  return rep.all_passed() ? kOk : kVerificationFailed;
}

// ------------------------------------------------------------------ show

void print_stage(const family::FamilyStage& s, std::ostream& out, json* j) {
  const char v = s.parameter;
  const std::string name(1, v);
  out << "stage " << static_cast<char>(std::toupper(v)) << " (parameter " << v << ")\n";
  out << "d(" << v << ") = " << s.curve_d.to_string(v) << "\n";
  json pts = json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    // stage K lists P1 (substituted) and P2; stage N lists P1..P3
    out << "P" << i + 1 << ".x(" << v << ") = " << s.points[i].x.to_string(v) << "\n";
    out << "P" << i + 1 << ".y(" << v << ") = " << s.points[i].y.to_string(v) << "\n";
    pts.push_back(json{{"x", s.points[i].x.to_string(v)}, {"y", s.points[i].y.to_string(v)}});
  }
  if (j != nullptr) *j = json{{"stage", name}, {"d", s.curve_d.to_string(v)}, {"points", pts}};
}

int cmd_show(const std::optional<std::string>& n_text, const std::optional<std::string>& stage, bool as_json,
             std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  if (stage) {
    family::FamilyStage s = *stage == "m"   ? family::stage_m()
                            : *stage == "k" ? family::stage_k()
                                            : family::stage_n();
    std::ostringstream text;
    json j;
    print_stage(s, text, &j);
    if (as_json)
      out << record("show", json{{"stage", *stage}}, j, json{{"show_ms", ms_since(t0)}}).dump(2) << "\n";
    else
      out << text.str();
    return kOk;
  }
  if (!n_text) {
    err << "error: show needs --n <rational> or --stage m|k|n\n";
    return kUsage;
  }
  const Rational n0 = parse_rational(*n_text);
  const family::Specialization s = family::specialize(n0);
  if (as_json) {
    json results{{"n", to_string(n0)}, {"degenerate", s.flags.degenerate}};
    if (s.flags.degenerate) {
      results["reason"] = s.reason;
    } else {
      results["d"] = to_string(s.curve->d());
      json pts = json::array();
      for (const auto& P : s.points) pts.push_back(point_json(P));
      results["points"] = pts;
      json coincident = json::array();
      for (auto [i, j] : s.flags.coincident_points) coincident.push_back(json::array({i + 1, j + 1}));
      json torsion = json::array();
      for (int i : s.flags.torsion_hits) torsion.push_back(i + 1);
      results["coincident_points"] = coincident;
      results["torsion_hits"] = torsion;
    }
    out << record("show", json{{"n", to_string(n0)}}, results, json{{"show_ms", ms_since(t0)}}).dump(2) << "\n";
    return kOk;
  }
  out << "n = " << to_string(n0) << "\n";
  if (s.flags.degenerate) {
    out << "degenerate: " << s.reason << " (degenerate set: ";
    bool first = true;
    for (const auto& r : family::degenerate_parameters()) {
      out << (first ? "" : ", ") << to_string(r);
      first = false;
    }
    out << ")\n";
    return kOk;
  }
  out << "curve: " << s.curve->to_string() << "\n";
  out << "d = " << to_string(s.curve->d()) << "\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) out << "P" << i + 1 << " = " << s.points[i].to_string() << "\n";
  for (auto [i, j] : s.flags.coincident_points) out << "note: P" << i + 1 << " and P" << j + 1 << " share x\n";
  for (int i : s.flags.torsion_hits) out << "note: P" << i + 1 << " has x = 0 (3-torsion)\n";
  return kOk;
}

// ------------------------------------------------------------- regulator

json gram_json(const GramReport& g, unsigned digits) {
  json m = json::array();
  for (const auto& row : g.matrix) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string(digits));
    m.push_back(r);
  }
  json eig = json::array();
  for (const auto& v : g.eigenvalues) eig.push_back(v.to_string(digits));
  return json{{"matrix", m},
              {"regulator", g.regulator.to_string(digits)},
              {"min_eigenvalue", g.min_eigenvalue.to_string(digits)},
              {"eigenvalues", eig},
              {"rank_lower_bound", g.rank_lower_bound},
              {"precision", digits}};
}

int cmd_regulator(const std::string& n_text, const Settings& st, const std::string& normalization, bool as_json,
                  std::ostream& out, std::ostream& err) {
  const unsigned precision = st.precision;
  const auto t0 = Clock::now();
  const Rational n0 = parse_rational(n_text);
  const family::Specialization s = family::specialize(n0);
  if (s.flags.degenerate) {
    err << "error: degenerate parameter n = " << to_string(n0) << ": " << s.reason << "\n";
    return kUsage;
  }
  const Normalization norm = normalization == "halved" ? Normalization::halved : Normalization::full;
  const HeightContext ctx(precision, norm, std::make_shared<FactorCache>(st.rho_budget));
  const auto t1 = Clock::now();
  const GramReport g = gram_regulator(*s.curve, s.points, ctx);
  const double height_ms = ms_since(t1);
  if (as_json) {
    json inputs{{"n", to_string(n0)}, {"precision", precision}, {"normalization", normalization}};
    json results = gram_json(g, precision);
    results["d"] = to_string(s.curve->d());
    out << record("regulator", inputs, results, json{{"heights_ms", height_ms}, {"total_ms", ms_since(t0)}}).dump(2)
        << "\n";
    return kOk;
  }
  out << "n = " << to_string(n0) << "\n";
  out << "d = " << to_string(s.curve->d()) << "\n";
  out << "precision = " << precision << " digits, normalization = " << normalization << "\n";
  out << "pairing matrix:\n";
  for (const auto& row : g.matrix) {
    out << " ";
    for (const auto& v : row) out << "  " << v.to_string(precision);
    out << "\n";
  }
  out << "regulator = " << g.regulator.to_string(precision) << "\n";
  out << "min eigenvalue = " << g.min_eigenvalue.to_string(precision) << "\n";
  out << "rank lower bound = " << g.rank_lower_bound << "\n";
  return kOk;
}

// ------------------------------------------------------------------ scan

struct NListRow {
  std::string text;
  std::optional<Rational> n;
  std::string parse_error;
};

std::vector<NListRow> read_n_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  std::vector<NListRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    NListRow r{line, std::nullopt, {}};
    try {
      r.n = parse_rational(line);
    } catch (const ParseError& e) {
      r.parse_error = e.what();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int cmd_scan(const std::string& input, const Settings& st, const std::string& csv_path, const std::string& json_path,
             std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const std::vector<NListRow> rows = read_n_list(input);
  std::vector<Rational> ns;
  for (const auto& r : rows)
    if (r.n) ns.push_back(*r.n);

  SearchConfig cfg;
  cfg.denom_bound = st.denom_bound;
  cfg.numer_bound = st.numer_bound;
  cfg.time_budget_seconds = st.time_budget;
  cfg.validate();
  const HeightContext ctx(st.precision, Normalization::full, std::make_shared<FactorCache>(st.rho_budget));
  const auto t1 = Clock::now();
  const std::vector<ScanEntry> entries = scan(ns, cfg, ctx, st.jobs);
  const double scan_ms = ms_since(t1);

  const unsigned digits = std::min(st.precision, 20U);
  json jrows = json::array();
  std::ostringstream csv;
  csv << "n,d,rank_lower_bound,regulator,num_points,error\n";
  std::size_t k = 0;
  for (const auto& r : rows) {
    json jr;
    if (!r.n) {
      jr = json{{"n", r.text}, {"status", "failed"}, {"error", r.parse_error}};
      csv << csv_field(r.text) << ",,,,," << csv_field(r.parse_error) << "\n";
      err << "row '" << r.text << "': " << r.parse_error << "\n";
      jrows.push_back(jr);
      continue;
    }
    const ScanEntry& e = entries[k++];
    const std::string n_str = to_string(e.n0);
    if (!e.certificate) {
      const char* status = e.status == ScanEntry::Status::degenerate ? "degenerate" : "failed";
      jr = json{{"n", n_str}, {"status", status}, {"error", e.error}};
      csv << n_str << ",,,,," << csv_field(e.error) << "\n";
      err << "skipping n = " << n_str << ": " << e.error << "\n";
      jrows.push_back(jr);
      continue;
    }
    const RankCertificate& c = *e.certificate;
    json pts = json::array();
    for (const auto& P : c.points) pts.push_back(point_json(P));
    jr = json{{"n", n_str},
              {"status", "ok"},
              {"d", to_string(c.d)},
              {"rank_lower_bound", c.rank_lower_bound},
              {"regulator", c.gram.regulator.to_string(digits)},
              {"min_eigenvalue", c.gram.min_eigenvalue.to_string(digits)},
              {"points", pts},
              {"points_found", c.points_found},
              {"search_truncated", c.search_truncated},
              {"error", ""}};
    jrows.push_back(jr);
    csv << n_str << "," << to_string(c.d) << "," << c.rank_lower_bound << "," << c.gram.regulator.to_string(digits)
        << "," << c.points.size() << ",\n";
    out << "n = " << n_str << "  rank >= " << c.rank_lower_bound << "  regulator = " << c.gram.regulator.to_string(digits)
        << "  (search hits: " << c.points_found << (c.search_truncated ? ", truncated" : "") << ")\n";
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw ParseError("cannot write '" + csv_path + "'");
    f << csv.str();
  }
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw ParseError("cannot write '" + json_path + "'");
    json inputs{{"input", input},
                {"denom_bound", st.denom_bound},
                {"numer_bound", st.numer_bound},
                {"precision", st.precision},
                {"jobs", st.jobs}};
    f << record("scan", inputs, json{{"rows", jrows}, {"precision", digits}},
                json{{"scan_ms", scan_ms}, {"total_ms", ms_since(t0)}})
             .dump(2)
      << "\n";
  }
  if (csv_path.empty() && json_path.empty()) out << csv.str();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mordell curve family toolkit: exact identities, heights, regulators, rank lower bounds"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file with default precision, bounds, jobs");

  bool verify_json = false;
  std::string mutate;
  auto* verify = app.add_subcommand("verify", "prove every parametric identity exactly");
  verify->add_flag("--json", verify_json, "emit an OutputRecord");
  verify->add_option("--mutate", mutate, "test hook: perturb a printed coefficient (NAME[@SLOT], e.g. P3.y)");

  std::optional<std::string> show_n, show_stage;
  bool show_json = false;
  auto* show = app.add_subcommand("show", "specialize at n, or print a symbolic stage");
  auto* show_n_opt = show->add_option("--n", show_n, "rational parameter, e.g. 3 or 1/3");
  auto* show_stage_opt =
      show->add_option("--stage", show_stage, "symbolic stage view")->check(CLI::IsMember({"m", "k", "n"}));
  show_n_opt->excludes(show_stage_opt);
  show->add_flag("--json", show_json, "emit an OutputRecord");

  std::string reg_n, reg_norm = "full";
  unsigned reg_precision = 0;
  bool reg_json = false;
  auto* regulator = app.add_subcommand("regulator", "Neron-Tate pairing matrix and regulator of P1, P2, P3");
  regulator->add_option("--n", reg_n, "rational parameter")->required();
  auto* reg_prec_opt = regulator->add_option("--precision", reg_precision, "decimal digits (>= 20)");
  regulator->add_option("--normalization", reg_norm, "height convention")->check(CLI::IsMember({"full", "halved"}));
  regulator->add_flag("--json", reg_json, "emit an OutputRecord");

  std::string scan_input, scan_csv, scan_json;
  std::int64_t denom_bound = 0, numer_bound = 0;
  unsigned jobs = 0, scan_precision = 0;
  double time_budget = 0;
  auto* scan_cmd = app.add_subcommand("scan", "certify rank lower bounds over a list of n");
  scan_cmd->add_option("--input", scan_input, "file with one rational n per line ('#' comments)")->required();
  auto* db_opt = scan_cmd->add_option("--denom-bound", denom_bound, "max b in x = A/b^2");
  auto* nb_opt = scan_cmd->add_option("--numer-bound", numer_bound, "max |A| in x = A/b^2");
  auto* jobs_opt = scan_cmd->add_option("--jobs", jobs, "worker threads");
  auto* sp_opt = scan_cmd->add_option("--precision", scan_precision, "decimal digits (>= 20)");
  auto* tb_opt = scan_cmd->add_option("--time-budget", time_budget, "search seconds per n");
  scan_cmd->add_option("--csv", scan_csv, "write CSV rows here");
  scan_cmd->add_option("--json", scan_json, "write an OutputRecord here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (const auto* sub : app.get_subcommands()) out << sub->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_json, mutate, out, err);
    if (show->parsed()) return cmd_show(show_n, show_stage, show_json, out, err);
    if (regulator->parsed()) {
      Settings st = resolve(config_path);
      if (reg_prec_opt->count() > 0) st.precision = reg_precision;
      return cmd_regulator(reg_n, st, reg_norm, reg_json, out, err);
    }
    if (scan_cmd->parsed()) {
      Settings st = resolve(config_path);
      if (db_opt->count() > 0) st.denom_bound = denom_bound;
      if (nb_opt->count() > 0) st.numer_bound = numer_bound;
      if (jobs_opt->count() > 0) st.jobs = jobs;
      if (sp_opt->count() > 0) st.precision = scan_precision;
      if (tb_opt->count() > 0) st.time_budget = time_budget;
      return cmd_scan(scan_input, st, scan_csv, scan_json, out, err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  }
  return kUsage;
}

}  // namespace mordell::cli
