// rjm: command-line front end for the path, series, moment, tree and spectra modules.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 cap exceeded,
// 4 any other error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <thread>

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"
#include "rjm/series.hpp"
#include "rjm/spectra.hpp"
#include "rjm/trees.hpp"
#include "rjm/verify.hpp"

using namespace rjm;

namespace {

enum Exit { kPass = 0, kFailed = 1, kUsage = 2, kCap = 3, kOther = 4 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string format = "text";
  long max_order = 15;
  std::string dist = "uniform:1";
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  int cap = kDefaultEnumerationCap;
  int threads = 1;
};

struct Output {
  Json data = Json::object();
  std::string text;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool pass = true;
  Json failures = Json::array();
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

/// Fills csv columns from an array of flat objects sharing the same keys.
void table_from(Output& out, const Json& rows) {
  if (rows.empty()) return;
  for (const auto& [key, _] : rows.front().items()) out.csv_header.push_back(key);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& key : out.csv_header) cells.push_back(row.contains(key) ? scalar(row[key]) : "");
    out.csv_rows.push_back(std::move(cells));
  }
}

std::string table_text(const Output& out) {
  std::ostringstream os;
  for (std::size_t i = 0; i < out.csv_header.size(); ++i) os << (i ? "\t" : "") << out.csv_header[i];
  os << "\n";
  for (const auto& row : out.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string status(bool pass) { return pass ? "PASS" : "FAIL"; }

Output from_report(const CheckReport& rep) {
  Output out;
  out.data = rep.to_json();
  out.pass = rep.pass;
  out.failures = out.data["mismatches"];
  std::ostringstream os;
  os << rep.name << ": " << status(rep.pass) << " (" << rep.compared << " comparisons, " << rep.mismatch_count
     << " mismatches)\n";
  for (const auto& m : rep.mismatches) os << "  " << m.where << ": " << m.lhs << " != " << m.rhs << "\n";
  out.text = os.str();
  return out;
}

void emit(const Output& out, const std::string& format) {
  if (format == "json") {
    std::cout << out.data.dump(2) << "\n";
  } else if (format == "csv") {
    if (out.csv_header.empty()) throw UsageError("csv output is not available for this command");
    for (std::size_t i = 0; i < out.csv_header.size(); ++i) std::cout << (i ? "," : "") << csv_field(out.csv_header[i]);
    std::cout << "\n";
    for (const auto& row : out.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_field(row[i]);
      std::cout << "\n";
    }
  } else {
    std::cout << out.text;
  }
  if (!out.pass) std::cerr << Json{{"status", "FAIL"}, {"failures", out.failures}}.dump() << "\n";
}

Composition parse_composition(std::string s) {
  std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == ' '; });
  Composition c;
  if (s.empty() || s == "e") return c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      int v = std::stoi(part);
      if (v < 1) throw UsageError("composition parts must be positive");
      c.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad composition '" + s + "'");
    }
  }
  return c;
}

// ---- paths / weights ---------------------------------------------------------

Output run_paths(const std::string& kind_name, int n, int returns, bool count_only, bool weights_only, int cap) {
  PathKind kind = kind_name == "dyck" ? PathKind::Dyck
                  : kind_name == "generalized" ? PathKind::Generalized
                                               : PathKind::DyckReturns;
  Output out;
  out.data = {{"kind", kind_name}, {"n", n}};
  if (kind == PathKind::DyckReturns) out.data["returns"] = returns;
  if (count_only) {
    auto c = count_paths(kind, n, returns, cap);
    out.data["count"] = c;
    out.text = std::to_string(c) + "\n";
    out.csv_header = {"kind", "n", "count"};
    out.csv_rows = {{kind_name, std::to_string(n), std::to_string(c)}};
    return out;
  }
  Poly total;
  Json rows = Json::array();
  for_each_path(kind, n, returns, cap, [&](const LatticePath& p) {
    Poly w = path_weight(p);
    total += w;
    if (!weights_only) rows.push_back(Json{{"path", p.to_string()}, {"weight", w.to_string()}});
  });
  out.data["weight_polynomial"] = total.to_string();
  if (weights_only) {
    out.text = total.to_string() + "\n";
    out.csv_header = {"kind", "n", "weight_polynomial"};
    out.csv_rows = {{kind_name, std::to_string(n), total.to_string()}};
    return out;
  }
  out.data["paths"] = rows;
  table_from(out, rows);
  out.text = table_text(out);
  return out;
}

Output run_weights(const std::string& kind, int max_n, int cap) {
  CheckReport rep("weights " + kind);
  Json rows = Json::array();
  for (int n = 0; n <= max_n; ++n) {
    Poly enumerated, closed, second;
    std::string closed_name, second_name;
    if (kind == "W") {
      enumerated = weight_polynomial(WeightKind::W, n, cap);
      closed = closed_form(ClosedFormKind::TheoremW, n), closed_name = "theorem_W";
      second = closed_form(ClosedFormKind::NestedW, n), second_name = "nested_W";
    } else if (kind == "A") {
      enumerated = weight_polynomial(WeightKind::A, n, cap);
      closed = closed_form(ClosedFormKind::FlajoletA, n), closed_name = "flajolet_A";
      second = closed_form(ClosedFormKind::TouchardA, n), second_name = "touchard_A";
    } else {
      enumerated = weight_polynomial(WeightKind::B, n, cap);
      closed = closed_form(ClosedFormKind::FlajoletB, n), closed_name = "flajolet_B";
      second = closed, second_name = "flajolet_B";
    }
    rep.expect_equal("n=" + std::to_string(n) + " " + closed_name, closed, enumerated);
    if (second_name != closed_name) rep.expect_equal("n=" + std::to_string(n) + " " + second_name, second, enumerated);
    rows.push_back(Json{{"n", n}, {"polynomial", enumerated.to_string()}, {"agrees", closed == enumerated && second == enumerated}});
  }
  Output out = from_report(rep);
  out.data["details"]["rows"] = rows;
  table_from(out, rows);
  out.text = table_text(out) + out.text;
  return out;
}

// ---- series / moments ----------------------------------------------------------

Output run_series(const std::string& relation, const std::string& show, int k, long order, int depth,
                  std::uint64_t seed) {
  if (!show.empty()) {
    SeriesKind kind = show == "W" ? SeriesKind::w()
                      : show == "A" ? SeriesKind::a(k)
                      : show == "B" ? SeriesKind::b(k)
                      : show == "G" ? SeriesKind::g(k)
                                    : SeriesKind::f();
    LaurentSeries s = series_from(kind, order);
    Output out;
    out.data = s.to_json();
    out.data["series"] = show;
    Json rows = Json::array();
    for (const auto& c : out.data["coeffs"]) rows.push_back(Json{{"exponent", -c[0].get<long>()}, {"coefficient", c[1]}});
    table_from(out, rows);
    out.text = "order " + std::to_string(order) + "\n" + table_text(out);
    return out;
  }
  std::vector<Relation> ids;
  if (relation == "all") {
    ids = {Relation::Decoupling, Relation::ChainA, Relation::ChainB, Relation::Harmonic,
           Relation::ContFrac,   Relation::LemmaRk, Relation::LemmaRK};
  } else {
    ids = {parse_relation(relation)};
  }
  CheckReport rep("series");
  Json list = Json::array(), rows = Json::array();
  for (auto id : ids) {
    CheckReport sub = verify_relation(id, order, RelationOptions{depth, seed});
    rep.absorb(sub);
    list.push_back(sub.to_json());
    rows.push_back(Json{{"relation", relation_name(id)}, {"order", order}, {"compared", sub.compared}, {"status", status(sub.pass)}});
  }
  Output out = from_report(rep);
  out.data["details"]["relations"] = list;
  table_from(out, rows);
  out.text = table_text(out) + out.text;
  return out;
}

Output run_moments(const std::string& sequence, int max_n, int k, bool check) {
  if (check) return from_report(check_recurrences(max_n));
  Output out;
  Json rows = Json::array();
  for (const auto& e : moment_table(parse_sequence(sequence), max_n, k))
    rows.push_back(Json{{"n", e.n}, {"label", e.label()}, {"value", e.value.to_string()}});
  out.data = {{"sequence", sequence}, {"max", max_n}, {"rows", rows}};
  if (sequence == "alpha_k") out.data["k"] = k;
  table_from(out, rows);
  for (const auto& r : rows) out.text += r["label"].get<std::string>() + " = " + r["value"].get<std::string>() + "\n";
  return out;
}

// ---- trees ---------------------------------------------------------------------

Output run_tree_list(int cls, const std::string& comp) {
  Composition c = parse_composition(comp);
  auto trees = enumerate_trees(cls, c);
  Output out;
  Json list = Json::array(), rows = Json::array();
  std::ostringstream os;
  Rational total = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    Rational w = tree_weight(cls, trees[i]);
    total += w;
    Json t = trees[i].to_json();
    t["weight"] = to_string(w);
    list.push_back(t);
    rows.push_back(Json{{"index", i}, {"key", trees[i].key()}, {"weight", to_string(w)}});
    os << "# tree " << i << " weight " << to_string(w) << "\n" << trees[i].to_text();
  }
  out.data = {{"class", cls}, {"composition", composition_to_string(c)}, {"count", trees.size()},
              {"phi", to_string(total)}, {"trees", list}};
  table_from(out, rows);
  os << "count " << trees.size() << ", phi " << to_string(total) << "\n";
  out.text = os.str();
  return out;
}

Output run_tree_phi(int cls, int n) {
  TreeCensus cen = census(cls, n);
  Output out;
  Json rows = Json::array();
  for (const auto& [c, v] : cen.phi) rows.push_back(Json{{"composition", composition_to_string(c)}, {"phi", to_string(v)}});
  out.data = {{"class", cls}, {"n", n}, {"tree_count", cen.count}, {"phi", rows}};
  table_from(out, rows);
  out.text = table_text(out) + "trees " + std::to_string(cen.count) + "\n";
  return out;
}

Output run_tree_invert(const std::string& target, int n, int threads) {
  InversionTarget t = parse_target(target);
  Poly tree_side = reconstruct(t, n, threads);
  Poly oracle = invert_oracle(t, n);
  CheckReport rep("invert " + target_name(t));
  rep.expect_equal("n=" + std::to_string(n), tree_side, oracle);
  Output out = from_report(rep);
  out.data["details"] = {{"target", target_name(t)}, {"n", n}, {"polynomial", tree_side.to_string()}};
  out.csv_header = {"target", "n", "polynomial", "status"};
  out.csv_rows = {{target_name(t), std::to_string(n), tree_side.to_string(), status(rep.pass)}};
  out.text = tree_side.to_string() + "\n" + out.text;
  return out;
}

// ---- spectra -------------------------------------------------------------------

Output run_spectra_exact(const std::string& kind, int n, int k, const Distribution& d) {
  Rational v = exact_expected(kind == "trace" ? ExpectedKind::Trace : ExpectedKind::Entry11, n, k, d);
  Output out;
  out.data = {{"kind", kind}, {"n", n}, {"k", k}, {"dist", d.to_string()}, {"exact", to_string(v)}};
  table_from(out, Json::array({out.data}));
  out.text = to_string(v) + "\n";
  return out;
}

Output run_spectra_mc(const std::string& kind_name, int n, int k, const Distribution& d, const RunConfig& cfg) {
  McKind kind = parse_mc_kind(kind_name);
  McResult r = mc_estimate(kind, n, k, d, cfg.samples, cfg.seed, cfg.threads);
  // spectral moments share E H^k(1,1); empirical moments share E Tr(H^k)/n.
  bool per_row = kind == McKind::Trace || kind == McKind::EmpiricalMoments;
  Rational exact = exact_expected(per_row ? ExpectedKind::Trace : ExpectedKind::Entry11, n, k, d);
  if (per_row) exact /= n;
  Output out;
  out.data = {{"kind", kind_name}, {"n", n},          {"k", k},           {"dist", d.to_string()},
              {"exact", to_string(exact)}, {"mc_mean", r.mean}, {"mc_stderr", r.std_error}, {"N", r.samples},
              {"seed", cfg.seed}};
  table_from(out, Json::array({out.data}));
  std::ostringstream os;
  os.precision(17);
  os << "exact " << to_string(exact) << " (" << exact.get_d() << ")\nmean " << r.mean << " +- " << r.std_error
     << " (N=" << r.samples << ", seed=" << cfg.seed << ")\n";
  out.text = os.str();
  return out;
}

Output run_spectra_consistency(int n, int k, const Distribution& d, std::uint64_t count, double tol,
                               std::uint64_t seed) {
  CheckReport rep("consistency");
  Json rows = Json::array();
  for (std::uint64_t i = 0; i < count; ++i) {
    CheckReport sub = tau_consistency(JacobiSample::draw(n, d, seed, i), k, tol);
    sub.name = "sample " + std::to_string(i);
    rep.absorb(sub);
    rows.push_back(Json{{"sample", i}, {"tau", sub.details["tau"]}, {"entry11", sub.details["entry11"]},
                        {"sigma", sub.details["sigma"]}, {"trace_over_n", sub.details["trace_over_n"]},
                        {"status", status(sub.pass)}});
  }
  Output out = from_report(rep);
  out.data["details"] = {{"n", n}, {"k", k}, {"dist", d.to_string()}, {"tolerance", tol}, {"seed", seed}, {"samples", rows}};
  table_from(out, rows);
  return out;
}

Output with_table(Output out, const Json& rows) {
  table_from(out, rows);
  out.text = table_text(out) + out.text;
  return out;
}

Output run_verify_all(int order, const RunConfig& cfg) {
  CheckReport rep = verify_all(VerifyOptions{order, cfg.threads, cfg.seed, cfg.samples});
  Output out;
  out.data = rep.to_json();
  out.pass = rep.pass;
  out.failures = out.data["mismatches"];
  Json rows = Json::array();
  std::ostringstream os;
  for (const auto& c : rep.details["checks"]) {
    rows.push_back(Json{{"check", c["name"]}, {"compared", c["compared"]}, {"status", status(c["pass"].get<bool>())}});
    os << c["name"].get<std::string>() << ": " << status(c["pass"].get<bool>()) << " (" << c["compared"] << ")\n";
  }
  for (const auto& m : rep.mismatches) os << "  " << m.where << ": " << m.lhs << " != " << m.rhs << "\n";
  os << "verify-all " << order << ": " << status(rep.pass) << "\n";
  table_from(out, rows);
  out.text = os.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Jacobi matrices and weighted lattice paths"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "text, json or csv")
      ->envname("RJM_FORMAT")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--max-order", cfg.max_order, "series truncation order / largest n")
      ->envname("RJM_MAX_ORDER")
      ->check(CLI::PositiveNumber);
  app.add_option("--dist", cfg.dist, "constant:c, uniform:theta, exponential:rate, two_point:p,x1,x2")
      ->envname("RJM_DIST");
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("RJM_SEED");
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count")
      ->envname("RJM_SAMPLES")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "enumeration cap on path size")->envname("RJM_CAP")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware concurrency)")
      ->envname("RJM_THREADS")
      ->check(CLI::NonNegativeNumber);

  std::function<Output()> action;

  // paths
  auto* paths = app.add_subcommand("paths", "enumerate or count lattice paths");
  std::string path_kind = "dyck";
  int path_n = 3, path_returns = 0;
  bool path_count = false, path_weights = false;
  paths->add_option("--kind", path_kind)->check(CLI::IsMember({"dyck", "generalized", "returns"}));
  paths->add_option("-n", path_n)->required()->check(CLI::NonNegativeNumber);
  paths->add_option("--returns", path_returns)->check(CLI::NonNegativeNumber);
  auto* count_flag = paths->add_flag("--count", path_count, "print only the number of paths");
  paths->add_flag("--weights", path_weights, "print only the weight polynomial")->excludes(count_flag);
  paths->callback([&] { action = [&] { return run_paths(path_kind, path_n, path_returns, path_count, path_weights, cfg.cap); }; });

  // weights
  auto* weights = app.add_subcommand("weights", "weight polynomials against closed forms");
  std::string weight_kind = "W";
  weights->add_option("--kind", weight_kind)->check(CLI::IsMember({"W", "A", "B"}));
  weights->callback([&] {
    action = [&] { return run_weights(weight_kind, static_cast<int>(std::min<long>(cfg.max_order, cfg.cap)), cfg.cap); };
  });

  // series
  auto* series = app.add_subcommand("series", "verify series relations");
  std::string relation = "all", show;
  int series_k = 0, depth = 4;
  series->add_option("--relation", relation, "relation name or all");
  auto* show_opt = series->add_option("--show", show, "print W, A, B, G or F instead")
                       ->check(CLI::IsMember({"W", "A", "B", "G", "F"}));
  series->add_option("-k", series_k, "shift for A, B or G")->check(CLI::NonNegativeNumber);
  series->add_option("--depth", depth, "chain shift / continued fraction depth")->check(CLI::PositiveNumber);
  series->get_option("--relation")->excludes(show_opt);
  series->callback([&] { action = [&] { return run_series(relation, show, series_k, cfg.max_order, depth, cfg.seed); }; });

  // moments
  auto* moments = app.add_subcommand("moments", "alpha, omega and alpha^(k) tables");
  std::string sequence = "alpha";
  int moments_max = 5, moments_k = 1;
  bool moments_check = false;
  moments->add_option("--sequence", sequence)->check(CLI::IsMember({"alpha", "omega", "alpha_k"}));
  moments->add_option("--max", moments_max)->check(CLI::NonNegativeNumber);
  moments->add_option("-k", moments_k)->check(CLI::PositiveNumber);
  moments->add_flag("--check", moments_check, "run the recurrence checks up to --max");
  moments->callback([&] { action = [&] { return run_moments(sequence, moments_max, moments_k, moments_check); }; });

  // trees
  auto* trees = app.add_subcommand("trees", "admissible trees and inversion");
  trees->require_subcommand(1);
  int tree_class = 1, tree_n = 3;
  std::string comp, target = "m_from_alpha";
  auto* list = trees->add_subcommand("list", "list the trees of one composition");
  list->add_option("--class", tree_class)->check(CLI::Range(1, 4));
  list->add_option("--composition", comp, "e.g. 1,2")->required();
  list->callback([&] { action = [&] { return run_tree_list(tree_class, comp); }; });
  auto* phi_cmd = trees->add_subcommand("phi", "phi over C(n)");
  phi_cmd->add_option("--class", tree_class)->check(CLI::Range(1, 4));
  phi_cmd->add_option("-n", tree_n)->check(CLI::NonNegativeNumber);
  phi_cmd->callback([&] { action = [&] { return run_tree_phi(tree_class, tree_n); }; });
  auto* invert = trees->add_subcommand("invert", "reconstruct one sequence from another");
  invert->add_option("--target", target)
      ->check(CLI::IsMember({"m_from_alpha", "omega_from_alpha", "m_from_omega", "alpha_from_omega"}));
  invert->add_option("-n", tree_n)->check(CLI::NonNegativeNumber);
  invert->callback([&] { action = [&] { return run_tree_invert(target, tree_n, cfg.threads); }; });
  auto* tree_check = trees->add_subcommand("check", "tree theorems up to n");
  tree_check->add_option("--max", tree_n)->check(CLI::NonNegativeNumber);
  tree_check->callback([&] { action = [&] { return from_report(check_trees(tree_n, cfg.threads)); }; });

  // spectra
  auto* spectra = app.add_subcommand("spectra", "random Jacobi matrices");
  spectra->require_subcommand(1);
  std::string spec_kind = "entry11";
  int spec_n = 7, spec_k = 4, spec_m = 2, max_n = 40;
  double tol = kTauTolerance;
  std::vector<int> n_list;
  auto* exact = spectra->add_subcommand("exact", "exact expectation by path enumeration");
  exact->add_option("--kind", spec_kind)->check(CLI::IsMember({"trace", "entry11"}));
  exact->add_option("-n", spec_n)->check(CLI::PositiveNumber);
  exact->add_option("-k", spec_k)->check(CLI::NonNegativeNumber);
  exact->callback([&] { action = [&] { return run_spectra_exact(spec_kind, spec_n, spec_k, Distribution::parse(cfg.dist)); }; });
  auto* mc = spectra->add_subcommand("mc", "Monte Carlo estimate");
  mc->add_option("--kind", spec_kind)
      ->check(CLI::IsMember({"trace", "entry11", "spectral_moments", "empirical_moments"}));
  mc->add_option("-n", spec_n)->check(CLI::PositiveNumber);
  mc->add_option("-k", spec_k)->check(CLI::NonNegativeNumber);
  mc->callback([&] { action = [&] { return run_spectra_mc(spec_kind, spec_n, spec_k, Distribution::parse(cfg.dist), cfg); }; });
  auto* consistency = spectra->add_subcommand("consistency", "spectral vs matrix-power moments per sample");
  std::uint64_t draws = 100;
  consistency->add_option("-n", spec_n)->check(CLI::PositiveNumber);
  consistency->add_option("-k", spec_k)->check(CLI::NonNegativeNumber);
  consistency->add_option("--draws", draws, "number of matrices")->check(CLI::PositiveNumber);
  consistency->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber);
  consistency->callback([&] {
    action = [&] { return run_spectra_consistency(spec_n, spec_k, Distribution::parse(cfg.dist), draws, tol, cfg.seed); };
  });
  auto* rows_cmd = spectra->add_subcommand("rows", "interior and boundary rows of E H^{2m}");
  rows_cmd->add_option("-n", spec_n)->check(CLI::PositiveNumber);
  rows_cmd->add_option("-m", spec_m)->check(CLI::NonNegativeNumber);
  rows_cmd->callback([&] {
    action = [&] {
      CheckReport rep = interior_row_check(spec_n, spec_m, Distribution::parse(cfg.dist));
      Json rows = rep.details["interior"];
      for (const auto& b : rep.details["boundary"]) rows.push_back(b);
      std::sort(rows.begin(), rows.end(), [](const Json& a, const Json& b) { return a["i"] < b["i"]; });
      return with_table(from_report(rep), rows);
    };
  });
  auto* asym = spectra->add_subcommand("asymptotic", "finite-n deficit of the normalized trace");
  asym->add_option("-m", spec_m)->check(CLI::NonNegativeNumber);
  asym->add_option("--n", n_list, "sizes; default 2m+1..--max-n");
  asym->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
  asym->callback([&] {
    action = [&] {
      if (n_list.empty())
        for (int n = 2 * spec_m + 1; n <= max_n; ++n) n_list.push_back(n);
      CheckReport rep = asymptotic_check(spec_m, Distribution::parse(cfg.dist), n_list);
      return with_table(from_report(rep), rep.details["table"]);
    };
  });

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "every check up to order N");
  int verify_order = 5;
  verify->add_option("N", verify_order)->required()->check(CLI::PositiveNumber);
  verify->callback([&] { action = [&] { return run_verify_all(verify_order, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (cfg.threads == 0) cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  try {
    Output out = action();
    emit(out, cfg.format);
    return out.pass ? kPass : kFailed;
  } catch (const CapExceeded& e) {
    std::cerr << Json{{"status", "CAP_EXCEEDED"}, {"message", e.what()}, {"requested", e.requested}, {"cap", e.cap}}.dump()
              << "\n";
    return kCap;
  } catch (const OrderExceeded& e) {
    std::cerr << Json{{"status", "CAP_EXCEEDED"}, {"message", e.what()}, {"requested", e.requested}, {"cap", e.bound}}
                     .dump()
              << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
