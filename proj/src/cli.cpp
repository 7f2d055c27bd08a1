#include "apxbsp/cli.hpp"

#include <chrono>
#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "apxbsp/classes.hpp"
#include "apxbsp/inverse.hpp"
#include "apxbsp/jackson.hpp"
#include "apxbsp/quadrature.hpp"
#include "apxbsp/simplex.hpp"
#include "apxbsp/smoothness.hpp"
#include "apxbsp/spectrum.hpp"
#include "apxbsp/spectrum_io.hpp"
#include "apxbsp/suite.hpp"

namespace apxbsp {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kCommands = {
    "validate", "norm",     "best-approx",    "modulus",  "jackson-verify", "jackson-constant",
    "sigma",    "integrals", "inverse-verify", "classify", "gen"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("malformed " + what + " '" + s + "'");
  return v;
}

long long to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("malformed " + what + " '" + s + "'");
  return v;
}

struct GenSpec {
  SpectrumKind kind;
  int size;
  double decay;
  std::uint64_t seed;
};

GenSpec parse_gen(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw UsageError("--gen expects kind:size:decay:seedN, got '" + text + "'");
  GenSpec g{};
  try {
    g.kind = parse_spectrum_kind(parts[0]);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  g.size = static_cast<int>(to_int(parts[1], "size"));
  g.decay = to_double(parts[2], "decay");
  std::string seed = parts[3];
  if (seed.rfind("seed", 0) == 0) seed = seed.substr(4);
  g.seed = static_cast<std::uint64_t>(to_int(seed, "seed"));
  if (g.size < 1) throw UsageError("--gen size must be >= 1");
  return g;
}

ExponentLadder parse_lambda(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw UsageError("--lambda expects kind:size[:seed], got '" + text + "'");
  SpectrumKind kind;
  try {
    kind = parse_spectrum_kind(parts[0]);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const int size = static_cast<int>(to_int(parts[1], "size"));
  if (size < 1) throw UsageError("--lambda size must be >= 1");
  std::uint64_t seed = 1;
  if (parts.size() == 3) {
    std::string s = parts[2];
    if (s.rfind("seed", 0) == 0) s = s.substr(4);
    seed = static_cast<std::uint64_t>(to_int(s, "seed"));
  }
  return make_ladder(kind, size, seed);
}

bool has_spectrum_source(const RunConfig& cfg) {
  return !cfg.spectrum_path.empty() || !cfg.gen.empty();
}

Spectrum load_source(const RunConfig& cfg) {
  if (!cfg.spectrum_path.empty() && !cfg.gen.empty())
    throw UsageError("give either --spectrum or --gen, not both");
  if (!cfg.spectrum_path.empty()) {
    Spectrum s = load_spectrum(cfg.spectrum_path, cfg.p);
    if (cfg.p_given && s.p() != cfg.p) {
      s = s.with_p(cfg.p);
      require_valid(s);
    }
    return s;
  }
  if (!cfg.gen.empty()) {
    const GenSpec g = parse_gen(cfg.gen);
    return generate_spectrum(g.kind, g.size, g.decay, g.seed, cfg.p);
  }
  throw UsageError("this command needs --spectrum <file> or --gen kind:size:decay:seedN");
}

StepWeight weight_of(const RunConfig& cfg) {
  if (cfg.phi.empty()) return StepWeight::alpha(cfg.alpha);
  try {
    return StepWeight::parse(cfg.phi);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--phi: ") + e.what());
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const InequalityReport& r) {
  json j = {{"lhs", r.lhs},
            {"rhs", r.rhs},
            {"ratio", number_or_null(r.ratio)},
            {"constant", r.constant},
            {"formula", r.formula},
            {"grid", r.grid},
            {"status", to_string(r.status)},
            {"direction", r.direction}};
  for (const auto& [k, v] : r.details) j["details"][k] = number_or_null(v);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json profile_json(const Profile& p, const std::string& xname) {
  return {{xname, p.x},
          {"ratio", p.ratio},
          {"max_ratio", p.diagnostic.max_ratio},
          {"trend", number_or_null(p.diagnostic.trend)},
          {"growing", p.diagnostic.growing}};
}

json summary_json(const SuiteSummary& s) {
  json j = {{"cases", s.cases},
            {"checks", s.checks},
            {"passed", s.passed},
            {"failed", s.failed},
            {"inconclusive", s.inconclusive},
            {"not_applicable", s.not_applicable},
            {"status", to_string(s.status())}};
  for (const auto& [k, v] : s.max_ratio) j["max_ratio"][k] = v;
  j["failures"] = json::array();
  for (const auto& f : s.failures)
    j["failures"].push_back(
        {{"case", f.case_id}, {"check", f.check}, {"lhs", f.lhs}, {"rhs", f.rhs},
         {"status", f.status}});
  return j;
}

// Worst status wins: fail > inconclusive > pass > n/a.
std::string combine(const std::vector<std::string>& statuses) {
  auto rank = [](const std::string& s) {
    if (s == "fail") return 3;
    if (s == "inconclusive") return 2;
    if (s == "pass") return 1;
    return 0;
  };
  std::string worst = "n/a";
  for (const auto& s : statuses)
    if (rank(s) > rank(worst)) worst = s;
  return worst;
}

std::vector<SpectrumKind> kinds_of(const RunConfig& cfg) {
  std::vector<SpectrumKind> kinds;
  for (const auto& k : split(cfg.kinds, ',')) {
    try {
      kinds.push_back(parse_spectrum_kind(k));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (kinds.empty()) throw UsageError("--kinds is empty");
  return kinds;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// ---- commands ---------------------------------------------------------------

void cmd_validate(const RunConfig& cfg, Report& rep) {
  try {
    const Spectrum s = load_source(cfg);
    rep.results = {{"valid", true}, {"violations", json::array()}, {"entries", s.size()}};
    rep.status = "pass";
  } catch (const InvalidSpectrum& e) {
    rep.results = {{"valid", false}, {"violations", e.violations()}};
    rep.status = "fail";
  }
}

void cmd_norm(const RunConfig& cfg, Report& rep) {
  const Spectrum s = load_source(cfg);
  rep.results = {{"norm", lp_norm(s)}, {"p", s.p()}, {"entries", s.size()}};
}

void cmd_best_approx(const RunConfig& cfg, Report& rep, bool n_given) {
  const Spectrum s = load_source(cfg);
  if (n_given) {
    if (cfg.n < 1) throw UsageError("--n must be >= 1");
    const double e = best_approximation(s, cfg.n);
    rep.results = {{"n", cfg.n}, {"E", e}, {"E_p", std::pow(e, s.p())}};
    return;
  }
  json profile = json::array();
  rep.csv_header = {"n", "lambda_n", "E"};
  for (const auto& pt : s.ladder()) {
    const double e = best_approximation(s, pt.k);
    profile.push_back({{"n", pt.k}, {"lambda_n", pt.lambda}, {"E", e}});
    rep.csv_rows.push_back({std::to_string(pt.k), fmt(pt.lambda), fmt(e)});
  }
  rep.results = {{"profile", profile}};
}

void cmd_modulus(const RunConfig& cfg, Report& rep) {
  const Spectrum s = load_source(cfg);
  const StepWeight phi = weight_of(cfg);
  const WeightCheck wc = check_step_weight(phi, kPi);
  double delta = cfg.delta;
  if (delta <= 0.0) {
    const ExponentLadder ladder = s.ladder();
    const int neff = effective_index(ladder, cfg.n);
    if (neff == 0) throw UsageError("--delta not given and no ladder index >= n");
    delta = (cfg.tau > 0.0 ? cfg.tau : kPi) / s.lambda_at(neff);
  }
  ModulusOptions mo;
  mo.grid = cfg.grid;
  const ModulusEstimate m = modulus_estimate(s, phi, delta, mo);
  rep.results = {{"delta", delta},
                 {"phi", phi.describe()},
                 {"modulus", m.value},
                 {"argmax", m.argmax},
                 {"grid_value", m.grid_value},
                 {"refinement_gap", m.refinement_gap},
                 {"weight_warnings", wc.warnings},
                 {"weight_violations", wc.violations}};
}

void cmd_jackson_verify(const RunConfig& cfg, Report& rep) {
  if (cfg.trials > 0) {
    SuiteOptions so;
    so.grid = cfg.grid;
    so.ugrid = cfg.ugrid;
    std::vector<std::string> statuses;
    for (SpectrumKind k : kinds_of(cfg)) {
      auto corpus = make_corpus(k, cfg.trials, cfg.seed);
      if (cfg.all_orders) corpus = expand_orders(corpus);
      const SuiteSummary sum = run_direct_suite(corpus, so);
      rep.results["suites"][to_string(k)] = summary_json(sum);
      statuses.push_back(to_string(sum.status()));
    }
    rep.status = combine(statuses);
    return;
  }
  const Spectrum s = load_source(cfg);
  const StepWeight phi = weight_of(cfg);
  DirectOptions opt;
  opt.grid = cfg.grid;
  opt.ugrid = cfg.ugrid;
  opt.kmax = cfg.kmax;
  opt.tau = cfg.tau;
  std::vector<DirectMode> modes;
  if (cfg.mode == "all")
    modes = {DirectMode::pointwise_sharp, DirectMode::pointwise_uniform, DirectMode::averaged_sin,
             DirectMode::averaged_flat};
  else
    try {
      modes = {parse_direct_mode(cfg.mode)};
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  std::vector<std::string> statuses;
  rep.csv_header = {"mode", "lhs", "rhs", "ratio", "constant", "formula", "status"};
  for (DirectMode m : modes) {
    const InequalityReport r = verify_direct(s, cfg.n, phi, m, opt);
    rep.results["reports"][to_string(m)] = report_json(r);
    statuses.push_back(to_string(r.status));
    rep.csv_rows.push_back({to_string(m), fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), fmt(r.constant),
                            r.formula, to_string(r.status)});
  }
  rep.results["E"] = best_approximation(s, cfg.n);
  rep.status = combine(statuses);
}

void cmd_jackson_constant(const RunConfig& cfg, Report& rep) {
  ExponentLadder ladder;
  double p = cfg.p;
  if (!cfg.lambda.empty()) {
    ladder = parse_lambda(cfg.lambda);
  } else if (has_spectrum_source(cfg)) {
    const Spectrum s = load_source(cfg);
    ladder = s.ladder();
    p = s.p();
  } else {
    throw UsageError("jackson-constant needs --lambda kind:size or a spectrum source");
  }
  if (!(p >= 1.0)) throw UsageError("--p must be >= 1");
  const StepWeight phi = weight_of(cfg);
  const double tau = cfg.tau > 0.0 ? cfg.tau : kPi;
  const int kmax = cfg.kmax > 0 ? cfg.kmax : (ladder.empty() ? 0 : ladder.back().k);
  const int neff = effective_index(ladder, cfg.n);
  if (neff == 0) throw UsageError("no ladder index >= n");
  const SharpConstant k = sharp_constant(ladder, neff, phi, p, tau, cfg.ugrid, kmax);
  rep.results = {{"K_value", k.value},
                 {"measure_constant", k.measure_constant},
                 {"lp_value", k.lp.value},
                 {"duality_gap", k.lp.gap},
                 {"pivots", k.lp.iterations},
                 {"columns", k.indices.size()},
                 {"truncated", k.truncated},
                 {"ugrid", k.ugrid},
                 {"tau", tau},
                 {"effective_n", neff}};
  json rho = json::array();
  rep.csv_header = {"k", "rho"};
  for (std::size_t j = 0; j < k.indices.size(); ++j)
    if (k.rho[j] > 1e-12) {
      rho.push_back({{"k", k.indices[j]}, {"rho", k.rho[j]}});
      rep.csv_rows.push_back({std::to_string(k.indices[j]), fmt(k.rho[j])});
    }
  rep.results["rho"] = rho;
  json atoms = json::array();
  for (std::size_t i = 0; i < k.v_star->nodes().size(); ++i)
    if (k.v_star->mass()[i] > 1e-12)
      atoms.push_back({{"u", k.v_star->nodes()[i]}, {"mass", k.v_star->mass()[i]}});
  rep.results["v_star"] = atoms;
  const auto alpha = phi.alpha_order();
  if (alpha && std::abs(tau - kPi) < 1e-12) {
    const UniformBound u =
        uniform_bound(*alpha, p, cfg.m > 0 ? std::optional<int>(cfg.m) : std::nullopt);
    rep.results["uniform_bound"] = {{"value", u.value}, {"formula", u.tag}};
    rep.results["sigma_corrected_bound"] = sigma_corrected_bound(*alpha, p);
    rep.status = k.value <= u.value + 1e-3 ? "pass" : "fail";
  }
}

void cmd_sigma(const RunConfig& cfg, Report& rep) {
  if (!(cfg.s > 0.0)) throw UsageError("sigma needs --s > 0");
  const SeriesResult r = sigma_series(cfg.s, cfg.tol);
  rep.results = {{"s", cfg.s},
                 {"sigma", r.value},
                 {"last_index", r.last_index},
                 {"tail", r.tail},
                 {"leading_term", std::pow(2.0, cfg.s + 1.0) / (cfg.s + 1.0)}};
}

void cmd_integrals(const RunConfig& cfg, Report& rep) {
  QuadratureSettings q;
  q.abs_tol = cfg.tol;
  if (cfg.x > 0.0) {
    const double beta = cfg.s > 0.0 ? cfg.s : 1.0;
    rep.results["F_beta"] = {{"x", cfg.x}, {"beta", beta}, {"value", f_beta(cfg.x, beta, q)}};
  }
  if (!(cfg.s > 0.0)) {
    if (cfg.x > 0.0) return;
    throw UsageError("integrals needs --s > 0 (order) and a ladder, or --x for F_beta");
  }
  ExponentLadder ladder;
  if (!cfg.lambda.empty())
    ladder = parse_lambda(cfg.lambda);
  else if (has_spectrum_source(cfg))
    ladder = load_source(cfg).ladder();
  else
    throw UsageError("integrals needs --lambda kind:size or a spectrum source");
  const int kmax = cfg.kmax > 0 ? cfg.kmax : INT_MAX;
  const IndexScan sin_scan = jackson_integral_sin(ladder, cfg.n, cfg.s, kmax, q);
  rep.results["I_sin"] = {{"order", cfg.s},
                          {"value", sin_scan.value},
                          {"argmin_k", sin_scan.argmin_k},
                          {"scanned", sin_scan.scanned},
                          {"truncated", sin_scan.truncated},
                          {"closed_form_lower", std::pow(2.0, cfg.s + 1.0) / (cfg.s + 1.0)}};
  if (cfg.tau > 0.0) {
    const FlatScan f = jackson_integral_flat(ladder, cfg.n, 2.0 * cfg.s, cfg.tau, kmax, q);
    rep.results["I_flat"] = {{"sine_exponent", 2.0 * cfg.s},
                             {"tau", cfg.tau},
                             {"value", f.value},
                             {"argmin_k", f.argmin_k},
                             {"k_equals_n_value", f.closed_form},
                             {"scanned", f.scanned},
                             {"truncated", f.truncated}};
  }
}

void cmd_inverse_verify(const RunConfig& cfg, Report& rep) {
  if (cfg.trials > 0) {
    SuiteOptions so;
    so.grid = cfg.grid;
    std::vector<std::string> statuses;
    for (SpectrumKind k : kinds_of(cfg)) {
      auto corpus = make_corpus(k, cfg.trials, cfg.seed);
      if (cfg.all_orders) corpus = expand_orders(corpus);
      const SuiteSummary sum = run_inverse_suite(corpus, so);
      rep.results["suites"][to_string(k)] = summary_json(sum);
      statuses.push_back(to_string(sum.status()));
    }
    rep.status = combine(statuses);
    return;
  }
  const Spectrum s = load_source(cfg);
  const StepWeight phi = weight_of(cfg);
  const double tau = cfg.tau > 0.0 ? cfg.tau : kPi;
  std::vector<InverseForm> forms;
  if (cfg.form == "all")
    forms = {InverseForm::general, InverseForm::power, InverseForm::gap};
  else
    try {
      forms = {parse_inverse_form(cfg.form)};
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  std::vector<std::string> statuses;
  rep.csv_header = {"form", "lhs", "rhs", "ratio", "constant", "status"};
  for (InverseForm f : forms) {
    const InequalityReport r = verify_inverse(s, cfg.n, phi, tau, f, cfg.C, cfg.grid);
    rep.results["reports"][to_string(f)] = report_json(r);
    statuses.push_back(to_string(r.status));
    rep.csv_rows.push_back({to_string(f), fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), fmt(r.constant),
                            to_string(r.status)});
  }
  rep.status = combine(statuses);
}

void cmd_classify(const RunConfig& cfg, Report& rep) {
  const Spectrum s = load_source(cfg);
  const double alpha = cfg.alpha;
  rep.csv_header = {"profile", "x", "ratio"};
  auto rows = [&rep](const std::string& name, const Profile& p) {
    for (std::size_t i = 0; i < p.x.size(); ++i)
      rep.csv_rows.push_back({name, fmt(p.x[i]), fmt(p.ratio[i])});
  };
  if (cfg.r > 0.0) {
    const HolderClassification h = classify_holder(s, cfg.r, alpha, cfg.nmin, cfg.nmax);
    rep.results = {{"r", cfg.r},
                   {"alpha", alpha},
                   {"verdict", h.verdict},
                   {"consistent", h.consistent},
                   {"beyond_corollary_range", h.beyond_corollary_range},
                   {"max_gap", h.max_gap},
                   {"best_approx", profile_json(h.best_approx, "n")},
                   {"modulus", profile_json(h.modulus, "delta")}};
    rows("best_approx", h.best_approx);
    rows("modulus", h.modulus);
    rep.status = h.consistent ? "n/a" : "inconclusive";
    return;
  }
  if (cfg.majorant.empty()) throw UsageError("classify needs --r or --majorant");
  Majorant w = Majorant::power(1.0);
  try {
    w = Majorant::parse(cfg.majorant);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--majorant: ") + e.what());
  }
  const auto violations = validate_majorant(w);
  rep.results["majorant"] = {{"describe", w.describe()}, {"violations", violations}};
  if (!violations.empty()) {
    rep.status = "fail";
    return;
  }
  const Profile ba = membership_by_best_approx(s, w, cfg.nmin, cfg.nmax);
  const Profile mod = membership_by_modulus(s, w, alpha, default_delta_grid());
  const Profile bari = bari_ratio(w, alpha * s.p(), s.ladder(), cfg.nmax, s.p());
  rep.results["best_approx"] = profile_json(ba, "n");
  rep.results["modulus"] = profile_json(mod, "delta");
  rep.results["bari"] = profile_json(bari, "n");
  rows("best_approx", ba);
  rows("modulus", mod);
  rows("bari", bari);
  rep.status = ba.diagnostic.growing == mod.diagnostic.growing ? "n/a" : "inconclusive";
}

}  // namespace

json Report::to_json() const {
  return {{"command", command},
          {"config", config},
          {"results", results},
          {"status", status},
          {"wall_time", wall_time}};
}

std::string Report::to_csv() const {
  std::ostringstream os;
  if (!csv_rows.empty()) {
    for (std::size_t i = 0; i < csv_header.size(); ++i) os << (i ? "," : "") << csv_header[i];
    os << '\n';
    for (const auto& row : csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  os << "key,value\n";
  os << "status," << status << '\n';
  const json flat = results.flatten();
  for (const auto& item : flat.items()) {
    const auto& v = item.value();
    os << item.key() << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return os.str();
}

int Report::exit_code() const { return status == "fail" ? 1 : 0; }

Report dispatch(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = cfg.command;
  rep.config = cfg.echo;
  if (cfg.p_given && !(cfg.p >= 1.0)) throw UsageError("--p must be >= 1");
  const std::string& c = cfg.command;
  if (c == "validate")
    cmd_validate(cfg, rep);
  else if (c == "norm")
    cmd_norm(cfg, rep);
  else if (c == "best-approx")
    cmd_best_approx(cfg, rep, cfg.echo.contains("n"));
  else if (c == "modulus")
    cmd_modulus(cfg, rep);
  else if (c == "jackson-verify")
    cmd_jackson_verify(cfg, rep);
  else if (c == "jackson-constant")
    cmd_jackson_constant(cfg, rep);
  else if (c == "sigma")
    cmd_sigma(cfg, rep);
  else if (c == "integrals")
    cmd_integrals(cfg, rep);
  else if (c == "inverse-verify")
    cmd_inverse_verify(cfg, rep);
  else if (c == "classify")
    cmd_classify(cfg, rep);
  else
    throw UsageError("unknown command '" + c + "'");
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"apxbsp: approximation estimates for Besicovitch almost periodic spectra"};
  std::string commands;
  for (const auto& c : kCommands) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", cfg.command, "one of: " + commands)->required();
  std::string seed_text = "1";
  app.add_option("--spectrum", cfg.spectrum_path, "spectrum file (.json, or .csv with --p)");
  app.add_option("--gen", cfg.gen, "generated spectrum kind:size:decay:seedN");
  app.add_option("--lambda", cfg.lambda, "exponent ladder kind:size[:seed]");
  app.add_option("--n", cfg.n, "approximation index n");
  auto* p_opt = app.add_option("--p", cfg.p, "exponent p >= 1");
  app.add_option("--alpha", cfg.alpha, "order alpha of phi_alpha");
  app.add_option("--phi", cfg.phi, "weight alpha:<a> | scheme:<mu0>,<mu1>,... | table:<path>");
  app.add_option("--m", cfg.m, "classical integer order for uniform bounds");
  app.add_option("--tau", cfg.tau, "tau (default pi; 3pi/4 for averaged_flat)");
  app.add_option("--ugrid", cfg.ugrid, "extremal-problem grid nodes (>= 64)");
  app.add_option("--grid", cfg.grid, "modulus grid");
  app.add_option("--tol", cfg.tol, "quadrature / series tolerance");
  app.add_option("--kmax", cfg.kmax, "largest index scanned (0: all)");
  app.add_option("--mode", cfg.mode, "pointwise | pointwise_uniform | averaged_sin | averaged_flat | all");
  app.add_option("--form", cfg.form, "general | power | gap | all");
  app.add_option("--trials", cfg.trials, "suite size per spectrum kind (suite mode)");
  app.add_option("--seed", seed_text, "master seed for suites");
  app.add_flag("--all-orders", cfg.all_orders, "suites: run every spectrum at all (alpha, p) in {1,2} x {1,2,3}");
  app.add_option("--kinds", cfg.kinds, "suite kinds, comma separated");
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--majorant", cfg.majorant, "power:<r> | table:<path>");
  app.add_option("--r", cfg.r, "Holder exponent r");
  app.add_option("--s", cfg.s, "order s (sigma, integrals) or beta (F_beta)");
  app.add_option("--delta", cfg.delta, "modulus step bound");
  app.add_option("--x", cfg.x, "F_beta argument");
  app.add_option("--C", cfg.C, "gap constant (default max gap)");
  app.add_option("--nmin", cfg.nmin, "first n of profiles");
  app.add_option("--nmax", cfg.nmax, "last n of profiles (0: all)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  cfg.p_given = p_opt->count() > 0;
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "command") continue;
    if (opt->get_name() == "--all-orders") {
      cfg.echo["all-orders"] = true;
      continue;
    }
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    const auto& raw = opt->results();
    cfg.echo[name] = raw.empty() ? "" : raw.back();
  }

  try {
    if (cfg.trials > 0 && !cfg.echo.contains("seed"))
      throw UsageError("suite runs (--trials) need an explicit --seed");
    try {
      cfg.seed = static_cast<std::uint64_t>(std::stoull(seed_text));
    } catch (const std::exception&) {
      throw UsageError("malformed --seed '" + seed_text + "'");
    }
    if (cfg.command == "gen") {
      const GenSpec g = parse_gen(cfg.gen.empty() ? std::string{} : cfg.gen);
      const Spectrum s = generate_spectrum(g.kind, g.size, g.decay, g.seed, cfg.p);
      const std::string text = cfg.format == "csv" ? spectrum_to_csv(s) : spectrum_to_json(s) + "\n";
      if (cfg.out.empty()) {
        out << text;
      } else {
        std::ofstream f(cfg.out);
        if (!f) throw UsageError("cannot write '" + cfg.out + "'");
        f << text;
      }
      return 0;
    }
    const Report rep = dispatch(cfg);
    const std::string text = cfg.format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw UsageError("cannot write '" + cfg.out + "'");
      f << text;
    }
    return rep.exit_code();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << "\n";
  } catch (const InvalidSpectrum& e) {
    err << "invalid spectrum:";
    for (const auto& v : e.violations()) err << "\n  " << v;
    err << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace apxbsp
