#include "ctspec/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include <json.hpp>

#include "ctspec/heis_model.hpp"
#include "ctspec/parallel.hpp"
#include "ctspec/suites.hpp"

namespace ctspec {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : f_(path) {
    if (!f_) throw std::runtime_error("cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f_ << (i ? "," : "") << cells[i];
    f_ << '\n';
  }

 private:
  std::ofstream f_;
};

struct Context {
  const RunOptions& opts;
  const Config& cfg;
  fs::path dir;
  std::ostream& log;
  std::vector<std::string> tables;

  fs::path table(const std::string& name) {
    tables.push_back(name);
    return dir / name;
  }
};

bool is_trivial(const Holonomy& a) { return a == Holonomy{0.0, 0.0, 0.0}; }

SuiteParams suite_params(const Config& c, bool invariant) {
  SuiteParams p;
  p.N = c.N;
  if (!is_trivial(c.holonomy)) p.twist = c.holonomy;
  p.twist2 = c.holonomy2;
  p.eps = c.eps;
  p.zero_tol = c.zero_tol;
  p.rank_tol = c.rank_tol;
  p.invariant_mode = invariant;
  return p;
}

std::vector<double> head(const RVec& s, const Config& c) {
  const Eigen::Index n = c.mode == SolveMode::LowestK ? std::min<Eigen::Index>(c.k, s.size()) : s.size();
  return {s.data(), s.data() + n};
}

std::vector<SuiteResult> cmd_check(Context& cx) {
  const SuiteParams p = suite_params(cx.cfg, true);
  using F = SuiteResult (*)(const SuiteParams&);
  const F all[] = {suite_geometry,  suite_exact_algebra, suite_cohomology,     suite_filtration,
                   suite_extension, suite_effective_normal, suite_spectral_convergence, suite_branson,
                   suite_zeta_scaling, suite_regime,     suite_torsion,        suite_kitaoka,
                   suite_eta,       suite_heis,          suite_tanno};
  std::vector<SuiteResult> out;
  for (F f : all) {
    out.push_back(f(p));
    cx.log << "  " << out.back().name << (out.back().pass ? " pass" : " FAIL") << '\n';
  }
  return out;
}

std::vector<SuiteResult> cmd_spectrum(Context& cx) {
  const Config& c = cx.cfg;
  const DerhamComplex dc(make_grid(c.N, c.holonomy));
  const RuminSpectra rs = rumin_spectra(dc);
  Csv csv(cx.table("spectrum.csv"), {"operator", "degree", "eps", "index", "lambda"});
  SuiteResult r("spectrum");
  for (int p : c.degrees) {
    const bool mid = p == 1 || p == 2;
    for (double e : c.eps) {
      const RVec s = derham_spectrum(dc, e, p, mid);
      const auto v = head(s, c);
      for (std::size_t i = 0; i < v.size(); ++i)
        csv.row({mid ? "scaled_delta_eps" : "delta_eps", num(p), num(e), num(static_cast<double>(i)), num(v[i])});
      const std::string key = "deg" + std::to_string(p) + "_eps" + num(e);
      r.add(key + "_kernel_dim", s.size() - nonzero_count(s, c.zero_tol));
      if (kernel_ambiguous(s, c.zero_tol)) r.notes.push_back(key + ": eigenvalue within 10x of tol.zero");
    }
    const RVec& target = mid ? rs.dstard_e4 : rs.laplacian[p];
    const auto v = head(target, c);
    for (std::size_t i = 0; i < v.size(); ++i)
      csv.row({mid ? "dstar_d_E4" : "rumin_laplacian", num(p), "0", num(static_cast<double>(i)), num(v[i])});
    r.add("deg" + std::to_string(p) + "_rumin_kernel_dim", target.size() - nonzero_count(target, c.zero_tol));
  }
  // kernel dimension is a twist-level invariant: b_p for α = 0, 0 when acyclic
  const Grid g = make_grid(c.N, c.holonomy);
  for (int p : c.degrees) {
    const int want = is_trivial(c.holonomy) ? kFormRank[p] : (g.acyclic() ? 0 : -1);
    if (want < 0) continue;
    for (double e : c.eps)
      r.require("deg" + std::to_string(p) + "_eps" + num(e) + "_kernel_ok",
                r.get("deg" + std::to_string(p) + "_eps" + num(e) + "_kernel_dim") == want);
  }
  return {r};
}

std::vector<SuiteResult> cmd_sweep(Context& cx) {
  const Config& c = cx.cfg;
  const int p = cx.opts.degree.value_or(c.degrees.front());
  const int k = c.mode == SolveMode::LowestK ? c.k : 5;
  const ConvergenceReport rep = eps_sweep(make_grid(c.N, c.holonomy), p, c.eps, k, c.zero_tol);
  Csv csv(cx.table("sweep_eps.csv"), {"eps", "index", "lambda", "rumin_lambda", "gap"});
  for (const SweepRow& row : rep.rows)
    csv.row({num(row.eps), num(row.index), num(row.lambda), num(row.rumin_lambda), num(row.gap)});
  SuiteResult r("sweep-eps");
  r.add("degree", p);
  for (std::size_t i = 0; i < rep.eps.size(); ++i) r.add("max_gap_eps" + num(rep.eps[i]), rep.max_gap[i]);
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) r.require_le("ratio_" + std::to_string(i + 1), rep.ratios[i], 1.0);
  r.add("crossing_ambiguity", rep.crossing_ambiguity);
  if (rep.crossing_ambiguity) r.notes.push_back("eigenvalue separation below the gap; index matching may cross");
  return {r};
}

std::vector<SuiteResult> cmd_filtration(Context& cx) {
  const Config& c = cx.cfg;
  SuiteResult r("filtration");
  const std::vector<int> degrees = cx.opts.degree ? std::vector<int>{*cx.opts.degree} : c.degrees;
  const bool one = degrees.size() == 1;
  std::unique_ptr<Csv> shared;
  if (one) shared = std::make_unique<Csv>(cx.table("filtration.csv"), std::vector<std::string>{"level", "dim", "min-singular-gap"});
  for (int p : degrees) {
    const auto rows = filtration_table(make_grid(c.N, c.holonomy), p, c.rank_tol);
    std::unique_ptr<Csv> own;
    if (!one)
      own = std::make_unique<Csv>(cx.table("filtration_deg" + std::to_string(p) + ".csv"),
                                  std::vector<std::string>{"level", "dim", "min-singular-gap"});
    Csv& csv = one ? *shared : *own;
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      csv.row({rows[i].level == kLevelInfinity ? "inf" : num(rows[i].level), num(rows[i].dim), num(rows[i].min_singular_gap)});
      if (i && rows[i].dim > rows[i - 1].dim) monotone = false;
      if (rows[i].ambiguous) r.notes.push_back("degree " + std::to_string(p) + ": rank cut ambiguous at level " + num(rows[i].level));
    }
    const std::string d = "deg" + std::to_string(p);
    r.require(d + "_decreasing", monotone);
    r.add(d + "_dim_inf", rows.back().dim);
    if (is_trivial(c.holonomy)) r.require(d + "_inf_equals_betti", rows.back().dim == kFormRank[p]);
  }
  return {r};
}

std::vector<SuiteResult> cmd_heat(Context& cx) {
  const Config& c = cx.cfg;
  const DerhamComplex dc(make_grid(c.N, c.holonomy));
  const RuminSpectra rs = rumin_spectra(dc);
  Csv csv(cx.table("heat_trace.csv"), {"degree", "eps", "t", "trace", "rumin_trace"});
  SuiteResult r("heat-trace");
  for (int p : c.degrees) {
    const bool mid = p == 1 || p == 2;
    for (double e : c.eps) {
      const RVec s = derham_spectrum(dc, e, p, mid);
      for (double t : cx.opts.times)
        csv.row({num(p), num(e), num(t), num(heat_trace(s, t)), num(heat_trace(mid ? rs.dstard_e4 : rs.laplacian[p], t))});
    }
    const RegimeFit f = fit_small_t(derham_spectrum(dc, 1.0, p), c.zero_tol);
    r.add("deg" + std::to_string(p) + "_small_t_exponent", f.exponent);
    r.add("deg" + std::to_string(p) + "_small_t_valid", f.valid);
    if (!f.valid) r.notes.push_back("degree " + std::to_string(p) + ": " + f.note);
  }
  return {r};
}

std::vector<SuiteResult> cmd_branson(Context& cx) {
  const Config& c = cx.cfg;
  const RuminSpectra rs = rumin_spectra(DerhamComplex(make_grid(c.N, c.holonomy)));
  Csv csv(cx.table("branson.csv"), {"t", "lhs", "rhs", "relative_residual", "literal_residual"});
  SuiteResult r("branson");
  double worst = 0.0;
  for (double t : cx.opts.times) {
    const BransonReport b = branson_check(rs, t);
    csv.row({num(t), num(b.lhs), num(b.rhs), num(b.residual), num(b.literal_residual)});
    worst = std::max(worst, b.residual);
  }
  r.require_le("relative_residual", worst, tol::kBranson);
  return {r};
}

std::vector<SuiteResult> cmd_torsion(Context& cx) {
  const Config& c = cx.cfg;
  SuiteResult r("torsion");
  for (const Holonomy* h : {&c.holonomy, &c.holonomy2})
    if (!make_grid(c.N, *h).acyclic()) {
      r.require("acyclic_twists", false);
      r.notes.push_back("relative torsion needs two acyclic twists");
      return {r};
    }
  Csv csv(cx.table("torsion.csv"), {"convention", "source", "eps", "first", "second", "difference"});
  for (TorsionConvention tc : {TorsionConvention::RuminSeshadri, TorsionConvention::Tilde, TorsionConvention::TildeAsPrinted,
                               TorsionConvention::Kitaoka}) {
    const RelativeTorsion t = relative_torsion(c.N, c.holonomy, c.holonomy2, tc, TorsionSource::Rumin);
    csv.row({to_string(tc), "rumin", "0", num(t.first.log_at), num(t.second.log_at), num(t.difference)});
    r.add("rumin_" + to_string(tc), t.difference);
  }
  std::vector<double> dr;
  for (double e : c.eps) {
    const RelativeTorsion t = relative_torsion(c.N, c.holonomy, c.holonomy2, TorsionConvention::DeRham, TorsionSource::DeRham, e);
    csv.row({"deRham", "deRham", num(e), num(t.first.log_at), num(t.second.log_at), num(t.difference)});
    dr.push_back(t.difference);
  }
  const std::size_t m = std::min<std::size_t>(3, c.eps.size());
  const double extrap = richardson_eps2({c.eps.end() - m, c.eps.end()}, {dr.end() - m, dr.end()});
  r.add("derham_extrapolated", extrap);
  r.require_le("derham_vs_rumin", std::abs(extrap - r.get("rumin_ruminSeshadri")), tol::kTorsion);
  r.require_le("w_vs_wtilde", std::abs(r.get("rumin_ruminSeshadri") - r.get("rumin_tilde")), tol::kWeights);
  return {r};
}

std::vector<SuiteResult> cmd_eta(Context& cx) {
  const Config& c = cx.cfg;
  SuiteResult r("eta");
  if (c.eps.size() < 3) throw ConfigError("eta needs at least three eps values");
  const Holonomy a = is_trivial(c.holonomy) ? SuiteParams{}.twist : c.holonomy;
  const RhoReport rho = relative_rho(c.N, a, c.eps);
  Csv csv(cx.table("eta.csv"), {"eps", "rho_eps", "rho_H", "diff"});
  for (std::size_t i = 0; i < rho.eps.size(); ++i) csv.row({num(rho.eps[i]), num(rho.rho_eps[i]), num(rho.rho_h), num(rho.diffs[i])});
  Csv scan(cx.table("eta_scan.csv"), {"u", "agreement"});
  for (std::size_t i = 0; i < rho.scan_u.size(); ++i) scan.row({num(rho.scan_u[i]), num(rho.scan_agreement[i])});
  r.add("u0", rho.u0);
  r.add("rho_H", rho.rho_h);
  r.add("extrapolated", rho.extrapolated);
  r.require("monotone", rho.monotone);
  r.require_le("agreement", rho.agreement, tol::kRho);
  r.require_le("sensitivity", rho.sensitivity, tol::kRho);
  return {r};
}

std::vector<SuiteResult> cmd_heis(Context& cx) {
  const HeisKernel k;
  const OracleReport o = landau_oracle(k);
  Csv csv(cx.table("heis_oracle.csv"), {"y", "z", "closed_form", "oracle", "oracle_reflected"});
  for (const OraclePoint& p : o.points) csv.row({num(p.y), num(p.z), num(p.closed), num(p.oracle), num(p.oracle_reflected)});
  Csv hom(cx.table("heis_homogeneity.csv"), {"lambda", "max_deviation", "points"});
  for (double l : {0.5, 1.0, 2.0}) {
    const HomogeneityReport h = homogeneity_check(k, l);
    hom.row({num(l), num(h.max_deviation), num(h.points)});
  }
  return {suite_heis(suite_params(cx.cfg, true))};
}

std::vector<SuiteResult> cmd_tanno(Context& cx) {
  const ContactModel m = build_t3_model();
  const ChristoffelTable fit = levi_civita_laurent_fit(m, {1.0, 0.7, 0.5, 0.35, 0.25}, cx.cfg.N);
  const ChristoffelTable closed = tanno_christoffels(m);
  Csv csv(cx.table("tanno.csv"), {"k", "i", "j", "fit_m1", "fit_0", "fit_p1", "closed_m1", "closed_0", "closed_p1"});
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Laurent3 &f = fit.at(k, i, j), &g = closed.at(k, i, j);
        csv.row({num(k), num(i), num(j), num(f.m1), num(f.c0), num(f.p1), num(g.m1), num(g.c0), num(g.p1)});
      }
  return {suite_tanno(suite_params(cx.cfg, true))};
}

const std::map<std::string, std::function<std::vector<SuiteResult>(Context&)>>& table() {
  static const std::map<std::string, std::function<std::vector<SuiteResult>(Context&)>> t{
      {"check", cmd_check},     {"spectrum", cmd_spectrum}, {"sweep-eps", cmd_sweep}, {"filtration", cmd_filtration},
      {"heat-trace", cmd_heat}, {"branson", cmd_branson},   {"torsion", cmd_torsion}, {"eta", cmd_eta},
      {"heis", cmd_heis},       {"tanno", cmd_tanno}};
  return t;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json metric_value(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"check", "spectrum", "sweep-eps", "filtration", "heat-trace",
                                              "branson", "torsion", "eta", "heis", "tanno"};
  return names;
}

int run(const RunOptions& opts, std::ostream& log) {
  const auto it = table().find(opts.subcommand);
  if (it == table().end()) {
    log << "unknown subcommand " << opts.subcommand << '\n';
    return kExitConfig;
  }
  Config cfg = opts.config;
  try {
    validate(cfg);
    if (opts.degree && (*opts.degree < 0 || *opts.degree > 3)) throw ConfigError("--degree must be in {0,1,2,3}");
    for (double t : opts.times)
      if (!(t > 0.0)) throw ConfigError("times must be positive");
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  cfg.jobs = resolve_jobs(cfg.jobs);
  set_jobs(cfg.jobs);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  Context cx{opts, cfg, dir, log, {}};
  std::vector<SuiteResult> suites;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    suites = it->second(cx);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string opt_text = "subcommand=" + opts.subcommand + "\n";
  if (opts.degree) opt_text += "degree=" + num(*opts.degree) + "\n";
  for (double t : opts.times) opt_text += "t=" + num(t) + "\n";

  json report;
  report["run_id"] = config_hash(canonical(cfg) + opt_text);
  report["subcommand"] = opts.subcommand;
  json jc;
  jc["model.N"] = cfg.N;
  jc["model.holonomy"] = cfg.holonomy;
  jc["model.holonomy2"] = cfg.holonomy2;
  jc["sweep.eps"] = cfg.eps;
  jc["sweep.degrees"] = cfg.degrees;
  jc["solver.mode"] = cfg.mode == SolveMode::Full ? "full" : "lowest-k";
  jc["solver.k"] = cfg.k;
  jc["tol.rank"] = cfg.rank_tol;
  jc["tol.zero"] = cfg.zero_tol;
  jc["output.dir"] = cfg.output_dir;
  jc["jobs"] = cfg.jobs;
  if (opts.degree) jc["degree"] = *opts.degree;
  jc["times"] = opts.times;
  report["config"] = jc;
  report["versions"] = {{"ctspec", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                             std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                             std::to_string(EIGEN_MINOR_VERSION)}};
  bool pass = error.empty();
  json js = json::array();
  json failures = json::array();
  json timing = json::object();
  for (const SuiteResult& s : suites) {
    json m = json::object();
    for (const auto& [k, v] : s.metrics)
      if (k != "runtime_s") m[k] = metric_value(v);
    js.push_back({{"name", s.name}, {"status", s.pass ? "pass" : "fail"}, {"metrics", m}, {"notes", s.notes}});
    for (const std::string& k : s.failed) failures.push_back({{"suite", s.name}, {"metric", k}, {"value", metric_value(s.get(k))}});
    timing[s.name] = s.seconds;
    pass = pass && s.pass;
  }
  if (!error.empty()) failures.push_back({{"suite", opts.subcommand}, {"error", error}});
  report["suites"] = js;
  report["tables"] = cx.tables;
  report["status"] = pass ? "pass" : "fail";
  report["failures"] = failures;
  // wall-clock data lives here so the rest of the report is reproducible byte for byte
  report["timestamp"] = {{"utc", utc_now()}, {"elapsed_s", elapsed}, {"suite_s", timing}};

  std::ofstream out(dir / (opts.subcommand + ".json"));
  out << report.dump(2) << '\n';
  log << opts.subcommand << ": " << (pass ? "pass" : "FAIL") << " (" << (dir / (opts.subcommand + ".json")).string() << ")\n";
  if (!error.empty()) log << "error: " << error << '\n';
  return pass ? kExitPass : kExitInvariant;
}

}  // namespace ctspec
