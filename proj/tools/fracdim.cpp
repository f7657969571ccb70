// Command-line front end: gl-solve, quantize, dim, approx, verify.
//
// Exit codes: 0 success, 1 property failure, 2 parse error, 3 invalid model,
// 4 unsupported mode, 5 insufficient data, 6 budget or resource limit.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdim/fracdim.hpp"

namespace {

using fracdim::json;

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kParse = 2,
  kInvalidModel = 3,
  kUnsupported = 4,
  kInsufficient = 5,
  kBudget = 6,
};

int exit_code_for(fracdim::ErrorKind kind) {
  using fracdim::ErrorKind;
  switch (kind) {
    case ErrorKind::parse: return kParse;
    case ErrorKind::invalid_input:
    case ErrorKind::precondition: return kInvalidModel;
    case ErrorKind::unsupported_order: return kUnsupported;
    case ErrorKind::insufficient_data: return kInsufficient;
    case ErrorKind::budget:
    case ErrorKind::resource: return kBudget;
    case ErrorKind::numerical_failure: return kPropertyFailure;
  }
  return kPropertyFailure;
}

struct RunConfig {
  std::uint64_t seed = 0xF12AC7;
  std::string out;
  std::string format = "json";
  int depth = 10;
  int trials = 200;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  fracdim::require(file.good(), fracdim::ErrorKind::parse, cfg.out + ": cannot open for writing");
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  fracdim::require(file.good(), fracdim::ErrorKind::parse, path + ": cannot open for writing");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json points_json(const fracdim::PointSet& e) {
  json rows = json::array();
  for (std::size_t i = 0; i < e.size(); ++i) rows.push_back(std::vector<double>(e[i].begin(), e[i].end()));
  return rows;
}

struct GridFlags {
  double r_min = 0.0;
  double r_max = 0.0;
  int levels = 10;
  double ratio_floor = 8.0;
  std::size_t center_cap = fracdim::kDefaultCenterCap;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r-min", r_min, "smallest scale (default: four mean spacings, within [r-max / 512, r-max / 8])");
    cmd->add_option("--r-max", r_max, "largest scale (default diameter / 4)");
    cmd->add_option("--levels", levels, "number of geometric scales")->capture_default_str();
    cmd->add_option("--ratio-floor", ratio_floor, "minimum R/r of a scale pair")->capture_default_str();
    cmd->add_option("--centers", center_cap, "center subsampling cap")->capture_default_str();
  }

  // Below the typical point spacing every ball is a singleton and the local
  // exponents collapse to 0, so the default floor tracks diam / N^(1/dim).
  fracdim::ScaleGrid grid(const fracdim::PointSet& support) const {
    const double diam = fracdim::diameter(support);
    fracdim::ScaleGrid g;
    g.r_max = r_max > 0.0 ? r_max : diam / 4.0;
    const double spacing =
        diam / std::pow(static_cast<double>(support.size()), 1.0 / static_cast<double>(support.dim()));
    g.r_min = r_min > 0.0 ? r_min : std::clamp(4.0 * spacing, g.r_max / 512.0, g.r_max / 8.0);
    g.levels = levels;
    g.ratio_floor = ratio_floor;
    return g;
  }
};

json estimate_json(const fracdim::DimensionEstimate& est) {
  const auto& w = est.argmin();
  return {{"method", est.method},
          {"value", est.value},
          {"grid", fracdim::to_json(est.grid)},
          {"witness_count", est.witnesses.size()},
          {"argmin", {{"center", w.center}, {"r", w.r}, {"R", w.R}, {"exponent", w.exponent}}},
          {"diagnostics", est.diagnostics}};
}

std::string witness_csv(const fracdim::DimensionEstimate& est) {
  std::ostringstream out;
  const std::size_t m = est.witnesses.front().center.size();
  for (std::size_t d = 0; d < m; ++d) out << "cx" << d + 1 << ',';
  out << "r,R,exponent\n";
  for (const auto& w : est.witnesses) {
    for (double c : w.center) out << fracdim::format_double(c) << ',';
    out << fracdim::format_double(w.r) << ',' << fracdim::format_double(w.R) << ','
        << fracdim::format_double(w.exponent) << '\n';
  }
  return out.str();
}

json quant_estimate_json(const fracdim::QuantDimEstimate& est, double r) {
  json raw = json::array();
  for (const auto& [n, v] : est.raw) raw.push_back({n, v});
  return {{"method", "quant"},
          {"r", r},
          {"value", est.value},
          {"lower_proxy", est.lower_proxy},
          {"upper_proxy", est.upper_proxy},
          {"window", {est.n_min, est.n_max}},
          {"points_used", est.points_used},
          {"raw", raw}};
}

json budget_json(const fracdim::EpsilonBudget& b) {
  return {{"net", b.net}, {"scale", b.scale}, {"depth", b.depth}, {"total", b.total()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracdim: lower and quantization dimensions of fractal sets and measures"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "root random seed")->capture_default_str();
  app.add_option("--out", cfg.out, "write the primary output here instead of stdout");
  app.add_option("--format", cfg.format, "primary output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--depth", cfg.depth, "IFS discretization / block sample depth")->capture_default_str();
  app.add_option("--trials", cfg.trials, "trials per verify property")->capture_default_str();

  // gl-solve
  auto* gl = app.add_subcommand("gl-solve", "solve the Graf-Luschgy equation for an IFS");
  std::string gl_file;
  std::vector<double> gl_p;
  std::vector<double> gl_c;
  double gl_r = 2.0;
  gl->add_option("ifs", gl_file, "IFS JSON file");
  gl->add_option("--p", gl_p, "probabilities (instead of a file)")->delimiter(',');
  gl->add_option("--c", gl_c, "ratios (instead of a file)")->delimiter(',');
  gl->add_option("-r,--r", gl_r, "quantization order")->capture_default_str();

  // quantize
  auto* quant = app.add_subcommand("quantize", "n-th quantization error of a measure");
  std::string q_file;
  int q_n = 1;
  double q_r = 2.0;
  bool q_lloyd = false;
  bool q_exact = false;
  int q_restarts = 16;
  quant->add_option("measure", q_file, "measure CSV (x1,...,xm,w)")->required();
  quant->add_option("-n,--n", q_n, "codebook size")->required();
  quant->add_option("-r,--r", q_r, "quantization order")->capture_default_str();
  auto* exact_flag = quant->add_flag("--exact", q_exact, "exact 1D dynamic program (default)");
  quant->add_flag("--lloyd", q_lloyd, "best of restarts Lloyd upper bound")->excludes(exact_flag);
  quant->add_option("--restarts", q_restarts, "Lloyd restarts")->capture_default_str();

  // dim
  auto* dim = app.add_subcommand("dim", "finite-scale dimension estimates");
  dim->require_subcommand(1);
  std::string dim_file;
  std::string dim_dump;
  GridFlags set_grid;
  GridFlags measure_grid;
  auto* lower_set = dim->add_subcommand("lower-set", "lower dimension of a point set");
  lower_set->add_option("points", dim_file, "point CSV")->required();
  lower_set->add_option("--dump", dim_dump, "write the witness CSV here");
  set_grid.attach(lower_set);
  auto* lower_measure = dim->add_subcommand("lower-measure", "lower dimension of a measure");
  lower_measure->add_option("measure", dim_file, "measure CSV")->required();
  lower_measure->add_option("--dump", dim_dump, "write the witness CSV here");
  measure_grid.attach(lower_measure);
  auto* quant_dim = dim->add_subcommand("quant", "quantization dimension of a measure");
  int qd_n_max = 32;
  double qd_r = 2.0;
  std::string qd_engine = "exact";
  int qd_fit_min = 0;
  int qd_fit_max = 0;
  int qd_restarts = 16;
  quant_dim->add_option("measure", dim_file, "measure CSV")->required();
  quant_dim->add_option("--n-max", qd_n_max, "largest codebook size")->capture_default_str();
  quant_dim->add_option("-r,--r", qd_r, "quantization order")->capture_default_str();
  quant_dim->add_option("--engine", qd_engine, "error engine")
      ->check(CLI::IsMember({"exact", "lloyd"}))
      ->capture_default_str();
  quant_dim->add_option("--fit-min", qd_fit_min, "first n of the fit window (default n-max / 2)");
  quant_dim->add_option("--fit-max", qd_fit_max, "last n of the fit window (default n-max)");
  quant_dim->add_option("--restarts", qd_restarts, "Lloyd restarts")->capture_default_str();
  quant_dim->add_option("--dump", dim_dump, "write the error curve CSV here");

  // approx
  auto* approx = app.add_subcommand("approx", "density constructions with certified dimensions");
  approx->require_subcommand(1);
  std::string ap_file;
  double ap_eps = 0.1;
  std::string ap_realized;
  std::string ap_symbolic;
  bool ap_no_verify = false;
  auto common = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("input", ap_file, what)->required();
    cmd->add_option("--eps", ap_eps, "approximation radius")->capture_default_str();
    cmd->add_option("--realized", ap_realized, "write the realization CSV here");
    cmd->add_flag("--no-verify", ap_no_verify, "skip the estimator cross-check");
  };
  auto* ap_set = approx->add_subcommand("set", "set with prescribed dimensions near a point set");
  double ap_gamma = 0.5;
  std::string ap_mode = "lower";
  common(ap_set, "point CSV (1D)");
  ap_set->add_option("--gamma", ap_gamma, "target lower dimension in [0, 1]")->capture_default_str();
  ap_set->add_option("--mode", ap_mode, "which dimensions to prescribe")
      ->check(CLI::IsMember({"lower", "split", "equal"}))
      ->capture_default_str();
  auto* ap_ml = approx->add_subcommand("measure-lower", "measure with prescribed lower dimension");
  double ap_beta = 0.5;
  common(ap_ml, "measure CSV");
  ap_ml->add_option("--beta", ap_beta, "target lower dimension in [0, m]")->capture_default_str();
  ap_ml->add_option("--symbolic", ap_symbolic, "write the symbolic measure JSON here");
  auto* ap_mq = approx->add_subcommand("measure-quant", "measure with prescribed quantization dimension");
  double ap_alpha = 0.5;
  double ap_r = 2.0;
  common(ap_mq, "measure CSV");
  ap_mq->add_option("--alpha", ap_alpha, "target quantization dimension in [0, m]")->capture_default_str();
  ap_mq->add_option("-r,--r", ap_r, "quantization order")->capture_default_str();
  ap_mq->add_option("--symbolic", ap_symbolic, "write the symbolic measure JSON here");

  // verify
  auto* verify = app.add_subcommand("verify", "randomized property suites");
  std::string v_suite = "all";
  verify->add_option("suite", v_suite, "all | convolution | sum | scaling | domination | product")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*gl) {
      fracdim::GLSolution sol;
      if (!gl_file.empty()) {
        sol = fracdim::solve_graf_luschgy(fracdim::read_ifs_json(gl_file), gl_r);
      } else {
        fracdim::require(!gl_p.empty(), fracdim::ErrorKind::parse, "gl-solve: give an IFS file or --p/--c");
        sol = fracdim::solve_graf_luschgy(gl_p, gl_c, gl_r);
      }
      if (cfg.format == "csv")
        emit(cfg, "D,residual,x\n" + fracdim::format_double(sol.value) + "," +
                      fracdim::format_double(sol.residual) + "," + fracdim::format_double(sol.x) + "\n");
      else
        emit(cfg, dump(fracdim::to_json(sol)));
      return kOk;
    }

    if (*quant) {
      const auto mu = fracdim::read_measure_csv(q_file);
      const auto result = q_lloyd ? fracdim::quant_error_lloyd(mu, q_n, q_r, q_restarts, cfg.seed)
                                  : fracdim::quant_error_exact_1d(mu, q_n, q_r);
      if (cfg.format == "csv") {
        std::ostringstream out;
        fracdim::write_point_set_csv(out, result.centers);
        emit(cfg, out.str());
      } else {
        emit(cfg, dump({{"n", result.n},
                        {"r", result.r},
                        {"V", result.error},
                        {"exact", result.exact},
                        {"centers", points_json(result.centers)}}));
      }
      return kOk;
    }

    if (*dim) {
      if (*lower_set || *lower_measure) {
        fracdim::DimensionEstimate est;
        if (*lower_set) {
          const auto e = fracdim::read_point_set_csv(dim_file);
          est = fracdim::estimate_lower_dim_set(e, set_grid.grid(e), set_grid.center_cap);
        } else {
          const auto mu = fracdim::read_measure_csv(dim_file);
          est = fracdim::estimate_lower_dim_measure(mu, measure_grid.grid(mu.support()),
                                                    measure_grid.center_cap);
        }
        if (!dim_dump.empty()) write_file(dim_dump, witness_csv(est));
        emit(cfg, cfg.format == "csv" ? witness_csv(est) : dump(estimate_json(est)));
        return kOk;
      }
      const auto mu = fracdim::read_measure_csv(dim_file);
      const auto engine = qd_engine == "lloyd" ? fracdim::QuantEngine::lloyd : fracdim::QuantEngine::exact1d;
      const auto curve = fracdim::error_curve(mu, qd_n_max, qd_r, engine, {qd_restarts, cfg.seed});
      std::ostringstream curve_csv;
      fracdim::write_curve_csv(curve_csv, curve);
      if (!dim_dump.empty()) write_file(dim_dump, curve_csv.str());
      const auto est = fracdim::estimate_quant_dim(curve, {qd_fit_min, qd_fit_max});
      emit(cfg, cfg.format == "csv" ? curve_csv.str() : dump(quant_estimate_json(est, qd_r)));
      return kOk;
    }

    if (*approx) {
      json report;
      std::string realized_csv;
      if (*ap_set) {
        const auto a = fracdim::read_point_set_csv(ap_file);
        fracdim::SetApproximation res = [&] {
          if (ap_mode == "split") return fracdim::approximate_set_split_dims(a, ap_eps, cfg.depth);
          if (ap_mode == "equal") return fracdim::approximate_set_equal_dims(a, ap_eps, ap_gamma, cfg.depth);
          return fracdim::approximate_set_lower_dim(a, ap_eps, ap_gamma, cfg.depth);
        }();
        std::ostringstream out;
        fracdim::write_point_set_csv(out, res.realized);
        realized_csv = out.str();
        report = {{"mode", ap_mode},
                  {"eps", ap_eps},
                  {"anchors", res.anchors.size()},
                  {"block", {{"kind", fracdim::to_string(res.block.kind)},
                             {"ratio", res.block.ratio},
                             {"depth", res.block.depth},
                             {"diameter", res.block.diameter}}},
                  {"realized_points", res.realized.size()},
                  {"certified_lower_dim", res.certified_lower_dim},
                  {"certified_hausdorff_dim",
                   res.certified_hausdorff_dim ? json(*res.certified_hausdorff_dim) : json(nullptr)},
                  {"certificate", res.certificate},
                  {"hausdorff_check", res.hausdorff_check},
                  {"block_gap", res.block_gap}};
        if (!ap_no_verify && res.block.kind != fracdim::Block::Kind::point && ap_mode != "split" &&
            cfg.depth >= 5) {
          // scales inside one block, one level apart
          const double shrink = res.block.kind == fracdim::Block::Kind::cantor ? res.block.ratio : 0.5;
          fracdim::ScaleGrid g{res.block.diameter * std::pow(shrink, cfg.depth - 1),
                               res.block.diameter * shrink, cfg.depth - 1, 8.0};
          report["estimate"] = estimate_json(fracdim::estimate_lower_dim_set(res.realized, g));
        }
      } else {
        const auto mu = fracdim::read_measure_csv(ap_file);
        const bool lower = static_cast<bool>(*ap_ml);
        const auto res = lower ? fracdim::approximate_measure_lower_dim(mu, ap_eps, ap_beta, cfg.depth)
                               : fracdim::approximate_measure_quant_dim(mu, ap_eps, ap_alpha, ap_r, cfg.depth);
        std::ostringstream out;
        fracdim::write_measure_csv(out, res.realized);
        realized_csv = out.str();
        if (!ap_symbolic.empty()) write_file(ap_symbolic, dump(fracdim::to_json(res.symbolic)));
        report = {{"mode", lower ? "measure-lower" : "measure-quant"},
                  {"eps", ap_eps},
                  {"depth", res.depth},
                  {"factor", res.factor},
                  {"net_atoms", res.theta.size()},
                  {"realized_atoms", res.realized.size()},
                  {"budget", budget_json(res.budget)},
                  {"certified", fracdim::to_json(res.certified)},
                  {"kantorovich_check",
                   res.kantorovich_check ? json(*res.kantorovich_check) : json(nullptr)},
                  {"symbolic", fracdim::to_json(res.symbolic)}};
        if (!ap_no_verify && !lower && mu.dim() == 1 && res.realized.size() <= 8192 && res.factor > 0.0) {
          const auto curve = fracdim::error_curve(res.realized, 32, ap_r, fracdim::QuantEngine::exact1d);
          try {
            report["estimate"] = quant_estimate_json(fracdim::estimate_quant_dim(curve), ap_r);
          } catch (const fracdim::Error& e) {
            report["estimate"] = {{"error", e.what()}};
          }
        }
      }
      if (!ap_realized.empty()) write_file(ap_realized, realized_csv);
      emit(cfg, cfg.format == "csv" ? realized_csv : dump(report));
      return kOk;
    }

    if (*verify) {
      const auto report = fracdim::run_verify(v_suite, cfg.seed, cfg.trials);
      emit(cfg, dump(fracdim::to_json(report)));
      return report.all_passed() ? kOk : kPropertyFailure;
    }
  } catch (const fracdim::Error& e) {
    std::cerr << "fracdim: " << fracdim::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "fracdim: " << e.what() << '\n';
    return kPropertyFailure;
  }
  return kOk;
}
