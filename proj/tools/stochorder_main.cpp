// stochorder: exact distributions, stochastic-order verdicts, hazard bounds
// and Monte Carlo cross-checks for parallel systems of heterogeneous
// components. See README.md for the file formats.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochorder/bounds.hpp"
#include "stochorder/dists.hpp"
#include "stochorder/identities.hpp"
#include "stochorder/json_io.hpp"
#include "stochorder/mcsim.hpp"
#include "stochorder/ordercheck.hpp"
#include "stochorder/preorders.hpp"
#include "stochorder/rng.hpp"
#include "stochorder/version.hpp"

namespace {

using namespace stochorder;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitOrderFails = 3;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("STOCHORDER_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw CLI::ValidationError("STOCHORDER_SEED must be an unsigned integer");
    }
  }
  return 0;
}

EvalGrid parse_grid(const std::string& text) {
  if (text.empty()) return EvalGrid::default_grid();
  double lo, hi;
  std::size_t n;
  char c1, c2;
  std::istringstream is(text);
  if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--grid expects lo:hi:points, e.g. 1e-3:20:2000");
  return EvalGrid::log_spaced(lo, hi, n);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
  return out;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> args, std::uint64_t seed)
      : command_(std::move(command)), args_(std::move(args)), seed_(seed),
        start_(std::chrono::steady_clock::now()) {}

  void add_output(const std::string& path) { outputs_.push_back(path); }

  void write() const {
    ordered_json j;
    j["command"] = command_;
    j["arguments"] = args_;
    j["seed"] = seed_;
    j["version"] = kVersion;
    const auto wall = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start_);
    j["wall_ms"] = wall.count();
    j["outputs"] = ordered_json::array();
    for (const auto& p : outputs_) {
      char digest[32];
      std::snprintf(digest, sizeof digest, "%016llx",
                    static_cast<unsigned long long>(fnv1a64_file(p)));
      j["outputs"].push_back({{"path", p}, {"fnv1a64", digest}});
    }
    const std::string path =
        outputs_.empty() ? "stochorder-manifest.json" : outputs_.front() + ".manifest.json";
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& order, const EvalGrid& grid, RunManifest& man) {
  const ParallelSystem a = load_system_file(a_path);
  const ParallelSystem b = load_system_file(b_path);
  const OrderVerdict v = order == "hr" ? check_hr(a, b, grid) : check_st(a, b, grid);
  man.write();
  if (v.holds) {
    std::printf("%s order holds (margin %.3g)\n", order.c_str(), v.margin);
    return kExitOk;
  }
  std::printf("%s order fails at x = %.17g (margin %.3g)\n", order.c_str(),
              *v.witness_x, v.margin);
  return kExitOrderFails;
}

int cmd_bounds(const std::string& sys_path, const std::string& out_path,
               const EvalGrid& grid, RunManifest& man) {
  const ParallelSystem s = load_system_file(sys_path);
  const BoundCurve curve = hazard_bound_curve(s, grid);
  if (!curve.supported_regime)
    std::fprintf(stderr,
                 "warning: unsupported regime for this family; the bound is "
                 "reported but not guaranteed\n");
  std::ostringstream os;
  curve.write_csv(os);
  write_file(out_path, os.str());
  man.add_output(out_path);
  man.write();
  std::printf("wrote %s (%zu points)%s\n", out_path.c_str(), grid.size(),
              curve.supported_regime ? "" : " [unsupported regime]");
  return kExitOk;
}

ordered_json violation_json(const std::optional<AssumptionViolation>& v) {
  if (!v) return nullptr;
  ordered_json j;
  j["which"] = std::string(1, v->which);
  j["x"] = v->x;
  j["magnitude"] = v->magnitude;
  return j;
}

int cmd_verify(const BaselineFamily& fam, const std::string& out_path,
               std::uint64_t seed, RunManifest& man) {
  ordered_json rep;
  if (fam.is_pgw()) {
    rep["family"] = "pgw";
    rep["p"] = fam.shape1();
    rep["q"] = fam.shape2();
  } else {
    rep["family"] = "gg";
    rep["alpha"] = fam.shape1();
    rep["beta"] = fam.shape2();
  }

  const AssumptionReport audit = check_assumptions(fam);
  rep["assumptions"] = {{"assumption_a", audit.assumption_a},
                        {"assumption_b", audit.assumption_b},
                        {"assumption_c", audit.assumption_c},
                        {"first_violation", violation_json(audit.first_violation)}};

  double e4_max = 0.0, e6_max = 0.0;
  for (double y = 0.01; y <= 10.0; y *= 1.25) {
    e4_max = std::max(e4_max, xrh_integral_identity_residual(fam, y));
    e6_max = std::max(e6_max, xrh_derivative_identity_residual(fam, y));
  }
  rep["identities"] = {{"xrh_integral_max_residual", e4_max},
                       {"xrh_derivative_max_residual", e6_max},
                       {"sweep_seed", seed}};

  // margin sweeps rest on the audited conditions; refuse them out of regime
  if (in_validated_regime(fam)) {
    const CounterRng rng(seed);
    double e7_min = std::numeric_limits<double>::infinity();
    double gm_min_rel = std::numeric_limits<double>::infinity();
    bool schur_ok = true;
    for (int t = 0; t < 500; ++t) {
      const CounterRng r = rng.split(t);
      const int n = 1 + static_cast<int>(r.bits(0) % 5);
      std::vector<double> ys(n), as(n);
      for (int i = 0; i < n; ++i) {
        ys[i] = r.log_uniform(10 + 2 * i, 0.01, 10.0);
        as[i] = r.uniform_range(11 + 2 * i, 1.0, 3.0);
      }
      e7_min = std::min(e7_min, weighted_sum_inequality_margin(fam, ys, as));
      const GeometricMeanExtremum g = gm_extremum_margin(fam, as, ys);
      gm_min_rel = std::min(gm_min_rel, g.margin / std::max(g.psi_at_gm, 1e-300));
      if (n >= 2)
        schur_ok = schur_ok &&
                   check_two_block_schur_condition(fam, ys[0], ys[1], 1, n);
    }
    rep["identities"]["weighted_sum_min_margin"] = e7_min;
    rep["identities"]["gm_extremum_min_rel_margin"] = gm_min_rel;
    rep["identities"]["two_block_schur_all_satisfied"] = schur_ok;
  } else {
    rep["identities"]["margin_sweeps"] = "refused: assumptions not validated";
  }
  if (fam.is_pgw() && fam.shape2() <= 1.0) {
    double aux_min = std::numeric_limits<double>::infinity();
    for (double x = 1.0; x <= 50.0; x *= 1.05)
      aux_min = std::min(aux_min, pgw_monotonicity_auxiliary(x, fam.shape2()));
    rep["identities"]["pgw_auxiliary_min"] = aux_min;
  }

  const std::string text = rep.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(out_path, text);
    man.add_output(out_path);
  }
  man.write();
  return kExitOk;
}

int cmd_order(const std::string& check, const std::string& mean,
              const std::vector<double>& x, const std::vector<double>& y,
              const std::vector<double>& weights, RunManifest& man) {
  man.write();
  if (!mean.empty()) {
    const ParamVector v = weights.empty() ? ParamVector(x) : ParamVector(x, weights);
    const double m = mean == "gm" ? weighted_geometric_mean(v) : arithmetic_mean(v);
    std::printf("%.17g\n", m);
    return kExitOk;
  }
  const bool holds = check == "majorize" ? majorizes(ParamVector(x), ParamVector(y))
                                         : p_larger(ParamVector(x), ParamVector(y));
  std::printf("%s: %s\n", check.c_str(), holds ? "holds" : "fails");
  return holds ? kExitOk : kExitOrderFails;
}

int cmd_simulate(const std::string& cfg_path, const std::string& out_path,
                 int threads_override, RunManifest& man) {
  SimConfig cfg = load_sim_config_file(cfg_path);
  if (threads_override > 0) cfg.threads = threads_override;
  if (cfg.n_samples < 1000)
    std::fprintf(stderr, "warning: n_samples < 1000 is below acceptance grade\n");
  const EmpiricalResult r = empirical_survival(cfg);
  std::ostringstream os;
  r.curve.write_csv(os);
  write_file(out_path, os.str());
  man.add_output(out_path);
  man.write();
  std::printf("sup gap empirical vs analytic: %.6g\n", r.sup_gap);
  return kExitOk;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir,
                  RunManifest& man) {
  if (name == "example-4.1") {
    const auto r = example41_ratios();
    std::printf("survival ratio at x=0.8: %.6f\n", r[0]);
    std::printf("survival ratio at x=1.0: %.6f\n", r[1]);
    std::printf("survival ratio at x=1.9: %.6f\n", r[2]);
    const bool nonmono = r[1] > r[0] && r[2] < r[1];
    std::printf("ratio rises then falls: %s -> no hazard-rate comparison\n",
                nonmono ? "yes" : "no");
    const BaselineFamily fam = BaselineFamily::pgw(2.0, 1.0);
    const ParallelSystem x_sys{{ComponentSpec(fam, 0.1), ComponentSpec(fam, 1.0),
                                ComponentSpec(fam, 9.0)}};
    const ParallelSystem y_sys{{ComponentSpec(fam, 0.1), ComponentSpec(fam, 4.0),
                                ComponentSpec(fam, 6.0)}};
    const OrderVerdict hr = check_hr(x_sys, y_sys, EvalGrid::log_spaced(0.01, 20.0, 2000));
    std::printf("hr verdict: %s (witness x = %.6g)\n",
                hr.holds ? "holds" : "fails", hr.witness_x.value_or(0.0));
    man.write();
    return kExitOk;
  }
  if (name == "example-3.1") {
    const std::vector<double> lambdas{1.5, 2.0, 3.5};
    const ParamVector pv(lambdas);
    const double gm = weighted_geometric_mean(pv);
    const double am = arithmetic_mean(pv);
    std::printf("arithmetic mean: %.4f, geometric mean: %.4f\n", am, gm);
    const EvalGrid grid = EvalGrid::log_spaced(0.05, 10.0, 500);
    for (auto [p, q] : {std::pair{1.5, 0.8}, std::pair{0.8, 0.4}}) {
      const BaselineFamily fam = BaselineFamily::pgw(p, q);
      std::vector<ComponentSpec> comps;
      for (double l : lambdas) comps.emplace_back(fam, l);
      const ParallelSystem s{std::move(comps)};
      char fname[128];
      std::snprintf(fname, sizeof fname, "%s/hazard_p%g_q%g.csv", out_dir.c_str(),
                    p, q);
      std::ostringstream os;
      os << "x,actual,gm_bound,am_bound\n";
      char line[160];
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", x,
                      system_hazard(s, x), pgw_hazard_bound(3.0, gm, p, q, x),
                      pgw_hazard_bound(3.0, am, p, q, x));
        os << line;
      }
      write_file(fname, os.str());
      man.add_output(fname);
      std::printf("wrote %s\n", fname);
    }
    man.write();
    return kExitOk;
  }
  throw CLI::ValidationError("unknown reproduction name: " + name +
                             " (expected example-4.1 or example-3.1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic-order toolkit for parallel systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  auto* seed_opt =
      app.add_option("--seed", seed, "seed for randomized sweeps and simulation");
  app.add_option("--threads", threads, "worker thread cap for parallel stages");

  std::string grid_text;
  std::string sys_a, sys_b, order_kind{"hr"};
  auto* compare = app.add_subcommand("compare", "order verdict between two systems");
  compare->add_option("--sys-a", sys_a, "system JSON")->required();
  compare->add_option("--sys-b", sys_b, "system JSON")->required();
  compare->add_option("--order", order_kind, "hr or st")
      ->check(CLI::IsMember({"hr", "st"}));
  compare->add_option("--grid", grid_text, "lo:hi:points (log-spaced)");

  std::string bounds_sys, bounds_out{"bounds.csv"};
  auto* bounds = app.add_subcommand("bounds", "hazard bound curve for a system");
  bounds->add_option("--system", bounds_sys, "system JSON")->required();
  bounds->add_option("--out", bounds_out, "output CSV path");
  bounds->add_option("--grid", grid_text, "lo:hi:points (log-spaced)");

  std::string vf_family, vf_out;
  double vf_p = 0, vf_q = 0, vf_alpha = 0, vf_beta = 0;
  auto* verify = app.add_subcommand("verify", "assumption audit and identity residuals");
  verify->add_option("--family", vf_family, "pgw or gg")
      ->required()
      ->check(CLI::IsMember({"pgw", "gg"}));
  verify->add_option("--p", vf_p, "pgw shape p");
  verify->add_option("--q", vf_q, "pgw shape q");
  verify->add_option("--alpha", vf_alpha, "gg shape alpha");
  verify->add_option("--beta", vf_beta, "gg shape beta");
  std::string vf_report{"json"};
  verify->add_option("--report", vf_report, "report format (json)")
      ->check(CLI::IsMember({"json"}));
  verify->add_option("--out", vf_out, "write the JSON report here (default stdout)");

  std::string ord_check, ord_mean, ord_x, ord_y, ord_w;
  auto* order = app.add_subcommand("order", "vector preorder checks and means");
  order->add_option("--check", ord_check, "majorize or p-larger")
      ->check(CLI::IsMember({"majorize", "p-larger"}));
  order->add_option("--mean", ord_mean, "gm or am")
      ->check(CLI::IsMember({"gm", "am"}));
  order->add_option("--x", ord_x, "comma-separated values")->required();
  order->add_option("--y", ord_y, "comma-separated values (for --check)");
  order->add_option("--weights", ord_w, "comma-separated weights (for --mean)");

  std::string sim_cfg, sim_out{"empirical.csv"};
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo empirical survival");
  simulate->add_option("--config", sim_cfg, "SimConfig JSON")->required();
  simulate->add_option("--out", sim_out, "output CSV path");

  std::string rep_name, rep_dir{"."};
  auto* reproduce = app.add_subcommand("reproduce", "named reproduction scenarios");
  reproduce->add_option("name", rep_name, "example-4.1 or example-3.1")->required();
  reproduce->add_option("--out-dir", rep_dir, "directory for emitted CSV files");

  std::vector<std::string> raw_args(argv + 1, argv + argc);

  try {
    app.parse(argc, argv);
    if (!seed_opt->count()) seed = env_seed();

    if (*compare) {
      RunManifest man("compare", raw_args, seed);
      return cmd_compare(sys_a, sys_b, order_kind, parse_grid(grid_text), man);
    }
    if (*bounds) {
      RunManifest man("bounds", raw_args, seed);
      return cmd_bounds(bounds_sys, bounds_out, parse_grid(grid_text), man);
    }
    if (*verify) {
      const BaselineFamily fam = vf_family == "pgw"
                                     ? BaselineFamily::pgw(vf_p, vf_q)
                                     : BaselineFamily::gg(vf_alpha, vf_beta);
      RunManifest man("verify", raw_args, seed);
      return cmd_verify(fam, vf_out, seed, man);
    }
    if (*order) {
      if (ord_mean.empty() == ord_check.empty())
        throw CLI::ValidationError("order: give exactly one of --check / --mean");
      if (!ord_check.empty() && ord_y.empty())
        throw CLI::ValidationError("order --check needs --y");
      RunManifest man("order", raw_args, seed);
      return cmd_order(ord_check, ord_mean, parse_list(ord_x),
                       ord_y.empty() ? std::vector<double>{} : parse_list(ord_y),
                       ord_w.empty() ? std::vector<double>{} : parse_list(ord_w),
                       man);
    }
    if (*simulate) {
      RunManifest man("simulate", raw_args, seed);
      return cmd_simulate(sim_cfg, sim_out, threads, man);
    }
    if (*reproduce) {
      RunManifest man("reproduce", raw_args, seed);
      return cmd_reproduce(rep_name, rep_dir, man);
    }
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
