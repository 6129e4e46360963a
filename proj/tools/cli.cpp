#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "confball/bounds.hpp"
#include "confball/distributions.hpp"
#include "confball/errors.hpp"
#include "confball/io.hpp"
#include "confball/models.hpp"
#include "confball/procedure.hpp"
#include "confball/sim.hpp"
#include "confball/varselect.hpp"
#include "json.hpp"

namespace confball::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> sigma2;
  std::optional<double> tau2;
  std::optional<double> eta;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<std::string> format;
  std::optional<int> threads;

  std::string family;
  std::string data;
  std::string design;
  std::string center_out;
  std::string preset;
  std::string function;
  std::string summary;
  std::string log;
  std::string figure_data;
  int replicates = 100;
  int max_size = 2;
  int n = 1000;
  int K = 8;
  std::optional<double> true_sigma2;

  bool dist = false;
  std::vector<double> z_grid{0, 1, 10, 100, 1000};
  std::vector<int> d_grid{1, 2, 5, 100, 995};
  std::vector<double> u_grid{1e-4, 1e-2, 0.05, 0.2, 0.5};
};

constexpr const char* kRadiiHelp =
    "Radius of each model at level beta_m:\n"
    "  psi(z)  = P(chi2(N, z) <= q_{0,N}(alpha)),  N = n - D\n"
    "  zbar    : psi(zbar) = beta_m\n"
    "  rho^2   = sigma^2 sup_{0<=z<=zbar} [ z + q_{0,D}(beta_m / psi(z)) ]\n"
    "  full model: rho^2 = q_{0,n}(beta_n) sigma^2\n"
    "Unknown variance in [(1-eta) tau^2, tau^2]: the supremum also runs over\n"
    "sigma^2 in that interval with the test threshold scaled by tau^2 / sigma^2.";

constexpr const char* kBallHelp =
    "Accepted set  A = { m : |Y - P_m Y|^2 <= q_{0,N_m}(alpha) tau^2 }\n"
    "Selection     mhat = argmin_{m in A} rho_m^2\n"
    "Ball          B(P_mhat Y, rho_mhat), coverage >= 1 - beta";

constexpr const char* kSelectHelp =
    "All column subsets m with |m| <= max-size, beta_m = beta / (n C(n, |m|)),\n"
    "plus R^n at beta/2. Bound: rho^2 with log(1/beta_m) replaced by\n"
    "log(n/beta) + |m| (1 + log(n/|m|)).";

constexpr const char* kSimulateHelp =
    "Fourier family S_{2^k}, k = 1..K, plus R^n, beta_{2^k} = beta 2^-k, beta_n = beta 2^-K.\n"
    "y_i = F(i/n) + sigma eps_i with F1 = cos(2 pi x), F2 = F1 + 0.3 sin(20 pi x),\n"
    "F3 = 1.5 1(0,.3) + 0.5 1(.3,.6) + 2 1(.6,.8). Counts give the first accepted model.";

constexpr const char* kCoverageHelp =
    "Monte Carlo estimate of P(|f - fhat|^2 <= rhohat^2) with\n"
    "ci_low = phat - 2.58 sqrt(phat (1 - phat) / R).";

constexpr const char* kBoundsHelp =
    "Upper: rho^2 <= [D + 2 sqrt(D L_m) + 2 L_m + sqrt(N)(...) + eta N] tau^2 (C(alpha, beta_m) constants)\n"
    "Lower: any level-beta ball has radius >= max of the applicable minimax branches.\n"
    "--dist: q = chi2 quantile with the envelopes\n"
    "  z + d - 2 sqrt((d + 2z) log(1/u)) <= q_{z,d}(u)        (u <= 1/2)\n"
    "  q_{z,d}(1-u) <= z + d + 2 sqrt((d + 2z) log(1/u)) + 2 log(1/u)";

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.alpha, "Test level alpha in (0,1)");
  sub->add_option("--beta", cfg.beta, "Non-coverage level beta in (0,1)");
  auto* s2 = sub->add_option("--sigma2", cfg.sigma2, "Known noise variance");
  auto* t2 = sub->add_option("--tau2", cfg.tau2, "Upper end of the variance interval");
  auto* et = sub->add_option("--eta", cfg.eta, "Relative width of the variance interval, [0,1)");
  s2->excludes(t2)->excludes(et);
  t2->needs(et);
  et->needs(t2);
  sub->add_option("--seed", cfg.seed, "Master RNG seed");
  sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
  sub->add_option("--format", cfg.format, "csv or json (default depends on the command)")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", cfg.threads, "Thread cap (overrides CONFBALL_THREADS)")
      ->check(CLI::PositiveNumber);
}

void check_levels(const RunConfig& cfg, double alpha, std::optional<double> beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (beta) {
    if (!(*beta > 0.0 && *beta < 1.0)) throw UsageError("--beta must lie in (0, 1)");
    if (!(alpha + *beta < 1.0)) throw UsageError("--alpha + --beta must be < 1");
  }
  if (cfg.eta && !(*cfg.eta >= 0.0 && *cfg.eta < 1.0)) throw UsageError("--eta must lie in [0, 1)");
  if (cfg.tau2 && !(*cfg.tau2 > 0.0)) throw UsageError("--tau2 must be > 0");
  if (cfg.sigma2 && !(*cfg.sigma2 > 0.0)) throw UsageError("--sigma2 must be > 0");
}

VarianceSpec variance_of(const RunConfig& cfg, bool required) {
  if (cfg.sigma2) return VarianceSpec::known(*cfg.sigma2);
  if (cfg.tau2) return VarianceSpec::interval(*cfg.tau2, cfg.eta.value_or(0.0));
  if (required) throw UsageError("one of --sigma2 or --tau2/--eta is required");
  return VarianceSpec::known(1.0);
}

Exec configure_threads(const RunConfig& cfg) {
  int threads = 0;
  if (cfg.threads) {
    threads = *cfg.threads;
  } else if (const char* env = std::getenv("CONFBALL_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) throw UsageError("CONFBALL_THREADS must be a positive integer");
    threads = static_cast<int>(v);
  }
  if (threads > 0) omp_set_num_threads(threads);
  const int effective = threads > 0 ? threads : omp_get_max_threads();
  return effective > 1 ? Exec::parallel : Exec::serial;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

FamilyConfig family_from(const RunConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("--family is required");
  return load_family_config(cfg.family, cfg.beta);
}

double resolve_alpha(const RunConfig& cfg, const FamilyConfig& fam) {
  if (cfg.alpha) return *cfg.alpha;
  if (fam.alpha) return *fam.alpha;
  throw UsageError("--alpha is required (not set in the family config either)");
}

// radii ---------------------------------------------------------------------

int cmd_radii(const RunConfig& cfg) {
  const std::string format = cfg.format.value_or("csv");
  const FamilyConfig fam = family_from(cfg);
  const double alpha = resolve_alpha(cfg, fam);
  check_levels(cfg, alpha, fam.beta);
  const VarianceSpec variance = variance_of(cfg, true);
  const Exec exec = configure_threads(cfg);
  const ConfidenceProcedure proc(fam.family, alpha, variance, exec);
  const ModelFamily& family = proc.family();
  const double n = family.n();

  if (format == "json") {
    json models = json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto& m = family[i];
      models.push_back({{"model_id", m.id()},
                        {"D", m.dim()},
                        {"N", m.resid()},
                        {"beta_m", round_sig(m.beta_m())},
                        {"rho_sq", round_sig(proc.radii_sq()[i])},
                        {"rho_sq_over_n", round_sig(proc.radii_sq()[i] / n)}});
    }
    write_text(cfg.out, dump({{"alpha", alpha},
                              {"beta", fam.beta},
                              {"n", family.n()},
                              {"variance", variance.describe()},
                              {"models", models}}));
    return kExitOk;
  }
  std::ostringstream os;
  os << "model_id,D,N,beta_m,rho_sq,rho_sq_over_n\n";
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family[i];
    os << m.id() << ',' << m.dim() << ',' << m.resid() << ',' << format_sig(m.beta_m()) << ','
       << format_sig(proc.radii_sq()[i]) << ',' << format_sig(proc.radii_sq()[i] / n) << '\n';
  }
  write_text(cfg.out, os.str());
  return kExitOk;
}

// ball ----------------------------------------------------------------------

int cmd_ball(const RunConfig& cfg) {
  const std::string format = cfg.format.value_or("json");
  if (cfg.data.empty()) throw UsageError("--data is required");
  const FamilyConfig fam = family_from(cfg);
  const double alpha = resolve_alpha(cfg, fam);
  check_levels(cfg, alpha, fam.beta);
  const VarianceSpec variance = variance_of(cfg, true);
  const Exec exec = configure_threads(cfg);
  const Eigen::VectorXd y = load_vector_csv(cfg.data);
  const ConfidenceProcedure proc(fam.family, alpha, variance, exec);
  const auto outcomes = proc.run_tests(y);
  const ConfidenceBall ball = proc.build_ball(y);

  if (!cfg.center_out.empty()) {
    std::ostringstream c;
    c << "center\n";
    for (Eigen::Index i = 0; i < ball.center.size(); ++i) c << format_exact(ball.center[i]) << '\n';
    write_text(cfg.center_out, c.str());
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "model_id,D,beta_m,statistic,threshold,accepted,rho_sq,selected\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& s = ball.per_model[i];
      os << s.model_id << ',' << s.dim << ',' << format_sig(s.beta_m) << ','
         << format_sig(outcomes[i].statistic) << ',' << format_sig(outcomes[i].threshold) << ','
         << (s.accepted ? 1 : 0) << ',' << format_sig(s.rho_sq) << ','
         << (i == ball.selected_index ? 1 : 0) << '\n';
    }
    write_text(cfg.out, os.str());
    return kExitOk;
  }
  json per_model = json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& s = ball.per_model[i];
    per_model.push_back({{"model_id", s.model_id},
                         {"D", s.dim},
                         {"beta_m", round_sig(s.beta_m)},
                         {"statistic", round_sig(outcomes[i].statistic)},
                         {"threshold", round_sig(outcomes[i].threshold)},
                         {"accepted", s.accepted},
                         {"rho_sq", round_sig(s.rho_sq)}});
  }
  write_text(cfg.out, dump({{"selected", ball.selected},
                            {"radius_sq", round_sig(ball.radius_sq)},
                            {"coverage", ball.nominal_coverage},
                            {"center_csv_path", cfg.center_out.empty() ? json(nullptr) : json(cfg.center_out)},
                            {"per_model", per_model}}));
  return kExitOk;
}

// select --------------------------------------------------------------------

int cmd_select(const RunConfig& cfg) {
  const std::string format = cfg.format.value_or("json");
  if (cfg.data.empty()) throw UsageError("--data is required");
  if (cfg.design.empty()) throw UsageError("--design is required");
  if (!cfg.alpha) throw UsageError("--alpha is required");
  if (!cfg.beta) throw UsageError("--beta is required");
  if (cfg.max_size < 1) throw UsageError("--max-size must be >= 1");
  check_levels(cfg, *cfg.alpha, cfg.beta);
  const VarianceSpec variance = variance_of(cfg, true);
  const Exec exec = configure_threads(cfg);
  const Eigen::VectorXd y = load_vector_csv(cfg.data);
  const DesignMatrix x(load_matrix_csv(cfg.design));
  if (y.size() != x.rows()) {
    throw DimensionError("data has " + std::to_string(y.size()) + " rows, design has " + std::to_string(x.rows()));
  }
  const VariableSelection sel = select_variables(y, x, *cfg.alpha, *cfg.beta, variance, cfg.max_size, exec);

  std::map<int, std::pair<int, int>> by_size;  // size -> (models, accepted)
  for (const auto& s : sel.ball.per_model) {
    auto& e = by_size[s.dim];
    e.first += 1;
    e.second += s.accepted ? 1 : 0;
  }
  json counts = json::array();
  for (const auto& [size, e] : by_size) counts.push_back({{"size", size}, {"models", e.first}, {"accepted", e.second}});
  const json bound = sel.full_model ? json(nullptr)
                                    : json(round_sig(selection_radius_bound(x.rows(), static_cast<int>(sel.columns.size()),
                                                                             *cfg.alpha, *cfg.beta, variance)));
  const json report{{"selected_columns", sel.columns},
                    {"full_model", sel.full_model},
                    {"radius_sq", round_sig(sel.ball.radius_sq)},
                    {"bound", bound},
                    {"per_size_counts", counts}};
  if (format == "csv") {
    std::ostringstream os;
    os << "size,models,accepted\n";
    for (const auto& [size, e] : by_size) os << size << ',' << e.first << ',' << e.second << '\n';
    write_text(cfg.out, os.str());
    if (!cfg.summary.empty()) write_text(cfg.summary, dump(report));
    return kExitOk;
  }
  write_text(cfg.out, dump(report));
  return kExitOk;
}

// simulate ------------------------------------------------------------------

SimulationConfig sim_config(const RunConfig& cfg) {
  SimulationConfig sc;
  sc.n = cfg.n;
  sc.K = cfg.K;
  if (cfg.alpha) sc.alpha = *cfg.alpha;
  if (cfg.beta) sc.beta = *cfg.beta;
  sc.sigma = std::sqrt(cfg.sigma2.value_or(1.0));
  sc.replicates = cfg.replicates;
  sc.seed = cfg.seed;
  check_levels(cfg, sc.alpha, sc.beta);
  if (sc.replicates < 1) throw UsageError("--replicates must be >= 1");
  if (sc.n < 2) throw UsageError("--n must be >= 2");
  if (sc.K < 1) throw UsageError("--K must be >= 1");
  return sc;
}

std::string figure_csv(const SimulationConfig& sc) {
  std::ostringstream os;
  os << "function,x,f,y\n";
  for (auto fn : sc.functions) {
    const Eigen::MatrixXd d = figure_data(fn, sc.n, sc.sigma, sc.seed);
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      os << to_string(fn) << ',' << format_exact(d(i, 0)) << ',' << format_exact(d(i, 1)) << ','
         << format_exact(d(i, 2)) << '\n';
    }
  }
  return os.str();
}

int cmd_simulate(const RunConfig& cfg) {
  const std::string format = cfg.format.value_or("csv");
  if (cfg.preset != "table1") throw UsageError("--preset must be table1");
  if (cfg.tau2) throw UsageError("--tau2/--eta are not supported by simulate; use --sigma2");
  const SimulationConfig sc = sim_config(cfg);
  const Exec exec = configure_threads(cfg);
  const Table1Report rep = run_table1(sc, exec);

  json rows = json::array();
  std::ostringstream table;
  table << "model_id,D,rho_sq_over_n";
  for (auto fn : rep.functions) table << ',' << to_string(fn);
  table << '\n';
  for (const auto& r : rep.rows) {
    table << r.model_id << ',' << r.dim << ',' << format_sig(r.rho_sq_over_n);
    json counts;
    for (std::size_t j = 0; j < r.counts.size(); ++j) {
      table << ',' << r.counts[j];
      counts[std::string(to_string(rep.functions[j]))] = r.counts[j];
    }
    table << '\n';
    rows.push_back({{"model_id", r.model_id}, {"D", r.dim}, {"rho_sq_over_n", round_sig(r.rho_sq_over_n)}, {"counts", counts}});
  }
  json coverage;
  for (std::size_t j = 0; j < rep.functions.size(); ++j) coverage[std::string(to_string(rep.functions[j]))] = rep.coverage[j];
  const json summary{{"n", sc.n},        {"K", sc.K},          {"alpha", sc.alpha},
                     {"beta", sc.beta},  {"sigma2", sc.sigma * sc.sigma},
                     {"replicates", sc.replicates}, {"seed", sc.seed}, {"coverage", coverage},
                     {"rows", rows}};

  write_text(cfg.out, format == "json" ? dump(summary) : table.str());
  if (!cfg.summary.empty()) write_text(cfg.summary, dump(summary));
  if (!cfg.log.empty()) {
    std::ostringstream log;
    log << "replicate,function,seed,smallest_accepted,selected,radius_sq,covered,intersection_covered\n";
    for (const auto& r : rep.log) {
      log << r.replicate << ',' << to_string(r.function) << ',' << rep.seed << ',' << r.smallest_accepted << ','
          << r.selected << ',' << format_sig(r.radius_sq) << ',' << (r.covered ? 1 : 0) << ','
          << (r.intersection_covered ? 1 : 0) << '\n';
    }
    write_text(cfg.log, log.str());
  }
  if (!cfg.figure_data.empty()) write_text(cfg.figure_data, figure_csv(sc));
  return kExitOk;
}

// coverage ------------------------------------------------------------------

int cmd_coverage(const RunConfig& cfg) {
  const std::string format = cfg.format.value_or("json");
  const auto fn = parse_test_function(cfg.function);
  if (!fn) throw UsageError("--function must be F1, F2 or F3");
  if (cfg.replicates < 1) throw UsageError("--replicates must be >= 1");
  const VarianceSpec variance = variance_of(cfg, false);

  std::shared_ptr<const ModelFamily> family;
  double alpha = cfg.alpha.value_or(0.2);
  double beta = cfg.beta.value_or(0.1);
  if (!cfg.family.empty()) {
    const FamilyConfig fam = family_from(cfg);
    alpha = resolve_alpha(cfg, fam);
    beta = fam.beta;
    family = fam.family;
  } else {
    check_levels(cfg, alpha, beta);
    family = std::make_shared<const ModelFamily>(fourier_family(cfg.n, cfg.K, beta));
  }
  check_levels(cfg, alpha, beta);
  const double true_sigma2 = cfg.true_sigma2.value_or(variance.lower());
  if (!(true_sigma2 >= variance.lower() - 1e-12 && true_sigma2 <= variance.tau2() + 1e-12)) {
    throw UsageError("--true-sigma2 must lie in the variance interval");
  }
  const Exec exec = configure_threads(cfg);
  const ConfidenceProcedure proc(family, alpha, variance, exec);
  const Eigen::VectorXd f = test_function(*fn, family->n());
  const CoverageResult res = coverage_mc(f, proc, cfg.replicates, cfg.seed, true_sigma2, exec);

  const json report{{"function", cfg.function},
                    {"coverage", res.coverage},
                    {"ci_low", round_sig(res.ci_low)},
                    {"intersection_coverage", res.intersection_coverage},
                    {"mean_radius_sq", round_sig(res.mean_radius_sq)},
                    {"nominal", 1.0 - beta},
                    {"replicates", res.replicates},
                    {"seed", cfg.seed}};
  if (format == "csv") {
    std::ostringstream os;
    os << "function,coverage,ci_low,intersection_coverage,mean_radius_sq,replicates\n"
       << cfg.function << ',' << format_sig(res.coverage) << ',' << format_sig(res.ci_low) << ','
       << format_sig(res.intersection_coverage) << ',' << format_sig(res.mean_radius_sq) << ','
       << res.replicates << '\n';
    write_text(cfg.out, os.str());
  } else {
    write_text(cfg.out, dump(report));
  }
  if (!cfg.figure_data.empty()) {
    const Eigen::MatrixXd d = figure_data(*fn, family->n(), std::sqrt(true_sigma2), cfg.seed);
    std::ostringstream os;
    os << "x,f,y\n";
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      os << format_exact(d(i, 0)) << ',' << format_exact(d(i, 1)) << ',' << format_exact(d(i, 2)) << '\n';
    }
    write_text(cfg.figure_data, os.str());
  }
  return kExitOk;
}

// bounds --------------------------------------------------------------------

int cmd_bounds_dist(const RunConfig& cfg) {
  std::ostringstream os;
  os << "z,d,u,q,birge_lo,birge_hi\n";
  for (double z : cfg.z_grid) {
    for (int d : cfg.d_grid) {
      for (double u : cfg.u_grid) {
        if (z < 0.0 || d < 0) throw UsageError("--z and --d must be nonnegative");
        if (!(u > 0.0 && u < 1.0)) throw UsageError("--u values must lie in (0, 1)");
        const double q = chi2_quantile(u, {z, d});
        // q_{z,d}(u) >= lower envelope at 1 - u
        const double lo = 1.0 - u < 1.0 ? birge_lower(z, d, 1.0 - u) : 0.0;
        os << format_sig(z) << ',' << d << ',' << format_sig(u) << ',' << format_sig(q, 10) << ','
           << format_sig(lo, 10) << ',' << format_sig(birge_upper(z, d, u), 10) << '\n';
      }
    }
  }
  write_text(cfg.out, os.str());
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
  if (cfg.dist) return cmd_bounds_dist(cfg);
  const std::string format = cfg.format.value_or("csv");
  const FamilyConfig fam = family_from(cfg);
  const double alpha = resolve_alpha(cfg, fam);
  check_levels(cfg, alpha, fam.beta);
  const VarianceSpec variance = variance_of(cfg, true);
  const Exec exec = configure_threads(cfg);
  const ConfidenceProcedure proc(fam.family, alpha, variance, exec);
  const ModelFamily& family = proc.family();

  struct Row {
    std::string id;
    std::optional<double> lower;
    double rho_sq;
    double upper;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family[i];
    Row r{m.id(), std::nullopt, proc.radii_sq()[i],
          upper_bound_rho(m.dim(), m.resid(), variance.eta(), alpha, m.beta_m(), variance.tau2())};
    try {
      r.lower = lower_bound_radius(m.dim(), m.resid(), variance.eta(), alpha, fam.beta, variance.tau2());
    } catch (const PreconditionError&) {
    }
    rows.push_back(std::move(r));
  }
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"model_id", r.id},
                     {"lower", r.lower ? json(round_sig(*r.lower)) : json(nullptr)},
                     {"rho_sq", round_sig(r.rho_sq)},
                     {"upper", round_sig(r.upper)},
                     {"lower_ok", r.lower ? json(*r.lower <= r.rho_sq) : json(nullptr)},
                     {"upper_ok", r.rho_sq <= r.upper}});
    }
    write_text(cfg.out, dump({{"alpha", alpha}, {"beta", fam.beta}, {"variance", variance.describe()}, {"models", arr}}));
    return kExitOk;
  }
  std::ostringstream os;
  os << "model_id,lower,rho_sq,upper,lower_ok,upper_ok\n";
  for (const auto& r : rows) {
    os << r.id << ',' << (r.lower ? format_sig(*r.lower) : "NA") << ',' << format_sig(r.rho_sq) << ','
       << format_sig(r.upper) << ',' << (r.lower ? (*r.lower <= r.rho_sq ? "1" : "0") : "NA") << ','
       << (r.rho_sq <= r.upper ? 1 : 0) << '\n';
  }
  write_text(cfg.out, os.str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Nonasymptotic confidence balls from families of linear models", "confball"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  RunConfig cfg;

  auto* radii = app.add_subcommand("radii", "Radius table of a model family");
  radii->footer(kRadiiHelp);
  add_common(radii, cfg);
  radii->add_option("--family", cfg.family, "Family config (JSON)")->required();

  auto* ball = app.add_subcommand("ball", "Confidence ball for one data vector");
  ball->footer(kBallHelp);
  add_common(ball, cfg);
  ball->add_option("--data", cfg.data, "Observation vector (CSV)")->required();
  ball->add_option("--family", cfg.family, "Family config (JSON)")->required();
  ball->add_option("--center-out", cfg.center_out, "Write the ball center (full precision CSV)");

  auto* select = app.add_subcommand("select", "Variable selection over column subsets");
  select->footer(kSelectHelp);
  add_common(select, cfg);
  select->add_option("--data", cfg.data, "Observation vector (CSV)")->required();
  select->add_option("--design", cfg.design, "Design matrix, n x p (CSV)")->required();
  select->add_option("--max-size", cfg.max_size, "Largest subset size")->required();
  select->add_option("--summary", cfg.summary, "JSON report path when --format csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo reproduction of the Fourier table");
  simulate->footer(kSimulateHelp);
  add_common(simulate, cfg);
  simulate->add_option("--preset", cfg.preset, "table1")->required();
  simulate->add_option("--replicates", cfg.replicates, "Number of simulated data sets");
  simulate->add_option("--n", cfg.n, "Sample size");
  simulate->add_option("--K", cfg.K, "Largest dyadic frequency exponent");
  simulate->add_option("--summary", cfg.summary, "JSON summary path");
  simulate->add_option("--log", cfg.log, "Per-replicate CSV path");
  simulate->add_option("--figure-data", cfg.figure_data, "CSV of x, F(x), y for one data set per function");

  auto* coverage = app.add_subcommand("coverage", "Monte Carlo coverage for one test function");
  coverage->footer(kCoverageHelp);
  add_common(coverage, cfg);
  coverage->add_option("--function", cfg.function, "F1, F2 or F3")->required();
  coverage->add_option("--replicates", cfg.replicates, "Number of simulated data sets");
  coverage->add_option("--family", cfg.family, "Family config (default: dyadic Fourier)");
  coverage->add_option("--n", cfg.n, "Sample size for the default family");
  coverage->add_option("--K", cfg.K, "Largest dyadic exponent for the default family");
  coverage->add_option("--true-sigma2", cfg.true_sigma2, "Variance used to simulate (default: lower end)");
  coverage->add_option("--figure-data", cfg.figure_data, "CSV of x, F(x), y for replicate 0");

  auto* bounds = app.add_subcommand("bounds", "Closed-form radius bounds, or chi-square tables with --dist");
  bounds->footer(kBoundsHelp);
  add_common(bounds, cfg);
  bounds->add_option("--family", cfg.family, "Family config (JSON)");
  bounds->add_flag("--dist", cfg.dist, "Print noncentral chi-square quantiles with their envelopes");
  bounds->add_option("--z", cfg.z_grid, "Noncentralities for --dist")->delimiter(',');
  bounds->add_option("--d", cfg.d_grid, "Degrees of freedom for --dist")->delimiter(',');
  bounds->add_option("--u", cfg.u_grid, "Probabilities for --dist")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (radii->parsed()) return cmd_radii(cfg);
    if (ball->parsed()) return cmd_ball(cfg);
    if (select->parsed()) return cmd_select(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (coverage->parsed()) return cmd_coverage(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace confball::cli
