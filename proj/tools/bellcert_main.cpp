// bellcert: certify Bell-inequality nondegeneracy and derive entanglement
// bounds from measured correlations.
//
// Subcommands:
//   certify   <expr> --dim d          nondegeneracy certificate (JSON)
//   tsirelson <expr> --dim d --top t  seesaw estimate of C(I,d,t) (JSON)
//   bound <correlation.json> --expr E --dim d [--cert file]
//                                     entanglement certificate (JSON)
//   simulate                          correlation from a simulated state
//   sweep                             noise sweep over the pipeline (CSV)
//
// Exit codes: 0 success (including "no bound certified"), 1 invalid input,
// 2 internal numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bellcert/io.hpp"

namespace {

using namespace bellcert;
using io::json;

struct CommonOpts {
  tsirelson::SeesawConfig cfg;
  std::string out;
  std::string format = "json";
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool tabular = false) {
  cmd->add_option("--seed", opts.cfg.seed, "Base RNG seed (restart r uses seed+r)");
  cmd->add_option("--restarts", opts.cfg.restarts, "Seesaw restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", opts.cfg.max_iters, "Seesaw rounds per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--inner-iters", opts.cfg.inner_iters, "POVM fixed-point iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opts.cfg.tol, "Convergence threshold on the objective gain");
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember(tabular ? std::vector<std::string>{"csv", "json"}
                                    : std::vector<std::string>{"json"}));
  cmd->add_flag("--quiet", opts.quiet, "Suppress progress notes on stderr");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty())
    std::cout << text;
  else
    io::save_text_file(opts.out, text);
}

void note(const CommonOpts& opts, const std::string& msg) {
  if (!opts.quiet) std::cerr << msg << "\n";
}

std::optional<long> parse_shots(const std::string& s) {
  if (s.empty() || s == "exact") return std::nullopt;
  try {
    const long n = std::stol(s);
    if (n < 1) throw InvalidInputError("--shots must be a positive integer or 'exact'");
    return n;
  } catch (const std::logic_error&) {
    throw InvalidInputError("--shots must be a positive integer or 'exact'");
  }
}

experiments::SimulationSpec build_spec(const std::string& state, const std::string& noise,
                                       double noise_w, const std::string& measurements,
                                       const std::string& shots, std::uint64_t seed,
                                       const std::string& state_file,
                                       const std::string& alice_file,
                                       const std::string& bob_file) {
  experiments::SimulationSpec spec;
  if (state == "optimal_cglmp") spec.state = experiments::StateKind::optimal_cglmp;
  else if (state == "maximally_entangled") spec.state = experiments::StateKind::maximally_entangled;
  else if (state == "random_pure") spec.state = experiments::StateKind::random_pure;
  else if (state == "random_mixed") spec.state = experiments::StateKind::random_mixed;
  else if (state == "file") spec.state = experiments::StateKind::from_file;
  else throw InvalidInputError("unknown --state '" + state + "'");

  spec.noise = noise == "random" ? experiments::NoiseKind::random_mix
                                 : experiments::NoiseKind::white;
  spec.noise_w = noise_w;

  if (measurements == "optimal") spec.measurements = experiments::MeasurementSource::optimal;
  else if (measurements == "random") spec.measurements = experiments::MeasurementSource::random;
  else if (measurements == "file") spec.measurements = experiments::MeasurementSource::from_file;
  else throw InvalidInputError("unknown --measurements '" + measurements + "'");

  spec.shots = parse_shots(shots);
  spec.seed = seed;
  if (spec.state == experiments::StateKind::from_file) {
    if (state_file.empty()) throw InvalidInputError("--state file requires --state-file");
    spec.state_matrix = io::state_from_json(io::load_json_file(state_file));
  }
  if (spec.measurements == experiments::MeasurementSource::from_file) {
    if (alice_file.empty() || bob_file.empty())
      throw InvalidInputError("--measurements file requires --alice-file and --bob-file");
    spec.alice_meas = io::assemblage_from_json(io::load_json_file(alice_file));
    spec.bob_meas = io::assemblage_from_json(io::load_json_file(bob_file));
  }
  return spec;
}

nondeg::Certificate certificate_for(const std::string& cert_file, const bell::Expression& expr,
                                    int dim, const CommonOpts& opts, bool* recomputed) {
  if (!cert_file.empty()) {
    auto cert = io::certificate_from_json(io::load_json_file(cert_file));
    if (cert.d != dim)
      throw InvalidInputError("certificate dimension does not match --dim");
    if (!cert.expr_name.empty() && !expr.name.empty() && cert.expr_name != expr.name)
      throw InvalidInputError("certificate is for expression '" + cert.expr_name +
                              "', not '" + expr.name + "'");
    if (recomputed) *recomputed = false;
    return cert;
  }
  note(opts, "no certificate supplied; running seesaw at t=1 and t=2");
  if (recomputed) *recomputed = true;
  return nondeg::certify_nondegeneracy(expr, dim, opts.cfg);
}

std::vector<double> make_grid(const std::vector<double>& grid, double w_min, double w_max,
                              int w_count) {
  if (!grid.empty()) return grid;
  if (w_count < 2 || w_max < w_min)
    throw InvalidInputError("bad sweep grid: need --w-count >= 2 and --w-max >= --w-min");
  std::vector<double> out;
  out.reserve(w_count);
  for (int i = 0; i < w_count; ++i)
    out.push_back(w_min + (w_max - w_min) * i / (w_count - 1));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Bell-inequality nondegeneracy certification and semi-device-independent "
               "entanglement bounds"};
  app.require_subcommand(1);

  auto* certify = app.add_subcommand("certify", "Nondegeneracy certificate for an expression");
  std::string certify_expr;
  int certify_dim = 3;
  bool certify_monotonicity = false;
  CommonOpts certify_opts;
  certify->add_option("expr", certify_expr, "Builtin name (cglmp3|chsh) or JSON file")->required();
  certify->add_option("--dim", certify_dim, "Local dimension d")->required()->check(CLI::Range(2, 6));
  certify->add_flag("--monotonicity", certify_monotonicity,
                    "Also run the dimension-monotonicity check against d-1");
  add_common(certify, certify_opts);

  auto* tsirel = app.add_subcommand("tsirelson", "Seesaw estimate of C(I,d,t)");
  std::string tsirel_expr;
  int tsirel_dim = 3, tsirel_top = 1;
  std::string tsirel_assemblages_out;
  CommonOpts tsirel_opts;
  tsirel->add_option("expr", tsirel_expr)->required();
  tsirel->add_option("--dim", tsirel_dim, "Local dimension d")->required()->check(CLI::Range(1, 6));
  tsirel->add_option("--top", tsirel_top, "Number t of top eigenvalues to sum")
      ->check(CLI::PositiveNumber);
  tsirel->add_option("--assemblages-out", tsirel_assemblages_out,
                     "Write the best POVMs to this JSON file");
  add_common(tsirel, tsirel_opts);

  auto* bound = app.add_subcommand("bound", "Entanglement bounds from a correlation file");
  std::string bound_corr, bound_expr, bound_cert;
  int bound_dim = 3;
  CommonOpts bound_opts;
  bound->add_option("correlation", bound_corr, "Correlation JSON file")->required();
  bound->add_option("--expr", bound_expr, "Builtin name or JSON file")->required();
  bound->add_option("--dim", bound_dim, "Assumed local dimension d")->required()
      ->check(CLI::Range(2, 6));
  bound->add_option("--cert", bound_cert, "Nondegeneracy certificate JSON (recomputed if absent)");
  add_common(bound, bound_opts);

  auto* simulate = app.add_subcommand("simulate", "Correlation from a simulated experiment");
  std::string sim_expr = "cglmp3", sim_state = "optimal_cglmp", sim_noise = "white";
  std::string sim_meas = "optimal", sim_shots = "exact";
  std::string sim_state_file, sim_alice_file, sim_bob_file, sim_truth_out;
  double sim_noise_w = 0.0;
  int sim_dim = 3;
  CommonOpts sim_opts;
  simulate->add_option("--expr", sim_expr, "Builtin name or JSON file");
  simulate->add_option("--dim", sim_dim)->check(CLI::Range(2, 6));
  simulate->add_option("--state", sim_state,
                       "optimal_cglmp|maximally_entangled|random_pure|random_mixed|file");
  simulate->add_option("--noise-w", sim_noise_w, "Mixing weight in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--noise", sim_noise, "white|random");
  simulate->add_option("--measurements", sim_meas, "optimal|random|file");
  simulate->add_option("--shots", sim_shots, "Positive count or 'exact'");
  simulate->add_option("--state-file", sim_state_file, "State JSON for --state file");
  simulate->add_option("--alice-file", sim_alice_file, "Assemblage JSON for --measurements file");
  simulate->add_option("--bob-file", sim_bob_file, "Assemblage JSON for --measurements file");
  simulate->add_option("--truth-out", sim_truth_out,
                       "Write the ground-truth state and exact values to this JSON file");
  add_common(simulate, sim_opts);

  auto* sweep = app.add_subcommand("sweep", "Noise sweep of the certification pipeline");
  std::string sweep_expr = "cglmp3", sweep_state = "optimal_cglmp", sweep_noise = "white";
  std::string sweep_meas = "optimal", sweep_shots = "exact", sweep_cert;
  std::vector<double> sweep_grid;
  double sweep_wmin = 0.0, sweep_wmax = 0.12;
  int sweep_wcount = 25, sweep_dim = 3;
  CommonOpts sweep_opts;
  sweep->add_option("--expr", sweep_expr, "Builtin name or JSON file");
  sweep->add_option("--dim", sweep_dim)->check(CLI::Range(2, 6));
  sweep->add_option("--cert", sweep_cert, "Nondegeneracy certificate JSON (recomputed if absent)");
  sweep->add_option("--state", sweep_state, "Base state of the sweep family");
  sweep->add_option("--noise", sweep_noise, "white|random");
  sweep->add_option("--measurements", sweep_meas, "optimal|random|file");
  sweep->add_option("--shots", sweep_shots, "Positive count or 'exact'");
  sweep->add_option("--w-grid", sweep_grid, "Explicit mixing weights")->delimiter(',');
  sweep->add_option("--w-min", sweep_wmin, "Grid start");
  sweep->add_option("--w-max", sweep_wmax, "Grid end");
  sweep->add_option("--w-count", sweep_wcount, "Grid size");
  sweep_opts.format = "csv";
  add_common(sweep, sweep_opts, /*tabular=*/true);

  CLI11_PARSE(app, argc, argv);

  if (certify->parsed()) {
    const auto expr = io::expression_by_name_or_file(certify_expr);
    auto cert = nondeg::certify_nondegeneracy(expr, certify_dim, certify_opts.cfg);
    json j = io::certificate_to_json(cert);
    if (certify_monotonicity) {
      const auto rep =
          nondeg::dimension_monotonicity_check(expr, certify_dim, certify_opts.cfg);
      j["monotonicity"] = {{"c_d", rep.c_d},
                           {"c_prev", rep.c_prev},
                           {"nondegenerate", rep.nondegenerate},
                           {"c2_upper", rep.c2_upper}};
    }
    emit(certify_opts, io::dump(j));
    note(certify_opts, cert.nondegenerate ? "nondegenerate" : "not certified nondegenerate");
    return 0;
  }

  if (tsirel->parsed()) {
    const auto expr = io::expression_by_name_or_file(tsirel_expr);
    const auto est = tsirelson::seesaw(expr, tsirel_dim, tsirel_top, tsirel_opts.cfg);
    emit(tsirel_opts, io::dump(io::estimate_to_json(est, expr.name)));
    if (!tsirel_assemblages_out.empty())
      io::save_text_file(tsirel_assemblages_out,
                         io::dump(json{{"alice", io::assemblage_to_json(est.best_alice)},
                                       {"bob", io::assemblage_to_json(est.best_bob)}}));
    return 0;
  }

  if (bound->parsed()) {
    const auto expr = io::expression_by_name_or_file(bound_expr);
    const auto corr = io::correlation_from_json(io::load_json_file(bound_corr));
    bool recomputed = false;
    const auto cert = certificate_for(bound_cert, expr, bound_dim, bound_opts, &recomputed);
    const auto ec = bounds::certify_entanglement(corr, expr, cert, bound_dim);
    json j = io::entanglement_to_json(ec);
    j["certificate"] = io::certificate_to_json(cert);
    emit(bound_opts, io::dump(j));
    if (recomputed && !bound_opts.out.empty()) {
      const std::string cache = bound_opts.out + ".cert.json";
      io::save_text_file(cache, io::dump(io::certificate_to_json(cert)));
      note(bound_opts, "certificate cached to " + cache);
    }
    note(bound_opts, ec.certified ? "positive entanglement bound certified"
                                  : "no bound certified (still a valid result)");
    return 0;
  }

  if (simulate->parsed()) {
    const auto expr = io::expression_by_name_or_file(sim_expr);
    const auto spec = build_spec(sim_state, sim_noise, sim_noise_w, sim_meas, sim_shots,
                                 sim_opts.cfg.seed, sim_state_file, sim_alice_file,
                                 sim_bob_file);
    const auto res = experiments::simulate_correlation(spec, expr, sim_dim, sim_opts.cfg);
    emit(sim_opts, io::dump(io::correlation_to_json(res.correlation)));
    if (!sim_truth_out.empty()) {
      json truth{{"state", io::state_to_json(res.rho)},
                 {"exact_violation", res.exact_violation},
                 {"ic_true_ebits", experiments::reference_coherent_info(res.rho, sim_dim)}};
      io::save_text_file(sim_truth_out, io::dump(truth));
    }
    return 0;
  }

  if (sweep->parsed()) {
    const auto expr = io::expression_by_name_or_file(sweep_expr);
    const auto cert = certificate_for(sweep_cert, expr, sweep_dim, sweep_opts, nullptr);
    auto spec = build_spec(sweep_state, sweep_noise, 0.0, sweep_meas, sweep_shots,
                           sweep_opts.cfg.seed, "", "", "");
    const auto grid = make_grid(sweep_grid, sweep_wmin, sweep_wmax, sweep_wcount);
    const auto rows =
        experiments::perturbation_sweep(expr, sweep_dim, cert, grid, spec, sweep_opts.cfg);
    if (sweep_opts.format == "csv") {
      emit(sweep_opts, io::sweep_to_csv(rows));
    } else {
      json arr = json::array();
      for (const auto& r : rows) {
        json row{{"w", r.w},         {"violation", r.violation}, {"gap", r.gap},
                 {"eps1", r.eps1},   {"gamma_a", r.gamma_a},     {"s_lower", r.s_lower}};
        if (r.eps2) row["eps2"] = *r.eps2;
        if (r.purity_lower) row["purity_lower"] = *r.purity_lower;
        if (r.s_upper) row["s_upper"] = *r.s_upper;
        if (r.ic_lower) row["ic_lower"] = *r.ic_lower;
        if (r.ic_true) row["ic_true"] = *r.ic_true;
        arr.push_back(std::move(row));
      }
      emit(sweep_opts, io::dump(arr));
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bellcert::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bellcert::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
