#ifndef BELLCERT_EXPERIMENTS_HPP
#define BELLCERT_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bellcert/entanglement.hpp"
#include "bellcert/tsirelson.hpp"

// Simulation harness and sweep drivers: generate correlations from known
// states (exact Born rule or finite-shot multinomial frequencies), run the
// certification pipeline on them, and compare against ground truth.
namespace bellcert::experiments {

using bell::Assemblage;
using bell::Correlation;
using bell::Expression;
using bounds::EntanglementCertificate;
using nondeg::Certificate;
using numerics::Matrix;
using numerics::Vector;
using tsirelson::SeesawConfig;

enum class StateKind { optimal_cglmp, maximally_entangled, random_pure, random_mixed, from_file };
enum class MeasurementSource { optimal, random, from_file };
enum class NoiseKind { white, random_mix };

struct SimulationSpec {
  StateKind state = StateKind::optimal_cglmp;
  double noise_w = 0.0;  // mixing weight in [0,1]
  NoiseKind noise = NoiseKind::white;
  MeasurementSource measurements = MeasurementSource::optimal;
  std::optional<long> shots;  // empty = exact Born probabilities
  std::uint64_t seed = 0;
  // Populated when the corresponding source is from_file.
  Matrix state_matrix;
  Assemblage alice_meas, bob_meas;
};

struct SimulationResult {
  Correlation correlation;     // what an experiment would report
  Matrix rho;                  // ground truth, for oracle comparisons
  Assemblage alice, bob;
  double exact_violation = 0.0;  // evaluate_bell on the exact correlation
};

// The known maximal-violation state of the builtin three-outcome CGLMP
// inequality, (|00> + g|11> + |22>)/sqrt(2+g^2) with g = (sqrt11-sqrt3)/2.
Vector optimal_cglmp_state();

// Local unitaries (ua, ub) with (ua ox ub)|source> = |target> whenever the
// two states share a Schmidt spectrum; empty when the spectra differ by
// more than `tol` in any coefficient.
struct SchmidtFrame {
  Matrix ua, ub;
  double spectrum_mismatch = 0.0;
};
std::optional<SchmidtFrame> schmidt_align(const Vector& source, const Vector& target,
                                          int d, double tol = 1e-3);

// Seesaw-optimal measurements rotated into the frame of the known optimal
// CGLMP state, so that measuring that state reproduces the estimated
// Tsirelson bound. The state/measurement pair is the reproducible anchor
// used by simulations and sweeps.
struct OptimalAnchor {
  Vector state;
  Assemblage alice, bob;
  double violation = 0.0;  // Born value of the anchor pair
  tsirelson::TsirelsonEstimate estimate;
};
OptimalAnchor cglmp_optimal_anchor(const SeesawConfig& cfg = {});

// Builds rho = (1-w) rho_base + w * noise, computes the exact Born
// correlation, and optionally replaces each (x,y) slice with multinomial
// frequencies at the configured shot count. Deterministic in spec.seed.
SimulationResult simulate_correlation(const SimulationSpec& spec, const Expression& expr,
                                      int d, const SeesawConfig& cfg = {});

struct SweepRow {
  double w = 0.0;
  double violation = 0.0;
  double gap = 0.0;  // cert.c_q - violation
  double eps1 = 0.0;
  std::optional<double> eps2, purity_lower, s_upper, ic_lower;
  double gamma_a = 1.0;
  double s_lower = 0.0;
  std::optional<double> ic_true;  // exact coherent information of rho_w
};

// One pipeline run per mixing weight, rows sorted by gap ascending.
std::vector<SweepRow> perturbation_sweep(const Expression& expr, int d,
                                         const Certificate& cert,
                                         const std::vector<double>& w_grid,
                                         const SimulationSpec& spec_template,
                                         const SeesawConfig& cfg = {});

// Exact coherent information S(rho_A) - S(rho) in ebits (0 log 0 = 0).
double reference_coherent_info(const Matrix& rho, int d);

}  // namespace bellcert::experiments

#endif
