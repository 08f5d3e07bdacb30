#include "bellcert/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace bellcert::experiments {

using numerics::Complex;
using numerics::Party;
using numerics::Rng;

Vector optimal_cglmp_state() {
  const double g = (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0;
  Vector psi = Vector::Zero(9);
  psi(0) = 1.0;
  psi(4) = g;
  psi(8) = 1.0;
  return psi / psi.norm();
}

std::optional<SchmidtFrame> schmidt_align(const Vector& source, const Vector& target,
                                          int d, double tol) {
  const Matrix ms = nondeg::matricize(source, d, d);
  const Matrix mt = nondeg::matricize(target, d, d);
  Eigen::JacobiSVD<Matrix> svd_s(ms, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> svd_t(mt, Eigen::ComputeFullU | Eigen::ComputeFullV);

  SchmidtFrame frame;
  frame.spectrum_mismatch =
      (svd_s.singularValues() - svd_t.singularValues()).cwiseAbs().maxCoeff();
  if (frame.spectrum_mismatch > tol) return std::nullopt;

  // source = sum_k s_k u_k ox conj(v_k); map each Schmidt pair of the
  // source onto the matching pair of the target.
  frame.ua = svd_t.matrixU() * svd_s.matrixU().adjoint();
  frame.ub = (svd_t.matrixV() * svd_s.matrixV().adjoint()).conjugate();
  return frame;
}

namespace {

Assemblage conjugate_assemblage(const Assemblage& m, const Matrix& u) {
  Assemblage out;
  out.dim = m.dim;
  out.povms.resize(m.povms.size());
  for (std::size_t x = 0; x < m.povms.size(); ++x)
    for (const auto& op : m.povms[x]) out.povms[x].push_back(u * op * u.adjoint());
  return out;
}

Vector top_eigenvector(const Matrix& h) {
  return numerics::eigen_hermitian(h).eigenvectors.col(0);
}

}  // namespace

OptimalAnchor cglmp_optimal_anchor(const SeesawConfig& cfg) {
  const Expression expr = bell::builtin_expression("cglmp3");
  OptimalAnchor anchor;
  anchor.estimate = tsirelson::seesaw(expr, 3, 1, cfg);
  anchor.state = optimal_cglmp_state();

  const Matrix h = bell_operator(expr, anchor.estimate.best_alice, anchor.estimate.best_bob);
  const auto frame = schmidt_align(top_eigenvector(h), anchor.state, 3);
  if (frame) {
    anchor.alice = conjugate_assemblage(anchor.estimate.best_alice, frame->ua);
    anchor.bob = conjugate_assemblage(anchor.estimate.best_bob, frame->ub);
  } else {
    // Converged to something that is not the known extremal state (stuck
    // restarts); fall back to the unaligned measurements.
    anchor.alice = anchor.estimate.best_alice;
    anchor.bob = anchor.estimate.best_bob;
  }
  const Matrix rho = anchor.state * anchor.state.adjoint();
  anchor.violation = evaluate_bell(expr, born_correlation(rho, anchor.alice, anchor.bob));
  return anchor;
}

namespace {

struct Setup {
  Matrix rho_base;
  Assemblage alice, bob;
};

Setup prepare_setup(const SimulationSpec& spec, const Expression& expr, int d,
                    const SeesawConfig& cfg, Rng& rng) {
  Setup setup;

  std::optional<Vector> base_pure;
  switch (spec.state) {
    case StateKind::optimal_cglmp:
      if (d != 3 || expr.scenario.na != 3 || expr.scenario.nb != 3)
        throw BadSpecError("simulate: optimal_cglmp state requires a qutrit three-outcome scenario");
      base_pure = optimal_cglmp_state();
      break;
    case StateKind::maximally_entangled: {
      Vector psi = Vector::Zero(d * d);
      for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
      base_pure = psi;
      break;
    }
    case StateKind::random_pure:
      base_pure = numerics::random_pure_state(d * d, rng);
      break;
    case StateKind::random_mixed:
      setup.rho_base = numerics::random_density_matrix(d * d, rng);
      break;
    case StateKind::from_file:
      if (spec.state_matrix.rows() != d * d || spec.state_matrix.cols() != d * d)
        throw BadSpecError("simulate: state matrix size does not match d^2");
      setup.rho_base = spec.state_matrix;
      break;
  }
  if (base_pure) setup.rho_base = (*base_pure) * base_pure->adjoint();

  switch (spec.measurements) {
    case MeasurementSource::optimal: {
      const auto est = tsirelson::seesaw(expr, d, 1, cfg);
      setup.alice = est.best_alice;
      setup.bob = est.best_bob;
      if (base_pure) {
        const Matrix h = bell_operator(expr, est.best_alice, est.best_bob);
        if (auto frame = schmidt_align(top_eigenvector(h), *base_pure, d)) {
          setup.alice = conjugate_assemblage(est.best_alice, frame->ua);
          setup.bob = conjugate_assemblage(est.best_bob, frame->ub);
        }
      }
      break;
    }
    case MeasurementSource::random: {
      setup.alice.dim = d;
      setup.bob.dim = d;
      const bell::Scenario& s = expr.scenario;
      for (int x = 0; x < s.nx; ++x) {
        const Matrix u = numerics::haar_unitary(d, rng);
        std::vector<Matrix> povm(s.na, Matrix::Zero(d, d));
        for (int i = 0; i < d; ++i) povm[i % s.na] += u.col(i) * u.col(i).adjoint();
        setup.alice.povms.push_back(std::move(povm));
      }
      for (int y = 0; y < s.ny; ++y) {
        const Matrix u = numerics::haar_unitary(d, rng);
        std::vector<Matrix> povm(s.nb, Matrix::Zero(d, d));
        for (int i = 0; i < d; ++i) povm[i % s.nb] += u.col(i) * u.col(i).adjoint();
        setup.bob.povms.push_back(std::move(povm));
      }
      break;
    }
    case MeasurementSource::from_file:
      setup.alice = spec.alice_meas;
      setup.bob = spec.bob_meas;
      bell::check_assemblage(setup.alice);
      bell::check_assemblage(setup.bob);
      break;
  }
  return setup;
}

Matrix mixed_state(const Setup& setup, const SimulationSpec& spec, int d, Rng& rng) {
  const double w = spec.noise_w;
  if (w == 0.0) return setup.rho_base;
  Matrix noise;
  if (spec.noise == NoiseKind::white)
    noise = Matrix::Identity(d * d, d * d) / static_cast<double>(d * d);
  else
    noise = numerics::random_density_matrix(d * d, rng);
  return (1.0 - w) * setup.rho_base + w * noise;
}

// Replace each (x,y) slice by multinomial frequencies at `shots` draws.
Correlation sample_shots(const Correlation& exact, long shots, Rng& rng) {
  const bell::Scenario& s = exact.scenario;
  Correlation out = bell::make_correlation(s);
  const int cells = s.na * s.nb;
  std::vector<double> cdf(cells);
  std::vector<long> counts(cells);
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y) {
      double acc = 0.0;
      for (int a = 0; a < s.na; ++a)
        for (int b = 0; b < s.nb; ++b) {
          acc += std::max(exact.at(x, y, a, b), 0.0);
          cdf[a * s.nb + b] = acc;
        }
      std::fill(counts.begin(), counts.end(), 0L);
      for (long t = 0; t < shots; ++t) {
        const double r = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        const int cell = std::min<int>(static_cast<int>(it - cdf.begin()), cells - 1);
        ++counts[cell];
      }
      for (int a = 0; a < s.na; ++a)
        for (int b = 0; b < s.nb; ++b)
          out.at(x, y, a, b) =
              static_cast<double>(counts[a * s.nb + b]) / static_cast<double>(shots);
    }
  return out;
}

}  // namespace

SimulationResult simulate_correlation(const SimulationSpec& spec, const Expression& expr,
                                      int d, const SeesawConfig& cfg) {
  if (spec.noise_w < 0.0 || spec.noise_w > 1.0)
    throw BadSpecError("simulate: noise_w must lie in [0,1]");
  if (spec.shots && *spec.shots < 1)
    throw BadSpecError("simulate: shots must be >= 1");

  Rng rng(spec.seed);
  const Setup setup = prepare_setup(spec, expr, d, cfg, rng);

  SimulationResult res;
  res.rho = mixed_state(setup, spec, d, rng);
  res.alice = setup.alice;
  res.bob = setup.bob;
  const Correlation exact = born_correlation(res.rho, setup.alice, setup.bob);
  res.exact_violation = evaluate_bell(expr, exact);
  res.correlation = spec.shots ? sample_shots(exact, *spec.shots, rng) : exact;
  return res;
}

double reference_coherent_info(const Matrix& rho, int d) {
  if (rho.rows() != static_cast<Eigen::Index>(d) * d || rho.rows() != rho.cols())
    throw NotAStateError("reference_coherent_info: state size is not d^2 x d^2");
  if (!numerics::is_hermitian(rho, 1e-8) || std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw NotAStateError("reference_coherent_info: not a unit-trace Hermitian matrix");

  const auto entropy_bits = [](const numerics::RealVector& eigs) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
      if (eigs(i) > 1e-15) h -= eigs(i) * std::log2(eigs(i));
    return h;
  };
  const auto full = numerics::eigen_hermitian(rho, 1e-8);
  if (full.eigenvalues(full.eigenvalues.size() - 1) < -1e-8)
    throw NotAStateError("reference_coherent_info: negative eigenvalue");
  const auto marginal =
      numerics::eigen_hermitian(numerics::partial_trace(rho, d, d, Party::alice), 1e-8);
  return entropy_bits(marginal.eigenvalues) - entropy_bits(full.eigenvalues);
}

std::vector<SweepRow> perturbation_sweep(const Expression& expr, int d,
                                         const Certificate& cert,
                                         const std::vector<double>& w_grid,
                                         const SimulationSpec& spec_template,
                                         const SeesawConfig& cfg) {
  Rng setup_rng(spec_template.seed);
  const Setup setup = prepare_setup(spec_template, expr, d, cfg, setup_rng);

  std::vector<SweepRow> rows;
  rows.reserve(w_grid.size());
  for (std::size_t i = 0; i < w_grid.size(); ++i) {
    SimulationSpec spec = spec_template;
    spec.noise_w = w_grid[i];
    if (spec.noise_w < 0.0 || spec.noise_w > 1.0)
      throw BadSpecError("sweep: noise_w must lie in [0,1]");
    // Independent per-row stream so row order and parallel evaluation
    // cannot change the sampled data.
    Rng row_rng(spec_template.seed + 0x9E3779B97F4A7C15ull * (i + 1));

    SweepRow row;
    row.w = spec.noise_w;
    const Matrix rho = mixed_state(setup, spec, d, row_rng);
    Correlation corr = born_correlation(rho, setup.alice, setup.bob);
    if (spec.shots) corr = sample_shots(corr, *spec.shots, row_rng);

    const auto ec = bounds::certify_entanglement(corr, expr, cert, d);
    row.violation = ec.analysis.violation;
    row.gap = cert.c_q - row.violation;
    row.eps1 = ec.analysis.eps1;
    row.gamma_a = ec.gamma_a;
    row.s_lower = ec.s_lower;
    if (ec.analysis.has_certificate) {
      row.eps2 = ec.analysis.eps2;
      row.purity_lower = ec.analysis.purity_lower;
      row.s_upper = ec.s_upper;
      row.ic_lower = ec.ic_lower;
    }
    row.ic_true = reference_coherent_info(rho, d);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.gap < b.gap; });
  return rows;
}

}  // namespace bellcert::experiments
