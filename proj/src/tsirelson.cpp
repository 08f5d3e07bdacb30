#include "bellcert/tsirelson.hpp"

#include <cmath>
#include <limits>

namespace bellcert::tsirelson {

using bell::Correlation;
using bell::Scenario;
using numerics::eigen_hermitian;
using numerics::kron;
using numerics::Party;
using numerics::partial_trace;
using numerics::Rng;
using numerics::Spectrum;

KyFanResult ky_fan_value(const Matrix& h, int t) {
  if (t < 1 || t > h.rows())
    throw BadRankError("ky_fan_value: t must satisfy 1 <= t <= dim");
  Spectrum spec = eigen_hermitian(h);
  KyFanResult out;
  out.value = spec.eigenvalues.head(t).sum();
  const Matrix top = spec.eigenvectors.leftCols(t);
  out.projector = top * top.adjoint();
  return out;
}

namespace {

double linear_objective(const std::vector<Matrix>& povm, const std::vector<Matrix>& k_ops) {
  double v = 0.0;
  for (std::size_t a = 0; a < povm.size(); ++a) v += (povm[a] * k_ops[a]).trace().real();
  return v;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// L^{-1/2} for a Hermitian PSD L, clamping eigenvalues at a relative floor
// so near-singular multipliers cannot blow up.
Matrix inverse_sqrt(const Matrix& l) {
  Spectrum spec = eigen_hermitian(hermitize(l), 1e-6);
  const double top = spec.eigenvalues(0);
  const double floor_val = std::max(top, 0.0) * 1e-14 + 1e-300;
  Matrix out = Matrix::Zero(l.rows(), l.cols());
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lam = std::max(spec.eigenvalues(i), floor_val);
    out += (1.0 / std::sqrt(lam)) * spec.eigenvectors.col(i) *
           spec.eigenvectors.col(i).adjoint();
  }
  return out;
}

}  // namespace

PovmUpdateResult optimal_povm_update(const std::vector<Matrix>& k_ops,
                                     const std::vector<Matrix>& start,
                                     int inner_iters, double tol) {
  if (k_ops.empty() || k_ops.size() != start.size())
    throw InvalidInputError("optimal_povm_update: outcome counts of K and POVM differ");
  const Eigen::Index dim = k_ops.front().rows();
  for (const auto& k : k_ops)
    if (k.rows() != dim || k.cols() != dim || !numerics::is_hermitian(k, 1e-8))
      throw InvalidInputError("optimal_povm_update: K operators must be Hermitian, equal size");

  // Uniform shift making every G_a strictly positive; changes the objective
  // by the constant c*dim only.
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& k : k_ops)
    min_eig = std::min(min_eig, eigen_hermitian(hermitize(k), 1e-6)
                                    .eigenvalues(dim - 1));
  const double shift = -min_eig + 1e-6;
  std::vector<Matrix> g_ops;
  g_ops.reserve(k_ops.size());
  for (const auto& k : k_ops)
    g_ops.push_back(hermitize(k) + shift * Matrix::Identity(dim, dim));

  PovmUpdateResult res;
  res.povm = start;
  res.objective = linear_objective(res.povm, k_ops);

  for (int it = 0; it < inner_iters; ++it) {
    Matrix l = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < res.povm.size(); ++a)
      l += g_ops[a] * res.povm[a] * g_ops[a];
    const Matrix l_inv_sqrt = inverse_sqrt(l);

    std::vector<Matrix> next(res.povm.size());
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < res.povm.size(); ++a) {
      next[a] = hermitize(l_inv_sqrt * g_ops[a] * res.povm[a] * g_ops[a] * l_inv_sqrt);
      total += next[a];
    }
    // Restore exact completeness lost to the eigenvalue floor.
    if (numerics::max_abs(total - Matrix::Identity(dim, dim)) > 1e-13) {
      const Matrix fix = inverse_sqrt(total);
      for (auto& m : next) m = hermitize(fix * m * fix);
    }

    const double obj = linear_objective(next, k_ops);
    res.iters = it + 1;
    if (obj < res.objective) break;  // reject worsening step, keep best iterate
    const double gain = obj - res.objective;
    res.povm = std::move(next);
    res.objective = obj;
    if (gain < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

namespace {

std::vector<Matrix> random_projective_setting(int dim, int outcomes, Rng& rng) {
  const Matrix u = numerics::haar_unitary(dim, rng);
  std::vector<Matrix> povm(outcomes, Matrix::Zero(dim, dim));
  // Round-robin the dim rank-1 projectors over the outcomes; outcomes in
  // excess of the dimension stay zero.
  for (int i = 0; i < dim; ++i)
    povm[i % outcomes] += u.col(i) * u.col(i).adjoint();
  return povm;
}

Assemblage random_projective_assemblage(int dim, int settings, int outcomes, Rng& rng) {
  Assemblage m;
  m.dim = dim;
  m.povms.reserve(settings);
  for (int x = 0; x < settings; ++x)
    m.povms.push_back(random_projective_setting(dim, outcomes, rng));
  return m;
}

TsirelsonEstimate classical_reduction(const Expression& expr) {
  // d=1: operators are scalars, POVMs are probability vectors, and the
  // maximum of a multilinear objective over products of simplices sits at
  // a deterministic vertex.
  const auto cb = bell::classical_bound(expr);
  const Scenario& s = expr.scenario;
  TsirelsonEstimate est;
  est.value = cb.value;
  est.t = 1;
  est.dim = 1;
  est.best_alice.dim = 1;
  est.best_bob.dim = 1;
  for (int x = 0; x < s.nx; ++x) {
    std::vector<Matrix> povm(s.na, Matrix::Zero(1, 1));
    povm[cb.alice_strategy[x]](0, 0) = 1.0;
    est.best_alice.povms.push_back(std::move(povm));
  }
  for (int y = 0; y < s.ny; ++y) {
    std::vector<Matrix> povm(s.nb, Matrix::Zero(1, 1));
    povm[cb.bob_strategy[y]](0, 0) = 1.0;
    est.best_bob.povms.push_back(std::move(povm));
  }
  est.top_eigenvalues = RealVector::Constant(1, cb.value);
  est.per_restart_values = {cb.value};
  est.objective_traces = {{cb.value}};
  est.converged = true;
  return est;
}

}  // namespace

TsirelsonEstimate seesaw(const Expression& expr, int d, int t, const SeesawConfig& cfg) {
  bell::check_scenario(expr.scenario);
  if (d < 1) throw InvalidInputError("seesaw: dimension must be >= 1");
  if (t < 1 || t > d * d) throw BadRankError("seesaw: t must satisfy 1 <= t <= d^2");
  if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.inner_iters < 1 || !(cfg.tol > 0.0))
    throw InvalidInputError("seesaw: bad config");
  if (d == 1) return classical_reduction(expr);

  const Scenario& s = expr.scenario;
  const Matrix eye = Matrix::Identity(d, d);

  TsirelsonEstimate est;
  est.t = t;
  est.dim = d;
  est.value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    Assemblage alice = random_projective_assemblage(d, s.nx, s.na, rng);
    Assemblage bob = random_projective_assemblage(d, s.ny, s.nb, rng);

    Matrix h = bell_operator(expr, alice, bob);
    KyFanResult kf = ky_fan_value(h, t);
    std::vector<double> trace{kf.value};
    bool restart_converged = false;

    for (int it = 0; it < cfg.max_iters; ++it) {
      const Matrix& proj = kf.projector;

      // Alice: K_x^a = sum_{y,b} s_abxy Tr_B[(I ox M_y^b) P], settings
      // decouple so each is an independent POVM subproblem.
      std::vector<Matrix> traced_bob(s.ny * s.nb);
      for (int y = 0; y < s.ny; ++y)
        for (int b = 0; b < s.nb; ++b)
          traced_bob[y * s.nb + b] =
              partial_trace(kron(eye, bob.povms[y][b]) * proj, d, d, Party::alice);
      for (int x = 0; x < s.nx; ++x) {
        std::vector<Matrix> k_ops(s.na, Matrix::Zero(d, d));
        for (int a = 0; a < s.na; ++a)
          for (int y = 0; y < s.ny; ++y)
            for (int b = 0; b < s.nb; ++b) {
              const double coeff = expr.s(x, y, a, b);
              if (coeff != 0.0) k_ops[a] += coeff * traced_bob[y * s.nb + b];
            }
        for (auto& k : k_ops) k = hermitize(k);
        alice.povms[x] =
            optimal_povm_update(k_ops, alice.povms[x], cfg.inner_iters, cfg.tol).povm;
      }

      // Bob, against the updated Alice.
      std::vector<Matrix> traced_alice(s.nx * s.na);
      for (int x = 0; x < s.nx; ++x)
        for (int a = 0; a < s.na; ++a)
          traced_alice[x * s.na + a] =
              partial_trace(kron(alice.povms[x][a], eye) * proj, d, d, Party::bob);
      for (int y = 0; y < s.ny; ++y) {
        std::vector<Matrix> k_ops(s.nb, Matrix::Zero(d, d));
        for (int b = 0; b < s.nb; ++b)
          for (int x = 0; x < s.nx; ++x)
            for (int a = 0; a < s.na; ++a) {
              const double coeff = expr.s(x, y, a, b);
              if (coeff != 0.0) k_ops[b] += coeff * traced_alice[x * s.na + a];
            }
        for (auto& k : k_ops) k = hermitize(k);
        bob.povms[y] =
            optimal_povm_update(k_ops, bob.povms[y], cfg.inner_iters, cfg.tol).povm;
      }

      h = bell_operator(expr, alice, bob);
      kf = ky_fan_value(h, t);
      trace.push_back(kf.value);
      if (kf.value - trace[trace.size() - 2] < cfg.tol) {
        restart_converged = true;
        break;
      }
    }

    const double value = trace.back();
    est.per_restart_values.push_back(value);
    est.objective_traces.push_back(std::move(trace));
    if (value > est.value) {
      est.value = value;
      est.best_alice = alice;
      est.best_bob = bob;
      est.top_eigenvalues = eigen_hermitian(h).eigenvalues;
      est.converged = restart_converged;
    }
  }
  return est;
}

}  // namespace bellcert::tsirelson
