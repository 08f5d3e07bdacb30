#include "bellcert/nondegeneracy.hpp"

#include <cmath>

namespace bellcert::nondeg {

using numerics::Matrix;

namespace {
constexpr double kStrictnessMargin = 1e-6;
}

Certificate certify_nondegeneracy(const Expression& expr, int d, const SeesawConfig& cfg) {
  if (d < 2) throw InvalidInputError("certify_nondegeneracy: d must be >= 2");
  const auto top1 = tsirelson::seesaw(expr, d, 1, cfg);
  const auto top2 = tsirelson::seesaw(expr, d, 2, cfg);

  Certificate cert;
  cert.expr_name = expr.name;
  cert.d = d;
  cert.c_q = top1.value;
  cert.c2 = top2.value;
  cert.nondegenerate = cert.c2 < 2.0 * cert.c_q - kStrictnessMargin;
  cert.eps1_max = cert.c_q - 0.5 * cert.c2;
  cert.method = "lemma1";
  cert.heuristic_caveat = true;
  return cert;
}

double epsilon2_for(const Certificate& cert, double eps1) {
  if (!(eps1 >= 0.0) || eps1 >= cert.eps1_max)
    throw Eps1OutOfRangeError(
        "epsilon2_for: eps1 must lie in [0, eps1_max); no certificate is possible otherwise");
  const double eps2 = 2.0 * cert.c_q - cert.c2 - eps1;
  // The definition of nondegeneracy caps eps2 at c_q; clamping only
  // strengthens the resulting claims.
  return std::min(eps2, cert.c_q);
}

MonotonicityReport dimension_monotonicity_check(const Expression& expr, int d,
                                                const SeesawConfig& cfg) {
  if (d < 2) throw InvalidInputError("dimension_monotonicity_check: d must be >= 2");
  MonotonicityReport rep;
  rep.d = d;
  rep.c_d = tsirelson::seesaw(expr, d, 1, cfg).value;
  rep.c_prev = tsirelson::seesaw(expr, d - 1, 1, cfg).value;
  rep.nondegenerate = rep.c_d > rep.c_prev + kStrictnessMargin;
  rep.c2_upper = rep.c_d + rep.c_prev;
  return rep;
}

Matrix matricize(const Vector& state, int dim_a, int dim_b) {
  if (state.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionMismatchError("matricize: state length is not dim_a*dim_b");
  Matrix m(dim_a, dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j) m(i, j) = state(i * dim_b + j);
  return m;
}

int schmidt_number(const Vector& state, int dim_a, int dim_b, double tol) {
  return numerics::rank(matricize(state, dim_a, dim_b), tol);
}

SchmidtReduction schmidt_reduce(const Vector& psi, const Vector& phi, int d) {
  if (d < 2) throw InvalidInputError("schmidt_reduce: d must be >= 2");
  if (schmidt_number(psi, d, d) != d || schmidt_number(phi, d, d) != d)
    throw NotFullSchmidtRankError("schmidt_reduce: both states must have Schmidt number d");

  const Matrix a = matricize(psi, d, d);
  const Matrix b = matricize(phi, d, d);
  const Matrix c = numerics::inverse(a) * b;

  // Any eigenvalue works (C is full rank, so none is zero); the largest in
  // magnitude gives the most stable cancellation.
  const Vector eigs = numerics::eig_general(c);
  Eigen::Index pick = 0;
  for (Eigen::Index i = 1; i < eigs.size(); ++i)
    if (std::abs(eigs(i)) > std::abs(eigs(pick))) pick = i;
  const Complex lambda = eigs(pick);

  SchmidtReduction red;
  red.alpha = -lambda;
  red.beta = Complex(1.0, 0.0);
  Vector combined = red.alpha * psi + red.beta * phi;
  const double norm = combined.norm();
  if (norm <= 1e-10 * (std::abs(red.alpha) * psi.norm() + std::abs(red.beta) * phi.norm()))
    throw ProportionalStatesError(
        "schmidt_reduce: the combination cancels; the states are proportional");
  red.combined = combined / norm;
  red.achieved_schmidt_number = schmidt_number(red.combined, d, d);
  return red;
}

}  // namespace bellcert::nondeg
