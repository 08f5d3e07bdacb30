#ifndef BELLCERT_TSIRELSON_HPP
#define BELLCERT_TSIRELSON_HPP

#include <cstdint>
#include <vector>

#include "bellcert/bell.hpp"

// Heuristic estimation of C(I,d,t), the maximum over local POVMs of the sum
// of the t largest Bell-operator eigenvalues, by seesaw alternating
// optimization with random restarts. t=1 estimates the Tsirelson bound C_q.
// All estimates are lower bounds on the true maxima up to solver tolerance.
namespace bellcert::tsirelson {

using bell::Assemblage;
using bell::Expression;
using numerics::Matrix;
using numerics::RealVector;

struct SeesawConfig {
  int restarts = 50;
  int max_iters = 500;      // outer seesaw rounds per restart
  double tol = 1e-9;        // stop when the objective gain drops below this
  int inner_iters = 200;    // POVM fixed-point iterations per subproblem
  std::uint64_t seed = 0;   // restart r uses stream seed + r
};

struct TsirelsonEstimate {
  double value = 0.0;  // best objective over all restarts
  int t = 1;
  int dim = 1;
  Assemblage best_alice;
  Assemblage best_bob;
  RealVector top_eigenvalues;  // full descending spectrum of the best H
  std::vector<double> per_restart_values;
  std::vector<std::vector<double>> objective_traces;  // per restart
  bool converged = false;  // whether the best restart stopped on tolerance
};

struct KyFanResult {
  double value = 0.0;
  Matrix projector;  // rank-t sum of the top eigenprojectors
};

// Sum of the t largest eigenvalues of a Hermitian matrix, plus the
// maximizing rank-t projector: value = max over rank-t P of tr(PH).
// Ties at the t-th eigenvalue are broken by the solver's descending order;
// they affect the projector only, never the value.
KyFanResult ky_fan_value(const Matrix& h, int t);

struct PovmUpdateResult {
  std::vector<Matrix> povm;
  double objective = 0.0;  // sum_a tr(M_a K_a) of the returned POVM
  bool converged = false;
  int iters = 0;
};

// Maximizes sum_a tr(M_a K_a) over POVMs {M_a} by the fixed-point iteration
// M_a <- L^{-1/2} G_a M_a G_a L^{-1/2}, G_a = K_a + cI >= 0,
// L = sum_a G_a M_a G_a, starting from `start`. The uniform shift changes
// the objective by the constant c*dim only, so the argmax is unchanged.
// Monotone: the returned POVM never scores below `start` (improving steps
// only; a worsening step is rejected and iteration stops).
PovmUpdateResult optimal_povm_update(const std::vector<Matrix>& k_ops,
                                     const std::vector<Matrix>& start,
                                     int inner_iters, double tol);

// Seesaw estimate of C(I,d,t). Per restart: random projective assemblages,
// then alternately (1) rebuild H, (2) take the rank-t Ky Fan projector P,
// (3) update Alice's POVM per setting against
//     K_x^a = sum_{y,b} s_abxy Tr_B[(I ox M_y^b) P],
// (4) symmetrically update Bob, until the objective gain drops below tol.
// d=1 reduces to the deterministic (classical) maximum.
TsirelsonEstimate seesaw(const Expression& expr, int d, int t,
                         const SeesawConfig& cfg = {});

}  // namespace bellcert::tsirelson

#endif
