#ifndef BELLCERT_NONDEGENERACY_HPP
#define BELLCERT_NONDEGENERACY_HPP

#include <optional>
#include <string>

#include "bellcert/tsirelson.hpp"

// Nondegeneracy certification for Bell expressions at fixed local dimension:
// an inequality is nondegenerate iff C(I,d,2) < 2*C(I,d,1), in which case a
// state violating within eps1 of C_q forces every orthogonal state at least
// eps2 = 2*C_q - C(I,d,2) - eps1 below C_q with the same measurements.
// Includes the Schmidt-rank reduction used by the dimension-monotonicity
// route.
namespace bellcert::nondeg {

using bell::Expression;
using numerics::Complex;
using numerics::Vector;
using tsirelson::SeesawConfig;

struct Certificate {
  std::string expr_name;
  int d = 0;
  double c_q = 0.0;                // seesaw estimate of C(I,d,1)
  double c2 = 0.0;                 // seesaw estimate of C(I,d,2)
  std::optional<double> c_prev;    // C(I,d-1,1), when computed
  bool nondegenerate = false;
  double eps1_max = 0.0;           // c_q - c2/2 (may be <= 0)
  std::string method = "lemma1";   // "lemma1" | "theorem1"
  // Always true: seesaw gives heuristic lower estimates of both C(I,d,1)
  // and C(I,d,2); an understated C(I,d,2) would make the certificate
  // optimistic.
  bool heuristic_caveat = true;
};

// Runs seesaw at t=1 and t=2 and applies the eigenvalue-sum criterion with
// a strictness margin of 1e-6 against float equality.
Certificate certify_nondegeneracy(const Expression& expr, int d,
                                  const SeesawConfig& cfg = {});

// The admissible eps2 for a given eps1: 2*c_q - c2 - eps1, clamped to c_q.
// Guarantees eps1 < eps2. Throws Eps1OutOfRangeError when eps1 >= eps1_max.
double epsilon2_for(const Certificate& cert, double eps1);

struct MonotonicityReport {
  int d = 0;
  double c_d = 0.0;      // C(I,d,1)
  double c_prev = 0.0;   // C(I,d-1,1)
  bool nondegenerate = false;  // c_d > c_prev implies nondegeneracy
  double c2_upper = 0.0;       // implied bound C(I,d,2) <= c_d + c_prev
};

// Dimension-monotonicity route: if C(I,d,1) > C(I,d-1,1) the expression is
// nondegenerate, with C(I,d,2) <= C(I,d,1) + C(I,d-1,1).
MonotonicityReport dimension_monotonicity_check(const Expression& expr, int d,
                                                const SeesawConfig& cfg = {});

struct SchmidtReduction {
  Complex alpha;
  Complex beta;
  Vector combined;  // normalized alpha*psi + beta*phi
  int achieved_schmidt_number = 0;
};

// From two d x d bipartite pure states of full Schmidt rank, produce a
// nonzero linear combination with Schmidt number at most d-1: matricize to
// A and B, take an eigenvalue L of A^{-1}B (the one largest in magnitude,
// for a stable cancellation), and combine with alpha=-L, beta=1.
SchmidtReduction schmidt_reduce(const Vector& psi, const Vector& phi, int d);

// Count of singular values of the matricized state above tol * sigma_max.
int schmidt_number(const Vector& state, int dim_a, int dim_b,
                   double tol = numerics::kRankTol);

// State vector -> dim_a x dim_b coefficient matrix, A(i,j) = <ij|state>.
numerics::Matrix matricize(const Vector& state, int dim_a, int dim_b);

}  // namespace bellcert::nondeg

#endif
