#ifndef BELLCERT_ENTANGLEMENT_HPP
#define BELLCERT_ENTANGLEMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "bellcert/bell.hpp"
#include "bellcert/nondegeneracy.hpp"

// The analytic pipeline from an observed Bell violation to entanglement
// bounds: principal-component weight, global purity lower bound, entropy
// extremization at fixed purity, marginal purity upper bounds from the raw
// correlation, and finally a coherent-information lower bound, which also
// lower-bounds distillable entanglement and entanglement of formation.
namespace bellcert::bounds {

using bell::Correlation;
using bell::Expression;
using nondeg::Certificate;

struct ViolationAnalysis {
  double violation = 0.0;
  double eps1 = 0.0;       // max(c_q - violation, 0)
  double eps2 = 0.0;
  double a1_lower = 0.0;   // 1 - eps1/eps2, clamped to [0,1]
  double purity_lower = 0.0;  // a1^2 + (1-a1)^2/(d^2-1)
  // False when eps1 >= eps1_max: the violation is too weak for any bound,
  // which is a result ("no bound"), not an error.
  bool has_certificate = false;
};

// Applies the principal-component argument to an observed value v.
// Violations above c_q by at most 1e-6 are clamped to c_q (sampling noise);
// a larger excess means the certificate is inconsistent with the data and
// is rejected.
ViolationAnalysis violation_analysis(double v, const Certificate& cert, int d);

// Exact maximum of the Shannon entropy (base 2) over length-n probability
// vectors with sum of squares equal to gamma. Every constrained extremizer
// takes at most two distinct nonzero values, so the maximum is found by
// enumerating all two-valued candidates over support sizes. Monotone
// non-increasing in gamma; 0 at gamma=1, log2(n) at gamma=1/n.
double max_entropy_for_purity(double gamma, int n);

// Exact minimum, same enumeration (zero-padded supports included).
double min_entropy_for_purity(double gamma, int n);

// Entropy of the two-valued family with one entry lowered below uniform,
// u = 1/n - sqrt((gamma - 1/n)(n-1)/n), and the rest equal. Empty when the
// low entry would be negative (gamma too large for this family). This is a
// candidate, not the maximum; reported alongside for comparison.
std::optional<double> entropy_low_outlier_family(double gamma, int n);

struct MarginalPurity {
  double f1 = 1.0;      // Bob-setting-pair functional
  double f2 = 1.0;      // Alice-setting-pair functional
  double gamma_a = 1.0; // min(f1, f2) clamped to [1/d, 1]
};

// Upper bound on the purity of either reduced state from the correlation
// alone:
//   f1 = min over distinct y1 != y2 of
//        sum_{b1,b2} min_x (sum_a sqrt(p(a b1|x y1) p(a b2|x y2)))^2,
// f2 with the parties swapped. Scenarios with a single setting on one side
// give the trivial bound 1 for that functional.
MarginalPurity marginal_purity_upper_bound(const Correlation& c, int d);

struct EntanglementCertificate {
  ViolationAnalysis analysis;
  // Entropy bounds in bits: S(rho) <= s_upper, S(rho_A) >= s_lower.
  // Present only when the violation analysis produced a certificate.
  std::optional<double> s_upper;
  std::optional<double> s_upper_low_outlier;  // comparison family, when valid
  double f1 = 1.0;
  double f2 = 1.0;
  double gamma_a = 1.0;
  double s_lower = 0.0;
  // Signed lower bound on I_C(rho) <= E_D(rho) <= E_f(rho) in ebits;
  // negative certifies nothing. Absent when no violation certificate.
  std::optional<double> ic_lower;
  bool certified = false;  // ic_lower present and positive
  std::vector<std::string> caveats;
};

// Full pipeline: violation -> purity -> entropies -> coherent-information
// lower bound. d is the assumed local dimension; the certificate must be
// for this expression and dimension.
EntanglementCertificate certify_entanglement(const Correlation& c,
                                             const Expression& expr,
                                             const Certificate& cert, int d);

// Shannon entropy in bits of a weight vector (0 log 0 = 0); weights below
// 1e-15 are treated as zero.
double shannon_entropy_bits(const std::vector<double>& p);

}  // namespace bellcert::bounds

#endif
