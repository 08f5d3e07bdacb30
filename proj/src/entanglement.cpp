#include "bellcert/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bellcert::bounds {

namespace {

double xlog2x(double p) { return p > 1e-15 ? p * std::log2(p) : 0.0; }

// Entropy in bits of (u repeated k times, v repeated m-k times).
double two_value_entropy(double u, int k, double v, int mk) {
  return -(k * xlog2x(u) + mk * xlog2x(v));
}

// Visits every two-valued stationary distribution with sum 1 and sum of
// squares gamma: support size m, k entries equal to u and m-k equal to v.
template <typename Visit>
void enumerate_two_valued(double gamma, int n, Visit&& visit) {
  for (int m = 1; m <= n; ++m) {
    if (gamma < 1.0 / m - 1e-13) continue;  // support m cannot reach this purity
    if (m == 1) {
      if (gamma >= 1.0 - 1e-12) visit(1.0, 1, 0.0, 0);
      continue;
    }
    for (int k = 1; k < m; ++k) {
      // v solves m(m-k) v^2 - 2(m-k) v + (1 - k*gamma) = 0.
      const double disc = k * (m - k) * std::max(m * gamma - 1.0, 0.0);
      const double root = std::sqrt(disc);
      for (const double sign : {1.0, -1.0}) {
        const double v = ((m - k) + sign * root) / (static_cast<double>(m) * (m - k));
        const double u = (1.0 - (m - k) * v) / k;
        if (u < -1e-14 || v < -1e-14) continue;
        visit(std::max(u, 0.0), k, std::max(v, 0.0), m - k);
      }
    }
  }
}

void check_gamma(double gamma, int n, const char* who) {
  if (n < 1) throw InvalidInputError(std::string(who) + ": n must be >= 1");
  if (gamma < 1.0 / n - 1e-12 || gamma > 1.0 + 1e-12)
    throw GammaOutOfRangeError(std::string(who) + ": gamma must lie in [1/n, 1]");
}

}  // namespace

double shannon_entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

double max_entropy_for_purity(double gamma, int n) {
  check_gamma(gamma, n, "max_entropy_for_purity");
  gamma = std::clamp(gamma, 1.0 / n, 1.0);
  double best = -std::numeric_limits<double>::infinity();
  enumerate_two_valued(gamma, n, [&](double u, int k, double v, int mk) {
    best = std::max(best, two_value_entropy(u, k, v, mk));
  });
  return best;
}

double min_entropy_for_purity(double gamma, int n) {
  check_gamma(gamma, n, "min_entropy_for_purity");
  gamma = std::clamp(gamma, 1.0 / n, 1.0);
  double best = std::numeric_limits<double>::infinity();
  enumerate_two_valued(gamma, n, [&](double u, int k, double v, int mk) {
    best = std::min(best, two_value_entropy(u, k, v, mk));
  });
  return best;
}

std::optional<double> entropy_low_outlier_family(double gamma, int n) {
  check_gamma(gamma, n, "entropy_low_outlier_family");
  const double u = 1.0 / n - std::sqrt(std::max(gamma - 1.0 / n, 0.0) * (n - 1.0) / n);
  if (u < 0.0) return std::nullopt;
  const double v = (1.0 - u) / (n - 1.0);
  return two_value_entropy(u, 1, v, n - 1);
}

ViolationAnalysis violation_analysis(double v, const Certificate& cert, int d) {
  if (d < 2) throw InvalidInputError("violation_analysis: d must be >= 2");
  if (v > cert.c_q + 1e-6)
    throw ValidationError(
        "violation_analysis: observed value exceeds the certificate's C_q by more than "
        "sampling noise; the certificate is inconsistent with the data");

  ViolationAnalysis out;
  out.violation = v;
  out.eps1 = std::max(cert.c_q - v, 0.0);
  if (out.eps1 >= cert.eps1_max) return out;  // no bound possible: empty analysis

  out.eps2 = epsilon2_for(cert, out.eps1);
  out.a1_lower = std::clamp(1.0 - out.eps1 / out.eps2, 0.0, 1.0);
  const double rest = 1.0 - out.a1_lower;
  out.purity_lower = out.a1_lower * out.a1_lower +
                     rest * rest / (static_cast<double>(d) * d - 1.0);
  out.purity_lower = std::clamp(out.purity_lower, 1.0 / (static_cast<double>(d) * d), 1.0);
  out.has_certificate = true;
  return out;
}

namespace {

// min over x of (sum_a sqrt(p(a b1|x y1) p(a b2|x y2)))^2, then summed over
// (b1, b2); the fidelity-type overlap functional for one setting pair.
double setting_pair_overlap(const Correlation& c, int y1, int y2) {
  const bell::Scenario& s = c.scenario;
  double total = 0.0;
  for (int b1 = 0; b1 < s.nb; ++b1)
    for (int b2 = 0; b2 < s.nb; ++b2) {
      double best = std::numeric_limits<double>::infinity();
      for (int x = 0; x < s.nx; ++x) {
        double inner = 0.0;
        for (int a = 0; a < s.na; ++a)
          inner += std::sqrt(std::max(c.at(x, y1, a, b1), 0.0) *
                             std::max(c.at(x, y2, a, b2), 0.0));
        best = std::min(best, inner * inner);
      }
      total += best;
    }
  return total;
}

Correlation swap_parties(const Correlation& c) {
  const bell::Scenario& s = c.scenario;
  Correlation out = bell::make_correlation({s.ny, s.nx, s.nb, s.na});
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y)
      for (int a = 0; a < s.na; ++a)
        for (int b = 0; b < s.nb; ++b) out.at(y, x, b, a) = c.at(x, y, a, b);
  return out;
}

}  // namespace

MarginalPurity marginal_purity_upper_bound(const Correlation& c, int d) {
  if (d < 1) throw InvalidInputError("marginal_purity_upper_bound: d must be >= 1");
  const bell::Scenario& s = c.scenario;
  if (static_cast<int>(c.p.size()) != s.tensor_size())
    throw ShapeMismatchError("marginal_purity_upper_bound: tensor size mismatch");

  MarginalPurity out;
  // Minimized over distinct setting pairs only: an equal pair always yields
  // 1 and would carry no information.
  double f1 = std::numeric_limits<double>::infinity();
  for (int y1 = 0; y1 < s.ny; ++y1)
    for (int y2 = 0; y2 < s.ny; ++y2)
      if (y1 != y2) f1 = std::min(f1, setting_pair_overlap(c, y1, y2));
  out.f1 = std::isfinite(f1) ? f1 : 1.0;

  const Correlation swapped = swap_parties(c);
  double f2 = std::numeric_limits<double>::infinity();
  for (int x1 = 0; x1 < s.nx; ++x1)
    for (int x2 = 0; x2 < s.nx; ++x2)
      if (x1 != x2) f2 = std::min(f2, setting_pair_overlap(swapped, x1, x2));
  out.f2 = std::isfinite(f2) ? f2 : 1.0;

  // A d-dimensional marginal has purity in [1/d, 1]; data outside that
  // window is noise and is clamped before any entropy use.
  out.gamma_a = std::clamp(std::min(out.f1, out.f2), 1.0 / d, 1.0);
  return out;
}

EntanglementCertificate certify_entanglement(const Correlation& c, const Expression& expr,
                                             const Certificate& cert, int d) {
  if (!(expr.scenario == c.scenario))
    throw ShapeMismatchError("certify_entanglement: expression and correlation scenarios differ");
  if (cert.d != d)
    throw InvalidInputError("certify_entanglement: certificate is for a different dimension");

  EntanglementCertificate out;
  const double v = evaluate_bell(expr, c);
  out.analysis = violation_analysis(v, cert, d);

  const MarginalPurity mp = marginal_purity_upper_bound(c, d);
  out.f1 = mp.f1;
  out.f2 = mp.f2;
  out.gamma_a = mp.gamma_a;
  out.s_lower = min_entropy_for_purity(mp.gamma_a, d);

  if (cert.heuristic_caveat)
    out.caveats.emplace_back(
        "c_q and c2 are heuristic seesaw lower estimates; an understated c2 "
        "makes the bound optimistic");

  if (!out.analysis.has_certificate) {
    out.caveats.emplace_back("violation too far below c_q: no bound certified");
    return out;
  }

  out.s_upper = max_entropy_for_purity(out.analysis.purity_lower, d * d);
  out.s_upper_low_outlier = entropy_low_outlier_family(out.analysis.purity_lower, d * d);
  out.ic_lower = out.s_lower - *out.s_upper;
  out.certified = *out.ic_lower > 0.0;
  if (!out.certified)
    out.caveats.emplace_back("ic_lower is not positive: nothing certified");
  return out;
}

}  // namespace bellcert::bounds
