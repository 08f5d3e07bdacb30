#ifndef BELLCERT_BELL_HPP
#define BELLCERT_BELL_HPP

#include <string>
#include <vector>

#include "bellcert/numerics.hpp"

// Bell scenarios, inequalities, correlations and measurement assemblages,
// together with the operations that tie them to quantum states: Born-rule
// correlations, Bell operators and classical (deterministic-strategy) bounds.
namespace bellcert::bell {

using numerics::Matrix;

// Setting/outcome counts for the two parties. Settings and outcomes are
// 0-based everywhere in code; the conventional 1-based labels (A1, A2, ...)
// appear only in documentation.
struct Scenario {
  int nx = 1;  // Alice settings
  int ny = 1;  // Bob settings
  int na = 1;  // Alice outcomes
  int nb = 1;  // Bob outcomes

  bool operator==(const Scenario&) const = default;
  int tensor_size() const { return nx * ny * na * nb; }
  int index(int x, int y, int a, int b) const {
    return ((x * ny + y) * na + a) * nb + b;
  }
};

void check_scenario(const Scenario& s);

// A Bell expression sum_{abxy} s_abxy p(ab|xy) in probability form.
struct Expression {
  Scenario scenario;
  std::vector<double> coeffs;  // flat [x][y][a][b]
  std::string name;

  double s(int x, int y, int a, int b) const {
    return coeffs[scenario.index(x, y, a, b)];
  }
  double& s(int x, int y, int a, int b) {
    return coeffs[scenario.index(x, y, a, b)];
  }
};

Expression make_expression(const Scenario& s, std::string name = {});

// Joint conditional outcome distribution p(ab|xy); the only trusted input
// of the certification pipeline.
struct Correlation {
  Scenario scenario;
  std::vector<double> p;  // flat [x][y][a][b]

  double at(int x, int y, int a, int b) const {
    return p[scenario.index(x, y, a, b)];
  }
  double& at(int x, int y, int a, int b) {
    return p[scenario.index(x, y, a, b)];
  }
};

Correlation make_correlation(const Scenario& s);

// One party's measurements at fixed local dimension: per setting, a list of
// PSD outcome operators summing to the identity.
struct Assemblage {
  int dim = 1;
  std::vector<std::vector<Matrix>> povms;  // [setting][outcome]

  int settings() const { return static_cast<int>(povms.size()); }
  int outcomes() const {
    return povms.empty() ? 0 : static_cast<int>(povms.front().size());
  }
};

// Checks PSD (min eigenvalue >= -1e-10) and completeness (within 1e-9) of
// every setting; throws ValidationError on failure.
void check_assemblage(const Assemblage& m);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> issues;
  double max_normalization_defect = 0.0;
  // Largest deviation of one party's marginal across the other's settings.
  // Reported only; never grounds for rejection (finite-shot data violates
  // no-signaling slightly).
  double max_no_signaling_defect = 0.0;
  bool no_signaling_checked = false;
};

ValidationReport validate_correlation(const Correlation& c,
                                      bool check_no_signaling = false);

// sum_{abxy} s_abxy p(ab|xy). Throws ShapeMismatchError on scenario mismatch.
double evaluate_bell(const Expression& expr, const Correlation& c);

// p(ab|xy) = Tr(rho (M_x^a ox M_y^b)). rho must be a d^2 x d^2 density
// matrix with d = alice.dim = bob.dim.
Correlation born_correlation(const Matrix& rho, const Assemblage& alice,
                             const Assemblage& bob);

// H = sum_{abxy} s_abxy M_x^a ox M_y^b. Hermitian whenever the coefficients
// are real, which they are by construction.
Matrix bell_operator(const Expression& expr, const Assemblage& alice,
                     const Assemblage& bob);

struct ClassicalBound {
  double value = 0.0;
  std::vector<int> alice_strategy;  // per setting, the chosen outcome
  std::vector<int> bob_strategy;
};

// Exact maximum of the expression over deterministic local strategies; by
// linearity no mixture can exceed it. Guarded by na^nx * nb^ny <= 1e8.
ClassicalBound classical_bound(const Expression& expr);

// Builtin coefficient tables: "cglmp3" (three-outcome CGLMP in the
// four-probability form, classical bound 3) and "chsh" (probability form of
// the CHSH correlator expression, classical bound 2).
Expression builtin_expression(const std::string& name);

// A correlation where both parties deterministically output fixed values.
Correlation deterministic_correlation(const Scenario& s,
                                      const std::vector<int>& alice_outcome,
                                      const std::vector<int>& bob_outcome);

}  // namespace bellcert::bell

#endif
