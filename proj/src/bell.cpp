#include "bellcert/bell.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace bellcert::bell {

using numerics::eigen_hermitian;
using numerics::kron;

void check_scenario(const Scenario& s) {
  if (s.nx < 1 || s.ny < 1 || s.na < 1 || s.nb < 1)
    throw InvalidInputError("scenario: all setting/outcome counts must be >= 1");
}

Expression make_expression(const Scenario& s, std::string name) {
  check_scenario(s);
  Expression e;
  e.scenario = s;
  e.coeffs.assign(s.tensor_size(), 0.0);
  e.name = std::move(name);
  return e;
}

Correlation make_correlation(const Scenario& s) {
  check_scenario(s);
  Correlation c;
  c.scenario = s;
  c.p.assign(s.tensor_size(), 0.0);
  return c;
}

void check_assemblage(const Assemblage& m) {
  if (m.dim < 1) throw ValidationError("assemblage: dim must be >= 1");
  if (m.povms.empty()) throw ValidationError("assemblage: no settings");
  const auto outcomes = m.povms.front().size();
  for (std::size_t x = 0; x < m.povms.size(); ++x) {
    const auto& povm = m.povms[x];
    if (povm.size() != outcomes)
      throw ValidationError("assemblage: settings have differing outcome counts");
    Matrix sum = Matrix::Zero(m.dim, m.dim);
    for (const auto& op : povm) {
      if (op.rows() != m.dim || op.cols() != m.dim)
        throw ValidationError("assemblage: operator size does not match dim");
      auto spec = eigen_hermitian(op, 1e-8);
      if (spec.eigenvalues(spec.eigenvalues.size() - 1) < -1e-10)
        throw ValidationError("assemblage: outcome operator is not PSD");
      sum += op;
    }
    if (numerics::max_abs(sum - Matrix::Identity(m.dim, m.dim)) > 1e-9)
      throw ValidationError("assemblage: POVM does not sum to identity");
  }
}

ValidationReport validate_correlation(const Correlation& c, bool check_no_signaling) {
  const Scenario& s = c.scenario;
  check_scenario(s);
  ValidationReport report;
  if (static_cast<int>(c.p.size()) != s.tensor_size())
    throw ShapeMismatchError("correlation: tensor size does not match scenario");

  char buf[160];
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      double total = 0.0;
      for (int a = 0; a < s.na; ++a) {
        for (int b = 0; b < s.nb; ++b) {
          const double v = c.at(x, y, a, b);
          if (v < -1e-12) {
            std::snprintf(buf, sizeof buf,
                          "p[x=%d][y=%d][a=%d][b=%d] = %.6g is negative", x, y, a, b, v);
            report.valid = false;
            report.issues.emplace_back(buf);
          }
          total += v;
        }
      }
      const double defect = std::abs(total - 1.0);
      report.max_normalization_defect = std::max(report.max_normalization_defect, defect);
      if (defect > 1e-9) {
        std::snprintf(buf, sizeof buf, "slice (x=%d,y=%d) sums to %.12g, not 1", x, y, total);
        report.valid = false;
        report.issues.emplace_back(buf);
      }
    }
  }

  if (check_no_signaling) {
    report.no_signaling_checked = true;
    double worst = 0.0;
    // Alice's marginal must not depend on Bob's setting, and vice versa.
    for (int x = 0; x < s.nx; ++x)
      for (int a = 0; a < s.na; ++a)
        for (int y1 = 0; y1 < s.ny; ++y1)
          for (int y2 = y1 + 1; y2 < s.ny; ++y2) {
            double m1 = 0.0, m2 = 0.0;
            for (int b = 0; b < s.nb; ++b) {
              m1 += c.at(x, y1, a, b);
              m2 += c.at(x, y2, a, b);
            }
            worst = std::max(worst, std::abs(m1 - m2));
          }
    for (int y = 0; y < s.ny; ++y)
      for (int b = 0; b < s.nb; ++b)
        for (int x1 = 0; x1 < s.nx; ++x1)
          for (int x2 = x1 + 1; x2 < s.nx; ++x2) {
            double m1 = 0.0, m2 = 0.0;
            for (int a = 0; a < s.na; ++a) {
              m1 += c.at(x1, y, a, b);
              m2 += c.at(x2, y, a, b);
            }
            worst = std::max(worst, std::abs(m1 - m2));
          }
    report.max_no_signaling_defect = worst;
  }
  return report;
}

double evaluate_bell(const Expression& expr, const Correlation& c) {
  if (!(expr.scenario == c.scenario))
    throw ShapeMismatchError("evaluate_bell: expression and correlation scenarios differ");
  double value = 0.0;
  for (std::size_t i = 0; i < expr.coeffs.size(); ++i) value += expr.coeffs[i] * c.p[i];
  return value;
}

namespace {

Scenario joint_scenario(const Assemblage& alice, const Assemblage& bob) {
  Scenario s;
  s.nx = alice.settings();
  s.ny = bob.settings();
  s.na = alice.outcomes();
  s.nb = bob.outcomes();
  check_scenario(s);
  return s;
}

}  // namespace

Correlation born_correlation(const Matrix& rho, const Assemblage& alice,
                             const Assemblage& bob) {
  if (alice.dim != bob.dim)
    throw DimensionMismatchError("born_correlation: parties have different local dimensions");
  const int d = alice.dim;
  if (rho.rows() != static_cast<Eigen::Index>(d) * d || rho.rows() != rho.cols())
    throw DimensionMismatchError("born_correlation: state size is not d^2 x d^2");
  if (!numerics::is_hermitian(rho, 1e-8) || std::abs(rho.trace().real() - 1.0) > 1e-8 ||
      std::abs(rho.trace().imag()) > 1e-8)
    throw NotAStateError("born_correlation: rho is not a unit-trace Hermitian matrix");
  {
    auto spec = eigen_hermitian(rho, 1e-8);
    if (spec.eigenvalues(spec.eigenvalues.size() - 1) < -1e-8)
      throw NotAStateError("born_correlation: rho has a negative eigenvalue");
  }

  Correlation c = make_correlation(joint_scenario(alice, bob));
  const Scenario& s = c.scenario;
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y)
      for (int a = 0; a < s.na; ++a)
        for (int b = 0; b < s.nb; ++b) {
          const double v =
              (rho * kron(alice.povms[x][a], bob.povms[y][b])).trace().real();
          // Clamp float dust; genuine negatives cannot arise from valid inputs.
          c.at(x, y, a, b) = (v < 0.0 && v >= -1e-12) ? 0.0 : v;
        }
  return c;
}

Matrix bell_operator(const Expression& expr, const Assemblage& alice,
                     const Assemblage& bob) {
  const Scenario joint = joint_scenario(alice, bob);
  if (!(expr.scenario == joint))
    throw DimensionMismatchError("bell_operator: assemblages do not match the expression scenario");
  if (alice.dim != bob.dim)
    throw DimensionMismatchError("bell_operator: parties have different local dimensions");
  const int d2 = alice.dim * bob.dim;
  Matrix h = Matrix::Zero(d2, d2);
  const Scenario& s = expr.scenario;
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y)
      for (int a = 0; a < s.na; ++a)
        for (int b = 0; b < s.nb; ++b) {
          const double coeff = expr.s(x, y, a, b);
          if (coeff != 0.0) h += coeff * kron(alice.povms[x][a], bob.povms[y][b]);
        }
  return h;
}

ClassicalBound classical_bound(const Expression& expr) {
  const Scenario& s = expr.scenario;
  const double combos = std::pow(static_cast<double>(s.na), s.nx) *
                        std::pow(static_cast<double>(s.nb), s.ny);
  if (combos > 1e8)
    throw TooLargeToEnumerateError("classical_bound: strategy space exceeds 1e8");

  ClassicalBound best;
  best.value = -std::numeric_limits<double>::infinity();

  // Enumerate Alice's strategies; for a fixed one, Bob's settings decouple
  // and the best outcome per setting is a direct maximum.
  std::vector<int> alice(s.nx, 0);
  std::vector<double> w(s.ny * s.nb);
  std::vector<int> bob(s.ny, 0);
  while (true) {
    std::fill(w.begin(), w.end(), 0.0);
    for (int y = 0; y < s.ny; ++y)
      for (int b = 0; b < s.nb; ++b)
        for (int x = 0; x < s.nx; ++x) w[y * s.nb + b] += expr.s(x, y, alice[x], b);

    double value = 0.0;
    for (int y = 0; y < s.ny; ++y) {
      int arg = 0;
      double m = w[y * s.nb];
      for (int b = 1; b < s.nb; ++b)
        if (w[y * s.nb + b] > m) {
          m = w[y * s.nb + b];
          arg = b;
        }
      value += m;
      bob[y] = arg;
    }
    if (value > best.value) {
      best.value = value;
      best.alice_strategy = alice;
      best.bob_strategy = bob;
    }

    // Next Alice assignment (odometer).
    int pos = 0;
    while (pos < s.nx && ++alice[pos] == s.na) alice[pos++] = 0;
    if (pos == s.nx) break;
  }
  return best;
}

Expression builtin_expression(const std::string& name) {
  if (name == "cglmp3") {
    // P(A2>=B2) + P(B2>=A1) + P(A1>=B1) + P(B1>A2) <= 3, three outcomes,
    // stored with 0-based settings.
    Expression e = make_expression({2, 2, 3, 3}, "cglmp3");
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a >= b) e.s(1, 1, a, b) = 1.0;  // P(A2 >= B2)
        if (b >= a) e.s(0, 1, a, b) = 1.0;  // P(B2 >= A1)
        if (a >= b) e.s(0, 0, a, b) = 1.0;  // P(A1 >= B1)
        if (b > a) e.s(1, 0, a, b) = 1.0;   // P(B1 > A2)
      }
    return e;
  }
  if (name == "chsh") {
    // E(1,1) + E(1,2) + E(2,1) - E(2,2) <= 2 written in probability form.
    Expression e = make_expression({2, 2, 2, 2}, "chsh");
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double sign = (x == 1 && y == 1) ? -1.0 : 1.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            e.s(x, y, a, b) = sign * (((a + b) % 2 == 0) ? 1.0 : -1.0);
      }
    return e;
  }
  throw UnknownNameError("builtin_expression: unknown name '" + name + "'");
}

Correlation deterministic_correlation(const Scenario& s,
                                      const std::vector<int>& alice_outcome,
                                      const std::vector<int>& bob_outcome) {
  if (static_cast<int>(alice_outcome.size()) != s.nx ||
      static_cast<int>(bob_outcome.size()) != s.ny)
    throw ShapeMismatchError("deterministic_correlation: strategy length mismatch");
  Correlation c = make_correlation(s);
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y) c.at(x, y, alice_outcome[x], bob_outcome[y]) = 1.0;
  return c;
}

}  // namespace bellcert::bell
