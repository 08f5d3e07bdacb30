#include "bellcert/numerics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace bellcert::numerics {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Spectrum eigen_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols())
    throw NonSquareError("eigen_hermitian: matrix is not square");
  if (!is_hermitian(h, tol))
    throw NonHermitianError("eigen_hermitian: matrix is not Hermitian within tolerance");

  // Symmetrize first so float dust in the input cannot leak into the result.
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigen_hermitian: eigensolver failed to converge");

  // Eigen sorts ascending; flip to descending.
  const auto n = h.rows();
  Spectrum out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Party keep) {
  if (dim_a < 1 || dim_b < 1 ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.rows() != m.cols())
    throw DimensionMismatchError("partial_trace: matrix size is not dim_a*dim_b square");

  if (keep == Party::alice) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int k = 0; k < dim_b; ++k)
    for (int l = 0; l < dim_b; ++l)
      for (int i = 0; i < dim_a; ++i)
        out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

RealVector singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

int rank(const Matrix& m, double tol) {
  RealVector sv = singular_values(m);
  if (sv.size() == 0) return 0;
  const double cutoff = tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

Vector eig_general(const Matrix& m) {
  if (m.rows() != m.cols())
    throw NonSquareError("eig_general: matrix is not square");
  if (m.rows() > 12)
    throw InvalidInputError("eig_general: only sizes <= 12 are supported");
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eig_general: eigensolver failed to converge");
  return solver.eigenvalues();
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols())
    throw NonSquareError("inverse: matrix is not square");
  RealVector sv = singular_values(m);
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw SingularMatrixError("inverse: matrix is singular or too ill-conditioned");
  return m.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols()));
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on two explicit 53-bit uniforms.
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_gaussian() {
  return {gaussian() * std::numbers::sqrt2 / 2.0, gaussian() * std::numbers::sqrt2 / 2.0};
}

Matrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw InvalidInputError("haar_unitary: dim must be >= 1");
  Matrix ginibre(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      ginibre(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Vector random_pure_state(int dim, Rng& rng) {
  if (dim < 1) throw InvalidInputError("random_pure_state: dim must be >= 1");
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = rng.complex_gaussian();
  const double n = psi.norm();
  if (n == 0.0) return random_pure_state(dim, rng);
  return psi / n;
}

Matrix random_density_matrix(int dim, Rng& rng) {
  Vector psi = random_pure_state(dim * dim, rng);
  return partial_trace(psi * psi.adjoint(), dim, dim, Party::alice);
}

std::vector<Matrix> random_projective_povm(int dim, Rng& rng) {
  Matrix u = haar_unitary(dim, rng);
  std::vector<Matrix> povm;
  povm.reserve(dim);
  for (int a = 0; a < dim; ++a)
    povm.push_back(u.col(a) * u.col(a).adjoint());
  return povm;
}

Matrix sample_haar_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(dim, rng);
}

Vector sample_pure_state(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure_state(dim, rng);
}

Matrix sample_density_matrix(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(dim, rng);
}

std::vector<Matrix> sample_projective_povm(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_projective_povm(dim, rng);
}

}  // namespace bellcert::numerics
