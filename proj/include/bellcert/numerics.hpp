#ifndef BELLCERT_NUMERICS_HPP
#define BELLCERT_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bellcert/errors.hpp"

// Dense complex linear algebra for the small matrices (dim <= ~36) used
// throughout the toolkit, plus seeded random sampling of states, unitaries
// and measurements. Everything here is a pure function of its inputs;
// sampling is a pure function of the seed.
namespace bellcert::numerics {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kRankTol = 1e-9;

// Which tensor factor survives a partial trace.
enum class Party { alice, bob };

// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending,
// eigenvectors the matching orthonormal columns.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// Throws NonSquareError / NonHermitianError when the input is not a
// Hermitian square matrix within `tol` elementwise.
Spectrum eigen_hermitian(const Matrix& h, double tol = kHermitianTol);

// Tensor (Kronecker) product; (kron(A,B))(i*rB+k, j*cB+l) = A(i,j)*B(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// Partial trace of an operator on a (dim_a x dim_b)-dimensional bipartite
// space, keeping the requested party. Throws DimensionMismatchError.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Party keep);

// Singular values, descending.
RealVector singular_values(const Matrix& m);

// Count of singular values above tol * sigma_max.
int rank(const Matrix& m, double tol = kRankTol);

// All eigenvalues (with multiplicity) of a general complex matrix.
// Supported for sizes <= 12 only; this is a declared contract, not a
// numerical limit.
Vector eig_general(const Matrix& m);

// Matrix inverse; throws SingularMatrixError when the smallest singular
// value is below 1e-10 times the largest.
Matrix inverse(const Matrix& m);

// Deterministic random stream. All distributions are derived from
// std::mt19937_64 with explicit arithmetic, so a given seed yields the
// same stream on any build of this library on the same platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double gaussian();

  // Complex normal with unit variance (1/2 per component).
  Complex complex_gaussian();

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary: Ginibre matrix + QR with the R-diagonal phase
// fix. U.adjoint()*U = I within 1e-10.
Matrix haar_unitary(int dim, Rng& rng);

// Unit-norm random state vector.
Vector random_pure_state(int dim, Rng& rng);

// Random density matrix: partial trace of a random bipartite pure state
// over a dim-dimensional ancilla. PSD with unit trace.
Matrix random_density_matrix(int dim, Rng& rng);

// dim rank-1 orthogonal projectors summing to the identity.
std::vector<Matrix> random_projective_povm(int dim, Rng& rng);

// Seed-based one-shot variants of the samplers above.
Matrix sample_haar_unitary(int dim, std::uint64_t seed);
Vector sample_pure_state(int dim, std::uint64_t seed);
Matrix sample_density_matrix(int dim, std::uint64_t seed);
std::vector<Matrix> sample_projective_povm(int dim, std::uint64_t seed);

}  // namespace bellcert::numerics

#endif
