#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pjacobi/operator.hpp"

namespace pjacobi {

/// Numerical failure inside a dense kernel (e.g. eigensolver non-convergence).
/// The message carries a hash of the offending matrix for reproduction.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EigenResult {
    // Sorted by (real, imag) lexicographic order.
    std::vector<Complex> eigenvalues;
    // Column j is the eigenvector of eigenvalues[j]; empty unless requested.
    Matrix eigenvectors;
};

/// Full nonsymmetric eigendecomposition of a dense complex matrix.
/// Requires a square matrix of dimension <= 512.
EigenResult eig_dense(const Matrix& m, bool with_vectors = false);

/// Eigenvalues of a Hermitian matrix, ascending. Input is not checked for
/// Hermitian-ness; callers guard with is_hermitian when in doubt.
std::vector<double> eig_hermitian(const Matrix& m);

/// Smallest singular value, absolute accuracy 1e-10 * (1 + ||m||_2).
double sigma_min(const Matrix& m);

/// Largest singular value (spectral norm), relative accuracy 1e-10.
double spectral_norm(const Matrix& m);

/// Frobenius norm of M M* - M* M; zero iff M is normal.
double commutator_norm(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol);

/// FNV-1a hash over the raw matrix bytes; used in diagnostics.
std::uint64_t matrix_hash(const Matrix& m);

}  // namespace pjacobi
