#pragma once

// Dense complex matrix primitives. Everything above this layer talks in
// CMat/CVec and never touches an Eigen decomposition directly.

#include <complex>

#include <Eigen/Dense>

namespace semiradius {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Singular/eigen values at or below this fraction of the largest one are
/// treated as zero.
inline constexpr double kDefaultRankTol = 1e-10;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct SpectralFactorization {
  RVec eigvals;  // ascending
  CMat eigvecs;  // orthonormal columns, eigvecs.col(i) pairs with eigvals(i)
};

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const CMat& m, const char* what = "matrix");

/// Spectral (operator 2-) norm.
double norm2(const CMat& m);

/// Spectral norm of (m - m^*) relative to max(1, norm2(m)).
double hermitian_defect(const CMat& m);

CMat hermitian_part(const CMat& m);

SpectralFactorization herm_eig(const CMat& h);

/// Eigenvalues only, ascending. Same preconditions as herm_eig.
RVec herm_eigvals(const CMat& h);

/// Moore-Penrose pseudoinverse by SVD; singular values <= tol * sigma_max
/// are dropped.
CMat pinv(const CMat& m, double tol = kDefaultRankTol);

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-1e-10 * ||A||, 0) are clipped to zero; anything more negative is NotPSD.
CMat psd_sqrt(const CMat& a);

/// Orthogonal projector onto R(A), i.e. A * pinv(A).
CMat orth_proj_range(const CMat& a, double tol = kDefaultRankTol);

CMat identity(Eigen::Index n);

}  // namespace semiradius
