#pragma once

// Semi-Hilbertian structure induced by a positive semidefinite weight A.
//
// With A = V diag(lambda) V^* (V: orthonormal basis of R(A)), every
// operator T that leaves N(A) invariant is represented on R(A) by the
// r x r compression
//
//     M = diag(lambda)^{1/2} V^* T V diag(lambda)^{-1/2}.
//
// For x = V diag(lambda)^{-1/2} y + n with n in N(A) one has
// <Tx, x>_A = y^* M y and ||x||_A = ||y||, so the A-seminorm, A-numerical
// radius and friends of T are the classical quantities of M, and T -> M is
// a unital *-homomorphism carrying the A-adjoint to the conjugate transpose.
//
// In finite dimension ||T||_A is finite for every T, so the set of
// A-bounded operators is all of B(H); only membership in B_A (existence of
// an A-adjoint) is modelled.

#include <memory>

#include "semiradius/matrix_kernel.hpp"

namespace semiradius {

class SemiSpace {
 public:
  /// Factorizes A. Throws NonSquare, NotHermitian, NotPSD, NonFinite.
  static SemiSpace build(const CMat& a, double tol = kDefaultRankTol);

  /// Assembles a space from an already known factorization. range_basis and
  /// null_basis together must form a unitary matrix.
  static SemiSpace from_factors(CMat a, CMat range_basis, RVec lambda, CMat null_basis,
                                double tol);

  Eigen::Index dim() const { return a_.rows(); }
  Eigen::Index rank() const { return v_.cols(); }
  double tol() const { return tol_; }

  const CMat& weight() const { return a_; }
  const CMat& range_basis() const { return v_; }
  const CMat& null_basis() const { return null_; }
  const RVec& lambda() const { return lambda_; }
  const CMat& sqrt_weight() const { return a_half_; }
  const CMat& weight_pinv() const { return a_pinv_; }
  const CMat& range_projector() const { return p_; }
  double weight_norm() const { return a_norm_; }

  /// Relative verdict threshold for an operator of the given norm:
  /// factor * max(1, ||A|| * ||T||).
  double threshold(double factor, double op_norm) const;

 private:
  SemiSpace() = default;
  void finish();

  CMat a_;
  CMat v_;
  CMat null_;
  RVec lambda_;
  CMat a_half_;
  CMat a_pinv_;
  CMat p_;
  double a_norm_ = 0.0;
  double tol_ = kDefaultRankTol;
};

using SpacePtr = std::shared_ptr<const SemiSpace>;

cplx a_inner(const SemiSpace& space, const CVec& x, const CVec& y);
double a_norm_vec(const SemiSpace& space, const CVec& x);

/// T in B_A  <=>  ||A^{1/2} T (I - P)|| <= 1e-9 * max(1, ||A|| ||T||),
/// i.e. T maps N(A) into N(A).
bool in_b_a(const SemiSpace& space, const CMat& t);

/// A^+ T^* A. Throws NotInBA for non-members.
CMat sharp(const SemiSpace& space, const CMat& t);

/// The r x r compression. Throws NotInBA, RankZero.
CMat compress(const SemiSpace& space, const CMat& t);

/// Compression formula without the membership check. For any T,
/// ||A^{1/2} T V diag(lambda)^{-1/2}|| equals the spectral norm of this.
CMat compress_unchecked(const SemiSpace& space, const CMat& t);

CMat re_a(const SemiSpace& space, const CMat& t);
CMat im_a(const SemiSpace& space, const CMat& t);

bool is_a_selfadjoint(const SemiSpace& space, const CMat& t);
bool is_a_positive(const SemiSpace& space, const CMat& t);
bool is_a_unitary(const SemiSpace& space, const CMat& u);

/// An operator bound to a space, with its membership verdict and (for
/// members of positive-rank spaces) its compression computed once.
class AOperator {
 public:
  AOperator(SpacePtr space, CMat t);

  const SemiSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const CMat& matrix() const { return t_; }
  bool member() const { return member_; }
  /// Empty (0x0) when not a member or when rank is zero.
  const CMat& compressed() const { return m_; }

 private:
  SpacePtr space_;
  CMat t_;
  bool member_ = false;
  CMat m_;
};

}  // namespace semiradius
