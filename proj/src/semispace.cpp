#include "semiradius/semispace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semiradius/error.hpp"

namespace semiradius {

namespace {

void require_dim(const SemiSpace& space, const CMat& t, const char* what) {
  if (t.rows() != space.dim() || t.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is " + std::to_string(t.rows()) + "x" +
                    std::to_string(t.cols()) + ", space dimension " +
                    std::to_string(space.dim()));
  }
}

void require_vec(const SemiSpace& space, const CVec& x) {
  if (x.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(x.size()) + ", space dimension " +
                    std::to_string(space.dim()));
  }
}

void require_member(const SemiSpace& space, const CMat& t) {
  if (!in_b_a(space, t)) throw Error(ErrorCode::NotInBA, "operator does not leave N(A) invariant");
}

bool is_unitary(const CMat& m, double tol) {
  const CMat id = CMat::Identity(m.rows(), m.cols());
  return norm2(m.adjoint() * m - id) <= tol && norm2(m * m.adjoint() - id) <= tol;
}

}  // namespace

SemiSpace SemiSpace::build(const CMat& a, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::BadConfig, "rank tolerance must lie in (0, 1)");
  const SpectralFactorization f = herm_eig(a);
  const Eigen::Index n = a.rows();
  SemiSpace s;
  s.tol_ = tol;
  s.a_ = hermitian_part(a);
  if (n == 0) {
    s.v_ = CMat(0, 0);
    s.null_ = CMat(0, 0);
    s.lambda_ = RVec(0);
    s.finish();
    return s;
  }
  const double top = std::max(std::abs(f.eigvals(0)), std::abs(f.eigvals(n - 1)));
  if (f.eigvals(0) < -1e-10 * top) {
    throw Error(ErrorCode::NotPSD,
                "weight has eigenvalue " + std::to_string(f.eigvals(0)) + " below -1e-10 * ||A||");
  }
  const double cutoff = tol * f.eigvals(n - 1);
  Eigen::Index kept = 0;
  for (; kept < n; ++kept) {
    const double ev = f.eigvals(n - 1 - kept);
    if (!(ev > cutoff && ev > 0.0)) break;
  }
  // Eigenvalues are ascending: the retained ones are the trailing block.
  s.v_ = f.eigvecs.rightCols(kept);
  s.lambda_ = f.eigvals.tail(kept);
  s.null_ = f.eigvecs.leftCols(n - kept);
  s.finish();
  return s;
}

SemiSpace SemiSpace::from_factors(CMat a, CMat range_basis, RVec lambda, CMat null_basis,
                                  double tol) {
  if (range_basis.cols() != lambda.size() || range_basis.rows() != a.rows() ||
      null_basis.rows() != a.rows() || range_basis.cols() + null_basis.cols() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent factorization shapes");
  }
  SemiSpace s;
  s.a_ = std::move(a);
  s.v_ = std::move(range_basis);
  s.lambda_ = std::move(lambda);
  s.null_ = std::move(null_basis);
  s.tol_ = tol;
  s.finish();
  return s;
}

void SemiSpace::finish() {
  const Eigen::Index n = a_.rows();
  if (rank() == 0) {
    a_half_ = CMat::Zero(n, n);
    a_pinv_ = CMat::Zero(n, n);
    p_ = CMat::Zero(n, n);
    a_norm_ = 0.0;
    return;
  }
  a_half_ = hermitian_part(v_ * lambda_.cwiseSqrt().asDiagonal() * v_.adjoint());
  a_pinv_ = hermitian_part(v_ * lambda_.cwiseInverse().asDiagonal() * v_.adjoint());
  p_ = hermitian_part(v_ * v_.adjoint());
  a_norm_ = lambda_.maxCoeff();
}

double SemiSpace::threshold(double factor, double op_norm) const {
  return factor * std::max(1.0, a_norm_ * op_norm);
}

cplx a_inner(const SemiSpace& space, const CVec& x, const CVec& y) {
  require_vec(space, x);
  require_vec(space, y);
  return y.dot(space.weight() * x);  // <Ax, y> = y^* A x
}

double a_norm_vec(const SemiSpace& space, const CVec& x) {
  return std::sqrt(std::max(0.0, a_inner(space, x, x).real()));
}

bool in_b_a(const SemiSpace& space, const CMat& t) {
  require_dim(space, t, "operator");
  require_finite(t, "operator");
  if (space.rank() == space.dim()) return true;
  const Eigen::Index n = space.dim();
  const CMat leak = space.sqrt_weight() * t * (CMat::Identity(n, n) - space.range_projector());
  return norm2(leak) <= space.threshold(1e-9, norm2(t));
}

CMat sharp(const SemiSpace& space, const CMat& t) {
  require_member(space, t);
  return space.weight_pinv() * t.adjoint() * space.weight();
}

CMat compress_unchecked(const SemiSpace& space, const CMat& t) {
  require_dim(space, t, "operator");
  const RVec root = space.lambda().cwiseSqrt();
  return root.asDiagonal() * (space.range_basis().adjoint() * t * space.range_basis()) *
         root.cwiseInverse().asDiagonal();
}

CMat compress(const SemiSpace& space, const CMat& t) {
  require_member(space, t);
  if (space.rank() == 0) throw Error(ErrorCode::RankZero, "compression onto a zero-dimensional range");
  return compress_unchecked(space, t);
}

CMat re_a(const SemiSpace& space, const CMat& t) { return 0.5 * (t + sharp(space, t)); }

CMat im_a(const SemiSpace& space, const CMat& t) {
  return (t - sharp(space, t)) / cplx(0.0, 2.0);
}

bool is_a_selfadjoint(const SemiSpace& space, const CMat& t) {
  require_dim(space, t, "operator");
  const CMat at = space.weight() * t;
  return norm2(at - t.adjoint() * space.weight()) <= space.threshold(1e-9, norm2(t));
}

bool is_a_positive(const SemiSpace& space, const CMat& t) {
  if (!is_a_selfadjoint(space, t)) return false;
  const CMat at = hermitian_part(space.weight() * t);
  if (at.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<CMat> es(at, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -space.threshold(1e-9, norm2(t));
}

bool is_a_unitary(const SemiSpace& space, const CMat& u) {
  if (!in_b_a(space, u)) return false;
  if (space.rank() == 0) return true;
  return is_unitary(compress(space, u), 1e-9);
}

AOperator::AOperator(SpacePtr space, CMat t) : space_(std::move(space)), t_(std::move(t)) {
  member_ = in_b_a(*space_, t_);
  if (member_ && space_->rank() > 0) m_ = compress_unchecked(*space_, t_);
}

}  // namespace semiradius
