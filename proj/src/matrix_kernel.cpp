#include "semiradius/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semiradius/error.hpp"

namespace semiradius {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInBA: return "NotInBA";
    case ErrorCode::RankZero: return "RankZero";
    case ErrorCode::UnboundedNumericalRadius: return "UnboundedNumericalRadius";
    case ErrorCode::BlockShapeMismatch: return "BlockShapeMismatch";
    case ErrorCode::BadKind: return "BadKind";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadProfile: return "BadProfile";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " is " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
}

// Symmetrize after checking that the input is Hermitian up to round-off.
CMat checked_hermitian(const CMat& h) {
  require_square(h, "Hermitian input");
  require_finite(h, "Hermitian input");
  if (hermitian_defect(h) > 1e-10) {
    throw Error(ErrorCode::NotHermitian, "asymmetry beyond 1e-10 relative");
  }
  return hermitian_part(h);
}

}  // namespace

void require_finite(const CMat& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has a NaN or infinite entry");
  }
}

double norm2(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

double hermitian_defect(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return norm2(m - m.adjoint()) / std::max(1.0, norm2(m));
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

SpectralFactorization herm_eig(const CMat& h) {
  const CMat sym = checked_hermitian(h);
  if (sym.rows() == 0) return {RVec(0), CMat(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMat> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec herm_eigvals(const CMat& h) {
  const CMat sym = checked_hermitian(h);
  if (sym.rows() == 0) return RVec(0);
  Eigen::SelfAdjointEigenSolver<CMat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMat pinv(const CMat& m, double tol) {
  require_finite(m, "pinv input");
  CMat out = CMat::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  const double cutoff = tol * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      out += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).adjoint();
    }
  }
  return out;
}

CMat psd_sqrt(const CMat& a) {
  const SpectralFactorization f = herm_eig(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return CMat(0, 0);
  const double scale = std::max(std::abs(f.eigvals(0)), std::abs(f.eigvals(n - 1)));
  if (f.eigvals(0) < -1e-10 * scale) {
    throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(f.eigvals(0)) +
                                       " below -1e-10 * ||A||");
  }
  RVec root = f.eigvals.cwiseMax(0.0).cwiseSqrt();
  CMat s = f.eigvecs * root.asDiagonal() * f.eigvecs.adjoint();
  return hermitian_part(s);
}

CMat orth_proj_range(const CMat& a, double tol) {
  require_square(a, "orth_proj_range input");
  require_finite(a, "orth_proj_range input");
  const Eigen::Index n = a.rows();
  CMat p = CMat::Zero(n, n);
  if (n == 0) return p;
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  const RVec& s = svd.singularValues();
  const double cutoff = tol * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      p += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
    }
  }
  return hermitian_part(p);
}

CMat identity(Eigen::Index n) { return CMat::Identity(n, n); }

}  // namespace semiradius
