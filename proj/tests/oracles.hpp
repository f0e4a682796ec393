#pragma once

// Reference computations that share no code with the library beyond the
// matrix type. They are slow and blunt on purpose.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Test-side generator, deliberately independent of the library's RNG.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  cplx z() { return {nd_(eng_), nd_(eng_)}; }

  CMat mat(Eigen::Index r, Eigen::Index c) {
    CMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = z();
    }
    return m;
  }

  CMat unitary(Eigen::Index n) {
    Eigen::HouseholderQR<CMat> qr(mat(n, n));
    return qr.householderQ() * CMat::Identity(n, n);
  }

  CMat hermitian(Eigen::Index n) {
    const CMat g = mat(n, n);
    return 0.5 * (g + g.adjoint());
  }

  // A = Q_r diag(lambda) Q_r^*, lambda log-uniform over [1/spread, spread]^(1/2).
  struct Weight {
    CMat a;
    CMat q;  // unitary; the first r columns span R(A)
    int r = 0;
  };

  Weight weight(int n, int r, double spread = 1e2) {
    Weight w;
    w.q = unitary(n);
    w.r = r;
    RVec lambda = RVec::Zero(n);
    for (int i = 0; i < r; ++i) lambda(i) = std::pow(spread, uniform(-1.0, 1.0));
    w.a = w.q * lambda.cast<cplx>().asDiagonal() * w.q.adjoint();
    w.a = 0.5 * (w.a + w.a.adjoint()).eval();
    return w;
  }

  // Leaves span(q_{r+1..n}) = N(A) invariant.
  CMat member(const Weight& w) {
    const Eigen::Index n = w.q.rows();
    CMat b = mat(n, n);
    b.topRightCorner(w.r, n - w.r).setZero();
    return w.q * b * w.q.adjoint();
  }

  // Sends a null vector into R(A) (requires 0 < r < n).
  CMat nonmember(const Weight& w) {
    const Eigen::Index n = w.q.rows();
    CMat b = mat(n, n);
    b(0, n - 1) = cplx(3.0, 0.0);
    return w.q * b * w.q.adjoint();
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> nd_{0.0, 1.0};
};

// Orthonormal basis of R(A) from an SVD.
inline CMat range_basis_svd(const CMat& a, double tol = 1e-10) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU);
  const RVec& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * s(0)) ++r;
  if (s.size() == 0 || s(0) == 0.0) r = 0;
  return svd.matrixU().leftCols(r);
}

// 2x2 Hermitian eigenvalues from the characteristic polynomial, ascending.
inline std::pair<double, double> eig2x2(const CMat& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double b2 = std::norm(h(0, 1));
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {mid - rad, mid + rad};
}

// Largest eigenvalue of the pencil (Q^* Re(e^{it} A T) Q, Q^* A Q) on R(A):
// sup of Re(e^{it} <Tx, x>_A) over ||x||_A = 1, x in R(A).
inline double pencil_support(const CMat& a, const CMat& q, const CMat& t, double theta) {
  const CMat at = a * t;
  const cplx e = std::polar(1.0, theta);
  const CMat h = q.adjoint() * (0.5 * (e * at + std::conj(e) * at.adjoint())) * q;
  const CMat k = q.adjoint() * a * q;
  Eigen::GeneralizedSelfAdjointEigenSolver<CMat> ges(0.5 * (h + h.adjoint()), 0.5 * (k + k.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return ges.eigenvalues().maxCoeff();
}

// Ambient-coordinate numerical radius: every grid local maximum is refined
// by ternary search. No Lipschitz pruning, no compression.
inline double ambient_radius(const CMat& a, const CMat& t, int grid = 1024) {
  const CMat q = range_basis_svd(a);
  if (q.cols() == 0) return 0.0;
  const double step = 2.0 * kPi / grid;
  std::vector<double> g(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) g[static_cast<std::size_t>(j)] = pencil_support(a, q, t, step * j);
  double best = *std::max_element(g.begin(), g.end());
  for (int j = 0; j < grid; ++j) {
    const double prev = g[static_cast<std::size_t>((j + grid - 1) % grid)];
    const double next = g[static_cast<std::size_t>((j + 1) % grid)];
    const double here = g[static_cast<std::size_t>(j)];
    if (here < prev || here < next) continue;
    double lo = step * (j - 1);
    double hi = step * (j + 1);
    for (int it = 0; it < 120; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (pencil_support(a, q, t, m1) < pencil_support(a, q, t, m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    best = std::max(best, pencil_support(a, q, t, 0.5 * (lo + hi)));
  }
  return std::max(0.0, best);
}

// sup ||Tx||_A / ||x||_A over R(A) through the pencil (Q^*T^*ATQ, Q^*AQ).
inline double ambient_seminorm(const CMat& a, const CMat& t) {
  const CMat q = range_basis_svd(a);
  if (q.cols() == 0) return 0.0;
  const CMat h = q.adjoint() * t.adjoint() * a * t * q;
  const CMat k = q.adjoint() * a * q;
  Eigen::GeneralizedSelfAdjointEigenSolver<CMat> ges(0.5 * (h + h.adjoint()), 0.5 * (k + k.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, ges.eigenvalues().maxCoeff()));
}

// Best |<Tx, x>_A| / ||x||_A^2 over random Gaussian x in R(A). Null
// components leave <Tx, x>_A unchanged for members. With x = Q y the ratio
// is y^* (Q^* A T Q) y / y^* (Q^* A Q) y.
inline double monte_carlo_radius(const CMat& a, const CMat& t, int samples, Gen& gen) {
  const CMat q = range_basis_svd(a);
  if (q.cols() == 0) return 0.0;
  const CMat num = q.adjoint() * a * t * q;
  const CMat den = q.adjoint() * a * q;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CVec y = gen.mat(q.cols(), 1);
    const double ny = y.dot(den * y).real();
    if (ny <= 0.0) continue;
    best = std::max(best, std::abs(y.dot(num * y)) / ny);
  }
  return best;
}

// Numerical range of a 2x2 matrix: the elliptical disc with foci at the
// eigenvalues and minor axis sqrt(tr(M^*M) - |l1|^2 - |l2|^2).
inline double radius_2x2(const CMat& m) {
  const cplx tr = m.trace();
  const cplx det = m.determinant();
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + disc);
  const cplx l2 = 0.5 * (tr - disc);
  const double minor2 = std::max(0.0, m.squaredNorm() - std::norm(l1) - std::norm(l2));
  const double b = std::sqrt(minor2);
  const double major = std::sqrt(std::norm(l1 - l2) + minor2);
  const cplx center = 0.5 * (l1 + l2);
  const cplx u = std::abs(l1 - l2) > 0.0 ? (l1 - l2) / std::abs(l1 - l2) : cplx(1.0, 0.0);
  const auto point = [&](double phi) {
    return std::abs(center + 0.5 * major * std::cos(phi) * u + 0.5 * b * std::sin(phi) * u * cplx(0, 1));
  };
  constexpr int kSamples = 20000;
  double best = 0.0;
  double arg = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double phi = 2.0 * kPi * i / kSamples;
    if (point(phi) > best) {
      best = point(phi);
      arg = phi;
    }
  }
  double lo = arg - 2.0 * kPi / kSamples;
  double hi = arg + 2.0 * kPi / kSamples;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (point(m1) < point(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(best, point(0.5 * (lo + hi)));
}

// Boundary points of W(M) from top eigenvectors of Re(e^{it} M), then the
// distance from the origin to their convex hull (0 when inside).
inline std::vector<cplx> hull_points(const CMat& m, int samples) {
  std::vector<cplx> pts;
  for (int j = 0; j < samples; ++j) {
    const cplx e = std::polar(1.0, 2.0 * kPi * j / samples);
    const CMat h = 0.5 * (e * m + std::conj(e) * m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const CVec y = es.eigenvectors().col(m.rows() - 1);
    pts.push_back(y.dot(m * y));
  }
  return pts;
}

inline double distance_to_polygon(const std::vector<cplx>& pts) {
  // Points come ordered by support direction, so they trace a convex
  // polygon in order. The origin is inside iff it is on the same side of
  // every edge.
  bool inside = true;
  int sign = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx p = pts[i];
    const cplx q = pts[(i + 1) % pts.size()];
    const cplx d = q - p;
    const double cross = d.real() * (-p.imag()) - d.imag() * (-p.real());
    if (std::abs(cross) > 1e-14) {
      const int s = cross > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) inside = false;
    }
    const double len2 = std::norm(d);
    double tpar = len2 > 0.0 ? -(p.real() * d.real() + p.imag() * d.imag()) / len2 : 0.0;
    tpar = std::clamp(tpar, 0.0, 1.0);
    best = std::min(best, std::abs(p + tpar * d));
  }
  return inside && sign != 0 ? 0.0 : best;
}

// Compression onto R(A) using an SVD basis: Lambda^{1/2} Q^* T Q Lambda^{-1/2}
// with Lambda from Q^* A Q.
inline CMat compress_svd(const CMat& a, const CMat& t) {
  const CMat q = range_basis_svd(a);
  const CMat k = q.adjoint() * a * q;
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (k + k.adjoint()));
  const CMat root = es.operatorSqrt();
  const CMat inv_root = es.operatorInverseSqrt();
  return root * q.adjoint() * t * q * inv_root;
}

}  // namespace oracle
