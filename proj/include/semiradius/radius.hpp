#pragma once

// Scalar functionals of operators on a semi-Hilbertian space: A-operator
// seminorm, A-numerical radius, A-Crawford number and m_A, together with
// the theta-sweep engine they share and the numerical-range boundary
// tracer.
//
// All sweep-based quantities work on the compression M of a member T and
// the Hermitian pencil H(theta) = Re(e^{i theta} M). lambda_max(H(theta)) is
// the support function of the numerical range W(M) in direction -theta, so
//
//     w(M) = max_theta lambda_max(H(theta))
//     c(M) = max(0, max_theta lambda_min(H(theta)))
//
// The sweep evaluates a uniform grid on [0, 2 pi), then refines every grid
// local maximum that the Lipschitz bound cannot exclude by golden-section
// search.

#include <functional>
#include <span>
#include <vector>

#include "semiradius/semispace.hpp"

namespace semiradius {


struct ThetaSweepConfig {
  int grid_points = 1024;
  double refine_tol = 1e-10;
  int max_refine_iters = 200;

  /// Throws BadConfig unless grid_points >= 16 and refine_tol > 0.
  void validate() const;
};

struct SweepResult {
  double value = 0.0;
  double theta = 0.0;
};

struct RadiusResult {
  double value = 0.0;
  double arg_theta = 0.0;
  CVec witness_vector;  // ||x||_A = 1; empty when rank is zero
};

struct SeminormResult {
  double value = 0.0;
  bool member = false;
};

struct BoundaryPoint {
  double theta = 0.0;
  cplx z;
};

/// Which adjoint the "Re" in m_A refers to.
enum class RealPartReading {
  ASharp,       // Re_A(X) = (X + X^{#A}) / 2
  PlainAdjoint  // (X + X^*) / 2
};

/// Maximizes a 2*pi (or `period`) periodic function given its samples on a
/// uniform grid. `lipschitz` bounds |f'| and decides which grid maxima are
/// worth refining.
SweepResult refine_grid_maximum(std::span<const double> grid,
                                const std::function<double(double)>& f,
                                const ThetaSweepConfig& cfg, double lipschitz,
                                double period = kTwoPi);

SweepResult sweep_maximize(const std::function<double(double)>& f, const ThetaSweepConfig& cfg,
                           double lipschitz, double period = kTwoPi);

/// ||T||_A. Defined for every T (the supremum runs over R(A) only); equals
/// the largest singular value of the compression.
double op_seminorm(const SemiSpace& space, const CMat& t);
SeminormResult op_seminorm_flagged(const SemiSpace& space, const CMat& t);

/// w_A(T). Throws UnboundedNumericalRadius for non-members.
RadiusResult numerical_radius(const SemiSpace& space, const CMat& t,
                              const ThetaSweepConfig& cfg = {});

/// c_A(T), the distance from 0 to the A-numerical range.
double crawford(const SemiSpace& space, const CMat& t, const ThetaSweepConfig& cfg = {});

/// inf over theta and ||x||_A = 1 of ||Re(e^{i theta} S) x||_A.
double m_a(const SemiSpace& space, const CMat& s, const ThetaSweepConfig& cfg = {},
           RealPartReading reading = RealPartReading::ASharp);

/// inf over ||x||_A = 1 of ||R x||_A for an arbitrary R (members or not).
double a_min_stretch(const SemiSpace& space, const CMat& r);

/// Boundary of the A-numerical range: for theta_j = 2 pi j / npoints the
/// point y^* M y where y is a top eigenvector of Re(e^{i theta_j} M).
/// Empty when rank is zero.
std::vector<BoundaryPoint> range_boundary(const SemiSpace& space, const CMat& t, int npoints);

/// Classical numerical radius of a plain square matrix (A = I).
SweepResult classical_numerical_radius(const CMat& m, const ThetaSweepConfig& cfg = {});

}  // namespace semiradius
