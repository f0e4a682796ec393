#include "semiradius/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semiradius/error.hpp"

namespace semiradius {

namespace {

constexpr std::size_t kMaxRefinedPeaks = 8;

// M = re + i im with re, im Hermitian; Re(e^{i theta} M) = cos(theta) re - sin(theta) im.
struct Pencil {
  CMat re;
  CMat im;

  explicit Pencil(const CMat& m)
      : re(0.5 * (m + m.adjoint())), im((m - m.adjoint()) / cplx(0.0, 2.0)) {}

  CMat at(double theta) const { return std::cos(theta) * re - std::sin(theta) * im; }
};

double wrap(double theta, double period) {
  double t = std::fmod(theta, period);
  if (t < 0.0) t += period;
  return t;
}

SweepResult golden_section(const std::function<double(double)>& f, double center,
                           double center_value, double half_width, const ThetaSweepConfig& cfg) {
  constexpr double kRatio = 0.61803398874989484820;
  double a = center - half_width;
  double b = center + half_width;
  double x1 = b - kRatio * (b - a);
  double x2 = a + kRatio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  SweepResult best{center_value, center};
  auto consider = [&best](double x, double fx) {
    if (fx > best.value) best = {fx, x};
  };
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < cfg.max_refine_iters && (b - a) > cfg.refine_tol; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kRatio * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kRatio * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best;
}

// lambda_max(Re(e^{i theta_j} M)) on the uniform grid; theta + pi flips the
// sign of the pencil, so one eigenvalue solve serves two grid points.
std::vector<double> support_grid(const Pencil& pencil, int points) {
  std::vector<double> h(static_cast<std::size_t>(points));
  Eigen::SelfAdjointEigenSolver<CMat> es;
  const bool paired = points % 2 == 0;
  const int half = paired ? points / 2 : points;
  for (int j = 0; j < half; ++j) {
    const double theta = kTwoPi * j / points;
    es.compute(pencil.at(theta), Eigen::EigenvaluesOnly);
    const RVec& ev = es.eigenvalues();
    h[static_cast<std::size_t>(j)] = ev(ev.size() - 1);
    if (paired) h[static_cast<std::size_t>(j + half)] = -ev(0);
  }
  return h;
}

double top_eigenvalue(const Pencil& pencil, double theta) {
  Eigen::SelfAdjointEigenSolver<CMat> es(pencil.at(theta), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

struct CompressedRadius {
  SweepResult sweep;
  CVec top_vector;
};

CompressedRadius radius_of_matrix(const CMat& m, const ThetaSweepConfig& cfg, bool want_vector) {
  const Pencil pencil(m);
  const std::vector<double> grid = support_grid(pencil, cfg.grid_points);
  const auto f = [&pencil](double theta) { return top_eigenvalue(pencil, theta); };
  SweepResult best = refine_grid_maximum(grid, f, cfg, norm2(m));
  best.value = std::max(0.0, best.value);
  CompressedRadius out{best, {}};
  if (want_vector) {
    Eigen::SelfAdjointEigenSolver<CMat> es(pencil.at(best.theta));
    out.top_vector = es.eigenvectors().col(m.rows() - 1);
  }
  return out;
}

void require_radius_domain(const SemiSpace& space, const CMat& t) {
  if (!in_b_a(space, t)) {
    throw Error(ErrorCode::UnboundedNumericalRadius,
                "operator is not in B_A, so |<Tx,x>_A| is unbounded on ||x||_A = 1");
  }
}

}  // namespace

void ThetaSweepConfig::validate() const {
  if (grid_points < 16) throw Error(ErrorCode::BadConfig, "grid_points must be at least 16");
  if (!(refine_tol > 0.0)) throw Error(ErrorCode::BadConfig, "refine_tol must be positive");
  if (max_refine_iters < 0) throw Error(ErrorCode::BadConfig, "max_refine_iters must be >= 0");
}

SweepResult refine_grid_maximum(std::span<const double> grid,
                                const std::function<double(double)>& f,
                                const ThetaSweepConfig& cfg, double lipschitz, double period) {
  const std::size_t n = grid.size();
  if (n < 3) throw Error(ErrorCode::BadConfig, "sweep grid needs at least 3 points");
  const double step = period / static_cast<double>(n);
  std::size_t best_idx = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (grid[j] > grid[best_idx]) best_idx = j;
  }
  const double margin = std::isfinite(lipschitz) ? std::max(0.0, lipschitz) * step : 0.0;
  const double floor = grid[best_idx] - margin;

  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < n; ++j) {
    const double prev = grid[(j + n - 1) % n];
    const double next = grid[(j + 1) % n];
    if (grid[j] >= prev && grid[j] >= next && grid[j] >= floor) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&grid](std::size_t a, std::size_t b) { return grid[a] > grid[b]; });
  if (peaks.size() > kMaxRefinedPeaks) peaks.resize(kMaxRefinedPeaks);
  if (std::find(peaks.begin(), peaks.end(), best_idx) == peaks.end()) peaks.push_back(best_idx);

  SweepResult best{grid[best_idx], step * static_cast<double>(best_idx)};
  for (std::size_t j : peaks) {
    const double center = step * static_cast<double>(j);
    const SweepResult local = golden_section(f, center, grid[j], step, cfg);
    const double theta = wrap(local.theta, period);
    if (local.value > best.value || (local.value == best.value && theta < best.theta)) {
      best = {local.value, theta};
    }
  }
  return best;
}

SweepResult sweep_maximize(const std::function<double(double)>& f, const ThetaSweepConfig& cfg,
                           double lipschitz, double period) {
  cfg.validate();
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_points));
  for (int j = 0; j < cfg.grid_points; ++j) {
    grid[static_cast<std::size_t>(j)] = f(period * j / cfg.grid_points);
  }
  return refine_grid_maximum(grid, f, cfg, lipschitz, period);
}

SeminormResult op_seminorm_flagged(const SemiSpace& space, const CMat& t) {
  const bool member = in_b_a(space, t);
  if (space.rank() == 0) return {0.0, member};
  return {norm2(compress_unchecked(space, t)), member};
}

double op_seminorm(const SemiSpace& space, const CMat& t) {
  return op_seminorm_flagged(space, t).value;
}

RadiusResult numerical_radius(const SemiSpace& space, const CMat& t, const ThetaSweepConfig& cfg) {
  cfg.validate();
  require_radius_domain(space, t);
  if (space.rank() == 0) return {0.0, 0.0, CVec()};
  const CompressedRadius r = radius_of_matrix(compress_unchecked(space, t), cfg, true);
  const RVec inv_root = space.lambda().cwiseSqrt().cwiseInverse();
  CVec witness = space.range_basis() * (inv_root.asDiagonal() * r.top_vector);
  return {r.sweep.value, r.sweep.theta, std::move(witness)};
}

double crawford(const SemiSpace& space, const CMat& t, const ThetaSweepConfig& cfg) {
  cfg.validate();
  require_radius_domain(space, t);
  if (space.rank() == 0) return 0.0;
  const CMat m = compress_unchecked(space, t);
  const Pencil pencil(m);
  // lambda_min(H(theta)) = -lambda_max(H(theta + pi)): maximize -h.
  std::vector<double> grid = support_grid(pencil, cfg.grid_points);
  for (double& v : grid) v = -v;
  const auto f = [&pencil](double theta) { return -top_eigenvalue(pencil, theta); };
  const SweepResult best = refine_grid_maximum(grid, f, cfg, norm2(m));
  return std::max(0.0, best.value);
}

double a_min_stretch(const SemiSpace& space, const CMat& r) {
  if (r.rows() != space.dim() || r.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not match the space dimension");
  }
  if (space.rank() == 0) return 0.0;
  // x = V L^{-1/2} y + N c:  ||R x||_A = || B y + C c ||; minimize over c, then over ||y|| = 1.
  const RVec inv_root = space.lambda().cwiseSqrt().cwiseInverse();
  const CMat b = space.sqrt_weight() * r * space.range_basis() * inv_root.asDiagonal();
  CMat reduced = b;
  if (space.null_basis().cols() > 0) {
    const CMat c = space.sqrt_weight() * r * space.null_basis();
    if (c.size() > 0) {
      Eigen::JacobiSVD<CMat> svd(c, Eigen::ComputeThinU);
      const double cutoff = space.threshold(1e-9, norm2(r));
      CMat proj = CMat::Zero(c.rows(), c.rows());
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > cutoff) {
          proj += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
        }
      }
      reduced = b - proj * b;
    }
  }
  Eigen::JacobiSVD<CMat> svd(reduced);
  const RVec& s = svd.singularValues();
  return s(s.size() - 1);
}

double m_a(const SemiSpace& space, const CMat& s, const ThetaSweepConfig& cfg,
           RealPartReading reading) {
  cfg.validate();
  require_radius_domain(space, s);
  if (space.rank() == 0) return 0.0;
  if (reading == RealPartReading::ASharp) {
    // compress(Re_A(e^{i theta} S)) = Re(e^{i theta} M); its smallest singular
    // value is the smallest eigenvalue modulus.
    const CMat m = compress_unchecked(space, s);
    const Pencil pencil(m);
    const auto f = [&pencil](double theta) {
      Eigen::SelfAdjointEigenSolver<CMat> es(pencil.at(theta), Eigen::EigenvaluesOnly);
      return -es.eigenvalues().cwiseAbs().minCoeff();
    };
    return std::max(0.0, -sweep_maximize(f, cfg, norm2(m)).value);
  }
  const CMat adj = s.adjoint();
  const auto f = [&](double theta) {
    const cplx phase = std::polar(1.0, theta);
    const CMat re = 0.5 * (phase * s + std::conj(phase) * adj);
    return -a_min_stretch(space, re);
  };
  const double lipschitz = std::sqrt(space.weight_norm()) * norm2(s) /
                           std::sqrt(space.lambda().minCoeff());
  return std::max(0.0, -sweep_maximize(f, cfg, lipschitz).value);
}

std::vector<BoundaryPoint> range_boundary(const SemiSpace& space, const CMat& t, int npoints) {
  if (npoints < 3) throw Error(ErrorCode::BadConfig, "range_boundary needs at least 3 points");
  require_radius_domain(space, t);
  std::vector<BoundaryPoint> out;
  if (space.rank() == 0) return out;
  const CMat m = compress_unchecked(space, t);
  const Pencil pencil(m);
  Eigen::SelfAdjointEigenSolver<CMat> es;
  out.reserve(static_cast<std::size_t>(npoints));
  for (int j = 0; j < npoints; ++j) {
    const double theta = kTwoPi * j / npoints;
    es.compute(pencil.at(theta));
    const CVec y = es.eigenvectors().col(m.rows() - 1);
    out.push_back({theta, y.dot(m * y)});
  }
  return out;
}

SweepResult classical_numerical_radius(const CMat& m, const ThetaSweepConfig& cfg) {
  cfg.validate();
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "numerical radius of a non-square matrix");
  if (m.rows() == 0) return {};
  return radius_of_matrix(m, cfg, false).sweep;
}

}  // namespace semiradius
