#include "semiradius/instance_gen.hpp"

#include <cmath>
#include <string>

#include "semiradius/error.hpp"

namespace semiradius {

namespace {

// Adapted basis [V | N] of a space.
CMat adapted_basis(const SemiSpace& space) {
  CMat w(space.dim(), space.dim());
  w << space.range_basis(), space.null_basis();
  return w;
}

CMat from_adapted(const SemiSpace& space, const CMat& blocks) {
  const CMat w = adapted_basis(space);
  return w * blocks * w.adjoint();
}

// (I - P) W (I - P): arbitrary action on N(A), nothing leaking into R(A).
CMat null_junk(const SemiSpace& space, CounterRng& rng) {
  const Eigen::Index k = space.null_basis().cols();
  if (k == 0) return CMat::Zero(space.dim(), space.dim());
  const CMat z = gaussian_matrix(k, k, rng);
  return space.null_basis() * z * space.null_basis().adjoint();
}

int pick_rank(RankPolicy policy, int n, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, "rank"));
  switch (policy) {
    case RankPolicy::Full: return n;
    case RankPolicy::Zero: return 0;
    case RankPolicy::Deficient: return rng.uniform_int(1, n - 1);
    case RankPolicy::Mixed: {
      const std::uint64_t bucket = seed % 10;
      if (bucket == 0) return 0;
      if (bucket <= 4) return n;
      return rng.uniform_int(1, n - 1);
    }
    case RankPolicy::Positive:
      return seed % 2 == 0 ? n : rng.uniform_int(1, n - 1);
  }
  return n;
}

std::vector<std::pair<std::string, OperatorKind>> standard_roster() {
  using K = OperatorKind;
  return {{"T", K::Member},  {"S", K::Member},  {"X", K::Member},       {"Y", K::Member},
          {"Q", K::Member},  {"T1", K::Member}, {"T2", K::Member},      {"T3", K::Member},
          {"T4", K::Member}, {"N", K::SquareZero}, {"H", K::ASelfadjoint}, {"U", K::AUnitary}};
}

std::vector<std::pair<std::string, OperatorKind>> grid_roster(int k) {
  std::vector<std::pair<std::string, OperatorKind>> out;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      out.emplace_back("B" + std::to_string(i) + std::to_string(j), OperatorKind::Member);
    }
  }
  return out;
}

std::string_view policy_tag(RankPolicy p) {
  switch (p) {
    case RankPolicy::Full: return "full";
    case RankPolicy::Deficient: return "deficient";
    case RankPolicy::Zero: return "zero";
    case RankPolicy::Mixed: return "mixed";
    case RankPolicy::Positive: return "positive";
  }
  return "?";
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Member: return "member";
    case OperatorKind::SquareZero: return "square_zero";
    case OperatorKind::ASelfadjoint: return "a_selfadjoint";
    case OperatorKind::AUnitary: return "a_unitary";
  }
  return "?";
}

CMat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

CMat haar_unitary(Eigen::Index n, CounterRng& rng) {
  if (n == 0) return CMat(0, 0);
  const CMat g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

CMat gen_psd(int n, int r, std::uint64_t seed) {
  if (n < 0 || r < 0 || r > n) {
    throw Error(ErrorCode::BadRank, "rank " + std::to_string(r) + " for dimension " + std::to_string(n));
  }
  if (r == 0) return CMat::Zero(n, n);
  CounterRng rng(CounterRng::derive(seed, "psd"));
  const CMat g = gaussian_matrix(n, r, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat v = qr.householderQ() * CMat::Identity(n, r);
  RVec lambda(r);
  for (int i = 0; i < r; ++i) lambda(i) = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
  const CMat a = v * lambda.asDiagonal() * v.adjoint();
  return hermitian_part(a);
}

CMat gen_member(const SemiSpace& space, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, "member"));
  const Eigen::Index n = space.dim();
  const Eigen::Index r = space.rank();
  CMat blocks = gaussian_matrix(n, n, rng);
  blocks.topRightCorner(r, n - r).setZero();
  return from_adapted(space, blocks);
}

CMat gen_a_selfadjoint(const SemiSpace& space, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, "a_selfadjoint"));
  const Eigen::Index n = space.dim();
  const CMat h = hermitian_part(gaussian_matrix(n, n, rng));
  const CMat& p = space.range_projector();
  return space.weight_pinv() * (p * h * p) + null_junk(space, rng);
}

CMat gen_square_zero(const SemiSpace& space, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, "square_zero"));
  const Eigen::Index n = space.dim();
  const Eigen::Index r = space.rank();
  CMat blocks = CMat::Zero(n, n);
  if (r == 0) return CMat::Zero(n, n);
  const CVec y = gaussian_matrix(r, 1, rng);
  const CVec z = gaussian_matrix(n - r, 1, rng);
  if (r >= 2) {
    CVec x = gaussian_matrix(r, 1, rng);
    x -= y * (y.dot(x) / y.squaredNorm());  // y^* x = 0
    blocks.topLeftCorner(r, r) = x * y.adjoint();
  }
  blocks.bottomLeftCorner(n - r, r) = z * y.adjoint();
  return from_adapted(space, blocks);
}

CMat gen_a_unitary(const SemiSpace& space, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, "a_unitary"));
  const Eigen::Index r = space.rank();
  const CMat q = haar_unitary(r, rng);
  const RVec root = space.lambda().cwiseSqrt();
  const CMat& v = space.range_basis();
  const CMat core = v * root.cwiseInverse().asDiagonal() * q * root.asDiagonal() * v.adjoint();
  return core + null_junk(space, rng);
}

Profile profile_by_name(std::string_view name) {
  Profile p;
  p.name = std::string(name);
  p.roster = standard_roster();
  if (name == "default") return p;
  if (name == "2x2-general") {
    p.roster = {{"T1", OperatorKind::Member},
                {"T2", OperatorKind::Member},
                {"T3", OperatorKind::Member},
                {"T4", OperatorKind::Member}};
    return p;
  }
  if (name == "rank-deficient") {
    p.rank_policy = RankPolicy::Deficient;
    return p;
  }
  if (name == "full-rank") {
    p.rank_policy = RankPolicy::Full;
    return p;
  }
  if (name == "rank-zero") {
    p.rank_policy = RankPolicy::Zero;
    return p;
  }
  if (name == "positive-rank") {
    p.rank_policy = RankPolicy::Positive;
    return p;
  }
  if (name == "grid3") {
    p.block_k = 3;
    auto grid = grid_roster(3);
    p.roster.insert(p.roster.end(), grid.begin(), grid.end());
    return p;
  }
  if (name == "small") {
    p.max_dim = 3;
    return p;
  }
  throw Error(ErrorCode::BadProfile, "unknown profile '" + std::string(name) + "'");
}

std::vector<std::string> profile_names() {
  return {"default", "2x2-general", "rank-deficient", "full-rank",
          "rank-zero", "positive-rank", "grid3", "small"};
}

const CMat* Instance::find(const std::string& name) const {
  const auto it = operators.find(name);
  return it == operators.end() ? nullptr : &it->second;
}

Instance gen_instance(const Profile& profile, std::uint64_t seed, std::optional<int> forced_dim) {
  if (profile.min_dim < 2 || profile.max_dim > 6 || profile.min_dim > profile.max_dim) {
    throw Error(ErrorCode::BadProfile, "profile dimensions must lie in 2..6");
  }
  if (profile.block_k < 1 || profile.block_k > 3) {
    throw Error(ErrorCode::BadProfile, "profile block shape must lie in 1..3");
  }
  Instance inst;
  inst.seed = seed;
  inst.profile = profile.name;
  CounterRng shape(CounterRng::derive(seed, "shape"));
  inst.dim = shape.uniform_int(profile.min_dim, profile.max_dim);
  if (forced_dim) {
    if (*forced_dim < 2 || *forced_dim > 6) throw Error(ErrorCode::BadProfile, "forced dimension outside 2..6");
    inst.dim = *forced_dim;
  }
  inst.rank = pick_rank(profile.rank_policy, inst.dim, seed);
  inst.space = std::make_shared<const SemiSpace>(
      SemiSpace::build(gen_psd(inst.dim, inst.rank, CounterRng::derive(seed, "weight"))));
  inst.rank = static_cast<int>(inst.space->rank());
  inst.block_shape = profile.block_k;

  for (const auto& [name, kind] : profile.roster) {
    const std::uint64_t s = CounterRng::derive(seed, name);
    CMat t;
    switch (kind) {
      case OperatorKind::Member: t = gen_member(*inst.space, s); break;
      case OperatorKind::SquareZero: t = gen_square_zero(*inst.space, s); break;
      case OperatorKind::ASelfadjoint: t = gen_a_selfadjoint(*inst.space, s); break;
      case OperatorKind::AUnitary: t = gen_a_unitary(*inst.space, s); break;
    }
    inst.operators.emplace(name, std::move(t));
    inst.kinds.emplace(name, kind);
  }

  CounterRng params(CounterRng::derive(seed, "params"));
  const auto disc = [&params]() {
    const double rho = 10.0 * std::sqrt(params.uniform());
    return std::polar(rho, kTwoPi * params.uniform());
  };
  inst.z1 = disc();
  inst.z2 = disc();
  inst.theta = kTwoPi * params.uniform();

  inst.tags = {"profile:" + profile.name, "rank:" + std::string(policy_tag(profile.rank_policy)),
               "k:" + std::to_string(profile.block_k), "rng:" + std::string(kRngVersion)};
  return inst;
}

}  // namespace semiradius
