#pragma once

// Seeded generators for weights and for operators with prescribed
// structure relative to a weight. Every generator works in the adapted
// basis [V | N] (V spans R(A), N spans N(A)) where membership in B_A reads
// "the N-column block has no R(A) component".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiradius/rng.hpp"
#include "semiradius/semispace.hpp"

namespace semiradius {

CMat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, CounterRng& rng);
CMat haar_unitary(Eigen::Index n, CounterRng& rng);

/// A = V diag(lambda) V^* with V an orthonormalized complex Gaussian n x r
/// and lambda log-uniform in [1e-2, 1e2]. Throws BadRank unless 0 <= r <= n.
CMat gen_psd(int n, int r, std::uint64_t seed);

CMat gen_member(const SemiSpace& space, std::uint64_t seed);
CMat gen_a_selfadjoint(const SemiSpace& space, std::uint64_t seed);
/// T^2 = 0 and T in B_A. For rank 1 the nilpotent maps R(A) into N(A);
/// for rank 0 it is the zero operator.
CMat gen_square_zero(const SemiSpace& space, std::uint64_t seed);
CMat gen_a_unitary(const SemiSpace& space, std::uint64_t seed);

enum class RankPolicy {
  Full,
  Deficient,  // 1 <= r < n
  Zero,
  Mixed,      // by seed mod 10: 0 zero, 1-4 full, 5-9 deficient
  Positive    // by seed mod 2: even full, odd deficient
};

enum class OperatorKind { Member, SquareZero, ASelfadjoint, AUnitary };

std::string_view to_string(OperatorKind kind);

struct Profile {
  std::string name;
  int min_dim = 2;
  int max_dim = 6;
  RankPolicy rank_policy = RankPolicy::Mixed;
  int block_k = 2;
  /// Operator name -> structure. Grid blocks use names B<i><j>, 1-based.
  std::vector<std::pair<std::string, OperatorKind>> roster;
};

/// Named profiles: default, 2x2-general, rank-deficient, full-rank,
/// rank-zero, positive-rank, grid3, small. Throws BadProfile.
Profile profile_by_name(std::string_view name);
std::vector<std::string> profile_names();

struct Instance {
  std::uint64_t seed = 0;
  std::string profile;
  int dim = 0;
  int rank = 0;
  SpacePtr space;
  std::map<std::string, CMat> operators;
  std::map<std::string, OperatorKind> kinds;
  std::optional<int> block_shape;
  std::vector<std::string> tags;
  cplx z1{0.0, 0.0};
  cplx z2{0.0, 0.0};
  double theta = 0.0;

  const CMat* find(const std::string& name) const;
};

/// Fully reproducible from (profile, seed). `forced_dim` re-samples the same
/// seed stream at a different ambient dimension (used by witness shrinking).
Instance gen_instance(const Profile& profile, std::uint64_t seed,
                      std::optional<int> forced_dim = std::nullopt);

}  // namespace semiradius
