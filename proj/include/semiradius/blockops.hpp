#pragma once

// Operator matrices: k x k grids of n x n operators acting on the k-fold
// direct sum, weighted by the block-diagonal inflation diag(A, ..., A).
//
// Block indices are 0-based in code and (row, column), 1-based, in messages
// and serialized names ("B12" is row 1, column 2).

#include <string_view>
#include <vector>

#include "semiradius/semispace.hpp"

namespace semiradius {

/// diag(A, ..., A) with k copies, built from the base factorization.
SemiSpace inflate_space(const SemiSpace& base, int k);

/// Same space obtained by factorizing the assembled (kn) x (kn) weight.
SemiSpace inflate_space_refactorized(const SemiSpace& base, int k);

/// Block-row-major assembly of k*k blocks of equal square size.
CMat assemble_blocks(int k, const std::vector<CMat>& blocks);

/// Block (i, j) of a (kn) x (kn) matrix.
CMat block_of(const CMat& realized, int k, int i, int j);

class BlockOperator {
 public:
  /// Throws BlockShapeMismatch unless there are k*k blocks of the base
  /// dimension.
  BlockOperator(SpacePtr base, int k, std::vector<CMat> blocks);

  /// Shares an already inflated space (must be inflate_space(*base, k)).
  BlockOperator(SpacePtr base, SpacePtr inflated, int k, std::vector<CMat> blocks);

  const SemiSpace& base() const { return *base_; }
  const SpacePtr& base_ptr() const { return base_; }
  const SemiSpace& inflated() const { return *inflated_; }
  const SpacePtr& inflated_ptr() const { return inflated_; }
  int k() const { return k_; }
  const CMat& block(int i, int j) const { return blocks_[static_cast<std::size_t>(i * k_ + j)]; }
  const std::vector<CMat>& blocks() const { return blocks_; }
  const CMat& realized() const { return realized_; }

  /// True iff every block is in B_A (equivalently realized is in B_AA).
  bool member() const { return member_; }

 private:
  SpacePtr base_;
  SpacePtr inflated_;
  int k_;
  std::vector<CMat> blocks_;
  CMat realized_;
  bool member_ = false;
};

/// || sharp_AA(realized) - [sharp_A(T_ji)]_(i,j) ||. Throws NotInBA.
double block_sharp_check(const BlockOperator& op);

/// Same grid with the off-diagonal blocks zeroed.
BlockOperator pinch_diag(const BlockOperator& op);

enum class UnitaryKind {
  Swap,        // [[O, I], [I, O]]
  Symplectic,  // [[O, I], [-I, O]]
  Sign,        // [[I, O], [O, -I]]
  DftPhase     // diag(I, z I, ..., z^{k-1} I), z = e^{2 pi i / k}
};

UnitaryKind parse_unitary_kind(std::string_view name);

/// Throws BadKind when k does not suit the kind (2 for the first three).
BlockOperator special_unitary(const SpacePtr& base, int k, UnitaryKind kind);

}  // namespace semiradius
