#include "semiradius/blockops.hpp"

#include <cmath>
#include <string>

#include "semiradius/error.hpp"
#include "semiradius/radius.hpp"

namespace semiradius {

namespace {

CMat block_diagonal(const CMat& m, int k) {
  CMat out = CMat::Zero(m.rows() * k, m.cols() * k);
  for (int i = 0; i < k; ++i) out.block(i * m.rows(), i * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

SpacePtr shared_inflation(const SpacePtr& base, int k) {
  if (k == 1) return base;
  return std::make_shared<const SemiSpace>(inflate_space(*base, k));
}

}  // namespace

SemiSpace inflate_space(const SemiSpace& base, int k) {
  if (k < 1) throw Error(ErrorCode::BlockShapeMismatch, "block count must be at least 1");
  if (k == 1) return base;
  RVec lambda(base.rank() * k);
  for (int i = 0; i < k; ++i) lambda.segment(i * base.rank(), base.rank()) = base.lambda();
  return SemiSpace::from_factors(block_diagonal(base.weight(), k),
                                 block_diagonal(base.range_basis(), k), std::move(lambda),
                                 block_diagonal(base.null_basis(), k), base.tol());
}

SemiSpace inflate_space_refactorized(const SemiSpace& base, int k) {
  if (k < 1) throw Error(ErrorCode::BlockShapeMismatch, "block count must be at least 1");
  return SemiSpace::build(block_diagonal(base.weight(), k), base.tol());
}

CMat assemble_blocks(int k, const std::vector<CMat>& blocks) {
  if (k < 1 || blocks.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::BlockShapeMismatch,
                "expected " + std::to_string(k * k) + " blocks, got " + std::to_string(blocks.size()));
  }
  const Eigen::Index n = blocks.front().rows();
  CMat out(n * k, n * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const CMat& b = blocks[static_cast<std::size_t>(i * k + j)];
      if (b.rows() != n || b.cols() != n) {
        throw Error(ErrorCode::BlockShapeMismatch,
                    "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                        ", expected " + std::to_string(n) + "x" + std::to_string(n));
      }
      out.block(i * n, j * n, n, n) = b;
    }
  }
  return out;
}

CMat block_of(const CMat& realized, int k, int i, int j) {
  const Eigen::Index n = realized.rows() / k;
  return realized.block(i * n, j * n, n, n);
}

BlockOperator::BlockOperator(SpacePtr base, int k, std::vector<CMat> blocks)
    : BlockOperator(base, shared_inflation(base, k), k, std::move(blocks)) {}

BlockOperator::BlockOperator(SpacePtr base, SpacePtr inflated, int k, std::vector<CMat> blocks)
    : base_(std::move(base)), inflated_(std::move(inflated)), k_(k), blocks_(std::move(blocks)) {
  realized_ = assemble_blocks(k_, blocks_);
  if (blocks_.front().rows() != base_->dim()) {
    throw Error(ErrorCode::BlockShapeMismatch,
                "blocks are " + std::to_string(blocks_.front().rows()) +
                    "-dimensional, base space is " + std::to_string(base_->dim()));
  }
  if (inflated_->dim() != base_->dim() * k_) {
    throw Error(ErrorCode::BlockShapeMismatch, "inflated space does not match k * n");
  }
  member_ = in_b_a(*inflated_, realized_);
}

double block_sharp_check(const BlockOperator& op) {
  const int k = op.k();
  std::vector<CMat> transposed(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      transposed[static_cast<std::size_t>(i * k + j)] = sharp(op.base(), op.block(j, i));
    }
  }
  return norm2(sharp(op.inflated(), op.realized()) - assemble_blocks(k, transposed));
}

BlockOperator pinch_diag(const BlockOperator& op) {
  const int k = op.k();
  std::vector<CMat> blocks = op.blocks();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) blocks[static_cast<std::size_t>(i * k + j)].setZero();
    }
  }
  return BlockOperator(op.base_ptr(), op.inflated_ptr(), k, std::move(blocks));
}

UnitaryKind parse_unitary_kind(std::string_view name) {
  if (name == "swap") return UnitaryKind::Swap;
  if (name == "sympl") return UnitaryKind::Symplectic;
  if (name == "sign") return UnitaryKind::Sign;
  if (name == "dft_phase") return UnitaryKind::DftPhase;
  throw Error(ErrorCode::BadKind, "unknown unitary kind '" + std::string(name) + "'");
}

BlockOperator special_unitary(const SpacePtr& base, int k, UnitaryKind kind) {
  const Eigen::Index n = base->dim();
  const CMat id = CMat::Identity(n, n);
  const CMat zero = CMat::Zero(n, n);
  if (kind != UnitaryKind::DftPhase && k != 2) {
    throw Error(ErrorCode::BadKind, "swap, sympl and sign are 2x2 block unitaries");
  }
  if (k < 1) throw Error(ErrorCode::BadKind, "block count must be at least 1");
  switch (kind) {
    case UnitaryKind::Swap: return BlockOperator(base, 2, {zero, id, id, zero});
    case UnitaryKind::Symplectic: return BlockOperator(base, 2, {zero, id, -id, zero});
    case UnitaryKind::Sign: return BlockOperator(base, 2, {id, zero, zero, -id});
    case UnitaryKind::DftPhase: {
      std::vector<CMat> blocks(static_cast<std::size_t>(k * k), zero);
      for (int i = 0; i < k; ++i) {
        blocks[static_cast<std::size_t>(i * k + i)] = std::polar(1.0, kTwoPi * i / k) * id;
      }
      return BlockOperator(base, k, std::move(blocks));
    }
  }
  throw Error(ErrorCode::BadKind, "unhandled unitary kind");
}

}  // namespace semiradius
