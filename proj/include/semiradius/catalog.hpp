#pragma once

// Registry of checkable equalities and inequalities for A-seminorms and
// A-numerical radii, with evaluators for both sides.
//
// Relation ids R1..R31 are a stable public contract. Operators are looked
// up in an Instance by conventional names (T, S, X, Y, Q, T1..T4, N for a
// square-zero operator, H for an A-selfadjoint one). Grid relations use the
// blocks B<i><j> when present and fall back to [[T1, T2], [T3, T4]].
//
// Notation in statements: # is the A-adjoint, w the A-numerical radius,
// c the A-Crawford number, ||.|| the A-seminorm, P_R the projector onto
// R(A), [[a, b], [c, d]] an operator matrix on the inflated space.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiradius/instance_gen.hpp"
#include "semiradius/radius.hpp"

namespace semiradius {

enum class RelationKind { Equality, Inequality };
enum class Confidence { Verified, ReportOnly };
enum class Verdict { Pass, Fail, Skipped };

std::string_view to_string(RelationKind kind);
std::string_view to_string(Confidence c);
std::string_view to_string(Verdict v);

struct Relation {
  std::string id;
  RelationKind kind;
  Confidence confidence;
  /// Operator names the relation needs; "grid" stands for a block grid.
  std::vector<std::string> operators;
  std::string description;
  std::string statement;
};

const std::vector<Relation>& list_relations();
/// Throws UnknownRelation.
const Relation& find_relation(std::string_view id);

struct CheckPart {
  std::string label;
  RelationKind kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckOutcome {
  std::string relation_id;
  /// Reading under which the relation was evaluated ("" for the default).
  std::string variant;
  Confidence confidence = Confidence::Verified;
  /// Kind, sides, slack and tolerance of the tightest part.
  RelationKind kind = RelationKind::Equality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::string skip_reason;
  std::vector<CheckPart> parts;
};

struct EvalOptions {
  ThetaSweepConfig sweep;
  /// R17/R18: read the unsubscripted norms as plain operator norms.
  bool plain_norm_reading = false;
  /// R28/R29: which real part m_A uses.
  RealPartReading m_a_reading = RealPartReading::ASharp;
  /// R29: build P from T1, T2 as literally written instead of from T2, T3.
  bool literal_r29_p = false;
  /// Overrides for R13's scalars; otherwise taken from the instance.
  std::optional<cplx> z1;
  std::optional<cplx> z2;
  /// Test fixture: flips the sign of every inequality slack.
  bool negate_slack = false;
};

/// Evaluates relations against one instance, sharing inflated spaces and
/// radius computations between them.
class Evaluator {
 public:
  Evaluator(const Instance& instance, EvalOptions options = {});
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  /// Throws UnknownRelation; unmet preconditions yield Verdict::Skipped.
  CheckOutcome evaluate(std::string_view relation_id);

  /// Readings may be switched between evaluations; cached radii and
  /// seminorms do not depend on them.
  EvalOptions& options();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CheckOutcome evaluate(std::string_view relation_id, const Instance& instance,
                      const EvalOptions& options = {});

/// Closed form of ||[[z1 I, T], [O, z2 I]]|| given t = ||T||_A.
double upper_triangular_block_norm(cplx z1, cplx z2, double t);

}  // namespace semiradius
