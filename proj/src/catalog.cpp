#include "semiradius/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <unordered_map>

#include "semiradius/blockops.hpp"
#include "semiradius/error.hpp"

namespace semiradius {

namespace {

using RK = RelationKind;
using CF = Confidence;

constexpr double kEqualityTol = 1e-7;
constexpr double kInequalityTol = 1e-8;
constexpr double kSupTol = 1e-6;

std::vector<Relation> build_registry() {
  const auto ineq = RK::Inequality;
  const auto eq = RK::Equality;
  const auto ok = CF::Verified;
  const auto rep = CF::ReportOnly;
  return {
      {"R1", ineq, ok, {"T"}, "numerical radius is equivalent to the seminorm",
       "||T||/2 <= w(T) <= ||T||"},
      {"R2", eq, ok, {"N", "H"}, "extremal cases of R1",
       "w(N) = ||N||/2 when N^2 = 0; w(H) = ||H|| when H is A-selfadjoint"},
      {"R3", eq, ok, {"T"}, "radius is invariant under the A-adjoint", "w(T) = w(T#)"},
      {"R4", eq, ok, {"T"}, "C*-identity for the seminorm",
       "||T#T|| = ||TT#|| = ||T||^2 = ||T#||^2"},
      {"R5", eq, ok, {"T1", "T2"}, "mixed product symmetry", "||T1# T2|| = ||T2# T1||"},
      {"R6", eq, ok, {"grid"}, "blockwise A-adjoint of an operator matrix",
       "[[T_ij]]# = [[T_ji#]]"},
      {"R7", ineq, ok, {"T1", "T2", "T3", "T4"}, "diagonal part",
       "w([[T1, O], [O, T4]]) = max(w(T1), w(T4)) <= w([[T1, T2], [T3, T4]])"},
      {"R8", ineq, ok, {"T1", "T2", "T3", "T4"}, "off-diagonal part",
       "w([[O, T2], [T3, O]]) <= w([[T1, T2], [T3, T4]])"},
      {"R9", eq, ok, {"T1", "T2"}, "symmetries of two-block operators",
       "w([[O, T1], [T2, O]]) = w([[O, T2], [T1, O]]) = w([[O, T1], [e^{it} T2, O]]); "
       "w([[T1, T2], [T2, T1]]) = max(w(T1 + T2), w(T1 - T2)); w([[O, T2], [T2, O]]) = w(T2)"},
      {"R10", ineq, ok, {"T1", "T2"}, "skew two-block bounds",
       "max(w(T1), w(T2)) <= w([[T1, T2], [-T2, -T1]]) <= w(T1) + w(T2)"},
      {"R11", eq, ok, {"T1", "T2"}, "rotation two-block identity",
       "w([[T2, -T1], [T1, T2]]) = max(w(T1 + iT2), w(T1 - iT2))"},
      {"R12", ineq, ok, {"T", "S"}, "product with a symmetrized commutator",
       "w(TS +- ST#) <= 2 ||T|| w(S)"},
      {"R13", eq, ok, {"T"}, "seminorm of a scalar upper-triangular operator matrix",
       "||[[z1 I, T], [O, z2 I]]||^2 = (s + sqrt(s^2 - 4|z1 z2|^2)) / 2, "
       "s = |z1|^2 + |z2|^2 + ||T||^2"},
      {"R14", ineq, ok, {"T"}, "two-sided bound through the Cartesian square",
       "(||TT# + T#T|| + 2c(T^2))/4 <= w(T)^2 <= (||TT# + T#T|| + 2w(T^2))/4"},
      {"R15", eq, ok, {"T"}, "radius and seminorm of [[I, T], [O, -I]]",
       "with v = ||[[I, T], [O, -I]]||, t = ||T||: 2w = v + 1/v, w = sqrt(t^2 + 4)/2, "
       "v = t/2 + sqrt(t^2 + 4)/2"},
      {"R16", eq, ok, {"T"}, "Cartesian parts of [[I, T], [O, -I]]",
       "||Re_A(B)|| = w(B), ||Im_A(B)|| = (v - 1/v)/2 for B = [[I, T], [O, -I]]"},
      {"R17", ineq, ok, {"T"}, "bound through the square",
       "w(T) <= (||T|| + ||T^2||^{1/2}) / 2"},
      {"R18", ineq, ok, {"T1", "T2", "T3", "T4"}, "off-diagonal part between square-root bounds",
       "max(w(T2T3)^{1/2}, w(T3T2)^{1/2}) <= w([[O, T2], [T3, O]]) "
       "<= (||T|| + ||T^2||^{1/2}) / 2 for T = [[T1, T2], [T3, T4]]"},
      {"R19", ineq, ok, {"T", "S", "X", "Y"}, "mixed two-sided product",
       "w(TXS# +- SYT#) <= 2 ||T|| ||S|| w([[O, X], [Y, O]])"},
      {"R20", ineq, ok, {"Q", "S"}, "one-sided symmetrized product",
       "w(QS# +- SQ) <= 2 ||S|| w(Q)"},
      {"R21", eq, ok, {"T"}, "compression by the range projector",
       "w(P_R T) = w(T P_R) = w(T)"},
      {"R22", ineq, ok, {"T1", "T2", "T3", "T4"}, "lower bound through mixed sums",
       "max(a, b)/2 <= w([[T1, T2], [T3, T4]]), a = max(w(T1 + T4 +- (T2 + T3))), "
       "b = max(w(T1 + T4 +- i(T2 - T3)))"},
      {"R23", ineq, ok, {"T1", "T2"}, "first-row operator matrix",
       "max(w(T1 + iT2), w(T1 - iT2))/2 <= w([[T1, T2], [O, O]])"},
      {"R24", ineq, ok, {"T"}, "Cartesian decomposition in blocks",
       "w(T)/2 <= w([[Re_A T, Im_A T], [O, O]]) and w(T)/2 <= w([[O, Re_A T], [Im_A T, O]])"},
      {"R25", eq, ok, {"X", "Y"}, "off-diagonal radius as a supremum",
       "w([[O, X], [Y, O]]) = sup_t ||e^{it} X + e^{-it} Y#|| / 2"},
      {"R26", ineq, ok, {"T1", "T2"}, "fourth power of an off-diagonal radius",
       "w([[O, T1], [T2, O]])^4 <= ||P||^2/16 + w(N)^2/4 + w(PN + NP)/8, "
       "P = T1#T1 + T2T2#, N = T2T1"},
      {"R27", ineq, ok, {"T1", "T2"}, "product radius",
       "w(T1T2) <= sqrt(||P||^2 + 4w(N)^2 + 2w(NP + PN))/4"},
      {"R28", ineq, rep, {"T1", "T2"}, "lower companion of R26",
       "||P||^2/16 + c(PN + NP)/8 + m(N)^2/4 <= w([[O, T1], [T2, O]])^4"},
      {"R29", ineq, rep, {"T1", "T2", "T3", "T4"}, "general operator matrix bounds",
       "max(d, L^{1/4}) <= w(T) <= d + U^{1/4}, d = max(w(T1), w(T4)), "
       "P = T2#T2 + T3T3#, N = T3T2"},
      {"R30", ineq, ok, {"grid"}, "pinching", "w(diag(T11, ..., Tkk)) <= w([[T_ij]])"},
      {"R31", ineq, ok, {"grid"}, "sum of diagonal blocks",
       "w(diag(S, ..., S)) <= k w(diag(T11, ..., Tkk)), S = T11 + ... + Tkk"},
  };
}

double tol_scale(double lhs, double rhs) {
  return std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// Reason a relation cannot run on an instance.
struct Skip {
  std::string reason;
};

std::string matrix_key(int k, const CMat& m) {
  std::string key(sizeof(int) + sizeof(cplx) * static_cast<std::size_t>(m.size()), '\0');
  std::memcpy(key.data(), &k, sizeof(int));
  std::memcpy(key.data() + sizeof(int), m.data(), sizeof(cplx) * static_cast<std::size_t>(m.size()));
  return key;
}

}  // namespace

std::string_view to_string(RelationKind kind) {
  return kind == RelationKind::Equality ? "equality" : "inequality";
}

std::string_view to_string(Confidence c) {
  return c == Confidence::Verified ? "verified" : "report-only";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<Relation>& list_relations() {
  static const std::vector<Relation> registry = build_registry();
  return registry;
}

const Relation& find_relation(std::string_view id) {
  for (const auto& r : list_relations()) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::UnknownRelation, "no relation '" + std::string(id) + "'");
}

double upper_triangular_block_norm(cplx z1, cplx z2, double t) {
  const double a = std::norm(z1);
  const double b = std::norm(z2);
  const double s = a + b + t * t;
  const double disc = std::max(0.0, s * s - 4.0 * a * b);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

struct Evaluator::Impl {
  const Instance& inst;
  EvalOptions opt;
  const SemiSpace& base;
  std::map<int, SpacePtr> inflated;
  std::unordered_map<std::string, double> radius_cache;
  std::unordered_map<std::string, double> norm_cache;
  std::vector<CheckPart> parts;

  Impl(const Instance& instance, EvalOptions options)
      : inst(instance), opt(std::move(options)), base(*instance.space) {}

  const SemiSpace& space(int k) {
    if (k == 1) return base;
    auto it = inflated.find(k);
    if (it == inflated.end()) {
      it = inflated.emplace(k, std::make_shared<const SemiSpace>(inflate_space(base, k))).first;
    }
    return *it->second;
  }

  // w and ||.|| on the k-fold space; k = 1 is the base space.
  double w(const CMat& t, int k = 1) {
    const std::string key = matrix_key(k, t);
    if (auto it = radius_cache.find(key); it != radius_cache.end()) return it->second;
    const double v = numerical_radius(space(k), t, opt.sweep).value;
    radius_cache.emplace(key, v);
    return v;
  }
  double nrm(const CMat& t, int k = 1) {
    const std::string key = matrix_key(k, t);
    if (auto it = norm_cache.find(key); it != norm_cache.end()) return it->second;
    const double v = op_seminorm(space(k), t);
    norm_cache.emplace(key, v);
    return v;
  }
  double c(const CMat& t, int k = 1) { return crawford(space(k), t, opt.sweep); }
  CMat sh(const CMat& t) { return sharp(base, t); }

  CMat grid2(const CMat& a, const CMat& b, const CMat& cc, const CMat& d) {
    return assemble_blocks(2, {a, b, cc, d});
  }
  CMat zero() const { return CMat::Zero(base.dim(), base.dim()); }
  CMat eye() const { return CMat::Identity(base.dim(), base.dim()); }

  const CMat& op(const std::string& name) const { return inst.operators.at(name); }

  void require(const std::vector<std::string>& names) const {
    std::string missing;
    for (const auto& n : names) {
      if (!inst.find(n)) missing += (missing.empty() ? "" : ", ") + n;
    }
    if (!missing.empty()) throw Skip{"missing " + missing};
    for (const auto& n : names) {
      if (!in_b_a(base, op(n))) throw Skip{"operator " + n + " is not in B_A"};
    }
  }
  void require_rank() const {
    if (base.rank() == 0) throw Skip{"rank of A is zero"};
  }

  // Block grid: B<i><j> when the instance carries them, else T1..T4.
  std::pair<int, std::vector<CMat>> grid() const {
    if (inst.find("B11")) {
      const int k = inst.block_shape.value_or(2);
      std::vector<std::string> names;
      for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) names.push_back("B" + std::to_string(i) + std::to_string(j));
      }
      require(names);
      std::vector<CMat> blocks;
      for (const auto& n : names) blocks.push_back(op(n));
      return {k, blocks};
    }
    require({"T1", "T2", "T3", "T4"});
    return {2, {op("T1"), op("T2"), op("T3"), op("T4")}};
  }

  void eq(std::string label, double lhs, double rhs, double factor = kEqualityTol,
          double extra_scale = 1.0) {
    CheckPart p{std::move(label), RelationKind::Equality, lhs, rhs, 0.0, 0.0, false};
    p.slack = std::abs(lhs - rhs);
    p.tolerance = factor * std::max(tol_scale(lhs, rhs), extra_scale);
    p.pass = p.slack <= p.tolerance;
    parts.push_back(std::move(p));
  }
  // lhs <= rhs
  void le(std::string label, double lhs, double rhs, double factor = kInequalityTol) {
    CheckPart p{std::move(label), RelationKind::Inequality, lhs, rhs, 0.0, 0.0, false};
    p.slack = rhs - lhs;
    if (opt.negate_slack) p.slack = -p.slack;
    p.tolerance = factor * tol_scale(lhs, rhs);
    p.pass = p.slack >= -p.tolerance;
    parts.push_back(std::move(p));
  }

  void run(const std::string& id, CheckOutcome& out);
};

void Evaluator::Impl::run(const std::string& id, CheckOutcome& out) {
  if (id == "R1") {
    require({"T"});
    const CMat& t = op("T");
    const double wt = w(t);
    const double nt = nrm(t);
    le("lower", 0.5 * nt, wt);
    le("upper", wt, nt);
  } else if (id == "R2") {
    const CMat* nil = inst.find("N");
    const CMat* h = inst.find("H");
    std::string why;
    if (nil && in_b_a(base, *nil)) {
      const double nn = nrm(*nil);
      const CMat sq = (*nil) * (*nil);
      if (norm2(sq) <= 1e-10 * std::max(1.0, norm2(*nil) * norm2(*nil))) {
        eq("square-zero", w(*nil), 0.5 * nn);
      } else {
        why += "N does not square to zero; ";
      }
    } else {
      why += nil ? "N is not in B_A; " : "missing N; ";
    }
    if (h && is_a_selfadjoint(base, *h)) {
      eq("a-selfadjoint", w(*h), nrm(*h));
    } else {
      why += h ? "H is not A-selfadjoint" : "missing H";
    }
    if (parts.empty()) throw Skip{why};
  } else if (id == "R3") {
    require({"T"});
    const CMat& t = op("T");
    eq("adjoint", w(t), w(sh(t)));
  } else if (id == "R4") {
    require({"T"});
    const CMat& t = op("T");
    const CMat ts = sh(t);
    const double t2 = nrm(t) * nrm(t);
    eq("sharp-left", nrm(ts * t), t2);
    eq("sharp-right", nrm(t * ts), t2);
    eq("sharp-norm", nrm(ts) * nrm(ts), t2);
  } else if (id == "R5") {
    require({"T1", "T2"});
    const CMat& a = op("T1");
    const CMat& b = op("T2");
    eq("mixed", nrm(sh(a) * b), nrm(sh(b) * a));
  } else if (id == "R6") {
    auto [k, blocks] = grid();
    const SemiSpace& big = space(k);
    const CMat realized = assemble_blocks(k, blocks);
    std::vector<CMat> transposed;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) transposed.push_back(sh(blocks[static_cast<std::size_t>(j * k + i)]));
    }
    const CMat whole = sharp(big, realized);
    const double residual = norm2(whole - assemble_blocks(k, transposed));
    eq("blockwise", residual, 0.0, kEqualityTol, norm2(whole));
  } else if (id == "R7") {
    require({"T1", "T2", "T3", "T4"});
    const CMat &a = op("T1"), &b = op("T2"), &cc = op("T3"), &d = op("T4");
    const double wd = w(grid2(a, zero(), zero(), d), 2);
    eq("diagonal", std::max(w(a), w(d)), wd);
    le("dominated", wd, w(grid2(a, b, cc, d), 2));
  } else if (id == "R8") {
    require({"T1", "T2", "T3", "T4"});
    const CMat &a = op("T1"), &b = op("T2"), &cc = op("T3"), &d = op("T4");
    le("off-diagonal", w(grid2(zero(), b, cc, zero()), 2), w(grid2(a, b, cc, d), 2));
  } else if (id == "R9") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const double wab = w(grid2(zero(), a, b, zero()), 2);
    eq("swap", wab, w(grid2(zero(), b, a, zero()), 2));
    const cplx phase = std::polar(1.0, inst.theta);
    eq("phase", w(grid2(zero(), a, phase * b, zero()), 2), wab);
    eq("symmetric", w(grid2(a, b, b, a), 2), std::max(w(a + b), w(a - b)));
    eq("repeated", w(grid2(zero(), b, b, zero()), 2), w(b));
  } else if (id == "R10") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const double wm = w(grid2(a, b, -b, -a), 2);
    le("lower", std::max(w(a), w(b)), wm);
    le("upper", wm, w(a) + w(b));
  } else if (id == "R11") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const cplx i1{0.0, 1.0};
    eq("rotation", w(grid2(b, -a, a, b), 2), std::max(w(a + i1 * b), w(a - i1 * b)));
  } else if (id == "R12") {
    require({"T", "S"});
    const CMat &t = op("T"), &s = op("S");
    const double bound = 2.0 * nrm(t) * w(s);
    const CMat ts = sh(t);
    le("plus", w(t * s + s * ts), bound);
    le("minus", w(t * s - s * ts), bound);
  } else if (id == "R13") {
    require({"T"});
    require_rank();
    const cplx z1 = opt.z1.value_or(inst.z1);
    const cplx z2 = opt.z2.value_or(inst.z2);
    const CMat& t = op("T");
    const CMat m = grid2(z1 * eye(), t, zero(), z2 * eye());
    eq("closed-form", nrm(m, 2), upper_triangular_block_norm(z1, z2, nrm(t)));
  } else if (id == "R14") {
    require({"T"});
    const CMat& t = op("T");
    const CMat ts = sh(t);
    const double cart = nrm(t * ts + ts * t);
    const CMat t2 = t * t;
    const double wt = w(t);
    le("lower", 0.5 * std::sqrt(cart + 2.0 * c(t2)), wt);
    le("upper", wt, 0.5 * std::sqrt(cart + 2.0 * w(t2)));
  } else if (id == "R15" || id == "R16") {
    require({"T"});
    require_rank();
    const CMat& t = op("T");
    const CMat b = grid2(eye(), t, zero(), -eye());
    const double nu = nrm(b, 2);
    const double wb = w(b, 2);
    const double tn = nrm(t);
    if (id == "R15") {
      eq("reciprocal", 2.0 * wb, nu + 1.0 / nu);
      eq("radius", wb, 0.5 * std::sqrt(tn * tn + 4.0));
      eq("norm", nu, 0.5 * tn + 0.5 * std::sqrt(tn * tn + 4.0));
    } else {
      const SemiSpace& big = space(2);
      eq("real-part", nrm(re_a(big, b), 2), wb);
      eq("imaginary-part", nrm(im_a(big, b), 2), 0.5 * (nu - 1.0 / nu));
    }
  } else if (id == "R17") {
    require({"T"});
    const CMat& t = op("T");
    const CMat t2 = t * t;
    if (opt.plain_norm_reading) {
      out.variant = "plain-norm";
      out.confidence = Confidence::ReportOnly;
      le("square-root", w(t), 0.5 * (norm2(t) + std::sqrt(norm2(t2))));
    } else {
      le("square-root", w(t), 0.5 * (nrm(t) + std::sqrt(nrm(t2))));
    }
  } else if (id == "R18") {
    require({"T1", "T2", "T3", "T4"});
    const CMat &a = op("T1"), &b = op("T2"), &cc = op("T3"), &d = op("T4");
    const CMat full = grid2(a, b, cc, d);
    const CMat full2 = full * full;
    const double woff = w(grid2(zero(), b, cc, zero()), 2);
    le("lower", std::max(std::sqrt(w(b * cc)), std::sqrt(w(cc * b))), woff);
    if (opt.plain_norm_reading) {
      out.variant = "plain-norm";
      out.confidence = Confidence::ReportOnly;
      le("upper", woff, 0.5 * (norm2(full) + std::sqrt(norm2(full2))));
    } else {
      le("upper", woff, 0.5 * (nrm(full, 2) + std::sqrt(nrm(full2, 2))));
    }
  } else if (id == "R19") {
    require({"T", "S", "X", "Y"});
    const CMat &t = op("T"), &s = op("S"), &x = op("X"), &y = op("Y");
    const double bound = 2.0 * nrm(t) * nrm(s) * w(grid2(zero(), x, y, zero()), 2);
    const CMat a = t * x * sh(s);
    const CMat b = s * y * sh(t);
    le("plus", w(a + b), bound);
    le("minus", w(a - b), bound);
  } else if (id == "R20") {
    require({"Q", "S"});
    const CMat &q = op("Q"), &s = op("S");
    const double bound = 2.0 * nrm(s) * w(q);
    const CMat ss = sh(s);
    le("plus", w(q * ss + s * q), bound);
    le("minus", w(q * ss - s * q), bound);
  } else if (id == "R21") {
    require({"T"});
    const CMat& t = op("T");
    const CMat& p = base.range_projector();
    const double wt = w(t);
    eq("left", w(p * t), wt);
    eq("right", w(t * p), wt);
  } else if (id == "R22") {
    require({"T1", "T2", "T3", "T4"});
    const CMat &a = op("T1"), &b = op("T2"), &cc = op("T3"), &d = op("T4");
    const cplx i1{0.0, 1.0};
    const double wf = w(grid2(a, b, cc, d), 2);
    const double alpha = std::max(w(a + d + (b + cc)), w(a + d - (b + cc)));
    const double beta = std::max(w(a + d + i1 * (b - cc)), w(a + d - i1 * (b - cc)));
    le("alpha", 0.5 * alpha, wf);
    le("beta", 0.5 * beta, wf);
  } else if (id == "R23") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const cplx i1{0.0, 1.0};
    le("first-row", 0.5 * std::max(w(a + i1 * b), w(a - i1 * b)),
       w(grid2(a, b, zero(), zero()), 2));
  } else if (id == "R24") {
    require({"T"});
    const CMat& t = op("T");
    const CMat re = re_a(base, t);
    const CMat im = im_a(base, t);
    const double half = 0.5 * w(t);
    le("first-row", half, w(grid2(re, im, zero(), zero()), 2));
    le("off-diagonal", half, w(grid2(zero(), re, im, zero()), 2));
  } else if (id == "R25") {
    require({"X", "Y"});
    const CMat &x = op("X"), &y = op("Y");
    const CMat ys = sh(y);
    const double lhs = w(grid2(zero(), x, y, zero()), 2);
    double sup = 0.0;
    if (base.rank() > 0) {
      const CMat mx = compress(base, x);
      const CMat my = compress(base, ys);
      const auto f = [&](double th) {
        const CMat m = std::polar(1.0, th) * mx + std::polar(1.0, -th) * my;
        return norm2(m);
      };
      sup = sweep_maximize(f, opt.sweep, norm2(mx) + norm2(my)).value;
    }
    eq("supremum", lhs, 0.5 * sup, kSupTol);
  } else if (id == "R26" || id == "R27") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const CMat p = sh(a) * a + b * sh(b);
    const CMat nn = b * a;
    const double np = nrm(p);
    const double wn = w(nn);
    if (id == "R26") {
      const double wo = w(grid2(zero(), a, b, zero()), 2);
      le("fourth-power", std::pow(wo, 4), np * np / 16.0 + wn * wn / 4.0 + w(p * nn + nn * p) / 8.0);
    } else {
      le("product", w(a * b), 0.25 * std::sqrt(np * np + 4.0 * wn * wn + 2.0 * w(nn * p + p * nn)));
    }
  } else if (id == "R28") {
    require({"T1", "T2"});
    const CMat &a = op("T1"), &b = op("T2");
    const CMat p = sh(a) * a + b * sh(b);
    const CMat nn = b * a;
    const double np = nrm(p);
    const double mn = m_a(base, nn, opt.sweep, opt.m_a_reading);
    if (opt.m_a_reading == RealPartReading::PlainAdjoint) out.variant = "plain-adjoint-m";
    const double lower = np * np / 16.0 + c(p * nn + nn * p) / 8.0 + mn * mn / 4.0;
    le("fourth-power", lower, std::pow(w(grid2(zero(), a, b, zero()), 2), 4));
  } else if (id == "R29") {
    require({"T1", "T2", "T3", "T4"});
    const CMat &a = op("T1"), &b = op("T2"), &cc = op("T3"), &d = op("T4");
    CMat p;
    if (opt.literal_r29_p) {
      out.variant = "literal-p";
      p = sh(a) * a + b * sh(b);
    } else {
      p = sh(b) * b + cc * sh(cc);
    }
    if (opt.m_a_reading == RealPartReading::PlainAdjoint) {
      out.variant += out.variant.empty() ? "plain-adjoint-m" : "+plain-adjoint-m";
    }
    const CMat nn = cc * b;
    const double np = nrm(p);
    const double dd = std::max(w(a), w(d));
    const CMat pn = p * nn + nn * p;
    const double wn = w(nn);
    const double mn = m_a(base, nn, opt.sweep, opt.m_a_reading);
    const double upper = np * np / 16.0 + w(pn) / 8.0 + wn * wn / 4.0;
    const double lower = np * np / 16.0 + c(pn) / 8.0 + mn * mn / 4.0;
    const double wf = w(grid2(a, b, cc, d), 2);
    le("upper", wf, dd + std::pow(upper, 0.25));
    le("lower", std::max(dd, std::pow(lower, 0.25)), wf);
  } else if (id == "R30") {
    auto [k, blocks] = grid();
    std::vector<CMat> diag(blocks.size(), zero());
    for (int i = 0; i < k; ++i) {
      const auto at = static_cast<std::size_t>(i * k + i);
      diag[at] = blocks[at];
    }
    le("pinching", w(assemble_blocks(k, diag), k), w(assemble_blocks(k, blocks), k));
  } else if (id == "R31") {
    auto [k, blocks] = grid();
    CMat sum = zero();
    std::vector<CMat> diag(blocks.size(), zero());
    for (int i = 0; i < k; ++i) {
      const auto at = static_cast<std::size_t>(i * k + i);
      sum += blocks[at];
      diag[at] = blocks[at];
    }
    std::vector<CMat> repeated(blocks.size(), zero());
    for (int i = 0; i < k; ++i) repeated[static_cast<std::size_t>(i * k + i)] = sum;
    le("diagonal-sum", w(assemble_blocks(k, repeated), k), k * w(assemble_blocks(k, diag), k));
  } else {
    throw Error(ErrorCode::UnknownRelation, "no relation '" + id + "'");
  }
}

Evaluator::Evaluator(const Instance& instance, EvalOptions options)
    : impl_(std::make_unique<Impl>(instance, std::move(options))) {
  impl_->opt.sweep.validate();
}

Evaluator::~Evaluator() = default;

EvalOptions& Evaluator::options() { return impl_->opt; }

CheckOutcome Evaluator::evaluate(std::string_view relation_id) {
  const Relation& rel = find_relation(relation_id);
  CheckOutcome out;
  out.relation_id = rel.id;
  out.confidence = rel.confidence;
  out.kind = rel.kind;
  impl_->parts.clear();
  try {
    impl_->run(rel.id, out);
  } catch (const Skip& s) {
    out.verdict = Verdict::Skipped;
    out.skip_reason = s.reason;
    return out;
  }
  out.parts = std::move(impl_->parts);
  impl_->parts.clear();
  // Headline values come from the part with the smallest normalized margin.
  const auto margin = [](const CheckPart& p) {
    const double room = p.kind == RelationKind::Equality ? p.tolerance - p.slack
                                                         : p.slack + p.tolerance;
    return room / std::max(p.tolerance, 1e-300);
  };
  const CheckPart* worst = &out.parts.front();
  bool all = true;
  for (const auto& p : out.parts) {
    all = all && p.pass;
    if (margin(p) < margin(*worst)) worst = &p;
  }
  out.kind = worst->kind;
  out.lhs = worst->lhs;
  out.rhs = worst->rhs;
  out.slack = worst->slack;
  out.tolerance = worst->tolerance;
  out.verdict = all ? Verdict::Pass : Verdict::Fail;
  return out;
}

CheckOutcome evaluate(std::string_view relation_id, const Instance& instance,
                      const EvalOptions& options) {
  Evaluator ev(instance, options);
  return ev.evaluate(relation_id);
}

}  // namespace semiradius
