#include "semiradius/radius.hpp"

#include "semiradius/instance_gen.hpp"
#include "support.hpp"

using namespace semiradius;
using namespace testing;

namespace {

struct Case {
  oracle::Gen::Weight w;
  SpacePtr sp;
  CMat t;
};

Case random_case(oracle::Gen& gen, int min_rank = 0) {
  const int n = gen.integer(2, 6);
  const int r = gen.integer(std::min(min_rank, n), n);
  Case c{gen.weight(n, r), nullptr, CMat()};
  c.sp = space(c.w.a);
  c.t = gen.member(c.w) * gen.uniform(0.1, 3.0);
  return c;
}

}  // namespace

TEST_CASE("seminorm examples") {
  oracle::Gen gen(41);
  const CMat t = gen.mat(3, 3);
  CHECK(op_seminorm(*space(identity(3)), t) == doctest::Approx(norm2(t)).epsilon(1e-12));
  CHECK(op_seminorm(*space(diag({1.0, 0.0})), mat({{2.0, 0.0}, {3.0, 4.0}})) == doctest::Approx(2.0));
  CHECK(op_seminorm(*space(CMat::Zero(2, 2)), t.topLeftCorner(2, 2)) == 0.0);

  // Non-members still get the restricted supremum, flagged.
  const auto s = space(diag({1.0, 0.0}));
  const auto flagged = op_seminorm_flagged(*s, mat({{1.0, 1.0}, {0.0, 1.0}}));
  CHECK_FALSE(flagged.member);
  CHECK(flagged.value == doctest::Approx(1.0));
}

TEST_CASE("seminorm agrees with the ambient pencil") {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = random_case(gen);
    CHECK(rel(op_seminorm(*c.sp, c.t), oracle::ambient_seminorm(c.w.a, c.t)) <= 1e-8);
    CHECK(rel(op_seminorm(*c.sp, sharp(*c.sp, c.t)), op_seminorm(*c.sp, c.t)) <= 1e-8);
  }
}

TEST_CASE("numerical radius examples") {
  const RadiusResult r = numerical_radius(*space(identity(2)), mat({{0.0, 1.0}, {0.0, 0.0}}));
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(numerical_radius(*space(diag({1.0, 0.0})), mat({{2.0, 0.0}, {3.0, 4.0}})).value ==
        doctest::Approx(2.0).epsilon(1e-12));

  const auto z = numerical_radius(*space(CMat::Zero(2, 2)), identity(2));
  CHECK(z.value == 0.0);
  CHECK(z.witness_vector.size() == 0);

  CHECK(code_of([] {
          numerical_radius(*space(diag({1.0, 0.0})), mat({{1.0, 1.0}, {0.0, 1.0}}));
        }) == ErrorCode::UnboundedNumericalRadius);
}

TEST_CASE("A-selfadjoint operators attain the seminorm") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oracle::Gen gen(seed);
    const int n = gen.integer(2, 6);
    const auto sp = space(gen.weight(n, gen.integer(1, n)).a);
    const CMat h = gen_a_selfadjoint(*sp, seed);
    REQUIRE(is_a_selfadjoint(*sp, h));
    CHECK(rel(numerical_radius(*sp, h).value, op_seminorm(*sp, h)) <= 1e-7);
  }
}

TEST_CASE("2x2 compressions match the elliptical-range oracle") {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat m = gen.mat(2, 2) * gen.uniform(0.1, 5.0);
    CHECK(rel(classical_numerical_radius(m).value, oracle::radius_2x2(m)) <= 1e-9);
    CHECK(rel(numerical_radius(*space(identity(2)), m).value, oracle::radius_2x2(m)) <= 1e-9);
  }
  // Rank-2 weight in dimension 4: w_A(T) is the classical radius of the compression.
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = gen.weight(4, 2);
    const CMat t = gen.member(w);
    const CMat m = oracle::compress_svd(w.a, t);
    CHECK(rel(numerical_radius(*space(w.a), t).value, oracle::radius_2x2(m)) <= 1e-8);
  }
}

TEST_CASE("numerical radius agrees with the ambient pencil and Monte Carlo") {
  oracle::Gen gen(44);
  for (int trial = 0; trial < 25; ++trial) {
    const Case c = random_case(gen);
    const double w = numerical_radius(*c.sp, c.t).value;
    CHECK(rel(w, oracle::ambient_radius(c.w.a, c.t)) <= 1e-8);
    CHECK(w >= oracle::monte_carlo_radius(c.w.a, c.t, 20000, gen) - 1e-10);
  }
}

TEST_CASE("radius witness attains the value") {
  oracle::Gen gen(45);
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = random_case(gen, 1);
    const RadiusResult r = numerical_radius(*c.sp, c.t);
    const CVec& x = r.witness_vector;
    REQUIRE(x.size() == c.t.rows());
    CHECK(std::abs(a_norm_vec(*c.sp, x) - 1.0) < 1e-9);
    CHECK(std::abs(a_inner(*c.sp, c.t * x, x)) >= r.value - 1e-6 * std::max(1.0, r.value));
  }
}

TEST_CASE("radius properties on random members") {
  oracle::Gen gen(46);
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = random_case(gen);
    const SemiSpace& sp = *c.sp;
    const double w = numerical_radius(sp, c.t).value;
    const double nt = op_seminorm(sp, c.t);
    const double eps = 1e-8 * std::max(1.0, nt);
    CHECK(0.5 * nt - eps <= w);
    CHECK(w <= nt + eps);
    CHECK(rel(numerical_radius(sp, sharp(sp, c.t)).value, w) <= 1e-8);

    const CMat ts = sharp(sp, c.t);
    CHECK(rel(op_seminorm(sp, ts * c.t), nt * nt) <= 1e-7);
    CHECK(rel(op_seminorm(sp, c.t * ts), nt * nt) <= 1e-7);

    const CMat s = gen.member(c.w);
    CHECK(rel(op_seminorm(sp, sharp(sp, c.t) * s), op_seminorm(sp, sharp(sp, s) * c.t)) <= 1e-8);
    CHECK(op_seminorm(sp, c.t * s) <= nt * op_seminorm(sp, s) + 1e-8 * std::max(1.0, nt * op_seminorm(sp, s)));
  }
}

TEST_CASE("A-unitary conjugation preserves the radius") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    oracle::Gen gen(seed);
    const int n = gen.integer(2, 6);
    const auto w = gen.weight(n, gen.integer(1, n));
    const auto sp = space(w.a);
    const CMat u = gen_a_unitary(*sp, seed);
    const CMat t = gen.member(w);
    const CMat conj = sharp(*sp, u) * t * u;
    REQUIRE(in_b_a(*sp, conj));
    CHECK(rel(numerical_radius(*sp, conj).value, numerical_radius(*sp, t).value) <= 1e-7);
  }
}

TEST_CASE("Crawford number") {
  CHECK(crawford(*space(identity(2)), identity(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crawford(*space(identity(2)), diag({1.0, 2.0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crawford(*space(identity(2)), mat({{0.0, 1.0}, {0.0, 0.0}})) == 0.0);
  CHECK(crawford(*space(CMat::Zero(2, 2)), identity(2)) == 0.0);

  oracle::Gen gen(47);
  for (int trial = 0; trial < 60; ++trial) {
    // Shift so that the range often misses the origin.
    const int n = gen.integer(2, 5);
    const CMat t = gen.mat(n, n) * 0.3 + gen.z() * identity(n);
    const double c = crawford(*space(identity(n)), t);
    const double ref = oracle::distance_to_polygon(oracle::hull_points(t, 4096));
    CHECK(std::abs(c - ref) <= 1e-5 * std::max(1.0, norm2(t)));
    CHECK(c <= classical_numerical_radius(t).value + 1e-12);
  }
}

TEST_CASE("m_A") {
  CHECK(m_a(*space(identity(2)), CMat::Zero(2, 2)) == 0.0);
  CHECK(m_a(*space(identity(2)), identity(2)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m_a(*space(identity(2)), diag({1.0, cplx(0, 1)})) <= 1e-9);
  // Re(e^{it} 2I) = 2cos(t) I, but with diag(2, 3) and a rotation by i the
  // two diagonal entries never vanish together: min_t min(|2cos t|, |3sin t|).
  const double v = m_a(*space(identity(2)), diag({2.0, cplx(0, 3.0)}));
  CHECK(v <= 1e-9);

  oracle::Gen gen(48);
  for (int trial = 0; trial < 30; ++trial) {
    const Case c = random_case(gen, 1);
    const double m = m_a(*c.sp, c.t);
    // Dense theta grid through an SVD-based compression.
    constexpr int kGrid = 4096;
    double grid_min = 1e300;
    for (int j = 0; j < kGrid; ++j) {
      const cplx e = std::polar(1.0, 2.0 * oracle::kPi * j / kGrid);
      const CMat mm = oracle::compress_svd(c.w.a, e * c.t);
      const CMat re = 0.5 * (mm + mm.adjoint());
      grid_min = std::min(grid_min, Eigen::JacobiSVD<CMat>(re).singularValues().minCoeff());
    }
    const double lip = oracle::compress_svd(c.w.a, c.t).norm();
    CHECK(m <= grid_min + 1e-9 * std::max(1.0, lip));
    CHECK(m >= grid_min - lip * 2.0 * oracle::kPi / kGrid);
    // Sampled upper bound: ||Re_A(e^{it} S) x||_A / ||x||_A.
    double sampled = 1e300;
    for (int s = 0; s < 2000; ++s) {
      const cplx e = std::polar(1.0, gen.uniform(0.0, 2.0 * oracle::kPi));
      const CMat r = re_a(*c.sp, e * c.t);
      const CVec x = gen.mat(c.t.rows(), 1);
      const double nx = a_norm_vec(*c.sp, x);
      if (nx > 1e-8) sampled = std::min(sampled, a_norm_vec(*c.sp, r * x) / nx);
    }
    CHECK(m <= sampled + 1e-9);
  }
}

TEST_CASE("m_A plain-adjoint reading") {
  // With A = I both readings coincide.
  oracle::Gen gen(49);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(2, 5);
    const CMat s = gen.mat(n, n);
    const auto id = space(identity(n));
    CHECK(std::abs(m_a(*id, s, {}, RealPartReading::ASharp) - m_a(*id, s, {}, RealPartReading::PlainAdjoint)) <=
          1e-8 * std::max(1.0, norm2(s)));
  }
  // a_min_stretch of the identity is 1 whenever A has positive rank.
  const auto w = gen.weight(4, 2);
  CHECK(a_min_stretch(*space(w.a), identity(4)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("range boundary") {
  const auto id2 = space(identity(2));
  for (const auto& p : range_boundary(*id2, identity(2), 16)) CHECK(std::abs(p.z - cplx(1.0, 0.0)) < 1e-12);

  const auto pts = range_boundary(*id2, diag({1.0, cplx(0, 1)}), 512);
  bool has_one = false;
  bool has_i = false;
  for (const auto& p : pts) {
    // On the segment re + im = 1 with both parts in [0, 1].
    CHECK(std::abs(p.z.real() + p.z.imag() - 1.0) < 1e-9);
    CHECK(p.z.real() >= -1e-9);
    CHECK(p.z.imag() >= -1e-9);
    has_one = has_one || std::abs(p.z - cplx(1.0, 0.0)) < 1e-9;
    has_i = has_i || std::abs(p.z - cplx(0.0, 1.0)) < 1e-9;
  }
  CHECK(has_one);
  CHECK(has_i);

  CHECK(range_boundary(*space(CMat::Zero(2, 2)), identity(2), 8).empty());
  CHECK(code_of([&] { range_boundary(*id2, identity(2), 2); }) == ErrorCode::BadConfig);
}

TEST_CASE("range boundary lies in W_A(T) and its hull covers sampled points") {
  oracle::Gen gen(50);
  for (int trial = 0; trial < 15; ++trial) {
    const Case c = random_case(gen, 1);
    const auto pts = range_boundary(*c.sp, c.t, 4096);
    const double w = numerical_radius(*c.sp, c.t).value;
    double maxmod = 0.0;
    for (const auto& p : pts) {
      maxmod = std::max(maxmod, std::abs(p.z));
      CHECK(std::abs(p.z) <= w + 1e-9 * std::max(1.0, w));
    }
    CHECK(std::abs(maxmod - w) <= 2e-6 * std::max(1.0, w));

    // Orientation of the polygon, then every sample must be inside up to 1e-6.
    double area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx a = pts[i].z;
      const cplx b = pts[(i + 1) % pts.size()].z;
      area += a.real() * b.imag() - a.imag() * b.real();
    }
    const double orient = area >= 0.0 ? 1.0 : -1.0;
    const CMat at = c.w.a * c.t;
    int outside = 0;
    for (int s = 0; s < 2000; ++s) {
      const CVec x = gen.mat(c.t.rows(), 1);
      const double nx = x.dot(c.w.a * x).real();
      if (nx < 1e-10) continue;
      const cplx q = x.dot(at * x) / nx;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx a = pts[i].z;
        const cplx d = pts[(i + 1) % pts.size()].z - a;
        const double len = std::abs(d);
        if (len < 1e-14) continue;
        const double signed_dist = orient * (d.real() * (q - a).imag() - d.imag() * (q - a).real()) / len;
        if (signed_dist < -1e-6 * std::max(1.0, w)) {
          ++outside;
          break;
        }
      }
    }
    CHECK(outside == 0);
  }
}

TEST_CASE("sweep engine") {
  ThetaSweepConfig cfg;
  const auto f = [](double t) { return std::cos(3.0 * t - 0.2) + 0.5 * std::cos(t); };
  const SweepResult r = sweep_maximize(f, cfg, 3.5);
  // Dense reference.
  double best = -1e300;
  for (int i = 0; i < 2000000; ++i) best = std::max(best, f(2.0 * oracle::kPi * i / 2000000));
  CHECK(r.value >= best - 1e-12);
  CHECK(std::abs(f(r.theta) - r.value) < 1e-15);

  // Constant function: the lowest theta wins ties.
  const SweepResult flat = sweep_maximize([](double) { return 1.0; }, cfg, 0.0);
  CHECK(flat.theta == 0.0);

  ThetaSweepConfig bad;
  bad.grid_points = 8;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::BadConfig);
  bad = ThetaSweepConfig{};
  bad.refine_tol = 0.0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::BadConfig);
}

TEST_CASE("radius is deterministic") {
  oracle::Gen gen(51);
  for (int trial = 0; trial < 10; ++trial) {
    const Case c = random_case(gen);
    const RadiusResult a = numerical_radius(*c.sp, c.t);
    const RadiusResult b = numerical_radius(*c.sp, c.t);
    CHECK(a.value == b.value);
    CHECK(a.arg_theta == b.arg_theta);
  }
}
