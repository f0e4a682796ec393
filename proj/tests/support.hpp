#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <memory>

#include <doctest.h>

#include "oracles.hpp"
#include "semiradius/error.hpp"
#include "semiradius/semispace.hpp"

namespace testing {

using semiradius::cplx;
using semiradius::CMat;
using semiradius::CVec;

inline CMat mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.begin()->size());
  CMat out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline CMat diag(std::initializer_list<cplx> d) {
  CMat out = CMat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const auto& v : d) out(i, i) = v, ++i;
  return out;
}

inline semiradius::SpacePtr space(const CMat& a) {
  return std::make_shared<const semiradius::SemiSpace>(semiradius::SemiSpace::build(a));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

inline double dist(const CMat& a, const CMat& b) { return (a - b).norm(); }

template <class F>
semiradius::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const semiradius::Error& e) {
    return e.code();
  }
  FAIL("expected a semiradius::Error");
  return semiradius::ErrorCode::Parse;
}

}  // namespace testing
