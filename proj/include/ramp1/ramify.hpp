#pragma once

// Ramification indices, different exponents, and full profiles of
// separable self-maps of P^1 over the splitting tower of the base field.
//
// Different exponents are always read off the local series (smallest
// exponent prime to p, minus one), never solved for through the degree
// identity sum(d_P) = 2 deg - 2, so that identity stays an independent
// cross check of the whole pipeline. For self-maps of the line, the
// total-length form of that identity is the genus-0 specialization of
// the usual length count for the cokernel of the tangent map.

#include <vector>

#include "ramp1/poly.hpp"
#include "ramp1/roots.hpp"

namespace ramp1 {

struct RamPoint {
  PointP1 point;
  int e;      // ramification index, >= 1
  int d;      // different exponent, >= 0; tame points have d = e - 1
  bool wild;  // p | e
};

struct RamProfile {
  RatMap map;
  std::vector<RamPoint> points;  // infinity first, then deterministic order
  int total_different;
  bool rh_ok;  // total_different == 2 deg - 2
};

bool is_separable(const RatMap& f);

// both local invariants from one series expansion; f separable
struct LocalRam {
  int e;
  int d;
  bool wild;
};
LocalRam local_ramification(const RatMap& f, const PointP1& P);

int ramification_index(const RatMap& f, const PointP1& P);
int different_exponent(const RatMap& f, const PointP1& P);

RamProfile ramification_profile(const RatMap& f);

int riemann_hurwitz_defect(const RamProfile& profile);

// exact test for ramification at any point (over any extension) away
// from the listed points of the coefficient field; works on polynomial
// valuations alone, no root location and no series
bool has_ramification_outside(const RatMap& f,
                              const std::vector<PointP1>& pts);

// ramification index through valuations of the coefficient pair; agrees
// with the series route everywhere, wild points included
int ramification_index_pair(const Poly& num, const Poly& den,
                            const PointP1& P);

}  // namespace ramp1
