#pragma once

// First-order deformations of a separable self-map of P^1 with fixed
// branch values and ramification conditions at marked points, over the
// dual numbers. The solver builds one exact linear system over F_q in
// the perturbation pair (A, B) of the map (num + eps A)/(den + eps B)
// and one motion unknown x_i per marked point; closed-form dimension
// calculators sit alongside it for comparison.

#include <optional>
#include <vector>

#include "ramp1/poly.hpp"
#include "ramp1/ramify.hpp"

namespace ramp1 {

// e = 0 places no condition at the point; the point still contributes a
// free motion unknown
struct RamCondition {
  PointP1 point;
  int e;
};

struct GenusParams {
  int g_source = 0;
  int g_target = 0;
};

// 0/1 per the rule: 0 when p | e or the map is ramified to order
// strictly above e at the point, else 1; e = 0 counts as divisible
int delta_indicator(const RatMap& f, const RamCondition& cond);

// dimension of the fixed-target deformation space for a degree-d map
// with conditions (e_i, delta_i); exact for genus 0, Riemann-Roch range
// only (nullopt = indeterminate) for positive source genus
std::optional<int> expected_dim_fixed_target(
    int d, const std::vector<std::pair<int, int>>& conds_e_delta,
    int g_source = 0);

// dimension when the source curve varies: d(2-2g_D) - (2-2g_C) - sum(e_i - 1)
int expected_dim_varying_source(int d, const GenusParams& genus,
                                const std::vector<int>& e_list);

struct BrillNoetherDims {
  int expected_dim;                 // 2d - 2 - g - sum(e_i - 1)
  int branch_fiber_dim;             // 2d - 2 + 2g - sum(e_i - 1) + eps_g
  std::optional<int> wild_locus_dim;  // m, defined iff 2d-2 = m + sum(e_i - 1)
};
BrillNoetherDims brill_noether_dims(int d, int g,
                                    const std::vector<int>& e_list,
                                    int wild_count);

struct DeformationReport {
  int solver_dim;   // solution space dimension minus the rescaling line
  int formula_dim;  // calculator value with computed deltas
  std::vector<int> deltas;
  struct BasisVec {
    std::vector<FieldElem> a, b;  // perturbation coefficients, degree <= d
    std::vector<FieldElem> x;     // point motions, one per condition
  };
  std::vector<BasisVec> basis;             // spans the space mod rescaling
  std::vector<std::vector<FieldElem>> point_motions;  // x components per basis vector
};

// exact solver for the first-order system; all condition points must lie
// over the map's coefficient field (rebase the instance first otherwise)
DeformationReport solve_first_order(const RatMap& f,
                                    const std::vector<RamCondition>& conds);

}  // namespace ramp1
