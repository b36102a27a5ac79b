#pragma once

// Enumeration and counting of degree-d maps with prescribed ramification
// or branching over finite-field towers, with dimension estimates read
// off the count growth. Ramification conditions at fixed branch values
// are linear divisibility conditions on the coefficient pair, so each
// fixed-branch stratum is the projectivization of a nullspace.

#include <atomic>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ramp1/deform.hpp"
#include "ramp1/poly.hpp"
#include "ramp1/roots.hpp"

namespace ramp1 {

// exact nonnegative rational, for counts divided by group orders
struct Rat {
  uint64_t num = 0;
  uint64_t den = 1;

  static Rat make(uint64_t n, uint64_t d);
  bool integral() const { return den == 1 || num % den == 0; }
  double value() const { return (double)num / (double)den; }
};

// enumeration budget in candidate vectors; shared across workers
struct Budget {
  explicit Budget(uint64_t cap_ = 100'000'000ULL) : cap(cap_) {}
  uint64_t cap;
  std::atomic<uint64_t> used{0};

  void charge(uint64_t n) {
    if (used.fetch_add(n) + n > cap)
      fail(errc::budget_exceeded, "enumeration budget exhausted");
  }
};

struct BranchCondition {
  PointP1 point;  // source P_i
  PointP1 value;  // target c_i = f(P_i)
  int e;          // >= 1
};

struct SearchSpace {
  const FieldSpec* field;
  int d;
  std::vector<std::vector<FieldElem>> basis;  // vectors of length 2d+2
  std::vector<BranchCondition> conds;

  uint64_t projective_count() const;
};

// nullspace of the divisibility conditions (num - c den) = 0 mod
// (x - P)^e (den = 0 mod (x - P)^e for c at infinity; source inverted
// for P at infinity); expected dimension 2d+2 - sum(e_i) for distinct
// points with sum(e_i) <= 2d+2
SearchSpace linear_system_fixed_branch(const FieldSpec* field, int d,
                                       const std::vector<BranchCondition>& conds);

enum class RamFilter {
  at_least,            // conditions as imposed by the linear system
  exact,               // ramification index equal to e_i at each P_i
  exact_nowhere_else,  // exact, and unramified away from the P_i
};

struct EnumCounts {
  uint64_t raw = 0;        // projective points of the span
  uint64_t reduced = 0;    // coprime pairs of full degree
  uint64_t separable = 0;  // nonzero derivative
  uint64_t exact = 0;      // after the requested ramification filter
};

EnumCounts enumerate_maps(const SearchSpace& space, RamFilter filter,
                          Budget& budget, int workers = 1,
                          bool require_degree_d = true,
                          const std::function<void(const RatMap&)>& visitor = {});

// total over all branch tuples at tower level m: separable degree-d maps
// over F_{q^m} with the requested ramification behavior at the P_i
EnumCounts free_branch_count(const FieldSpec* base, int d,
                             const std::vector<RamCondition>& conds,
                             uint32_t level, RamFilter filter, Budget& budget,
                             int workers = 1);

// count / |PGL2(F_{q^m})|, exact; callers flag non-integral quotients
Rat count_mod_pgl2(uint64_t count, const FieldSpec* base, uint32_t level);

struct DimensionEstimate {
  bool empty = false;  // all counts were zero
  std::optional<int> estimate;
  bool stable = false;  // all consecutive-pair estimates agree
  std::vector<int> pair_estimates;
};

// estimate from per-level values (typically mod-PGL2 quotients):
// log_q of consecutive ratios divided by the level gap, rounded
DimensionEstimate estimate_dimension(
    const std::vector<std::pair<uint32_t, double>>& levels, uint64_t q);

// Exact class counts mod PGL2 for two wild shapes where the span
// enumeration is out of reach; both use the exact transitivity of the
// target PGL2 action to normalize the wild branch value to infinity and
// count normalized representatives directly. Counted representatives are
// verified with the same local checks as the generic filter.
//
// degree-p polynomials, wild index p at infinity, exact tame index e_i
// at each finite P_i, unramified elsewhere:
uint64_t count_wild_poly_classes(const FieldSpec* base, uint32_t level,
                                 const std::vector<std::pair<PointP1, int>>& finite_conds,
                                 Budget& budget);
// degree-d maps ramified wildly to exact order e at infinity and nowhere
// else (d - e >= 1 poles, all simple):
uint64_t count_wild_only_infinity_classes(const FieldSpec* base, int d,
                                          int e_inf, uint32_t level,
                                          Budget& budget);

}  // namespace ramp1
