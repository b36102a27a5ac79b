#pragma once

// Transfers between wildly and tamely ramified maps with the wild point
// at infinity: lifting a tame map by adding a multiple of x^p, the
// inverse reduction that peels off inseparable polynomial parts
// (inverting the target when needed), a constructor for degree-p
// polynomials with prescribed tame ramification, and a verifier for the
// two-parameter wild family (x^{2p} + t1 x^{p+1} + t2)/(x^p + t1 x).

#include <string>
#include <vector>

#include "ramp1/poly.hpp"
#include "ramp1/ramify.hpp"

namespace ramp1 {

struct ReductionStep {
  enum class Kind { subtract_inseparable, invert_target };
  Kind kind;
  Poly poly;  // the subtracted polynomial (in x^p) for subtract steps
};

struct ReductionTranscript {
  RatMap initial;
  RatMap final;
  std::vector<ReductionStep> steps;
};

// f + c x^p for a tame f fixing infinity with all indices below p;
// the result has index p at infinity and the identical finite profile
RatMap lift_tame_to_wild(const RatMap& f, const FieldElem& c);

// peel inseparable polynomial parts (inverting the target as needed)
// until infinity is tame; the transcript replays both ways
ReductionTranscript reduce_wild_to_tame(const RatMap& f);

RatMap replay(const RatMap& initial, const std::vector<ReductionStep>& steps);
RatMap replay_inverse(const RatMap& final,
                      const std::vector<ReductionStep>& steps);

// degree-p polynomial with derivative c prod (x - P_i)^{e_i - 1} and top
// term c_p x^p: index p at infinity, exactly e_i at each P_i, unramified
// elsewhere; requires sum(e_i - 1) <= p - 2
RatMap construct_wild_polynomial(const FieldSpec* spec,
                                 const std::vector<std::pair<PointP1, int>>& conds,
                                 const FieldElem& c, const FieldElem& c_p);

struct FamilySample {
  FieldElem t1, t2;
  bool pass = false;
  bool degenerate = false;  // skipped, not failed
  std::string note;
};

struct FamilyReport {
  std::vector<FamilySample> samples;
  bool all_ok = true;  // degenerate samples do not fail the report
};

// checks degree 2p, separability, and the profile {infinity: e = p,
// d = 4p - 2} with no other ramification, for each (t1, t2) sample;
// empty sample list means all of (F_p \ {0})^2
FamilyReport verify_example_family(
    const FieldSpec* spec,
    std::vector<std::pair<FieldElem, FieldElem>> samples = {});

}  // namespace ramp1
