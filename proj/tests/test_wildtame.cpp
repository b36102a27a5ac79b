#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracle_helpers.hpp"
#include "ramp1/parse.hpp"
#include "ramp1/wildtame.hpp"

using namespace ramp1;
using namespace ramp1::testing;

namespace {

std::vector<std::tuple<uint32_t, uint64_t, int, int>> finite_key(
    const RamProfile& prof) {
  std::vector<std::tuple<uint32_t, uint64_t, int, int>> key;
  for (const auto& pt : prof.points) {
    if (pt.point.is_infinity()) continue;
    key.emplace_back(pt.point.spec()->k(), pt.point.value().index(), pt.e,
                     pt.d);
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

TEST_CASE("reduction of the first golden wild map") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap in =
      parse_map_expression("(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)", f5);
  ReductionTranscript t = reduce_wild_to_tame(in);
  CHECK(t.final == parse_map_expression("x^7-2*x", f5));
  CHECK(render(t.final) == "x^7 + 3*x");
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].kind == ReductionStep::Kind::subtract_inseparable);
  CHECK(t.steps[0].poly == parse_poly_expression("x^5", f5));
  CHECK(t.steps[1].kind == ReductionStep::Kind::invert_target);
  CHECK(t.steps[2].poly == parse_poly_expression("x^10", f5));

  // transcript replays forward and backward
  CHECK(replay(t.initial, t.steps) == t.final);
  CHECK(replay_inverse(t.final, t.steps) == t.initial);
}

TEST_CASE("reduction of the second golden wild map") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap in = parse_map_expression(
      "(x^5*(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)+x^5+x^4-x^3+2*x)"
      "/(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)",
      f5);
  CHECK(in.degree() == 15);
  ReductionTranscript t = reduce_wild_to_tame(in);
  CHECK(t.final ==
        parse_map_expression("(x^2+2*x+1)/(x^5+x^4-x^3+2*x)", f5));
  CHECK(replay_inverse(t.final, t.steps) == t.initial);
}

TEST_CASE("already tame maps are fixed points") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap cube = parse_map_expression("x^3", f5);
  ReductionTranscript t = reduce_wild_to_tame(cube);
  CHECK(t.final == cube);
  CHECK(t.steps.empty());
}

TEST_CASE("both golden wild maps have the same outer shape") {
  auto* f5 = FieldSpec::get(5, 1);
  for (const char* text :
       {"(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)",
        "(x^5*(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)+x^5+x^4-x^3+2*x)"
        "/(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)"}) {
    RatMap f = parse_map_expression(text, f5);
    CHECK(f.degree() == 15);
    RamProfile prof = ramification_profile(f);
    int simple = 0;
    for (const auto& pt : prof.points) {
      if (pt.point.is_infinity()) {
        CHECK(pt.e == 5);
      } else {
        CHECK(pt.e == 2);
        CHECK(pt.point.value().pow(6).is_one());
        ++simple;
      }
    }
    CHECK(simple == 6);
  }
}

TEST_CASE("lift golden case") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap sq = parse_map_expression("x^2", f5);
  RatMap lifted = lift_tame_to_wild(sq, f5->one());
  CHECK(lifted == parse_map_expression("x^5+x^2", f5));
  CHECK(lifted.degree() == 5);
  RamProfile prof = ramification_profile(lifted);
  bool zero_found = false;
  for (const auto& pt : prof.points) {
    if (pt.point.is_infinity()) {
      CHECK(pt.e == 5);
    } else {
      CHECK(pt.point == PointP1::affine(f5->zero()));
      CHECK(pt.e == 2);
      zero_found = true;
    }
  }
  CHECK(zero_found);

  // precondition: a finite point of index p (order 5 at the origin, while
  // infinity stays at the tame index 4)
  RatMap bad = parse_map_expression("(x^6+x^5)/(x^2+x+1)", f5);
  CHECK(ramification_index(bad, PointP1::affine(f5->zero())) == 5);
  CHECK_THROWS_AS(lift_tame_to_wild(bad, f5->one()), error);
  try {
    lift_tame_to_wild(bad, f5->one());
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition_violated);
  }
}

TEST_CASE("transcript inverse rebuilds the wild partner of the tame output") {
  // the golden pairing: replaying the recorded steps backward on the tame
  // output (index 7 at infinity, beyond the lifting range) restores the
  // original wild map of index 5
  auto* f5 = FieldSpec::get(5, 1);
  RatMap wild =
      parse_map_expression("(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)", f5);
  ReductionTranscript t = reduce_wild_to_tame(wild);
  RatMap again = replay_inverse(t.final, t.steps);
  CHECK(again == wild);
  LocalRam inf = local_ramification(again, PointP1::infinity(f5));
  CHECK(inf.e == 5);
  CHECK(inf.wild);
}

TEST_CASE("lift and reduce preserve the finite profile") {
  auto* f5 = FieldSpec::get(5, 1);
  Rng rng(67);
  int done = 0;
  while (done < 100) {
    // random tame map with a polynomial part and all indices below p
    int d = 2 + (int)rng.below(3);
    RatMap f = random_separable_map(f5, d, rng);
    if (!evaluate(f, PointP1::infinity(f5)).is_infinity()) continue;
    RamProfile prof = ramification_profile(f);
    bool small = true;
    for (const auto& pt : prof.points) small = small && pt.e < 5;
    if (!small) continue;
    FieldElem c = f5->elem(1 + rng.below(4));
    RatMap lifted = lift_tame_to_wild(f, c);
    ReductionTranscript t = reduce_wild_to_tame(lifted);
    CHECK(finite_key(ramification_profile(t.final)) ==
          finite_key(prof));
    ++done;
  }
}

TEST_CASE("constructor golden cases") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap f = construct_wild_polynomial(
      f5, {{PointP1::affine(f5->one()), 2}}, f5->one(), f5->one());
  CHECK(f == parse_map_expression("x^5+3*x^2+4*x", f5));
  RamProfile prof = ramification_profile(f);
  REQUIRE(prof.points.size() == 2);
  CHECK(prof.points[0].point.is_infinity());
  CHECK(prof.points[0].e == 5);
  CHECK(prof.points[1].point == PointP1::affine(f5->one()));
  CHECK(prof.points[1].e == 2);

  auto* f3 = FieldSpec::get(3, 1);
  RatMap g = construct_wild_polynomial(f3, {}, f3->one(), f3->one());
  CHECK(g == parse_map_expression("x^3+x", f3));

  CHECK_THROWS_AS(construct_wild_polynomial(
                      f3,
                      {{PointP1::affine(f3->zero()), 2},
                       {PointP1::affine(f3->one()), 2}},
                      f3->one(), f3->one()),
                  error);
  try {
    construct_wild_polynomial(f3,
                              {{PointP1::affine(f3->zero()), 2},
                               {PointP1::affine(f3->one()), 2}},
                              f3->one(), f3->one());
  } catch (const error& e) {
    CHECK(e.code() == errc::too_much_ramification);
  }
}

TEST_CASE("example family verification") {
  auto* f3 = FieldSpec::get(3, 1);
  FamilyReport r3 =
      verify_example_family(f3, {{f3->one(), f3->one()}});
  CHECK(r3.all_ok);
  CHECK(r3.samples.size() == 1);
  CHECK(r3.samples[0].pass);

  auto* f5 = FieldSpec::get(5, 1);
  FamilyReport r5 = verify_example_family(f5);
  CHECK(r5.samples.size() == 16);
  CHECK(r5.all_ok);

  auto* f2 = FieldSpec::get(2, 1);
  FamilyReport r2 = verify_example_family(f2);
  CHECK(r2.all_ok);
  for (const auto& s : r2.samples) CHECK((s.pass || s.degenerate));
}

TEST_CASE("existence transfer over F_9") {
  // 2d - 2 = sum(e_i - 1) with indices below p: the tame side at degree d
  // is nonempty exactly when the wild side at degree d + p - e_1 is, with
  // the first index raised to p; the wild side carries one extra dimension
  auto* f9 = FieldSpec::get(3, 2);
  Rng rng(71);
  Budget budget(2'000'000'000ULL);
  for (int trial = 0; trial < 2; ++trial) {
    // d = 2, e = (2, 2): the only shape with n <= 3 at p = 3
    PointP1 p2 = PointP1::affine(f9->elem(rng.below(9)));
    std::vector<RamCondition> tame{{PointP1::infinity(f9), 2}, {p2, 2}};
    EnumCounts t1 =
        free_branch_count(f9, 2, tame, 1, RamFilter::exact_nowhere_else,
                          budget);
    EnumCounts t2 =
        free_branch_count(f9, 2, tame, 2, RamFilter::exact_nowhere_else,
                          budget);
    uint64_t w1 =
        count_wild_poly_classes(f9, 1, {{p2, 2}}, budget);
    uint64_t w2 =
        count_wild_poly_classes(f9, 2, {{p2, 2}}, budget);
    CHECK((t1.exact > 0) == (w1 > 0));
    REQUIRE(t1.exact > 0);

    Rat tq1 = count_mod_pgl2(t1.exact, f9, 1);
    Rat tq2 = count_mod_pgl2(t2.exact, f9, 2);
    auto tame_est = estimate_dimension(
        {{1, tq1.value()}, {2, tq2.value()}}, f9->size());
    auto wild_est = estimate_dimension(
        {{1, (double)w1}, {2, (double)w2}}, f9->size());
    REQUIRE(tame_est.estimate.has_value());
    REQUIRE(wild_est.estimate.has_value());
    CHECK(*tame_est.estimate == 0);
    CHECK(*wild_est.estimate == 1);
    CHECK(*wild_est.estimate == *tame_est.estimate + 1);
  }
}
