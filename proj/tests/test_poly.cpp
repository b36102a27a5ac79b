#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramp1/parse.hpp"
#include "ramp1/poly.hpp"
#include "ramp1/rng.hpp"

using namespace ramp1;

namespace {
Mobius random_mobius(const FieldSpec* s, Rng& rng) {
  for (;;) {
    FieldElem a = s->elem(rng.below(s->size()));
    FieldElem b = s->elem(rng.below(s->size()));
    FieldElem c = s->elem(rng.below(s->size()));
    FieldElem d = s->elem(rng.below(s->size()));
    if (!(a * d - b * c).is_zero()) return {a, b, c, d};
  }
}
}  // namespace

TEST_CASE("reduce_map") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap r = RatMap::reduce(parse_poly_expression("x^2-1", f5),
                            parse_poly_expression("x-1", f5));
  CHECK(r == parse_map_expression("x+1", f5));
  CHECK(r.degree() == 1);

  RatMap frob = parse_map_expression("x^5", f5);  // inseparable, still fine
  CHECK(frob.degree() == 5);

  CHECK_THROWS_AS(RatMap::reduce(Poly::zero(f5), Poly::x(f5)), error);
  try {
    RatMap::reduce(Poly::zero(f5), Poly::x(f5));
  } catch (const error& e) {
    CHECK(e.code() == errc::zero_map);
  }
  CHECK_THROWS_AS(parse_map_expression("(x^2+1)/(x^2+1)", f5), error);

  // idempotence of reduction
  RatMap m = parse_map_expression("(x^3+2*x)/(x^2+1)", f5);
  CHECK(RatMap::reduce(m.num(), m.den()) == m);
}

TEST_CASE("evaluate on P1") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap inv = parse_map_expression("1/x", f5);
  CHECK(evaluate(inv, PointP1::affine(f5->zero())).is_infinity());
  CHECK(evaluate(inv, PointP1::infinity(f5)) ==
        PointP1::affine(f5->zero()));
  RatMap m = parse_map_expression("(x^2+1)/x", f5);
  CHECK(evaluate(m, PointP1::infinity(f5)).is_infinity());
}

TEST_CASE("taylor_shift") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap sq = parse_map_expression("x^2", f5);
  LocalSeries s = taylor_shift(sq, PointP1::affine(f5->zero()), 3);
  CHECK(s.a[0].is_zero());
  CHECK(s.a[1].is_zero());
  CHECK(s.a[2] == f5->one());
  CHECK(s.a[3].is_zero());

  // (1 + s)^5 - 1 = s^5 in characteristic 5
  RatMap frob = parse_map_expression("x^5", f5);
  LocalSeries t = taylor_shift(frob, PointP1::affine(f5->one()), 5);
  for (int j = 0; j < 5; ++j) CHECK(t.a[(size_t)j].is_zero());
  CHECK(t.a[5] == f5->one());

  // 1/x at 0 sends the target through the flip, leaving the series s;
  // oracle: composing the charts by hand gives exactly u = s
  RatMap inv = parse_map_expression("1/x", f5);
  LocalSeries u = taylor_shift(inv, PointP1::affine(f5->zero()), 2);
  CHECK(u.a[0].is_zero());
  CHECK(u.a[1] == f5->one());
  CHECK(u.a[2].is_zero());
}

TEST_CASE("taylor series agrees with evaluation") {
  auto* f7 = FieldSpec::get(7, 1);
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    std::vector<FieldElem> nc, dc;
    for (int i = 0; i <= 3; ++i) nc.push_back(f7->elem(rng.below(7)));
    for (int i = 0; i <= 3; ++i) dc.push_back(f7->elem(rng.below(7)));
    Poly num(f7, nc), den(f7, dc);
    if (num.is_zero() || den.is_zero() || poly_gcd(num, den).deg() > 0)
      continue;
    if (std::max(num.deg(), den.deg()) < 1) continue;
    RatMap f = RatMap::reduce(num, den);
    FieldElem P = f7->elem(rng.below(7));
    PointP1 p1 = PointP1::affine(P);
    PointP1 v = evaluate(f, p1);
    if (v.is_infinity()) continue;
    const int order = 2 * f.degree() + 2;
    LocalSeries s = taylor_shift(f, p1, order);
    // the series solves its defining equation: series * chart_den equals
    // chart_num through the truncation order (plain multiplication route)
    ChartedPair ch = chart_at(f, p1);
    Poly sp(f7, s.a);
    Poly lhs = series_mul(sp, ch.d, order);
    for (int j = 0; j <= order; ++j) CHECK(lhs.coeff((size_t)j) == ch.n.coeff((size_t)j));
    // evaluating the truncated series at u - P reproduces f(u) - f(P)
    // whenever the full expansion has no tail below the truncation;
    // polynomial denominators of the chart make the series exact only
    // when den is constant, so restrict to that case
    if (f.den().deg() == 0) {
      FieldElem u = f7->elem(rng.below(7));
      FieldElem x = u - P, acc = f7->zero();
      for (int j = order; j >= 0; --j) acc = acc * x + s.a[(size_t)j];
      PointP1 fu = evaluate(f, PointP1::affine(u));
      REQUIRE_FALSE(fu.is_infinity());
      CHECK(acc == fu.value() - v.value());
    }
    // first-order coefficient equals the derivative value
    auto der = derivative(f);
    if (der && !f.den().eval(P).is_zero()) {
      FieldElem dv = der->num.eval(P) / der->den.eval(P);
      CHECK(s.a[1] == dv);
    }
  }
}

TEST_CASE("derivative") {
  auto* f5 = FieldSpec::get(5, 1);
  CHECK_FALSE(derivative(parse_map_expression("x^5", f5)).has_value());
  auto d = derivative(parse_map_expression("x^3", f5));
  REQUIRE(d.has_value());
  CHECK(d->num == parse_poly_expression("3*x^2", f5));
  CHECK(d->den.deg() == 0);

  // x^5 + t x^3 + x over F_3: derivative 2x^4 + 1 for every t
  auto* f3 = FieldSpec::get(3, 1);
  for (uint64_t t = 0; t < 3; ++t) {
    Poly num(f3);
    num.set_coeff(5, f3->one());
    num.set_coeff(3, f3->elem(t));
    num.set_coeff(1, f3->one());
    auto dt = derivative(RatMap::reduce(num, Poly::constant(f3, f3->one())));
    REQUIRE(dt.has_value());
    CHECK(dt->num == parse_poly_expression("2*x^4+1", f3));
  }
}

TEST_CASE("mobius conjugation") {
  auto* f7 = FieldSpec::get(7, 1);
  RatMap sq = parse_map_expression("x^2", f7);
  Mobius id = Mobius::identity(f7);
  CHECK(mobius_conjugate(sq, id, id) == sq);

  Mobius inv = Mobius::inversion(f7);
  CHECK(mobius_conjugate(sq, inv, inv) == sq);  // 1/(1/x)^2 = x^2

  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    int d = 1 + (int)rng.below(4);
    std::vector<FieldElem> nc, dc;
    for (int i = 0; i <= d; ++i) nc.push_back(f7->elem(rng.below(7)));
    for (int i = 0; i <= d; ++i) dc.push_back(f7->elem(rng.below(7)));
    Poly num(f7, nc), den(f7, dc);
    if (num.is_zero() || den.is_zero()) continue;
    if (std::max(num.deg(), den.deg()) < 1) continue;
    if (poly_gcd(num, den).deg() > 0) continue;
    RatMap f = RatMap::reduce(num, den);
    Mobius s1 = random_mobius(f7, rng), t1 = random_mobius(f7, rng);
    RatMap g = mobius_conjugate(f, s1, t1);
    CHECK(g.degree() == f.degree());
    // group action: conjugating by s1 then s2 matches s2 s1 at once
    Mobius s2 = random_mobius(f7, rng);
    CHECK(mobius_conjugate(mobius_conjugate(f, s1, s1), s2, s2) ==
          mobius_conjugate(f, s2.compose(s1), s2.compose(s1)));
  }
}

TEST_CASE("parser and rendering") {
  auto* f5 = FieldSpec::get(5, 1);
  RatMap m = parse_map_expression("(x^7 - 2*x)", f5);
  CHECK(m.degree() == 7);
  CHECK(render(m) == "x^7 + 3*x");

  CHECK_THROWS_AS(parse_map_expression("x^^2", f5), parse_error);
  try {
    parse_map_expression("x^^2", f5);
  } catch (const parse_error& e) {
    CHECK(e.position() == 1);
  }

  CHECK(parse_point("inf", f5).is_infinity());
  CHECK(parse_point("3", f5) == PointP1::affine(f5->from_int(3)));

  auto* f9 = FieldSpec::get(3, 2);
  FieldElem g = f9->gen();
  CHECK(parse_element("1+2*g", f9) == f9->one() + f9->from_int(2) * g);
  CHECK(parse_element(render(f9->elem(7)), f9) == f9->elem(7));

  // parse-render round trip on random maps, both field shapes
  Rng rng(29);
  for (const FieldSpec* s : {f5, (const FieldSpec*)f9}) {
    for (int t = 0; t < 50; ++t) {
      int d = 1 + (int)rng.below(5);
      std::vector<FieldElem> nc, dc;
      for (int i = 0; i <= d; ++i) nc.push_back(s->elem(rng.below(s->size())));
      for (int i = 0; i <= d; ++i) dc.push_back(s->elem(rng.below(s->size())));
      Poly num(s, nc), den(s, dc);
      if (num.is_zero() || den.is_zero()) continue;
      if (std::max(num.deg(), den.deg()) < 1) continue;
      if (poly_gcd(num, den).deg() > 0) continue;
      RatMap f = RatMap::reduce(num, den);
      CHECK(parse_map_expression(render(f), s) == f);
    }
  }
}
