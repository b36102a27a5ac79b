#include "ramp1/wildtame.hpp"

#include <algorithm>

namespace ramp1 {

namespace {

// multiset of finite profile entries as (field size, modulus, index, e, d)
std::vector<std::tuple<uint64_t, std::vector<uint32_t>, uint64_t, int, int>>
finite_profile_key(const RamProfile& prof) {
  std::vector<std::tuple<uint64_t, std::vector<uint32_t>, uint64_t, int, int>> key;
  for (const auto& pt : prof.points) {
    if (pt.point.is_infinity()) continue;
    key.emplace_back(pt.point.spec()->size(), pt.point.spec()->modulus(),
                     pt.point.value().index(), pt.e, pt.d);
  }
  std::sort(key.begin(), key.end());
  return key;
}

Poly inseparable_part(const Poly& q) {
  const uint64_t p = q.spec()->p();
  Poly out(q.spec());
  for (int i = 0; i <= q.deg(); ++i)
    if ((uint64_t)i % p == 0 && !q.coeff((size_t)i).is_zero())
      out.set_coeff((size_t)i, q.coeff((size_t)i));
  return out;
}

}  // namespace

RatMap lift_tame_to_wild(const RatMap& f, const FieldElem& c) {
  const FieldSpec* spec = f.spec();
  const uint64_t p = spec->p();
  if (c.is_zero())
    fail(errc::precondition_violated, "multiplier must be nonzero");
  if (!evaluate(f, PointP1::infinity(spec)).is_infinity())
    fail(errc::precondition_violated, "map must fix infinity");
  RamProfile before = ramification_profile(f);
  for (const auto& pt : before.points) {
    if (pt.e >= (int)p)
      fail(errc::precondition_violated,
           pt.point.is_infinity() ? "index at infinity must be below p"
                                  : "finite indices must be below p");
  }
  const int e_inf = f.num().deg() - f.den().deg();

  Poly xp(spec);
  xp.set_coeff((size_t)p, c);
  RatMap lifted = RatMap::reduce(f.num() + xp * f.den(), f.den());

  // contract: degree d + p - e_inf, index p at infinity, finite profile
  // unchanged; verified rather than assumed
  if (lifted.degree() != f.degree() + (int)p - e_inf)
    fail(errc::verification_failed, "lift changed the degree unexpectedly");
  RamProfile after = ramification_profile(lifted);
  bool inf_ok = false;
  for (const auto& pt : after.points)
    if (pt.point.is_infinity()) inf_ok = pt.e == (int)p && pt.wild;
  if (!inf_ok)
    fail(errc::verification_failed, "lift missed index p at infinity");
  if (finite_profile_key(before) != finite_profile_key(after))
    fail(errc::verification_failed, "lift disturbed the finite profile");
  return lifted;
}

ReductionTranscript reduce_wild_to_tame(const RatMap& f) {
  const FieldSpec* spec = f.spec();
  if (!is_separable(f))
    fail(errc::inseparable_map, "map factors through Frobenius");

  RamProfile prof = ramification_profile(f);
  bool inf_wild = false;
  for (const auto& pt : prof.points) {
    if (pt.point.is_infinity()) {
      inf_wild = pt.wild;
    } else if (pt.wild) {
      fail(errc::precondition_violated,
           "wild ramification away from infinity");
    }
  }
  if (inf_wild && !evaluate(f, PointP1::infinity(spec)).is_infinity())
    fail(errc::precondition_violated,
         "wild point must be a fixed point of infinity");

  ReductionTranscript out{f, f, {}};
  RatMap cur = f;
  int guard = 3 * f.degree() + 6;
  for (;;) {
    if (--guard < 0) fail(errc::internal, "reduction failed to terminate");
    LocalRam inf = local_ramification(cur, PointP1::infinity(spec));
    if (!inf.wild) break;
    if (cur.num().deg() >= cur.den().deg()) {
      Poly rem(spec);
      Poly q = poly_divmod(cur.num(), cur.den(), &rem);
      Poly qi = inseparable_part(q);
      if (qi.is_zero())
        fail(errc::internal, "wild polynomial part without p-power terms");
      int before_deg = cur.degree();
      cur = RatMap::reduce(cur.num() - qi * cur.den(), cur.den());
      if (cur.degree() > before_deg)
        fail(errc::internal, "degree grew during reduction");
      out.steps.push_back({ReductionStep::Kind::subtract_inseparable, qi});
    } else {
      cur = RatMap::reduce(cur.den(), cur.num());
      out.steps.push_back(
          {ReductionStep::Kind::invert_target, Poly(spec)});
    }
  }
  out.final = cur;
  return out;
}

RatMap replay(const RatMap& initial, const std::vector<ReductionStep>& steps) {
  RatMap cur = initial;
  for (const auto& s : steps) {
    if (s.kind == ReductionStep::Kind::subtract_inseparable)
      cur = RatMap::reduce(cur.num() - s.poly * cur.den(), cur.den());
    else
      cur = RatMap::reduce(cur.den(), cur.num());
  }
  return cur;
}

RatMap replay_inverse(const RatMap& final,
                      const std::vector<ReductionStep>& steps) {
  RatMap cur = final;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->kind == ReductionStep::Kind::subtract_inseparable)
      cur = RatMap::reduce(cur.num() + it->poly * cur.den(), cur.den());
    else
      cur = RatMap::reduce(cur.den(), cur.num());
  }
  return cur;
}

RatMap construct_wild_polynomial(const FieldSpec* spec,
                                 const std::vector<std::pair<PointP1, int>>& conds,
                                 const FieldElem& c, const FieldElem& c_p) {
  const uint64_t p = spec->p();
  if (c.is_zero() || c_p.is_zero())
    fail(errc::precondition_violated, "scales must be nonzero");
  int total = 0;
  for (size_t i = 0; i < conds.size(); ++i) {
    auto& [pt, e] = conds[i];
    if (pt.is_infinity() || pt.spec() != spec)
      fail(errc::precondition_violated, "condition points must be finite");
    if (e < 1 || (uint64_t)e >= p)
      fail(errc::precondition_violated, "indices must satisfy 1 <= e < p");
    for (size_t j = i + 1; j < conds.size(); ++j)
      if (pt == conds[j].first)
        fail(errc::precondition_violated, "condition points must be distinct");
    total += e - 1;
  }
  if (total > (int)p - 2)
    fail(errc::too_much_ramification,
         "sum of (e_i - 1) exceeds p - 2");

  Poly w = Poly::constant(spec, c);
  for (auto& [pt, e] : conds) {
    Poly lin = Poly::linear(spec, -pt.value(), spec->one());
    for (int t = 1; t < e; ++t) w = w * lin;
  }
  // termwise antiderivative; every exponent stays below p
  Poly F(spec);
  for (int j = 0; j <= w.deg(); ++j) {
    if (w.coeff((size_t)j).is_zero()) continue;
    F.set_coeff((size_t)j + 1, w.coeff((size_t)j) / spec->from_int(j + 1));
  }
  F.set_coeff((size_t)p, c_p);
  return RatMap::reduce(F, Poly::constant(spec, spec->one()));
}

FamilyReport verify_example_family(
    const FieldSpec* spec, std::vector<std::pair<FieldElem, FieldElem>> samples) {
  const uint64_t p = spec->p();
  if (samples.empty()) {
    for (uint64_t i = 1; i < spec->size(); ++i)
      for (uint64_t j = 1; j < spec->size(); ++j)
        samples.emplace_back(spec->elem(i), spec->elem(j));
  }
  FamilyReport report;
  for (auto& [t1, t2] : samples) {
    FamilySample s{t1, t2, false, false, ""};
    if (t1.is_zero() || t2.is_zero()) {
      s.degenerate = true;
      s.note = "parameters must be nonzero";
      report.samples.push_back(s);
      continue;
    }
    Poly num(spec), den(spec);
    num.set_coeff(2 * (size_t)p, spec->one());
    num.set_coeff((size_t)p + 1, t1);
    num.set_coeff(0, t2);
    den.set_coeff((size_t)p, spec->one());
    den.set_coeff(1, t1);
    if (poly_gcd(num, den).deg() > 0) {
      s.degenerate = true;
      s.note = "numerator and denominator share a factor";
      report.samples.push_back(s);
      continue;
    }
    RatMap f = RatMap::reduce(num, den);
    if (f.degree() != 2 * (int)p) {
      s.note = "degree " + std::to_string(f.degree());
    } else if (!is_separable(f)) {
      s.note = "inseparable member";
    } else {
      RamProfile prof = ramification_profile(f);
      if (prof.points.size() == 1 && prof.points[0].point.is_infinity() &&
          prof.points[0].e == (int)p &&
          prof.points[0].d == 4 * (int)p - 2 && prof.rh_ok) {
        s.pass = true;
      } else {
        s.note = "unexpected profile with " +
                 std::to_string(prof.points.size()) + " points";
      }
    }
    if (!s.pass) report.all_ok = false;
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace ramp1
