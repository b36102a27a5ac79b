#include "ramp1/ramify.hpp"

#include <algorithm>
#include <set>

namespace ramp1 {

bool is_separable(const RatMap& f) { return derivative(f).has_value(); }

static void require_separable(const RatMap& f) {
  if (!is_separable(f))
    fail(errc::inseparable_map, "map factors through Frobenius");
}

LocalRam local_ramification(const RatMap& f, const PointP1& P) {
  const int order = 2 * f.degree() + 2;
  LocalSeries s = taylor_shift(f, P, order);
  int e = s.vanishing_order();
  if (e < 0) fail(errc::internal, "no nonzero series coefficient below bound");
  const uint64_t p = f.spec()->p();
  int d = -1;
  for (int j = 1; j <= order; ++j) {
    if (!s.coeff(j).is_zero() && (uint64_t)j % p != 0) {
      d = j - 1;
      break;
    }
  }
  if (d < 0)
    fail(errc::truncation_exhausted,
         "no tame series exponent below twice the degree");
  return {e, d, (uint64_t)e % p == 0};
}

int ramification_index(const RatMap& f, const PointP1& P) {
  require_separable(f);
  LocalSeries s = taylor_shift(f, P, f.degree() + 1);
  int e = s.vanishing_order();
  if (e < 0) fail(errc::internal, "vanishing order above the degree");
  return e;
}

int different_exponent(const RatMap& f, const PointP1& P) {
  require_separable(f);
  return local_ramification(f, P).d;
}

namespace {

bool point_order(const RamPoint& a, const RamPoint& b) {
  if (a.point.is_infinity() != b.point.is_infinity())
    return a.point.is_infinity();
  const FieldSpec* sa = a.point.spec();
  const FieldSpec* sb = b.point.spec();
  if (sa->k() != sb->k()) return sa->k() < sb->k();
  if (sa->modulus() != sb->modulus()) return sa->modulus() < sb->modulus();
  return a.point.value().index() < b.point.value().index();
}

// all irreducible factors, grouped by degree, of the candidate poly
void collect_factors(const Poly& c, Rng& rng,
                     std::vector<std::pair<uint32_t, std::vector<Poly>>>* out) {
  if (c.deg() < 1) return;
  for (auto& [m, part] : distinct_degree_split(c)) {
    std::vector<Poly> fs;
    if (part.deg() == (int)m)
      fs.push_back(poly_monic(part));
    else
      fs = equal_degree_split(part, m, rng);
    bool merged = false;
    for (auto& [lm, lst] : *out)
      if (lm == m) {
        for (auto& f : fs)
          if (std::find(lst.begin(), lst.end(), f) == lst.end())
            lst.push_back(f);
        merged = true;
        break;
      }
    if (!merged) out->emplace_back(m, std::move(fs));
  }
}

}  // namespace

RamProfile ramification_profile(const RatMap& f) {
  auto der = derivative(f);
  if (!der) fail(errc::inseparable_map, "map factors through Frobenius");

  const FieldSpec* spec = f.spec();
  const uint32_t k = spec->k();
  Rng rng(0x9a111f1edULL);

  // candidate finite points: zeros of the reduced derivative numerator
  // (every one of them is ramified) and poles, i.e. zeros of the
  // denominator (ramified iff multiple, decided by the local series)
  std::vector<std::pair<uint32_t, std::vector<Poly>>> levels;
  collect_factors(der->num, rng, &levels);
  collect_factors(f.den(), rng, &levels);
  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  RamProfile out{f, {}, 0, false};
  for (auto& [m, factors] : levels) {
    std::sort(factors.begin(), factors.end(), poly_less);
    for (const Poly& u : factors) {
      FactorField ff = flatten_factor_field(spec, u, rng);
      RatMap fl = rebase(f, ff.ext);
      LocalRam lr = local_ramification(fl, PointP1::affine(ff.root));
      if (lr.e < 2 && lr.d < 1) continue;
      // conjugate roots share the local invariants
      FieldElem r = ff.root;
      std::set<uint64_t> seen;
      for (uint32_t j = 0; j < m; ++j) {
        if (!seen.insert(r.index()).second)
          fail(errc::internal, "conjugate roots collided");
        out.points.push_back({PointP1::affine(r), lr.e, lr.d, lr.wild});
        FieldElem next = r;
        for (uint32_t t = 0; t < k; ++t) next = next.frobenius();
        r = next;
      }
    }
  }

  LocalRam inf = local_ramification(f, PointP1::infinity(spec));
  if (inf.e >= 2 || inf.d >= 1)
    out.points.push_back({PointP1::infinity(spec), inf.e, inf.d, inf.wild});

  std::sort(out.points.begin(), out.points.end(), point_order);
  for (const auto& pt : out.points) out.total_different += pt.d;
  out.rh_ok = out.total_different == 2 * f.degree() - 2;
  return out;
}

int riemann_hurwitz_defect(const RamProfile& profile) {
  return profile.total_different - (2 * profile.map.degree() - 2);
}

int ramification_index_pair(const Poly& num, const Poly& den,
                            const PointP1& P) {
  const int cap = std::max(num.deg(), den.deg());
  Poly n = num, d = den;
  if (P.is_infinity()) {
    n = num.reversed_at(cap);
    d = den.reversed_at(cap);
  } else if (!P.value().is_zero()) {
    n = num.shifted(P.value());
    d = den.shifted(P.value());
  }
  // vanishing order at 0 of the charted map n/d - value
  const FieldElem n0 = n.coeff(0), d0 = d.coeff(0);
  const FieldSpec* s = num.spec();
  if (d0.is_zero()) return vanishing_order_at(d, s->zero());  // pole order
  if (n0.is_zero()) return vanishing_order_at(n, s->zero());
  Poly u = n - d.scaled(n0 / d0);
  if (u.is_zero()) fail(errc::internal, "constant map in index computation");
  return vanishing_order_at(u, s->zero());
}

bool has_ramification_outside(const RatMap& f,
                              const std::vector<PointP1>& pts) {
  const FieldSpec* spec = f.spec();
  // every finite ramification point of a separable map, poles included,
  // is a zero of the cross derivative num' den - num den'
  Poly w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  if (w.is_zero()) fail(errc::inseparable_map, "map factors through Frobenius");

  bool infinity_allowed = false;
  int stripped_deg = w.deg();
  for (const PointP1& P : pts) {
    if (P.spec() != spec)
      fail(errc::internal, "points must lie over the map's field");
    if (P.is_infinity())
      infinity_allowed = true;
    else
      stripped_deg -= vanishing_order_at(w, P.value());
  }
  if (stripped_deg > 0) return true;

  if (!infinity_allowed)
    return ramification_index_pair(f.num(), f.den(),
                                   PointP1::infinity(spec)) >= 2;
  return false;
}

}  // namespace ramp1
