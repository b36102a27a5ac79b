#include "ramp1/deform.hpp"

#include <algorithm>

#include "ramp1/linalg.hpp"

namespace ramp1 {

int delta_indicator(const RatMap& f, const RamCondition& cond) {
  if (cond.e < 0) fail(errc::precondition_violated, "negative order");
  if (cond.e == 0) return 0;
  int actual = ramification_index(f, cond.point);
  if (actual < cond.e)
    fail(errc::condition_violated,
         "map is ramified to order " + std::to_string(actual) +
             " < " + std::to_string(cond.e));
  if ((uint64_t)cond.e % f.spec()->p() == 0) return 0;
  return actual > cond.e ? 0 : 1;
}

std::optional<int> expected_dim_fixed_target(
    int d, const std::vector<std::pair<int, int>>& conds, int g_source) {
  int twist = 0, free_motions = 0;
  for (auto& [e, delta] : conds) {
    twist += e - delta;
    free_motions += 1 - delta;
  }
  const int m = 2 * d - twist;  // degree of the twisted pullback bundle
  if (g_source == 0) return std::max(0, m + 1) + free_motions;
  if (m >= 2 * g_source - 1) return m + 1 - g_source + free_motions;
  return std::nullopt;
}

int expected_dim_varying_source(int d, const GenusParams& genus,
                                const std::vector<int>& e_list) {
  int s = 0;
  for (int e : e_list) s += e - 1;
  return d * (2 - 2 * genus.g_target) - (2 - 2 * genus.g_source) - s;
}

BrillNoetherDims brill_noether_dims(int d, int g,
                                    const std::vector<int>& e_list,
                                    int wild_count) {
  int s = 0;
  for (int e : e_list) s += e - 1;
  const int eps = g == 0 ? 3 : (g == 1 ? 1 : 0);
  BrillNoetherDims out{2 * d - 2 - g - s, 2 * d - 2 + 2 * g - s + eps,
                       std::nullopt};
  if (2 * d - 2 == wild_count + s) out.wild_locus_dim = wild_count;
  return out;
}

namespace {

// linear chart transform of perturbation pairs at one condition point:
// source move taking P to 0, then target move taking f(P) to 0
struct PairChart {
  const FieldSpec* spec;
  int cap;               // homogenization degree = deg f
  bool src_inf;          // reverse instead of shift
  FieldElem src_shift;   // P for finite P
  bool tgt_inf;          // swap instead of subtract
  FieldElem tgt_value;   // f(P) for finite values

  void apply(const Poly& a, const Poly& b, Poly* out_a, Poly* out_b) const {
    Poly as = src_inf ? a.reversed_at(cap) : a.shifted(src_shift);
    Poly bs = src_inf ? b.reversed_at(cap) : b.shifted(src_shift);
    if (tgt_inf) {
      *out_a = bs;
      *out_b = as;
    } else {
      *out_a = as - bs.scaled(tgt_value);
      *out_b = bs;
    }
  }
};

PairChart make_chart(const RatMap& f, const PointP1& P) {
  PairChart ch{f.spec(), f.degree(), P.is_infinity(), f.spec()->zero(),
               false, f.spec()->zero()};
  if (!P.is_infinity()) ch.src_shift = P.value();
  PointP1 v = evaluate(f, P);
  if (v.is_infinity())
    ch.tgt_inf = true;
  else
    ch.tgt_value = v.value();
  return ch;
}

}  // namespace

DeformationReport solve_first_order(const RatMap& f,
                                    const std::vector<RamCondition>& conds) {
  if (!is_separable(f))
    fail(errc::inseparable_map, "map factors through Frobenius");
  const FieldSpec* spec = f.spec();
  const int d = f.degree();
  const size_t n = conds.size();
  const size_t n_pair = 2 * (size_t)(d + 1);
  const size_t n_cols = n_pair + n;

  for (size_t i = 0; i < n; ++i) {
    if (conds[i].point.spec() != spec)
      fail(errc::precondition_violated,
           "condition points must lie over the map's field; rebase first");
    for (size_t j = i + 1; j < n; ++j)
      if (conds[i].point == conds[j].point)
        fail(errc::precondition_violated, "condition points must be distinct");
  }

  FqMatrix system(spec, n_cols);
  for (size_t i = 0; i < n; ++i) {
    const int e = conds[i].e;
    if (e == 0) continue;  // no equations; the motion column stays free
    PairChart ch = make_chart(f, conds[i].point);
    Poly nc(spec), dc(spec);
    ch.apply(f.num(), f.den(), &nc, &dc);
    if (!nc.coeff(0).is_zero() || dc.coeff(0).is_zero())
      fail(errc::internal, "condition chart failed to normalize");

    // series of the map itself, a_0..a_e
    Poly w1 = series_inverse(dc, e);
    Poly a = series_mul(nc, w1, e);
    for (int j = 1; j < e; ++j)
      if (!a.coeff(j).is_zero())
        fail(errc::condition_violated,
             "map is not ramified to order " + std::to_string(e) +
                 " at a condition point");

    // series weights for the perturbation h = (A dc - nc B) / dc^2
    Poly w2 = series_inverse(series_mul(dc, dc, e), e);

    std::vector<std::vector<FieldElem>> rows(
        (size_t)e, std::vector<FieldElem>(n_cols, spec->zero()));

    for (size_t col = 0; col < n_pair; ++col) {
      bool is_a = col <= (size_t)d;
      size_t t = is_a ? col : col - (size_t)d - 1;
      std::vector<FieldElem> cs((size_t)t + 1, spec->zero());
      cs[t] = spec->one();
      Poly unit(spec, std::move(cs));
      Poly ac(spec), bc(spec);
      if (is_a)
        ch.apply(unit, Poly::zero(spec), &ac, &bc);
      else
        ch.apply(Poly::zero(spec), unit, &ac, &bc);
      Poly u = ac * dc - nc * bc;
      Poly h = series_mul(u, w2, e - 1);
      for (int j = 0; j < e; ++j) rows[(size_t)j][col] = h.coeff(j);
    }
    for (int j = 0; j < e; ++j)
      rows[(size_t)j][n_pair + i] =
          spec->from_int(j + 1) * a.coeff((size_t)j + 1);

    for (auto& r : rows) system.add_row(std::move(r));
  }

  auto null_basis = system.nullspace();
  const size_t nullity = null_basis.size();
  if (nullity == 0) fail(errc::internal, "rescaling direction was eliminated");

  // quotient out the rescaling line (A, B) = (num, den), x = 0
  std::vector<FieldElem> trivial(n_cols, spec->zero());
  for (int t = 0; t <= f.num().deg(); ++t) trivial[(size_t)t] = f.num().coeff((size_t)t);
  for (int t = 0; t <= f.den().deg(); ++t)
    trivial[(size_t)(d + 1 + t)] = f.den().coeff((size_t)t);
  size_t pivot = 0;
  while (pivot < n_cols && trivial[pivot].is_zero()) ++pivot;
  if (pivot == n_cols) fail(errc::internal, "trivial direction is zero");
  FieldElem tp_inv = trivial[pivot].inv();

  FqMatrix complement(spec, n_cols);
  for (auto& v : null_basis) {
    FieldElem c = v[pivot] * tp_inv;
    std::vector<FieldElem> w(n_cols, spec->zero());
    bool nonzero = false;
    for (size_t j = 0; j < n_cols; ++j) {
      w[j] = v[j] - c * trivial[j];
      nonzero = nonzero || !w[j].is_zero();
    }
    if (nonzero) complement.add_row(std::move(w));
  }
  auto basis_rows = complement.reduced_rows();
  if (basis_rows.size() != nullity - 1)
    fail(errc::internal, "rescaling line did not lie in the solution space");

  DeformationReport out;
  out.solver_dim = (int)(nullity - 1);
  out.deltas.reserve(n);
  std::vector<std::pair<int, int>> e_delta;
  for (const auto& c : conds) {
    int delta = delta_indicator(f, c);
    out.deltas.push_back(delta);
    e_delta.emplace_back(c.e, delta);
  }
  out.formula_dim = expected_dim_fixed_target(d, e_delta, 0).value();

  for (auto& row : basis_rows) {
    DeformationReport::BasisVec bv;
    bv.a.assign(row.begin(), row.begin() + (d + 1));
    bv.b.assign(row.begin() + (d + 1), row.begin() + 2 * (d + 1));
    bv.x.assign(row.begin() + 2 * (d + 1), row.end());
    out.point_motions.push_back(bv.x);
    out.basis.push_back(std::move(bv));
  }
  return out;
}

}  // namespace ramp1
