#include "ramp1/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "ramp1/linalg.hpp"
#include "ramp1/ramify.hpp"

namespace ramp1 {

Rat Rat::make(uint64_t n, uint64_t d) {
  if (d == 0) fail(errc::internal, "zero denominator");
  uint64_t g = std::gcd(n, d);
  return {n / g, d / g};
}

namespace {

u128 upow(uint64_t b, uint32_t e) {
  u128 r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

template <class Fn>
void parallel_for(uint64_t total, int workers, Fn&& fn) {
  if (workers <= 1 || total < 1024) {
    fn(0, uint64_t{0}, total);
    return;
  }
  const int w = std::min<int>(workers, 64);
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mutex;
  const uint64_t chunk = (total + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    uint64_t lo = std::min<uint64_t>(total, (uint64_t)t * chunk);
    uint64_t hi = std::min<uint64_t>(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi]() {
      try {
        fn((size_t)t, lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// binomial table mod p up to n
std::vector<std::vector<FieldElem>> binomials(const FieldSpec* s, int n) {
  std::vector<std::vector<FieldElem>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, s->zero());
    c[i][0] = s->one();
    c[i][i] = s->one();
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

}  // namespace

uint64_t SearchSpace::projective_count() const {
  if (basis.empty()) return 0;
  const uint64_t q = field->size();
  u128 total = 0, block = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    total += block;  // actually accumulate q^i; see below
    block *= q;
  }
  // total = 1 + q + ... + q^(dim-1) = (q^dim - 1)/(q - 1)
  if (total > (u128{1} << 62)) fail(errc::budget_exceeded, "span too large");
  return (uint64_t)total;
}

SearchSpace linear_system_fixed_branch(const FieldSpec* field, int d,
                                       const std::vector<BranchCondition>& conds) {
  const size_t cols = 2 * (size_t)(d + 1);
  for (size_t i = 0; i < conds.size(); ++i) {
    if (conds[i].e < 1)
      fail(errc::precondition_violated, "branch condition needs e >= 1");
    if (conds[i].point.spec() != field || conds[i].value.spec() != field)
      fail(errc::precondition_violated, "conditions must lie over the field");
    for (size_t j = i + 1; j < conds.size(); ++j)
      if (conds[i].point == conds[j].point)
        fail(errc::precondition_violated, "source points must be distinct");
  }

  auto binom = binomials(field, d);
  FqMatrix system(field, cols);
  for (const auto& c : conds) {
    for (int j = 0; j < c.e; ++j) {
      std::vector<FieldElem> row(cols, field->zero());
      if (c.point.is_infinity()) {
        // source inverted: conditions on the reversed coefficients; jets
        // beyond the coefficient window vanish identically
        if (j > d) {
          system.add_row(std::move(row));
          continue;
        }
        size_t nt = (size_t)(d - j);
        row[nt] = field->one();
        if (!c.value.is_infinity()) {
          row[cols / 2 + nt] = -c.value.value();
        } else {
          row[nt] = field->zero();
          row[cols / 2 + nt] = field->one();
        }
      } else {
        const FieldElem& P = c.point.value();
        for (int t = j; t <= d; ++t) {
          FieldElem coef = binom[t][j] * P.pow((u128)(t - j));
          if (c.value.is_infinity()) {
            row[cols / 2 + (size_t)t] = coef;
          } else {
            row[(size_t)t] = coef;
            row[cols / 2 + (size_t)t] = -(c.value.value() * coef);
          }
        }
      }
      system.add_row(std::move(row));
    }
  }
  return SearchSpace{field, d, system.nullspace(), conds};
}

namespace {

// decode projective representative r (first nonzero coordinate fixed to
// one) into the lambda vector
void decode_rep(uint64_t r, uint64_t q, size_t dim,
                std::vector<uint64_t>* lambda) {
  lambda->assign(dim, 0);
  size_t lead = 0;
  u128 block = upow(q, (uint32_t)(dim - 1));
  while ((u128)r >= block) {
    r -= (uint64_t)block;
    block /= q;
    ++lead;
  }
  (*lambda)[lead] = 1;
  for (size_t i = dim; i-- > lead + 1;) {
    (*lambda)[i] = r % q;
    r /= q;
  }
}

struct MapChecks {
  const SearchSpace& space;
  RamFilter filter;
  bool require_degree_d;

  explicit MapChecks(const SearchSpace& s, RamFilter f, bool degd)
      : space(s), filter(f), require_degree_d(degd) {}

  // returns the deepest filter stage the candidate passes:
  // 0 raw only, 1 reduced, 2 separable, 3 exact
  int stage(const std::vector<FieldElem>& v, const RatMap** out,
            std::optional<RatMap>* storage) const {
    const FieldSpec* L = space.field;
    const int d = space.d;
    Poly num(L, std::vector<FieldElem>(v.begin(), v.begin() + (d + 1)));
    Poly den(L, std::vector<FieldElem>(v.begin() + (d + 1), v.end()));
    if (num.is_zero() || den.is_zero()) return 0;
    int maxdeg = std::max(num.deg(), den.deg());
    if (require_degree_d && maxdeg < d) return 0;
    if (poly_gcd(num, den).deg() > 0) return 0;
    // reduced; separability from the unreduced cross derivative, whose
    // zero set is exactly the finite ramification locus
    Poly w = num.derivative() * den - num * den.derivative();
    if (w.is_zero()) return 1;
    if (filter != RamFilter::at_least) {
      // index exactness through valuations of the coprime pair
      for (const auto& c : space.conds)
        if (ramification_index_pair(num, den, c.point) != c.e) return 2;
      if (filter == RamFilter::exact_nowhere_else) {
        int leftover = w.deg();
        bool inf_allowed = false;
        for (const auto& c : space.conds) {
          if (c.point.is_infinity())
            inf_allowed = true;
          else
            leftover -= vanishing_order_at(w, c.point.value());
        }
        if (leftover > 0) return 2;
        if (!inf_allowed &&
            ramification_index_pair(num, den, PointP1::infinity(L)) >= 2)
          return 2;
      }
    }
    if (out) {
      *storage = RatMap::reduce(num, den);
      *out = &storage->value();
    }
    return 3;
  }
};

}  // namespace

EnumCounts enumerate_maps(const SearchSpace& space, RamFilter filter,
                          Budget& budget, int workers, bool require_degree_d,
                          const std::function<void(const RatMap&)>& visitor) {
  EnumCounts total;
  if (space.basis.empty()) return total;
  const uint64_t reps = space.projective_count();
  budget.charge(reps);
  if (visitor) workers = 1;

  const uint64_t q = space.field->size();
  const size_t dim = space.basis.size();
  const size_t cols = 2 * (size_t)(space.d + 1);
  MapChecks checks(space, filter, require_degree_d);

  std::vector<EnumCounts> parts(std::max<size_t>(
      1, std::min<size_t>(64, (size_t)std::max(1, workers))));
  parallel_for(reps, workers, [&](size_t slot, uint64_t lo, uint64_t hi) {
    EnumCounts acc;
    std::vector<uint64_t> lambda;
    std::vector<FieldElem> v(cols, space.field->zero());
    for (uint64_t r = lo; r < hi; ++r) {
      decode_rep(r, q, dim, &lambda);
      for (size_t j = 0; j < cols; ++j) v[j] = space.field->zero();
      for (size_t i = 0; i < dim; ++i) {
        if (!lambda[i]) continue;
        FieldElem li = space.field->elem(lambda[i]);
        for (size_t j = 0; j < cols; ++j)
          v[j] = v[j] + li * space.basis[i][j];
      }
      acc.raw++;
      const RatMap* fp = nullptr;
      std::optional<RatMap> storage;
      int st = checks.stage(v, visitor ? &fp : nullptr, &storage);
      if (st >= 1) acc.reduced++;
      if (st >= 2) acc.separable++;
      if (st >= 3) {
        acc.exact++;
        if (visitor && fp) visitor(*fp);
      }
    }
    parts[slot].raw += acc.raw;
    parts[slot].reduced += acc.reduced;
    parts[slot].separable += acc.separable;
    parts[slot].exact += acc.exact;
  });
  for (const auto& p : parts) {
    total.raw += p.raw;
    total.reduced += p.reduced;
    total.separable += p.separable;
    total.exact += p.exact;
  }
  return total;
}

EnumCounts free_branch_count(const FieldSpec* base, int d,
                             const std::vector<RamCondition>& conds,
                             uint32_t level, RamFilter filter, Budget& budget,
                             int workers) {
  Extension ext = extend_canonical(base, level);
  const FieldSpec* L = ext.top();
  std::vector<std::pair<PointP1, int>> active;
  for (const auto& c : conds) {
    if (c.e == 0) continue;  // no condition
    active.emplace_back(ext.embed_point(c.point), c.e);
  }
  const size_t n = active.size();
  const uint64_t pts = L->size() + 1;
  u128 tuples128 = upow(pts, (uint32_t)n);
  if (tuples128 > (u128{1} << 40))
    fail(errc::budget_exceeded, "branch tuple space too large");
  const uint64_t tuples = (uint64_t)tuples128;

  std::vector<EnumCounts> parts(64);
  parallel_for(tuples, workers, [&](size_t slot, uint64_t lo, uint64_t hi) {
    EnumCounts acc;
    for (uint64_t t = lo; t < hi; ++t) {
      budget.charge(1);
      std::vector<BranchCondition> bc;
      bc.reserve(n);
      uint64_t idx = t;
      for (size_t i = 0; i < n; ++i) {
        uint64_t vi = idx % pts;
        idx /= pts;
        PointP1 val = vi == L->size() ? PointP1::infinity(L)
                                      : PointP1::affine(L->elem(vi));
        bc.push_back({active[i].first, val, active[i].second});
      }
      SearchSpace space = linear_system_fixed_branch(L, d, bc);
      if (space.basis.empty()) continue;
      EnumCounts c = enumerate_maps(space, filter, budget, 1, true, nullptr);
      acc.raw += c.raw;
      acc.reduced += c.reduced;
      acc.separable += c.separable;
      acc.exact += c.exact;
    }
    parts[slot].raw += acc.raw;
    parts[slot].reduced += acc.reduced;
    parts[slot].separable += acc.separable;
    parts[slot].exact += acc.exact;
  });
  EnumCounts total;
  for (const auto& p : parts) {
    total.raw += p.raw;
    total.reduced += p.reduced;
    total.separable += p.separable;
    total.exact += p.exact;
  }
  return total;
}

Rat count_mod_pgl2(uint64_t count, const FieldSpec* base, uint32_t level) {
  u128 qm = upow(base->size(), level);
  if (qm > (u128{1} << 21))
    fail(errc::field_too_large, "PGL2 order exceeds the exact range");
  uint64_t q = (uint64_t)qm;
  return Rat::make(count, q * q * q - q);
}

DimensionEstimate estimate_dimension(
    const std::vector<std::pair<uint32_t, double>>& levels, uint64_t q) {
  DimensionEstimate out;
  bool any_positive = false;
  for (auto& [m, v] : levels) any_positive = any_positive || v > 0;
  if (!any_positive) {
    out.empty = true;
    return out;
  }
  size_t positives = 0;
  for (auto& [m, v] : levels)
    if (v > 0) ++positives;
  if (positives < 2)
    fail(errc::precondition_violated,
         "dimension estimation needs two positive levels");
  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    auto [m1, v1] = levels[i];
    auto [m2, v2] = levels[i + 1];
    if (v1 <= 0 || v2 <= 0) continue;
    double est = std::log(v2 / v1) / ((double)(m2 - m1) * std::log((double)q));
    int rounded = (int)std::llround(est);
    out.pair_estimates.push_back(std::max(0, rounded));
  }
  if (!out.pair_estimates.empty()) {
    out.estimate = out.pair_estimates.back();
    out.stable = std::all_of(out.pair_estimates.begin(),
                             out.pair_estimates.end(), [&](int e) {
                               return e == out.pair_estimates.front();
                             });
  }
  return out;
}

// ---------------------------------------------------------------------
// exact stratified counters for the wild shapes (wild value normalized
// to infinity; representatives verified individually)
// ---------------------------------------------------------------------

uint64_t count_wild_poly_classes(
    const FieldSpec* base, uint32_t level,
    const std::vector<std::pair<PointP1, int>>& finite_conds, Budget& budget) {
  Extension ext = extend_canonical(base, level);
  const FieldSpec* L = ext.top();
  const uint64_t p = L->p();
  const uint64_t q = L->size();
  const int d = (int)p;

  std::vector<std::pair<PointP1, int>> conds;
  for (auto& [pt, e] : finite_conds) {
    if (pt.is_infinity())
      fail(errc::precondition_violated, "extra conditions must be finite");
    if (e < 1 || (uint64_t)e >= p)
      fail(errc::precondition_violated, "finite indices must be tame");
    conds.emplace_back(ext.embed_point(pt), e);
  }
  u128 space = upow(q, (uint32_t)(p - 1));
  if (space > (u128{1} << 40))
    fail(errc::budget_exceeded, "stratum too large");
  budget.charge((uint64_t)space);

  uint64_t classes = 0;
  std::vector<uint64_t> digits(p - 1, 0);
  // normalized representatives x^p + a_{p-1} x^{p-1} + ... + a_1 x
  for (;;) {
    std::vector<FieldElem> cs((size_t)d + 1, L->zero());
    cs[(size_t)d] = L->one();
    for (size_t j = 0; j < digits.size(); ++j) cs[j + 1] = L->elem(digits[j]);
    Poly num(L, std::move(cs));
    // monic polynomial of degree p: index p at infinity is automatic and
    // the finite ramification locus is the zero set of the derivative
    Poly w = num.derivative();
    bool ok = !w.is_zero();
    int leftover = ok ? w.deg() : 0;
    for (auto& [pt, e] : conds) {
      if (!ok) break;
      Poly u = num - Poly::constant(L, num.eval(pt.value()));
      ok = vanishing_order_at(u, pt.value()) == e;
      if (ok) leftover -= vanishing_order_at(w, pt.value());
    }
    if (ok && leftover == 0) ++classes;

    size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return classes;
}

uint64_t count_wild_only_infinity_classes(const FieldSpec* base, int d,
                                          int e_inf, uint32_t level,
                                          Budget& budget) {
  Extension ext = extend_canonical(base, level);
  const FieldSpec* L = ext.top();
  const uint64_t p = L->p();
  const uint64_t q = L->size();
  if ((uint64_t)e_inf % p != 0)
    fail(errc::precondition_violated, "index at infinity must be wild");
  const int dd = d - e_inf;  // denominator degree of every representative
  if (dd < 1)
    fail(errc::precondition_violated, "polynomial shape; use the stratum counter");

  u128 dspace = upow(q, (uint32_t)dd);
  if (dspace > (u128{1} << 40)) fail(errc::budget_exceeded, "stratum too large");
  budget.charge((uint64_t)dspace);

  const std::vector<PointP1> allowed{PointP1::infinity(L)};
  Rng rng(0xc0117e8dULL);
  uint64_t classes = 0;

  // unknowns: q_1..q_{e-1} then r_0..r_{dd-1}
  const size_t nq = (size_t)e_inf - 1, nr = (size_t)dd;
  const size_t ncols = nq + nr;
  const int wdeg = (e_inf - 2) + 2 * dd;  // bound for Q'D^2 and R'D - RD'

  std::vector<uint64_t> ddig((size_t)dd, 0);
  for (;;) {
    // monic squarefree denominator D
    std::vector<FieldElem> dc((size_t)dd + 1, L->zero());
    dc[(size_t)dd] = L->one();
    for (size_t j = 0; j < ddig.size(); ++j) dc[j] = L->elem(ddig[j]);
    Poly D(L, std::move(dc));
    Poly Dp = D.derivative();
    bool squarefree = !Dp.is_zero() && poly_gcd(D, Dp).deg() == 0;
    if (squarefree) {
      // irreducible factors of D, then monic divisors G of D^2
      std::vector<Poly> factors;
      for (auto& [m, part] : distinct_degree_split(D)) {
        if (part.deg() == (int)m)
          factors.push_back(poly_monic(part));
        else
          for (auto& u : equal_degree_split(part, m, rng)) factors.push_back(u);
      }
      // linear map z -> coefficients of Q' D^2 + R' D - R D'
      const Poly D2 = D * D;
      FqMatrix sys(L, ncols);
      std::vector<std::vector<FieldElem>> colvecs(ncols);
      for (size_t c = 0; c < ncols; ++c) {
        Poly contrib(L);
        if (c < nq) {
          int j = (int)c + 1;  // Q coefficient q_j, derivative j x^(j-1)
          Poly mono(L, std::vector<FieldElem>((size_t)j, L->zero()));
          mono.set_coeff((size_t)j - 1, L->from_int(j));
          contrib = mono * D2;
        } else {
          int t = (int)(c - nq);  // R coefficient r_t
          Poly mono(L, std::vector<FieldElem>((size_t)t + 1, L->zero()));
          mono.set_coeff((size_t)t, L->one());
          contrib = mono.derivative() * D - mono * Dp;
        }
        std::vector<FieldElem> col((size_t)wdeg + 1, L->zero());
        for (int i = 0; i <= std::min(wdeg, contrib.deg()); ++i)
          col[(size_t)i] = contrib.coeff((size_t)i);
        colvecs[c] = std::move(col);
      }
      for (int i = 0; i <= wdeg; ++i) {
        std::vector<FieldElem> row(ncols, L->zero());
        for (size_t c = 0; c < ncols; ++c) row[c] = colvecs[c][(size_t)i];
        sys.add_row(std::move(row));
      }
      auto null_basis = sys.nullspace();

      // iterate monic divisors G of D^2 and scalars c
      const size_t nf = factors.size();
      std::vector<int> expo(nf, 0);
      for (;;) {
        Poly G = Poly::constant(L, L->one());
        for (size_t i = 0; i < nf; ++i)
          for (int t = 0; t < expo[i]; ++t) G = G * factors[i];
        if (G.deg() <= wdeg) {
          for (uint64_t ci = 1; ci < q; ++ci) {
            FieldElem cval = L->elem(ci);
            std::vector<FieldElem> rhs((size_t)wdeg + 1, L->zero());
            for (int i = 0; i <= G.deg(); ++i)
              rhs[(size_t)i] = cval * G.coeff((size_t)i);
            auto part = sys.solve(rhs);
            if (!part) continue;
            // enumerate the affine solution set and verify each candidate
            u128 sols = upow(q, (uint32_t)null_basis.size());
            if (sols > 4096)
              fail(errc::budget_exceeded, "solution family too large");
            budget.charge((uint64_t)sols);
            std::vector<uint64_t> ldig(null_basis.size(), 0);
            for (;;) {
              std::vector<FieldElem> z = *part;
              for (size_t b = 0; b < null_basis.size(); ++b) {
                if (ldig[b]) {
                  FieldElem lb = L->elem(ldig[b]);
                  for (size_t c = 0; c < ncols; ++c)
                    z[c] = z[c] + lb * null_basis[b][c];
                }
              }
              // build Q and R, then verify the representative honestly
              std::vector<FieldElem> qc((size_t)e_inf + 1, L->zero());
              qc[(size_t)e_inf] = L->one();
              for (size_t j = 0; j < nq; ++j) qc[j + 1] = z[j];
              Poly Q(L, std::move(qc));
              std::vector<FieldElem> rc(nr, L->zero());
              for (size_t t = 0; t < nr; ++t) rc[t] = z[nq + t];
              Poly R(L, std::move(rc));
              if (!R.is_zero() && poly_gcd(R, D).deg() == 0) {
                Poly num = Q * D + R;
                RatMap f = RatMap::reduce(num, D);
                if (f.degree() == d && is_separable(f)) {
                  LocalSeries s =
                      taylor_shift(f, PointP1::infinity(L), e_inf);
                  bool ok = !s.coeff(e_inf).is_zero();
                  for (int j = 1; ok && j < e_inf; ++j)
                    ok = s.coeff(j).is_zero();
                  if (ok && !has_ramification_outside(f, allowed)) ++classes;
                }
              }
              size_t pos = 0;
              while (pos < ldig.size() && ++ldig[pos] == q) ldig[pos++] = 0;
              if (pos == ldig.size()) break;
              if (null_basis.empty()) break;
            }
          }
        }
        size_t pos = 0;
        while (pos < nf && ++expo[pos] == 3) expo[pos++] = 0;
        if (pos == nf) break;
        if (nf == 0) break;
      }
    }
    size_t pos = 0;
    while (pos < ddig.size() && ++ddig[pos] == q) ddig[pos++] = 0;
    if (pos == ddig.size()) break;
  }
  return classes;
}

}  // namespace ramp1
