#include "ramp1/roots.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ramp1 {

namespace {

constexpr uint64_t scan_threshold = 65536;  // exhaustive search below this
constexpr uint64_t fixed_seed = 0x5eedf1e1dULL;

Poly poly_mod(const Poly& a, const Poly& m) {
  Poly r(a.spec());
  poly_divmod(a, m, &r);
  return r;
}

// h(x_img) mod m via Horner
Poly poly_compose_mod(const Poly& h, const Poly& x_img, const Poly& m) {
  Poly acc(h.spec());
  for (int i = h.deg(); i >= 0; --i) {
    acc = poly_mulmod(acc, x_img, m);
    acc = acc + Poly::constant(h.spec(), h.coeff(i));
    if (acc.deg() >= m.deg()) acc = poly_mod(acc, m);
  }
  return acc;
}

u128 checked_field_power(const FieldSpec* s, uint32_t m) {
  u128 v = 1;
  for (uint32_t i = 0; i < m * s->k(); ++i) {
    if (v > (u128{1} << 120))
      fail(errc::field_too_large, "splitting field exceeds supported size");
    v *= s->p();
  }
  return v;
}

std::vector<FieldElem> scan_roots(const Poly& f) {
  std::vector<FieldElem> roots;
  const FieldSpec* s = f.spec();
  for (uint64_t i = 0; i < s->size(); ++i) {
    FieldElem v = s->elem(i);
    if (f.eval(v).is_zero()) roots.push_back(v);
  }
  return roots;
}

// splits v (product of r >= 2 distinct degree-m irreducibles) once
bool try_split(const Poly& v, uint32_t m, Rng& rng, Poly* lo, Poly* hi) {
  const FieldSpec* s = v.spec();
  // random polynomial of degree < deg v
  std::vector<FieldElem> c;
  c.reserve(v.deg());
  for (int i = 0; i < v.deg(); ++i) c.push_back(s->elem(rng.below(s->size())));
  Poly h(s, std::move(c));
  if (h.is_zero()) return false;
  Poly g = poly_gcd(v, h);
  if (g.deg() == 0) {
    if (s->p() == 2) {
      // absolute trace splitter
      uint32_t bits = s->k() * m;
      Poly t = h;
      Poly sq = h;
      for (uint32_t i = 1; i < bits; ++i) {
        sq = poly_mulmod(sq, sq, v);
        t = t + sq;
      }
      g = poly_gcd(v, t);
    } else {
      u128 e = (checked_field_power(s, m) - 1) / 2;
      Poly w = poly_powmod(h, e, v);
      g = poly_gcd(v, w - Poly::constant(s, s->one()));
    }
  }
  if (g.deg() == 0 || g.deg() == v.deg()) return false;
  Poly rem(s);
  *lo = poly_monic(g);
  *hi = poly_monic(poly_divmod(v, g, &rem));
  return true;
}

}  // namespace

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(a * b, m);
}

Poly poly_powmod(const Poly& a, u128 e, const Poly& m) {
  Poly r = Poly::constant(a.spec(), a.spec()->one());
  Poly base = poly_mod(a, m);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m);
    base = poly_mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i) {
    uint64_t x = a.coeff(i).index(), y = b.coeff(i).index();
    if (x != y) return x < y;
  }
  return false;
}

std::vector<std::pair<uint32_t, Poly>> distinct_degree_split(const Poly& f) {
  std::vector<std::pair<uint32_t, Poly>> out;
  const FieldSpec* s = f.spec();
  Poly r = poly_monic(f);
  if (r.deg() <= 0) return out;
  const Poly x = Poly::x(s);
  // x^q mod r by square and multiply; subsequent levels by composition
  Poly xq = poly_powmod(x, (u128)s->size(), r);
  Poly cur = xq;
  for (uint32_t m = 1; r.deg() > 0 && (int)m <= r.deg(); ++m) {
    if (m > 1) cur = poly_compose_mod(cur, xq, r);
    Poly g = poly_gcd(r, cur - x);
    if (g.deg() > 0) {
      out.emplace_back(m, g);
      // remove every copy of the found factors
      Poly h = g;
      while (h.deg() > 0) {
        Poly rem(s);
        r = poly_divmod(r, h, &rem);
        h = poly_gcd(r, g);
      }
      if (r.deg() > 0) {
        cur = poly_mod(cur, r);
        xq = poly_mod(xq, r);
      }
    }
  }
  return out;
}

std::vector<Poly> equal_degree_split(const Poly& f, uint32_t m, Rng& rng) {
  std::vector<Poly> done, work{poly_monic(f)};
  while (!work.empty()) {
    Poly v = work.back();
    work.pop_back();
    if (v.deg() == (int)m) {
      done.push_back(v);
      continue;
    }
    Poly lo(v.spec()), hi(v.spec());
    int attempts = 0;
    while (!try_split(v, m, rng, &lo, &hi)) {
      if (++attempts > 512)
        fail(errc::internal, "equal-degree splitting did not converge");
    }
    work.push_back(lo);
    work.push_back(hi);
  }
  std::sort(done.begin(), done.end(), poly_less);
  return done;
}

std::vector<FieldElem> roots_in_base(const Poly& f, Rng& rng) {
  const FieldSpec* s = f.spec();
  if (f.deg() <= 0) return {};
  if (s->size() <= scan_threshold && (uint64_t)f.deg() * 4 > s->size())
    return scan_roots(f);
  // level-1 part of the distinct-degree split
  Poly x = Poly::x(s);
  Poly r = poly_monic(f);
  Poly xq = poly_powmod(x, (u128)s->size(), r);
  Poly g = poly_gcd(r, xq - x);
  if (g.deg() == 0) return {};
  std::vector<FieldElem> roots;
  if (s->size() <= scan_threshold) {
    roots = scan_roots(g);
  } else {
    for (const Poly& lin : equal_degree_split(g, 1, rng))
      roots.push_back(-(lin.coeff(0) / lin.coeff(1)));
  }
  std::sort(roots.begin(), roots.end(),
            [](const FieldElem& a, const FieldElem& b) {
              return a.index() < b.index();
            });
  return roots;
}

// ---------------------------------------------------------------------
// extensions
// ---------------------------------------------------------------------

FieldElem Extension::embed(const FieldElem& a) const {
  if (trivial()) return a;
  if (base_->k() == 1) return top_->from_int((int64_t)a.index());
  FieldElem acc = top_->zero();
  auto d = a.digits();
  for (size_t i = d.size(); i-- > 0;)
    acc = acc * img_ + top_->from_int((int64_t)d[i]);
  return acc;
}

PointP1 Extension::embed_point(const PointP1& P) const {
  if (P.is_infinity()) return PointP1::infinity(top_);
  return PointP1::affine(embed(P.value()));
}

Poly poly_embed(const Poly& f, const Extension& ext) {
  if (ext.trivial()) return f;
  std::vector<FieldElem> c;
  c.reserve(f.deg() + 1);
  for (int i = 0; i <= f.deg(); ++i) c.push_back(ext.embed(f.coeff(i)));
  return Poly(ext.top(), std::move(c));
}

RatMap rebase(const RatMap& f, const Extension& ext) {
  if (ext.trivial()) return f;
  return RatMap::reduce(poly_embed(f.num(), ext), poly_embed(f.den(), ext));
}

namespace {
std::mutex ext_mutex;
std::map<std::pair<const FieldSpec*, uint32_t>, Extension>* ext_cache;
}  // namespace

Extension extend_canonical(const FieldSpec* base, uint32_t m,
                           bool allow_large) {
  if (m == 1) return Extension(base, base, base->zero());
  {
    std::lock_guard<std::mutex> lock(ext_mutex);
    if (ext_cache) {
      auto it = ext_cache->find({base, m});
      if (it != ext_cache->end()) return it->second;
    }
  }
  const FieldSpec* top = allow_large
                             ? FieldSpec::get_large(base->p(), base->k() * m)
                             : FieldSpec::get(base->p(), base->k() * m);
  FieldElem img = top->zero();
  if (base->k() >= 2) {
    // enumeration-smallest root of the base modulus in the top field
    std::vector<FieldElem> c;
    for (uint32_t v : base->modulus()) c.push_back(top->from_int((int64_t)v));
    c.push_back(top->one());
    Poly basemod(top, std::move(c));
    Rng rng(fixed_seed);
    auto roots = roots_in_base(basemod, rng);
    if (roots.empty()) fail(errc::internal, "base modulus has no root upstairs");
    img = roots.front();
  }
  Extension ext(base, top, img);
  std::lock_guard<std::mutex> lock(ext_mutex);
  if (!ext_cache)
    ext_cache = new std::map<std::pair<const FieldSpec*, uint32_t>, Extension>();
  ext_cache->emplace(std::make_pair(base, m), ext);
  return ext;
}

// ---------------------------------------------------------------------
// flattening one irreducible factor into a concrete field
// ---------------------------------------------------------------------

namespace {

// dense little F_p linear algebra for the primitive-element search
struct FpMatrix {
  uint64_t p;
  uint32_t dim;
  // rows in echelon form together with their expression in the original
  // generating vectors
  std::vector<std::vector<uint64_t>> rows, trace;
  std::vector<int> pivot_of_row;

  explicit FpMatrix(uint64_t p_, uint32_t dim_) : p(p_), dim(dim_) {}

  // returns false and records the dependency if v is in the span
  bool insert(std::vector<uint64_t> v, std::vector<uint64_t> tr,
              std::vector<uint64_t>* dependency) {
    for (size_t r = 0; r < rows.size(); ++r) {
      int pc = pivot_of_row[r];
      if (v[pc] == 0) continue;
      uint64_t factor = v[pc];  // rows are normalized to pivot 1
      for (uint32_t j = 0; j < dim; ++j)
        v[j] = (v[j] + (p - rows[r][j] % p) * factor) % p;
      if (trace[r].size() > tr.size()) tr.resize(trace[r].size(), 0);
      for (size_t j = 0; j < trace[r].size(); ++j)
        tr[j] = (tr[j] + (p - trace[r][j] % p) * factor) % p;
    }
    int pc = -1;
    for (uint32_t j = 0; j < dim; ++j)
      if (v[j]) {
        pc = (int)j;
        break;
      }
    if (pc < 0) {
      if (dependency) *dependency = tr;
      return false;
    }
    uint64_t inv = 1;
    {  // scalar inverse mod p
      int64_t t = 0, nt = 1, r0 = (int64_t)p, nr = (int64_t)v[pc];
      while (nr) {
        int64_t q = r0 / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r0 -= q * nr, nr);
      }
      inv = (uint64_t)(t < 0 ? t + (int64_t)p : t);
    }
    for (uint32_t j = 0; j < dim; ++j) v[j] = v[j] * inv % p;
    for (auto& t : tr) t = t * inv % p;
    rows.push_back(std::move(v));
    trace.push_back(std::move(tr));
    pivot_of_row.push_back(pc);
    return true;
  }
};

std::vector<uint64_t> flatten_tower_elem(const Poly& h, uint32_t m) {
  const FieldSpec* base = h.spec();
  std::vector<uint64_t> v(m * base->k(), 0);
  for (int i = 0; i <= h.deg(); ++i) {
    auto d = h.coeff((size_t)i).digits();
    for (uint32_t j = 0; j < base->k(); ++j) v[(size_t)i * base->k() + j] = d[j];
  }
  return v;
}

}  // namespace

FactorField flatten_factor_field(const FieldSpec* base, const Poly& factor,
                                 Rng& rng) {
  (void)rng;
  const uint32_t m = (uint32_t)factor.deg();
  if (m == 1) {
    Extension id(base, base, base->zero());
    return {id, -(factor.coeff(0) / factor.coeff(1))};
  }
  const Poly u = poly_monic(factor);
  if (base->k() == 1) {
    std::vector<uint32_t> low(m);
    for (uint32_t i = 0; i < m; ++i)
      low[i] = (uint32_t)u.coeff(i).index();
    const FieldSpec* top = FieldSpec::get_large(base->p(), m, low);
    Extension ext(base, top, top->zero());
    return {ext, top->gen()};
  }

  // primitive-element flattening of base[y]/(u)
  const uint64_t p = base->p();
  const uint32_t dim = base->k() * m;
  const FieldElem xhat = base->gen();
  const Poly y = Poly::x(base);

  for (uint64_t a_idx = 1; a_idx < base->size(); ++a_idx) {
    for (uint64_t c_idx = 0; c_idx < base->size(); ++c_idx) {
      Poly theta = y.scaled(base->elem(a_idx)) +
                   Poly::constant(base, base->elem(c_idx));
      FpMatrix mat(p, dim);
      std::vector<uint64_t> dependency;
      Poly pow = Poly::constant(base, base->one());
      uint32_t t = 0;
      bool independent = true;
      std::vector<Poly> theta_pows;
      while (true) {
        std::vector<uint64_t> tr(t + 1, 0);
        tr[t] = 1;
        theta_pows.push_back(pow);
        if (!mat.insert(flatten_tower_elem(pow, m), std::move(tr),
                        &dependency)) {
          independent = false;
          break;
        }
        if (++t > dim) break;
        pow = poly_mulmod(pow, theta, u);
      }
      uint32_t mindeg = independent ? t : (uint32_t)(dependency.size() - 1);
      if (mindeg != dim) continue;  // theta not primitive, next candidate

      // dependency gives sum_j dep[j] theta^j = 0 with dep[dim] = 1,
      // which is exactly the monic minimal polynomial
      std::vector<uint32_t> low(dim);
      for (uint32_t j = 0; j < dim; ++j)
        low[j] = (uint32_t)(dependency[j] % p);
      const FieldSpec* top = FieldSpec::get_large(p, dim, low);
      FieldElem tg = top->gen();

      // express xhat and y in the theta-power basis: solve with the same
      // echelon data by re-inserting the targets
      auto express = [&](const Poly& target) {
        FpMatrix solve(p, dim);
        std::vector<uint64_t> dep;
        for (uint32_t j = 0; j < dim; ++j) {
          std::vector<uint64_t> tr(j + 1, 0);
          tr[j] = 1;
          if (!solve.insert(flatten_tower_elem(theta_pows[j], m),
                            std::move(tr), &dep))
            fail(errc::internal, "theta powers degenerated");
        }
        std::vector<uint64_t> tr(dim + 1, 0);
        tr[dim] = 1;
        if (solve.insert(flatten_tower_elem(target, m), std::move(tr), &dep))
          fail(errc::internal, "target escapes the theta basis");
        // dep: sum dep[j] theta^j + dep[dim] target = 0, dep[dim] != 0
        uint64_t scale_idx = dep[dim] % p;
        FieldElem scale = -(top->from_int((int64_t)scale_idx).inv());
        FieldElem acc = top->zero();
        for (uint32_t j = dim; j-- > 0;)
          acc = acc * tg + top->from_int((int64_t)(dep[j] % p));
        return acc * scale;
      };

      FieldElem ximg = express(Poly::constant(base, xhat));
      FieldElem root = express(y);
      Extension ext(base, top, ximg);
      // sanity: the factor really vanishes at the constructed root
      Poly check = poly_embed(u, ext);
      if (!check.eval(root).is_zero())
        fail(errc::internal, "flattening produced a non-root");
      return {ext, root};
    }
  }
  fail(errc::internal, "no primitive element found for the tower");
}

}  // namespace ramp1
