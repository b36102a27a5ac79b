#include "ramp1/poly.hpp"

#include <algorithm>

namespace ramp1 {

Poly poly_monic(const Poly& a) {
  if (a.is_zero() || a.lead().is_one()) return a;
  return a.scaled(a.lead().inv());
}

Poly poly_divmod(const Poly& a, const Poly& b, Poly* rem) {
  if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  Poly q(a.spec());
  Poly r = a;
  const FieldElem bl = b.lead().inv();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    FieldElem c = r.lead() * bl;
    int shift = r.deg() - b.deg();
    q.set_coeff(shift, c);
    r = r - b.scaled(c).times_x_power(shift);
  }
  if (rem) *rem = r;
  return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  // in-place Euclid on two scratch buffers
  std::vector<FieldElem> x(a.coeffs()), y(b.coeffs());
  auto trim = [](std::vector<FieldElem>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  trim(x);
  trim(y);
  while (!y.empty()) {
    const FieldElem inv = y.back().inv();
    while (x.size() >= y.size()) {
      FieldElem c = x.back() * inv;
      if (!c.is_zero()) {
        size_t shift = x.size() - y.size();
        for (size_t j = 0; j + 1 < y.size(); ++j)
          x[shift + j] = x[shift + j] - c * y[j];
      }
      x.pop_back();
      trim(x);
      if (x.empty()) break;
    }
    x.swap(y);
  }
  return poly_monic(Poly(a.spec(), std::move(x)));
}

bool poly_divides(const Poly& d, const Poly& a) {
  if (a.is_zero()) return true;
  if (d.is_zero()) return false;
  Poly r(a.spec());
  poly_divmod(a, d, &r);
  return r.is_zero();
}

int vanishing_order_at(const Poly& u, const FieldElem& P) {
  if (u.is_zero()) fail(errc::internal, "vanishing order of zero");
  // repeated synthetic division by (x - P) on one scratch buffer
  std::vector<FieldElem> c(u.coeffs());
  int ord = 0;
  while ((int)c.size() > 0) {
    FieldElem acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
      FieldElem next = c[i] + acc * P;
      c[i] = acc;
      acc = next;
    }
    if (!acc.is_zero()) break;
    ++ord;
    c.pop_back();  // quotient has one coefficient less
  }
  return ord;
}

// ---------------------------------------------------------------------
// Mobius
// ---------------------------------------------------------------------

Mobius::Mobius(FieldElem a, FieldElem b, FieldElem c, FieldElem d)
    : a_(a), b_(b), c_(c), d_(d) {
  if ((a_ * d_ - b_ * c_).is_zero())
    fail(errc::precondition_violated, "singular Moebius matrix");
}

Mobius Mobius::identity(const FieldSpec* s) {
  return {s->one(), s->zero(), s->zero(), s->one()};
}
Mobius Mobius::inversion(const FieldSpec* s) {
  return {s->zero(), s->one(), s->one(), s->zero()};
}
Mobius Mobius::translation(const FieldElem& t) {
  const FieldSpec* s = t.spec();
  return {s->one(), t, s->zero(), s->one()};
}
Mobius Mobius::to_zero(const PointP1& P) {
  const FieldSpec* s = P.spec();
  if (P.is_infinity()) return inversion(s);
  return translation(-P.value());
}

Mobius Mobius::inverse() const {
  return {d_, -b_, -c_, a_};
}

Mobius Mobius::compose(const Mobius& m) const {
  return {a_ * m.a_ + b_ * m.c_, a_ * m.b_ + b_ * m.d_,
          c_ * m.a_ + d_ * m.c_, c_ * m.b_ + d_ * m.d_};
}

PointP1 Mobius::apply(const PointP1& P) const {
  FieldElem n = a_, d = c_;
  if (!P.is_infinity()) {
    n = a_ * P.value() + b_;
    d = c_ * P.value() + d_;
  }
  if (d.is_zero()) return PointP1::infinity(spec());
  return PointP1::affine(n / d);
}

// ---------------------------------------------------------------------
// RatMap
// ---------------------------------------------------------------------

RatMap RatMap::reduce(Poly num, Poly den) {
  if (num.is_zero()) fail(errc::zero_map, "numerator is the zero polynomial");
  if (den.is_zero())
    fail(errc::constant_map, "zero denominator gives a constant map");
  Poly g = poly_gcd(num, den);
  if (g.deg() > 0) {
    Poly r(num.spec());
    num = poly_divmod(num, g, &r);
    den = poly_divmod(den, g, &r);
  }
  int degree = std::max(num.deg(), den.deg());
  if (degree == 0) fail(errc::constant_map, "map has degree zero");
  FieldElem scale = den.deg() >= 1 ? den.lead().inv() : num.lead().inv();
  return RatMap(num.scaled(scale), den.scaled(scale), degree);
}

PointP1 evaluate(const RatMap& f, const PointP1& P) {
  const FieldSpec* s = f.spec();
  if (P.is_infinity()) {
    int dn = f.num().deg(), dd = f.den().deg();
    if (dn > dd) return PointP1::infinity(s);
    if (dn < dd) return PointP1::affine(s->zero());
    return PointP1::affine(f.num().lead() / f.den().lead());
  }
  FieldElem n = f.num().eval(P.value());
  FieldElem d = f.den().eval(P.value());
  if (d.is_zero()) return PointP1::infinity(s);
  return PointP1::affine(n / d);
}

ChartedPair chart_at(const RatMap& f, const PointP1& P) {
  const int cap = f.degree();
  Poly n1(f.spec()), d1(f.spec());
  if (P.is_infinity()) {
    n1 = f.num().reversed_at(cap);
    d1 = f.den().reversed_at(cap);
  } else {
    n1 = f.num().shifted(P.value());
    d1 = f.den().shifted(P.value());
  }
  PointP1 v = evaluate(f, P);
  ChartedPair out{Poly(f.spec()), Poly(f.spec())};
  if (v.is_infinity()) {
    out.n = d1;
    out.d = n1;
  } else {
    out.n = n1 - d1.scaled(v.value());
    out.d = d1;
  }
  if (!out.n.coeff(0).is_zero() || out.d.coeff(0).is_zero())
    fail(errc::internal, "chart normalization failed");
  return out;
}

LocalSeries taylor_shift(const RatMap& f, const PointP1& P, int order) {
  if (order < 0) fail(errc::internal, "negative truncation order");
  ChartedPair c = chart_at(f, P);
  Poly w = series_inverse(c.d, order);
  Poly s = series_mul(c.n, w, order);
  LocalSeries out;
  out.a.reserve(order + 1);
  for (int j = 0; j <= order; ++j) out.a.push_back(s.coeff(j));
  return out;
}

std::optional<RatFraction> derivative(const RatMap& f) {
  Poly w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  if (w.is_zero()) return std::nullopt;
  Poly den2 = f.den() * f.den();
  Poly g = poly_gcd(w, den2);
  if (g.deg() > 0) {
    Poly r(w.spec());
    w = poly_divmod(w, g, &r);
    den2 = poly_divmod(den2, g, &r);
  }
  FieldElem scale = den2.lead().inv();
  return RatFraction{w.scaled(scale), den2.scaled(scale)};
}

void mobius_source_transform(const Mobius& m, int cap, const Poly& n,
                             const Poly& d, Poly* out_n, Poly* out_d) {
  const FieldSpec* s = n.spec();
  Poly lin_top = Poly::linear(s, m.b(), m.a());   // a x + b
  Poly lin_bot = Poly::linear(s, m.d(), m.c());   // c x + d
  std::vector<Poly> top_pow, bot_pow;
  top_pow.reserve(cap + 1);
  bot_pow.reserve(cap + 1);
  Poly one = Poly::constant(s, s->one());
  top_pow.push_back(one);
  bot_pow.push_back(one);
  for (int i = 1; i <= cap; ++i) {
    top_pow.push_back(top_pow.back() * lin_top);
    bot_pow.push_back(bot_pow.back() * lin_bot);
  }
  auto transform = [&](const Poly& f) {
    Poly acc(s);
    for (int i = 0; i <= f.deg(); ++i) {
      FieldElem c = f.coeff(i);
      if (c.is_zero()) continue;
      acc = acc + (top_pow[i] * bot_pow[cap - i]).scaled(c);
    }
    return acc;
  };
  *out_n = transform(n);
  *out_d = transform(d);
}

RatMap mobius_conjugate(const RatMap& f, const Mobius& src,
                        const Mobius& tgt) {
  Poly n1(f.spec()), d1(f.spec());
  mobius_source_transform(src.inverse(), f.degree(), f.num(), f.den(), &n1,
                          &d1);
  Poly n2 = n1.scaled(tgt.a()) + d1.scaled(tgt.b());
  Poly d2 = n1.scaled(tgt.c()) + d1.scaled(tgt.d());
  RatMap out = RatMap::reduce(std::move(n2), std::move(d2));
  if (out.degree() != f.degree())
    fail(errc::internal, "conjugation changed the degree");
  return out;
}

// ---------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------

std::string render(const FieldElem& v) {
  const FieldSpec* s = v.spec();
  if (s->k() == 1) return std::to_string(v.index());
  auto d = v.digits();
  std::string out;
  bool first = true;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!d[i]) continue;
    if (!first) out += " + ";
    first = false;
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += i == 1 ? "g" : "g^" + std::to_string(i);
    }
  }
  if (first) out = "0";
  return out;
}

namespace {

bool is_plain_coeff(const FieldElem& v) {
  return v.spec()->k() == 1 || v.index() < v.spec()->p();
}

std::string coeff_str(const FieldElem& v) {
  std::string s = render(v);
  if (!is_plain_coeff(v) &&
      !(v.index() == v.spec()->p() /* bare g */)) {
    // compound coefficients need parentheses inside products
    if (s.find(' ') != std::string::npos) s = "(" + s + ")";
  }
  return s;
}

}  // namespace

std::string render(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.deg(); i >= 0; --i) {
    FieldElem c = f.coeff(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += coeff_str(c);
    } else {
      if (!c.is_one()) out += coeff_str(c) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

std::string render(const RatMap& f) {
  if (f.den().is_constant() && f.den().coeff(0).is_one()) return render(f.num());
  return "(" + render(f.num()) + ")/(" + render(f.den()) + ")";
}

std::string render(const PointP1& P) {
  if (P.is_infinity()) return "inf";
  return render(P.value());
}

}  // namespace ramp1
