#pragma once

// Univariate polynomials over a field (or over dual numbers), reduced
// rational maps of P^1, points of P^1, Moebius transformations, and
// truncated local series. The polynomial container is a template so the
// same shift/series machinery runs over F_q and over F_q[eps]/(eps^2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramp1/field.hpp"

namespace ramp1 {

template <class R>
struct coeff_traits;

template <>
struct coeff_traits<FieldElem> {
  static FieldElem zero(const FieldSpec* s) { return s->zero(); }
  static FieldElem one(const FieldSpec* s) { return s->one(); }
  static FieldElem lift(const FieldSpec*, const FieldElem& a) { return a; }
};

template <>
struct coeff_traits<DualNumber> {
  static DualNumber zero(const FieldSpec* s) {
    return DualNumber::of(s->zero());
  }
  static DualNumber one(const FieldSpec* s) { return DualNumber::of(s->one()); }
  static DualNumber lift(const FieldSpec*, const FieldElem& a) {
    return DualNumber::of(a);
  }
};

// Coefficients c_0..c_deg with trailing zeros trimmed; the zero
// polynomial has an empty coefficient vector and degree -1.
template <class R>
class PolyT {
public:
  using traits = coeff_traits<R>;

  explicit PolyT(const FieldSpec* spec) : spec_(spec) {}
  PolyT(const FieldSpec* spec, std::vector<R> coeffs)
      : spec_(spec), c_(std::move(coeffs)) {
    trim();
  }

  static PolyT zero(const FieldSpec* s) { return PolyT(s); }
  static PolyT constant(const FieldSpec* s, const R& v) {
    return PolyT(s, {v});
  }
  static PolyT x(const FieldSpec* s) {
    return PolyT(s, {traits::zero(s), traits::one(s)});
  }
  // c_0 + c_1 x from field scalars
  static PolyT linear(const FieldSpec* s, const FieldElem& c0,
                      const FieldElem& c1) {
    return PolyT(s, {traits::lift(s, c0), traits::lift(s, c1)});
  }

  const FieldSpec* spec() const { return spec_; }
  int deg() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(size_t i) const {
    return i < c_.size() ? c_[i] : traits::zero(spec_);
  }
  const R& lead() const { return c_.back(); }

  void set_coeff(size_t i, const R& v) {
    if (i >= c_.size()) c_.resize(i + 1, traits::zero(spec_));
    c_[i] = v;
    trim();
  }

  friend PolyT operator+(const PolyT& a, const PolyT& b) {
    PolyT r(a.spec_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), traits::zero(a.spec_));
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
  }
  friend PolyT operator-(const PolyT& a, const PolyT& b) {
    PolyT r(a.spec_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), traits::zero(a.spec_));
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = a.coeff(i) - b.coeff(i);
    r.trim();
    return r;
  }
  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return PolyT(a.spec_);
    PolyT r(a.spec_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, traits::zero(a.spec_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  PolyT operator-() const {
    PolyT r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend bool operator==(const PolyT& a, const PolyT& b) {
    return a.spec_ == b.spec_ && a.c_ == b.c_;
  }
  friend bool operator!=(const PolyT& a, const PolyT& b) { return !(a == b); }

  PolyT scaled(const R& s) const {
    PolyT r = *this;
    for (auto& v : r.c_) v = v * s;
    r.trim();
    return r;
  }

  R eval(const R& v) const {
    R acc = traits::zero(spec_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
  }

  // formal derivative; exponents reduce mod p
  PolyT derivative() const {
    PolyT r(spec_);
    if (c_.size() < 2) return r;
    r.c_.resize(c_.size() - 1, traits::zero(spec_));
    const uint64_t p = spec_->p();
    for (size_t i = 1; i < c_.size(); ++i) {
      uint64_t m = i % p;
      R term = traits::zero(spec_);
      // m is small; repeated addition keeps this generic over R
      for (uint64_t t = 0; t < m; ++t) term = term + c_[i];
      r.c_[i - 1] = term;
    }
    r.trim();
    return r;
  }

  // substitute x -> x + a (in-place synthetic shift)
  PolyT shifted(const R& a) const {
    PolyT r = *this;
    if (r.c_.size() < 2 || a.is_zero()) return r;
    const size_t n = r.c_.size();
    for (size_t k = 0; k + 1 < n; ++k)
      for (size_t j = n - 1; j-- > k;) r.c_[j] = r.c_[j] + a * r.c_[j + 1];
    r.trim();
    return r;
  }

  // x^cap * f(1/x); requires cap >= deg
  PolyT reversed_at(int cap) const {
    PolyT r(spec_);
    r.c_.assign(cap + 1, traits::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[cap - i] = c_[i];
    r.trim();
    return r;
  }

  PolyT times_x_power(int e) const {
    if (is_zero()) return *this;
    PolyT r(spec_);
    r.c_.assign(c_.size() + e, traits::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + e] = c_[i];
    return r;
  }

  PolyT truncated(int order) const {  // drop terms of exponent > order
    PolyT r = *this;
    if ((int)r.c_.size() > order + 1) r.c_.resize(order + 1);
    r.trim();
    return r;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const FieldSpec* spec_;
  std::vector<R> c_;
};

using Poly = PolyT<FieldElem>;
using DualPoly = PolyT<DualNumber>;

// truncated inverse of d, requiring d(0) to be a unit
template <class R>
PolyT<R> series_inverse(const PolyT<R>& d, int order) {
  using traits = coeff_traits<R>;
  if (d.is_zero() || d.coeff(0).is_zero())
    fail(errc::internal, "series inverse needs a unit constant term");
  std::vector<R> w(order + 1, traits::zero(d.spec()));
  R w0 = d.coeff(0).inv();
  w[0] = w0;
  for (int n = 1; n <= order; ++n) {
    R acc = traits::zero(d.spec());
    for (int j = 1; j <= n; ++j) acc = acc + d.coeff(j) * w[n - j];
    w[n] = -(w0 * acc);
  }
  return PolyT<R>(d.spec(), std::move(w));
}

template <class R>
PolyT<R> series_mul(const PolyT<R>& a, const PolyT<R>& b, int order) {
  using traits = coeff_traits<R>;
  std::vector<R> r(order + 1, traits::zero(a.spec()));
  for (int i = 0; i <= std::min(order, a.deg()); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; i + j <= order && j <= b.deg(); ++j)
      r[i + j] = r[i + j] + a.coeff(i) * b.coeff(j);
  }
  return PolyT<R>(a.spec(), std::move(r));
}

// field-only helpers
Poly poly_divmod(const Poly& a, const Poly& b, Poly* rem);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Poly poly_monic(const Poly& a);
bool poly_divides(const Poly& d, const Poly& a);

// multiplicity of P as a root of u; u nonzero
int vanishing_order_at(const Poly& u, const FieldElem& P);

// embed a polynomial's coefficients along a field embedding
class Extension;
Poly poly_embed(const Poly& f, const Extension& ext);

// ---------------------------------------------------------------------
// P^1 points and Moebius transformations
// ---------------------------------------------------------------------

class PointP1 {
public:
  static PointP1 infinity(const FieldSpec* s) { return PointP1(s, true, s->zero()); }
  static PointP1 affine(const FieldElem& v) { return PointP1(v.spec(), false, v); }

  const FieldSpec* spec() const { return spec_; }
  bool is_infinity() const { return inf_; }
  const FieldElem& value() const { return v_; }

  friend bool operator==(const PointP1& a, const PointP1& b) {
    return a.spec_ == b.spec_ && a.inf_ == b.inf_ &&
           (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const PointP1& a, const PointP1& b) {
    return !(a == b);
  }

private:
  PointP1(const FieldSpec* s, bool inf, FieldElem v)
      : spec_(s), inf_(inf), v_(v) {}

  const FieldSpec* spec_;
  bool inf_;
  FieldElem v_;
};

// x -> (a x + b) / (c x + d), with ad - bc != 0
class Mobius {
public:
  Mobius(FieldElem a, FieldElem b, FieldElem c, FieldElem d);

  static Mobius identity(const FieldSpec* s);
  static Mobius inversion(const FieldSpec* s);             // x -> 1/x
  static Mobius translation(const FieldElem& t);           // x -> x + t
  static Mobius to_zero(const PointP1& P);                 // P -> 0

  const FieldElem& a() const { return a_; }
  const FieldElem& b() const { return b_; }
  const FieldElem& c() const { return c_; }
  const FieldElem& d() const { return d_; }
  const FieldSpec* spec() const { return a_.spec(); }

  Mobius inverse() const;               // projective inverse (adjugate)
  Mobius compose(const Mobius& inner) const;  // this after inner
  PointP1 apply(const PointP1& P) const;

private:
  FieldElem a_, b_, c_, d_;
};

// ---------------------------------------------------------------------
// rational maps
// ---------------------------------------------------------------------

class RatMap {
public:
  // gcd-reduced, canonically normalized map; throws zero_map /
  // constant_map per the reduction contract
  static RatMap reduce(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const { return degree_; }
  const FieldSpec* spec() const { return num_.spec(); }
  bool is_polynomial() const { return den_.is_constant(); }

  friend bool operator==(const RatMap& a, const RatMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatMap& a, const RatMap& b) {
    return !(a == b);
  }

private:
  RatMap(Poly num, Poly den, int degree)
      : num_(std::move(num)), den_(std::move(den)), degree_(degree) {}

  Poly num_, den_;
  int degree_;
};

struct LocalSeries {
  std::vector<FieldElem> a;  // a_0..a_order, exact
  int order() const { return (int)a.size() - 1; }
  const FieldElem& coeff(int j) const { return a[j]; }
  // smallest j >= 1 with a_j != 0, or -1 if none below truncation
  int vanishing_order() const {
    for (size_t j = 1; j < a.size(); ++j)
      if (!a[j].is_zero()) return (int)j;
    return -1;
  }
};

PointP1 evaluate(const RatMap& f, const PointP1& P);

// local presentation of f at P: numerator/denominator pair in the
// coordinate s with P at s = 0 and f(P) moved to 0 (1/x charts when
// either point is infinite); n(0) = 0 and d(0) != 0
struct ChartedPair {
  Poly n, d;
};
ChartedPair chart_at(const RatMap& f, const PointP1& P);

// expansion of the charted map to the requested truncation order; a_0 = 0
LocalSeries taylor_shift(const RatMap& f, const PointP1& P, int order);

// reduced fraction that, unlike RatMap, is allowed to be constant;
// derivatives of degree-1 maps land here
struct RatFraction {
  Poly num, den;
};

// nullopt encodes the zero function (inseparable map)
std::optional<RatFraction> derivative(const RatMap& f);

// tgt o f o src^{-1}
RatMap mobius_conjugate(const RatMap& f, const Mobius& src, const Mobius& tgt);

// homogeneous pair transform at a fixed degree cap: substitutes the
// Moebius m into (n, d) as a source change x -> m(x), keeping both
// components homogenized at degree cap
void mobius_source_transform(const Mobius& m, int cap, const Poly& n,
                             const Poly& d, Poly* out_n, Poly* out_d);

// rendering in the expression grammar; parse(render(f)) == f
std::string render(const Poly& f);
std::string render(const RatMap& f);
std::string render(const PointP1& P);
std::string render(const FieldElem& v);

}  // namespace ramp1
