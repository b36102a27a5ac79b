#include "ramp1/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace ramp1 {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::not_irreducible: return "NotIrreducible";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::zero_map: return "ZeroMap";
    case errc::constant_map: return "ConstantMap";
    case errc::inseparable_map: return "InseparableMap";
    case errc::truncation_exhausted: return "TruncationExhausted";
    case errc::condition_violated: return "ConditionViolated";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::too_much_ramification: return "TooMuchRamification";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::parse_error: return "ParseError";
    case errc::verification_failed: return "VerificationFailed";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

namespace {

// ---------------------------------------------------------------------
// dense polynomials over F_p on plain uint64 coefficients, used for
// modulus selection and irreducibility testing only
// ---------------------------------------------------------------------

using FpPoly = std::vector<uint64_t>;  // c_0.., trimmed, empty = 0

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fp_trim(r);
  return r;
}

// a mod m, m monic
FpPoly fp_mod(FpPoly a, const FpPoly& m, uint64_t p) {
  fp_trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    uint64_t lead = a.back();
    size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (size_t j = 0; j < dm; ++j) {
        uint64_t t = (lead * (p - m[j] % p)) % p;
        a[shift + j] = (a[shift + j] + t) % p;
      }
    }
    a.pop_back();
    fp_trim(a);
    if (a.size() <= dm) break;
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m,
                 uint64_t p) {
  return fp_mod(fp_mul(a, b, p), m, p);
}

// x^(p^e) mod m via square-and-multiply on the 128-bit exponent
FpPoly fp_xpow_pe(uint32_t e, const FpPoly& m, uint64_t p) {
  u128 exp = 1;
  for (uint32_t i = 0; i < e; ++i) exp *= p;
  FpPoly base = fp_mod({0, 1}, m, p);
  FpPoly r = {1};
  while (exp) {
    if (exp & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    exp >>= 1;
  }
  return r;
}

FpPoly fp_monic(FpPoly a, uint64_t p);
uint64_t fp_inv_scalar(uint64_t a, uint64_t p);

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(std::move(a), fp_monic(b, p), p);
    // reduction above needs monic divisor; scale is irrelevant for gcd
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

uint64_t fp_inv_scalar(uint64_t a, uint64_t p) {
  // extended Euclid on integers
  int64_t t = 0, nt = 1;
  int64_t r = (int64_t)p, nr = (int64_t)(a % p);
  while (nr) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) fail(errc::division_by_zero, "inverse of zero residue");
  return (uint64_t)(t < 0 ? t + (int64_t)p : t);
}

FpPoly fp_monic(FpPoly a, uint64_t p) {
  fp_trim(a);
  if (a.empty() || a.back() == 1) return a;
  uint64_t s = fp_inv_scalar(a.back(), p);
  for (auto& c : a) c = c * s % p;
  return a;
}

FpPoly monic_from_low(uint64_t p, const std::vector<uint32_t>& low) {
  FpPoly m(low.size() + 1, 0);
  for (size_t i = 0; i < low.size(); ++i) m[i] = low[i] % p;
  m.back() = 1;
  return m;
}

std::vector<uint32_t> small_prime_factors(uint64_t n) {
  std::vector<uint32_t> fs;
  for (uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (fs.empty() || fs.back() != d) fs.push_back((uint32_t)d);
      n /= d;
    }
  if (n > 1) fs.push_back((uint32_t)n);
  return fs;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(uint64_t p, const std::vector<uint32_t>& low) {
  const uint32_t k = (uint32_t)low.size();
  if (k == 0) return false;
  FpPoly m = monic_from_low(p, low);
  if (k == 1) return true;
  // x^(p^k) == x mod m, and gcd(x^(p^(k/l)) - x, m) = 1 for prime l | k
  FpPoly xq = fp_xpow_pe(k, m, p);
  FpPoly x = fp_mod({0, 1}, m, p);
  FpPoly diff = xq;
  diff.resize(std::max(diff.size(), x.size()), 0);
  for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + p - x[i]) % p;
  fp_trim(diff);
  if (!diff.empty()) return false;
  for (uint32_t l : small_prime_factors(k)) {
    FpPoly xe = fp_xpow_pe(k / l, m, p);
    FpPoly d2 = xe;
    d2.resize(std::max(d2.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) d2[i] = (d2[i] + p - x[i]) % p;
    fp_trim(d2);
    FpPoly g = fp_gcd(d2, m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_irreducible_trial_division(uint64_t p,
                                   const std::vector<uint32_t>& low) {
  const uint32_t k = (uint32_t)low.size();
  if (k == 0) return false;
  if (k == 1) return true;
  FpPoly m = monic_from_low(p, low);
  for (uint32_t d = 1; 2 * d <= k; ++d) {
    // every monic divisor candidate of degree d
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      FpPoly cand(d + 1, 0);
      uint64_t t = idx;
      for (uint32_t i = 0; i < d; ++i) {
        cand[i] = t % p;
        t /= p;
      }
      cand[d] = 1;
      if (fp_mod(m, cand, p).empty()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------

FieldSpec::FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> mod,
                     uint64_t size)
    : p_(p), k_(k), size_(size), mod_(std::move(mod)) {}

namespace {
std::mutex registry_mutex;
std::map<std::tuple<uint64_t, uint32_t, std::vector<uint32_t>>,
         const FieldSpec*>* registry;
}  // namespace

const FieldSpec* FieldSpec::intern(uint64_t p, uint32_t k,
                                   std::vector<uint32_t> modulus,
                                   bool large_ok) {
  if (p < 2 || !is_prime_u64(p))
    fail(errc::not_prime, "characteristic " + std::to_string(p) +
                              " is not prime");
  if (k < 1 || k > max_k)
    fail(errc::field_too_large, "extension degree out of range");
  if (p > (k == 1 ? (uint64_t{1} << 31) : uint64_t{65536}))
    fail(errc::field_too_large, "characteristic out of supported range");
  u128 sz = 1;
  for (uint32_t i = 0; i < k; ++i) {
    sz *= p;
    if (sz > (u128{1} << 62))
      fail(errc::field_too_large, "field size exceeds representable range");
  }
  if (!large_ok && sz > enum_cap)
    fail(errc::field_too_large,
         "field size exceeds the enumeration cap of 10^7 elements");

  if (modulus.empty()) {
    if (k == 1) {
      modulus = {1};  // x + 1 convention; unused by arithmetic
    } else {
      // numerically smallest monic irreducible of degree k
      uint64_t count = 1;
      for (uint32_t i = 0; i < k; ++i) count *= p;  // fits: p^k checked above
      bool found = false;
      for (uint64_t idx = 0; idx < count && !found; ++idx) {
        std::vector<uint32_t> low(k);
        uint64_t t = idx;
        for (uint32_t i = 0; i < k; ++i) {
          low[i] = (uint32_t)(t % p);
          t /= p;
        }
        if (is_irreducible_mod_p(p, low)) {
          modulus = std::move(low);
          found = true;
        }
      }
      if (!found) fail(errc::internal, "no irreducible modulus found");
    }
  } else {
    if (modulus.size() != k)
      fail(errc::not_irreducible, "modulus degree does not match k");
    for (auto& c : modulus) c = (uint32_t)(c % p);
    if (k > 1 && !is_irreducible_mod_p(p, modulus))
      fail(errc::not_irreducible, "supplied modulus factors over F_p");
  }

  std::lock_guard<std::mutex> lock(registry_mutex);
  if (!registry)
    registry = new std::map<std::tuple<uint64_t, uint32_t,
                                       std::vector<uint32_t>>,
                            const FieldSpec*>();
  auto key = std::make_tuple(p, k, modulus);
  auto it = registry->find(key);
  if (it != registry->end()) return it->second;
  const FieldSpec* s = new FieldSpec(p, k, modulus, (uint64_t)sz);
  (*registry)[key] = s;
  return s;
}

const FieldSpec* FieldSpec::get(uint64_t p, uint32_t k,
                                std::vector<uint32_t> modulus) {
  return intern(p, k, std::move(modulus), false);
}

const FieldSpec* FieldSpec::get_large(uint64_t p, uint32_t k,
                                      std::vector<uint32_t> modulus) {
  return intern(p, k, std::move(modulus), true);
}

FieldElem FieldSpec::zero() const { return {this, 0}; }
FieldElem FieldSpec::one() const { return {this, 1}; }

FieldElem FieldSpec::from_int(int64_t v) const {
  int64_t r = v % (int64_t)p_;
  if (r < 0) r += (int64_t)p_;
  return {this, (uint64_t)r};
}

FieldElem FieldSpec::elem(uint64_t index) const {
  if (index >= size_) fail(errc::internal, "element index out of range");
  return {this, index};
}

FieldElem FieldSpec::gen() const {
  if (k_ < 2) fail(errc::internal, "prime field has no extension generator");
  return {this, p_};
}

void FieldSpec::unpack(uint64_t index, uint32_t* digits) const {
  for (uint32_t i = 0; i < k_; ++i) {
    digits[i] = (uint32_t)(index % p_);
    index /= p_;
  }
}

uint64_t FieldSpec::pack(const uint32_t* digits) const {
  uint64_t r = 0;
  for (uint32_t i = k_; i-- > 0;) r = r * p_ + digits[i];
  return r;
}

uint64_t FieldSpec::add(uint64_t a, uint64_t b) const {
  if (k_ == 1) {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t da[max_k], db[max_k];
  unpack(a, da);
  unpack(b, db);
  for (uint32_t i = 0; i < k_; ++i) {
    da[i] += db[i];
    if (da[i] >= p_) da[i] -= (uint32_t)p_;
  }
  return pack(da);
}

uint64_t FieldSpec::sub(uint64_t a, uint64_t b) const {
  if (k_ == 1) return a >= b ? a - b : a + p_ - b;
  uint32_t da[max_k], db[max_k];
  unpack(a, da);
  unpack(b, db);
  for (uint32_t i = 0; i < k_; ++i)
    da[i] = da[i] >= db[i] ? da[i] - db[i] : da[i] + (uint32_t)p_ - db[i];
  return pack(da);
}

uint64_t FieldSpec::neg(uint64_t a) const { return sub(0, a); }

uint64_t FieldSpec::mul(uint64_t a, uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return (a * b) % p_;  // p <= 2^31.5, no overflow
  uint32_t da[max_k], db[max_k];
  unpack(a, da);
  unpack(b, db);
  uint64_t acc[2 * max_k - 1] = {0};
  for (uint32_t i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (uint32_t j = 0; j < k_; ++j) acc[i + j] += (uint64_t)da[i] * db[j];
  }
  // reduce by the monic modulus, high terms first
  for (uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    uint64_t c = acc[i] % p_;
    if (c) {
      for (uint32_t j = 0; j < k_; ++j)
        acc[i - k_ + j] += c * (p_ - mod_[j]);
    }
    acc[i] = 0;
    if (i == k_) break;
  }
  uint32_t out[max_k];
  for (uint32_t i = 0; i < k_; ++i) out[i] = (uint32_t)(acc[i] % p_);
  return pack(out);
}

uint64_t FieldSpec::pow(uint64_t a, u128 e) const {
  uint64_t r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

uint64_t FieldSpec::inv(uint64_t a) const {
  if (a == 0) fail(errc::division_by_zero, "inverse of zero");
  if (k_ == 1) return fp_inv_scalar(a, p_);
  // a^(q-2)
  return pow(a, (u128)size_ - 2);
}

uint64_t FieldSpec::frob(uint64_t a) const {
  if (k_ == 1) return a;
  return pow(a, p_);
}

std::vector<uint32_t> FieldElem::digits() const {
  std::vector<uint32_t> d(spec_->k());
  spec_->unpack(idx_, d.data());
  return d;
}

uint64_t FieldElem::as_residue() const {
  if (idx_ >= spec_->p())
    fail(errc::internal, "element does not lie in the prime subfield");
  return idx_;
}

std::string FieldElem::str() const {
  if (spec_->k() == 1) return std::to_string(idx_);
  auto d = digits();
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

uint64_t multiplicative_order(const FieldElem& a) {
  if (a.is_zero()) fail(errc::division_by_zero, "order of zero");
  uint64_t n = a.spec()->size() - 1;
  uint64_t ord = n;
  for (uint32_t f : small_prime_factors(n)) {
    while (ord % f == 0 && a.pow(ord / f).is_one()) ord /= f;
  }
  return ord;
}

}  // namespace ramp1
