#pragma once

// Exact arithmetic in F_p, F_{p^k}, and dual numbers F_{p^k}[eps]/(eps^2).
//
// Field specs are interned and immutable, so raw pointers to them stay
// valid for the life of the process and may be shared across threads.
// Elements are plain 16-byte values: a spec pointer plus the packed
// coefficient index sum(c_i p^i) of the representation in the power
// basis of the modulus. All arithmetic is exact.

#include <cstdint>
#include <string>
#include <vector>

#include "ramp1/error.hpp"

namespace ramp1 {

class FieldElem;

using u128 = unsigned __int128;

class FieldSpec {
public:
  // Interned lookup. An empty modulus selects the canonical one: the
  // numerically smallest monic irreducible of degree k over F_p, where
  // polynomials are ordered by sum(c_i p^i); for k = 1 the stored
  // modulus is x + 1 (elements are plain residues, the modulus is never
  // used). Supplied moduli are verified irreducible.
  //
  // get() enforces the enumeration cap p^k <= 10^7 and is the public
  // entry point; get_large() admits bigger fields (needed to represent
  // points in high extensions) but such fields can never be enumerated.
  static const FieldSpec* get(uint64_t p, uint32_t k,
                              std::vector<uint32_t> modulus = {});
  static const FieldSpec* get_large(uint64_t p, uint32_t k,
                                    std::vector<uint32_t> modulus = {});

  uint64_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint64_t size() const { return size_; }  // p^k
  // low coefficients c_0..c_{k-1}; the leading coefficient is 1
  const std::vector<uint32_t>& modulus() const { return mod_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(int64_t v) const;
  FieldElem elem(uint64_t index) const;  // index < size
  FieldElem gen() const;                 // class of x, requires k >= 2

  // packed-index arithmetic
  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inv(uint64_t a) const;  // throws division_by_zero on 0
  uint64_t pow(uint64_t a, u128 e) const;
  uint64_t frob(uint64_t a) const;  // a^p

  void unpack(uint64_t index, uint32_t* digits) const;  // k digits, LSD first
  uint64_t pack(const uint32_t* digits) const;

  static constexpr uint64_t enum_cap = 10'000'000;  // full-field iteration cap
  static constexpr uint32_t max_k = 64;

private:
  FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> mod, uint64_t size);
  static const FieldSpec* intern(uint64_t p, uint32_t k,
                                 std::vector<uint32_t> modulus, bool large_ok);

  uint64_t p_;
  uint32_t k_;
  uint64_t size_;
  std::vector<uint32_t> mod_;
};

class FieldElem {
public:
  FieldElem() : spec_(nullptr), idx_(0) {}
  FieldElem(const FieldSpec* spec, uint64_t index) : spec_(spec), idx_(index) {}

  const FieldSpec* spec() const { return spec_; }
  uint64_t index() const { return idx_; }
  bool is_zero() const { return idx_ == 0; }
  bool is_one() const { return idx_ == 1; }

  std::vector<uint32_t> digits() const;
  // value of a prime-subfield element as an integer in [0, p);
  // throws if the element has nonzero higher digits
  uint64_t as_residue() const;

  FieldElem inv() const { return {spec_, spec_->inv(idx_)}; }
  FieldElem pow(u128 e) const { return {spec_, spec_->pow(idx_, e)}; }
  FieldElem frobenius() const { return {spec_, spec_->frob(idx_)}; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.spec_, a.spec_->add(a.idx_, b.idx_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.spec_, a.spec_->sub(a.idx_, b.idx_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.spec_, a.spec_->mul(a.idx_, b.idx_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.spec_, a.spec_->mul(a.idx_, b.spec_->inv(b.idx_))};
  }
  FieldElem operator-() const { return {spec_, spec_->neg(idx_)}; }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.spec_ == b.spec_ && a.idx_ == b.idx_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) {
    return !(a == b);
  }

  std::string str() const;  // diagnostic form, e.g. "4" or "[1,2]"

private:
  static void check(const FieldElem& a, const FieldElem& b) {
    if (a.spec_ != b.spec_)
      fail(errc::internal, "field mismatch in element arithmetic");
  }

  const FieldSpec* spec_;
  uint64_t idx_;
};

// order of a in the multiplicative group; a != 0
uint64_t multiplicative_order(const FieldElem& a);

// primality by trial division (exact for the supported range)
bool is_prime_u64(uint64_t n);

// irreducibility of a monic polynomial over F_p, given by its low
// coefficients c_0..c_{k-1} (leading 1 implicit); exact test
bool is_irreducible_mod_p(uint64_t p, const std::vector<uint32_t>& low_coeffs);

// same decision procedure the spec of the canonical modulus is stated
// against: trial division by every monic polynomial of degree <= k/2
bool is_irreducible_trial_division(uint64_t p,
                                   const std::vector<uint32_t>& low_coeffs);

// a + eps b with eps^2 = 0
struct DualNumber {
  FieldElem re, eps;

  static DualNumber of(const FieldElem& a) {
    return {a, {a.spec(), 0}};
  }
  static DualNumber of(const FieldElem& a, const FieldElem& b) {
    return {a, b};
  }

  bool is_zero() const { return re.is_zero() && eps.is_zero(); }

  friend DualNumber operator+(const DualNumber& a, const DualNumber& b) {
    return {a.re + b.re, a.eps + b.eps};
  }
  friend DualNumber operator-(const DualNumber& a, const DualNumber& b) {
    return {a.re - b.re, a.eps - b.eps};
  }
  friend DualNumber operator*(const DualNumber& a, const DualNumber& b) {
    return {a.re * b.re, a.re * b.eps + a.eps * b.re};
  }
  DualNumber operator-() const { return {-re, -eps}; }
  friend bool operator==(const DualNumber& a, const DualNumber& b) {
    return a.re == b.re && a.eps == b.eps;
  }
  friend bool operator!=(const DualNumber& a, const DualNumber& b) {
    return !(a == b);
  }

  // (a + eps b)^-1 = a^-1 - eps b a^-2, defined iff a != 0
  DualNumber inv() const {
    if (re.is_zero())
      fail(errc::division_by_zero, "dual number with nilpotent real part");
    FieldElem ri = re.inv();
    return {ri, -(eps * ri * ri)};
  }
};

}  // namespace ramp1
