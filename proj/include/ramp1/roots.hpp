#pragma once

// Root location over extension fields. Candidate polynomials are split
// by distinct degree with Frobenius gcds, equal-degree parts are
// separated by seeded Cantor-Zassenhaus splitting, and each irreducible
// factor gets a concrete field presentation in which one of its roots is
// available directly (the remaining roots are Frobenius conjugates).
// Small fields fall back to exhaustive scanning, which doubles as the
// test oracle for this machinery.

#include <utility>
#include <vector>

#include "ramp1/poly.hpp"
#include "ramp1/rng.hpp"

namespace ramp1 {

// embedding of one field into another; immutable value
class Extension {
public:
  Extension(const FieldSpec* base, const FieldSpec* top,
            FieldElem base_gen_image)
      : base_(base), top_(top), img_(base_gen_image) {}

  const FieldSpec* base() const { return base_; }
  const FieldSpec* top() const { return top_; }
  bool trivial() const { return base_ == top_; }

  FieldElem embed(const FieldElem& a) const;
  PointP1 embed_point(const PointP1& P) const;

private:
  const FieldSpec* base_;
  const FieldSpec* top_;
  FieldElem img_;  // image of the base power-basis generator
};

// canonical degree-m extension; deterministic across runs. The top field
// carries the canonical modulus of degree k*m and the base generator
// maps to its enumeration-smallest root.
Extension extend_canonical(const FieldSpec* base, uint32_t m,
                           bool allow_large = false);

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod);
Poly poly_powmod(const Poly& a, u128 e, const Poly& mod);

// (m, product of the distinct irreducible factors of degree exactly m),
// in increasing m, trivial levels omitted; multiplicities dropped
std::vector<std::pair<uint32_t, Poly>> distinct_degree_split(const Poly& f);

// factors a squarefree product of degree-m irreducibles; sorted output
std::vector<Poly> equal_degree_split(const Poly& f, uint32_t m, Rng& rng);

// roots of f in its own coefficient field, sorted by element index
std::vector<FieldElem> roots_in_base(const Poly& f, Rng& rng);

// a presentation of the degree-m extension of `base` in which `factor`
// (irreducible of degree m over base) has an explicit root
struct FactorField {
  Extension ext;
  FieldElem root;
};
FactorField flatten_factor_field(const FieldSpec* base, const Poly& factor,
                                 Rng& rng);

RatMap rebase(const RatMap& f, const Extension& ext);

// deterministic polynomial ordering: degree, then coefficients from the
// top down by element index
bool poly_less(const Poly& a, const Poly& b);

}  // namespace ramp1
