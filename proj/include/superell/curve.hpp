#pragma once

#include "superell/fqpoly.hpp"

namespace superell {

// Diagonal map (x, y) -> (c x, eps y) with c, eps in the base field's units.
struct DiagAut {
    FieldElement c, eps;

    bool is_identity() const { return c.is_one() && eps.is_one(); }
    bool operator==(const DiagAut& o) const { return c == o.c && eps == o.eps; }
    bool operator<(const DiagAut& o) const { return c < o.c || (c == o.c && eps < o.eps); }
    DiagAut operator*(const DiagAut& o) const { return DiagAut{c * o.c, eps * o.eps}; }
    DiagAut inverse() const { return DiagAut{c.inverse(), eps.inverse()}; }
    std::string to_string() const { return "(" + c.to_string() + "," + eps.to_string() + ")"; }
};

// Smooth projective y^m = g(x) over F_q: g squarefree, m coprime to the
// characteristic via m | q-1, and gcd(m, deg g) either 1 (one point at
// infinity) or m (m points at infinity).
class SuperellipticCurve {
  public:
    // Empty shell; every usable instance comes from make().
    SuperellipticCurve() = default;
    static SuperellipticCurve make(FieldPtr Fq, u32 m, FqPoly g);

    const FieldPtr& base_field() const { return Fq_; }
    u32 m() const { return m_; }
    const FqPoly& g() const { return g_; }
    u32 s() const { return s_; }          // deg g
    u32 delta() const { return delta_; }  // gcd(m, s)
    bool split_infinity() const { return delta_ == m_; }
    u32 genus() const { return genus_; }

    // Checks g(c x) = eps^m g(x), i.e. that the map preserves the curve.
    bool is_automorphism(const DiagAut& a) const;

  private:
    FieldPtr Fq_;
    u32 m_ = 0, s_ = 0, delta_ = 0, genus_ = 0;
    FqPoly g_;
};

class AutSubgroup;
using AutGroupPtr = std::shared_ptr<const AutSubgroup>;

// A finite group of diagonal automorphisms of a fixed curve, closed under
// composition. Element 0 is the identity; the rest are sorted canonically.
class AutSubgroup {
  public:
    // Closure of the generators; every generator must be an automorphism.
    static AutGroupPtr closure(const SuperellipticCurve& curve, std::vector<DiagAut> gens);

    u32 size() const { return static_cast<u32>(elems_.size()); }
    const DiagAut& at(u32 i) const { return elems_[i]; }
    const std::vector<DiagAut>& elements() const { return elems_; }

    u32 index_of(const DiagAut& a) const; // throws MathError if absent
    u32 inverse_index(u32 i) const;
    u32 product_index(u32 i, u32 j) const;
    u32 element_order(u32 i) const;
    u32 exponent() const; // lcm of element orders

    // True if every element of M is an element of this group.
    bool contains(const AutSubgroup& M) const;

  private:
    AutSubgroup() = default;
    std::vector<DiagAut> elems_;
};

// Fixed points of tau o F^nu on geometric points of the curve (F first).
// Enumerations are bounded by cap; workers only affects scheduling, never the
// result.
i64 lambda_fixed(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap,
                 u32 workers = 1);

// Independent re-count by direct enumeration: solves the two linear
// fixed-point conditions by kernel enumeration inside one explicit extension
// and tests the curve equation pointwise on every candidate. Shares no
// counting shortcut with lambda_fixed.
i64 brute_lambda(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap);

// Points at infinity fixed by tau o F^nu (closed form in both delta regimes).
i64 infinity_fixed(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu);

// #curve(F_{q^nu}) including points at infinity.
i64 count_points(const SuperellipticCurve& curve, u32 nu, u64 cap, u32 workers = 1);

// Lambda(tau o F^nu) for all tau in H and nu = 1..max_nu, batched so each nu
// costs two linear passes over F_{q^nu} plus small per-coset work.
class LambdaTable {
  public:
    static LambdaTable compute(const SuperellipticCurve& curve, AutGroupPtr H, u32 max_nu,
                               u64 cap, u32 workers = 1);

    i64 value(u32 tau_index, u32 nu) const { return lam_[nu - 1][tau_index]; }
    u32 max_nu() const { return static_cast<u32>(lam_.size()); }
    const AutGroupPtr& group() const { return H_; }
    const SuperellipticCurve& curve() const { return curve_; }

  private:
    LambdaTable() = default;
    SuperellipticCurve curve_;
    AutGroupPtr H_;
    std::vector<std::vector<i64>> lam_;
};

// Quotient of the curve by a subgroup whose shape is supported: either all
// elements fix x (kernel of the x-action), or the curve is m = 2 with even g
// and the subgroup is inside the Klein four-group {+-1} x {+-1}. The map data
// records u = x^ux, v = x^vx y^vy.
struct QuotientModel {
    SuperellipticCurve curve;
    u32 ux = 1, vx = 0, vy = 1;
};

QuotientModel quotient_curve(const SuperellipticCurve& curve, const AutSubgroup& M);

} // namespace superell
