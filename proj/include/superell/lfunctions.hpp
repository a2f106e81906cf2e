#pragma once

#include "superell/curve.hpp"
#include "superell/series.hpp"

namespace superell {

// Character of an abelian automorphism group, stored as exponent vector:
// chi(M[i]) = zeta_conductor ^ exps[i]. The conductor is shared across every
// character in a run so values from different subgroups combine exactly.
struct Character {
    AutGroupPtr M;
    u32 conductor = 1;
    std::vector<u32> exps;

    bool is_trivial() const;
    Character inverse() const;
    Character power(u32 k) const; // chi^k
    CycloNum value(const CycloFieldPtr& K, u32 elem_index) const;
    CycloNum value_at_inverse(const CycloFieldPtr& K, u32 elem_index) const;

    bool operator==(const Character& o) const { return exps == o.exps; }
    bool operator<(const Character& o) const { return exps < o.exps; }
    std::string label() const; // "chi[e0,e1,...]"
};

// All |M| characters, canonically ordered by exponent vector.
std::vector<Character> all_characters(const AutGroupPtr& M, u32 conductor);

// Positions of a subgroup's elements inside the enclosing group's table.
struct SubgroupView {
    AutGroupPtr M;
    std::vector<u32> h_index; // h_index[i]: index of M[i] in H
};

SubgroupView subgroup_view(const AutGroupPtr& H, const AutGroupPtr& M);

// Character-averaged fixed-point count:
// (1/|M|) sum_tau chi(tau^{-1}) Lambda(tau o F^nu).
CycloNum a_nu(const LambdaTable& T, const SubgroupView& V, const Character& chi,
              u32 nu, const CycloFieldPtr& K);

// exp(sum_nu A_nu t^nu / nu) to N coefficients.
TruncSeries l_series(const LambdaTable& T, const SubgroupView& V, const Character& chi,
                     u32 N, const CycloFieldPtr& K);

struct PolyData {
    CycloPoly P;
    u32 pole_order = 0;       // exponent of (1-t)(1-qt) multiplied in
    bool conj_symmetric = true; // soft invariant: A_nu(chi^{-1}) = conj A_nu(chi)
};

// Polynomial part of the L-function: multiplies in ((1-t)(1-qt))^u for the
// trivial character, certifies the tail at precision 2g+3, and checks P(0)=1,
// integral coefficients, degree <= 2g.
PolyData p_polynomial(const LambdaTable& T, const SubgroupView& V, const Character& chi,
                      const CycloFieldPtr& K);

// Zeta numerator of the curve underlying T (trivial character of the trivial
// subgroup). Coefficients are rational integers inside K.
CycloPoly zeta_numerator(const LambdaTable& T, const CycloFieldPtr& K);

struct ArtinReport {
    bool factorization_ok = false; // Z_Y = prod_chi L(chi) at full precision
    bool degree_sum_ok = false;    // sum deg P = 2 genus
    u32 degree_sum = 0;
    bool all_conj_symmetric = true;
};

// Factorization of the zeta series over all characters of T's full group.
ArtinReport artin_check(const LambdaTable& T, const CycloFieldPtr& K);

} // namespace superell
