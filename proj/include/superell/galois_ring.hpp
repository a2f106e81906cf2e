#pragma once

#include "superell/cartier.hpp"

namespace superell {

// Element of the group ring of H with exact cyclotomic coefficients,
// co[i] attached to H->at(i).
struct GroupRingElem {
    AutGroupPtr H;
    CycloFieldPtr K;
    std::vector<CycloNum> co;

    static GroupRingElem zero(AutGroupPtr H, CycloFieldPtr K);
    static GroupRingElem unit(AutGroupPtr H, CycloFieldPtr K); // the identity element

    bool is_zero() const;
    bool operator==(const GroupRingElem& o) const;
    GroupRingElem operator+(const GroupRingElem& o) const;
    GroupRingElem operator-(const GroupRingElem& o) const;
    GroupRingElem operator*(const GroupRingElem& o) const; // convolution
    GroupRingElem scaled(const CycloNum& r) const;
};

// e_chi = (1/|M|) sum over tau in M of chi(tau^{-1}) tau, viewed inside H.
// chi carries its subgroup M; M must sit inside H.
GroupRingElem idempotent(const AutGroupPtr& H, const Character& chi, const CycloFieldPtr& K);

// One term s * e_chi of an integral idempotent relation.
struct RelationTerm {
    Character chi;
    i64 s = 0;
};

// sum of s * e_chi over the terms, inside the group ring of H.
GroupRingElem relation_element(const AutGroupPtr& H, const std::vector<RelationTerm>& terms,
                               const CycloFieldPtr& K);

// Exact zero test of the relation element. Requires a nonzero term.
bool verify_relation(const AutGroupPtr& H, const std::vector<RelationTerm>& terms,
                     const CycloFieldPtr& K);

// Basis of the integer kernel of the candidate idempotents: each vector v
// satisfies sum v_k e_{candidates[k]} = 0 with coprime entries and positive
// leading sign, sorted; empty when the candidates are independent.
std::vector<std::vector<i64>> find_relations(const AutGroupPtr& H,
                                             const std::vector<Character>& candidates,
                                             const CycloFieldPtr& K);

// Product identity induced by a verified relation: the P polynomials of the
// inverse characters, raised to the positive exponents on one side and the
// negated negative exponents on the other, agree exactly.
struct TheoremReport {
    std::vector<CycloPoly> polys; // P(t, chi^{-1}) per term
    std::vector<u32> degrees;
    CycloPoly lhs, rhs;
    bool identity_ok = false;
};

TheoremReport theorem_check(const LambdaTable& T, const std::vector<RelationTerm>& terms,
                            const CycloFieldPtr& K);

// Linear identity induced by the same relation on kernel dimensions,
// cross-checked against the degrees of the reduced P polynomials.
struct CorollaryReport {
    std::vector<u32> gammas;
    std::vector<u32> mod_p_degrees;
    i64 gamma_sum = 0;
    i64 degree_sum = 0;
    bool gamma_route_zero = false;
    bool degree_route_zero = false;
};

CorollaryReport corollary_check(const LambdaTable& T, const std::vector<RelationTerm>& terms,
                                const CycloFieldPtr& K);

// Per-orbit test multiplicity * dim <= gamma. Multiplicities are caller input,
// one entry per character in canonical order, equal across each Frobenius
// orbit; dim is 1 throughout the abelian scope and kept as a field.
struct EmbeddingOrbit {
    Character rep;
    u32 length = 1;
    u32 multiplicity = 0;
    u32 dim = 1;
    u32 gamma = 0;
    bool ok = false;
};

struct EmbeddingReport {
    std::vector<EmbeddingOrbit> orbits;
    bool all_ok = true;
};

EmbeddingReport embedding_check(const SuperellipticCurve& curve, const AutGroupPtr& M,
                                u32 conductor, const std::vector<u32>& multiplicities);

// Sub-cover genus (m/n_p)(g-1)+1 and the order bound n_p + m(g-1) + g.
struct GenusBound {
    mpq_class sub_genus;
    i64 bound = 0;
    bool divisible = false;     // n_p divides m(g-1), so sub_genus is integral
    bool hypothesis_ok = false; // g >= 2
};

GenusBound genus_bound(u32 m, u32 n_p, u32 g);

} // namespace superell
