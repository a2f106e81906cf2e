#pragma once

#include "superell/lfunctions.hpp"

namespace superell {

// Square matrix over a finite field, column j = image of basis vector j.
struct FqMatrix {
    FieldPtr F;
    u32 n = 0;
    std::vector<FieldElement> a;

    static FqMatrix zero(FieldPtr F, u32 n);
    static FqMatrix identity(FieldPtr F, u32 n);
    FieldElement& at(u32 i, u32 j) { return a[static_cast<size_t>(i) * n + j]; }
    const FieldElement& at(u32 i, u32 j) const { return a[static_cast<size_t>(i) * n + j]; }
    FqMatrix mul(const FqMatrix& o) const;
    FqMatrix entrywise_pth_root() const;
    bool operator==(const FqMatrix& o) const;
};

// Basis of regular differentials x^(a-1) y^(-b) dx: 1 <= b <= m-1,
// 1 <= a <= ceil(b s / m) - 1; ordered by b then a. Size equals the genus.
std::vector<std::pair<u32, u32>> diff_basis(const SuperellipticCurve& curve);

// Matrix of the Cartier operator on diff_basis: the (a,b) differential maps
// into the b' = p^{-1} b (mod m) stratum through coefficients of
// x^(a-1) g^e at exponents p*j + p - 1, e = (p b' - b)/m, with p-th roots.
// Throws if a coefficient escapes the regular range (regularity violation).
FqMatrix cartier_matrix(const SuperellipticCurve& curve);

// Matrix of the n-th iterate, n = [F_q : F_p]: M * M^(1/p) * ... * M^(1/p^(n-1)).
// This iterate is F_q-linear on the differentials.
FqMatrix cartier_power(const SuperellipticCurve& curve, const FqMatrix& cartier);

// Members of each character's isotypic piece: tau = (c, eps) scales the (a,b)
// differential by c^a eps^(-b). Every character of M gets a block, possibly
// empty, in the canonical character order.
struct IsotypicBlock {
    Character chi;
    std::vector<u32> members; // indices into diff_basis
};

std::vector<IsotypicBlock> isotypic_blocks(const SuperellipticCurve& curve, const AutGroupPtr& M,
                                           u32 conductor);

// The n-th iterate must not mix distinct isotypic pieces; throws on leakage.
void assert_block_closure(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks);

// dim over F_q of ker(1 - Cn) restricted to the block.
u32 gamma_block(const FqMatrix& cartier_n, const IsotypicBlock& block);

// det(I - t Cn) restricted to the block, as a polynomial over F_q.
FqPoly block_char_poly(const FqMatrix& cartier_n, const IsotypicBlock& block);

// The block carrying the exact character (same conductor scale).
const IsotypicBlock& find_block(const std::vector<IsotypicBlock>& blocks, const Character& chi);

// P with every coefficient reduced through zeta -> omega, omega of the
// conductor's order.
FqPoly reduce_poly_to_field(const CycloPoly& P, const FieldPtr& F, const FieldElement& omega);

// Comparison of a reduced L-polynomial against the block characteristic
// polynomials for chi and for chi^{-1}. Which of the two labelings matches is
// an empirical fact recorded per run, not assumed. Throws when neither
// labeling matches or when the matched degree disagrees with gamma.
struct ModPReport {
    FqPoly reduced;
    FqPoly det_direct;
    FqPoly det_inverse;
    bool matched_direct = false;
    bool matched_inverse = false;
    u32 gamma_matched = 0;
    u32 degree_reduced = 0;
};

ModPReport mod_p_compare(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks,
                         const Character& chi, const CycloPoly& P);

// gamma is constant along the orbit chi, chi^p, chi^{p^2}, ...; throws if the
// computed values disagree.
struct OrbitReport {
    std::vector<Character> orbit;
    u32 length = 0;
    u32 gamma = 0;
};

OrbitReport gamma_orbit_check(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks,
                              const Character& chi);

} // namespace superell
