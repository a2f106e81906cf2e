#pragma once

#include "superell/fields.hpp"

namespace superell {

// Dense polynomial over a finite field, coefficient i = x^i, no trailing zeros.
struct FqPoly {
    FieldPtr F;
    std::vector<FieldElement> co;

    static FqPoly zero(FieldPtr F);
    static FqPoly one(FieldPtr F);
    static FqPoly x(FieldPtr F);
    static FqPoly from_coeffs(FieldPtr F, std::vector<FieldElement> coeffs);
    static FqPoly from_ints(FieldPtr F, const std::vector<i64>& coeffs);

    int degree() const { return static_cast<int>(co.size()) - 1; } // -1 for zero
    bool is_zero() const { return co.empty(); }
    void normalize();
    FieldElement coeff(u32 i) const;
    FieldElement leading() const;

    bool operator==(const FqPoly& o) const;
    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly scaled(const FieldElement& c) const;
    FqPoly pow(u32 e) const;

    FieldElement eval(const FieldElement& x) const;
    FqPoly derivative() const;

    // Map every coefficient into an extension on the chain of target.
    FqPoly mapped(const FieldPtr& target) const;

    std::string to_string() const;
};

// quotient and remainder, den nonzero
std::pair<FqPoly, FqPoly> fq_divrem(const FqPoly& num, const FqPoly& den);
// monic gcd (zero if both zero)
FqPoly fq_gcd(FqPoly a, FqPoly b);
bool is_squarefree(const FqPoly& f);

} // namespace superell
