#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superell/fields.hpp"

namespace superell {

// Coefficients of Phi_m, constant first, monic, exact integers.
std::vector<mpz_class> cyclotomic_poly(u32 m);

// Q(zeta_m) presented as Q[z]/(Phi_m) with power basis 1, z, ..., z^(phi(m)-1).
class CycloField {
  public:
    static std::shared_ptr<const CycloField> make(u32 m);

    u32 order() const { return m_; }        // zeta has this order
    u32 dim() const { return dim_; }        // phi(m)
    // Coordinates of zeta^k, any k (reduced mod m).
    const std::vector<mpq_class>& zeta_power(u64 k) const;

  private:
    CycloField() = default;
    u32 m_ = 0, dim_ = 0;
    std::vector<std::vector<mpq_class>> pow_; // zeta^k for k = 0 .. 2m
};

using CycloFieldPtr = std::shared_ptr<const CycloField>;

// Element of Q(zeta_m), exact rational coordinates in the power basis.
struct CycloNum {
    CycloFieldPtr K;
    std::vector<mpq_class> co; // size K->dim()

    static CycloNum zero(CycloFieldPtr K);
    static CycloNum one(CycloFieldPtr K);
    static CycloNum from_rational(CycloFieldPtr K, const mpq_class& r);
    static CycloNum from_integer(CycloFieldPtr K, long v);
    static CycloNum zeta(CycloFieldPtr K, u64 k); // zeta^k

    bool is_zero() const;
    bool is_rational() const;       // all coordinates beyond the first vanish
    bool is_integral() const;       // every coordinate has denominator 1
    mpq_class rational_value() const; // requires is_rational()

    bool operator==(const CycloNum& o) const;
    bool operator!=(const CycloNum& o) const { return !(*this == o); }
    CycloNum operator+(const CycloNum& o) const;
    CycloNum operator-(const CycloNum& o) const;
    CycloNum operator-() const;
    CycloNum operator*(const CycloNum& o) const;
    CycloNum scaled(const mpq_class& r) const;

    // Complex conjugation: zeta -> zeta^(m-1).
    CycloNum conj() const;

    std::string to_string() const; // diagnostic form "a0 + a1*z + ..."
};

// Image in F under zeta -> omega; omega must have order m (or the element must
// be rational when m context is trivial). Denominators must be prime to p.
FieldElement reduce_to_field(const CycloNum& c, const FieldPtr& F, const FieldElement& omega);

// Polynomial over Q(zeta_m), coefficient i = t^i, no trailing zeros.
struct CycloPoly {
    CycloFieldPtr K;
    std::vector<CycloNum> co;

    static CycloPoly zero(CycloFieldPtr K);
    static CycloPoly one(CycloFieldPtr K);

    int degree() const { return static_cast<int>(co.size()) - 1; }
    void normalize();
    CycloNum coeff(u32 i) const; // 0 beyond degree

    bool operator==(const CycloPoly& o) const;
    CycloPoly operator+(const CycloPoly& o) const;
    CycloPoly operator-(const CycloPoly& o) const;
    CycloPoly operator*(const CycloPoly& o) const;

    bool is_integral() const;
    CycloPoly conj() const;
    std::string to_string() const;
};

} // namespace superell
