#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "superell/errors.hpp"

namespace superell {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// Element of a FiniteField: digit vector of length field->degree(), constant
// digit first, each digit in [0, p). Value semantics; the field is shared.
struct FieldElement {
    FieldPtr field;
    std::vector<u32> digits;

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Canonical order: lexicographic on digits, constant digit first.
    bool operator<(const FieldElement& o) const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;

    FieldElement inverse() const;
    FieldElement pow(u64 e) const;
    // Multiplicative order; element must be nonzero.
    u64 mult_order() const;

    std::string to_string() const; // "[c0,c1,...]" digits, constant first
};

// Matrix over F_p, row-major. Used for Frobenius/digit-linear maps and for
// kernel computations behind subfield embeddings and Cartier kernels.
struct FpMatrix {
    u64 p = 0;
    u32 rows = 0, cols = 0;
    std::vector<u32> a; // rows*cols

    u32& at(u32 r, u32 c) { return a[static_cast<size_t>(r) * cols + c]; }
    u32 at(u32 r, u32 c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static FpMatrix identity(u64 p, u32 n);
    FpMatrix mul(const FpMatrix& o) const;
    void apply(const u32* in, u32* out) const; // out = M * in (length rows)
};

// Basis of the right kernel {v : M v = 0}, reduced, deterministic order.
std::vector<std::vector<u32>> fp_kernel(const FpMatrix& m);

// F_{p^d} built as F_p[x]/(modulus) with the canonical modulus: the monic
// irreducible of degree d whose coefficient tuple (leading side first) is
// smallest. Extensions built through extend() remember their subfield and
// how its generator embeds, giving a single chain F_p < F_q < F_{q^k}.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
  public:
    // Canonical field of order p^d. p must be prime, p^d < 2^62.
    static FieldPtr build(u64 p, u32 d);
    // Canonical field of order p^(d*k) with *this linked as subfield.
    FieldPtr extend(u32 k) const;

    u64 characteristic() const { return p_; }
    u32 degree() const { return deg_; } // over F_p
    u64 order() const { return order_; } // p^deg
    const std::vector<u32>& modulus() const { return mod_; } // size deg+1, monic
    FieldPtr subfield() const { return sub_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 v) const; // constant, reduced mod p
    FieldElement from_digits(std::vector<u32> digits) const;
    // x mod modulus: the canonical generator of the field presentation.
    FieldElement gen() const;

    // Embed an element of F_p or of a field on this field's subfield chain.
    FieldElement embed(const FieldElement& e) const;
    bool on_chain(const FiniteField* f) const; // f == this or f below this

    // e^(p^k): F_p-linear. pth_root inverts frobenius (k = deg-1).
    FieldElement frobenius(const FieldElement& e, u32 k = 1) const;
    FieldElement pth_root(const FieldElement& e) const;

    // Digit-matrix of e -> e^(p^k), cached. Build eagerly before hot scans;
    // first call per k is not safe to race.
    const FpMatrix& frobenius_matrix(u32 k) const;
    // Digit-matrix of e -> s*e.
    FpMatrix scalar_matrix(const FieldElement& s) const;

    // Smallest generator of the unit group in canonical element order.
    // Requires order-1 to factor by trial division (fields in scope are small).
    FieldElement smallest_generator() const;
    // Canonical primitive m-th root of unity: smallest_generator()^((q-1)/m).
    // Requires m >= 1 and m | order-1.
    FieldElement root_of_unity(u64 m) const;

    // All field elements in canonical order; refuses if order > cap.
    std::vector<FieldElement> all_elements(u64 cap) const;

    // Raw digit-array kernels used by hot loops. Arrays have length deg.
    void add_raw(const u32* a, const u32* b, u32* out) const;
    void sub_raw(const u32* a, const u32* b, u32* out) const;
    void mul_raw(const u32* a, const u32* b, u32* out) const;
    void sqr_raw(const u32* a, u32* out) const;
    bool is_zero_raw(const u32* a) const;

    ~FiniteField() = default;
    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

  private:
    FiniteField() = default;
    static std::shared_ptr<FiniteField> build_impl(u64 p, u32 d, FieldPtr sub);
    FieldPtr extend_impl(u32 k) const;
    void check_element(const FieldElement& e, const char* op) const;

    u64 p_ = 0;
    u32 deg_ = 0;
    u64 order_ = 0;
    std::vector<u32> mod_;
    FieldPtr sub_;                       // nullptr when built directly
    std::vector<u32> sub_gen_image_;     // digits of the embedded subfield gen
    std::vector<u64> unit_prime_factors_; // distinct primes of order-1, lazy
    mutable std::map<u32, FpMatrix> frob_cache_;
    mutable std::map<u32, FieldPtr> ext_cache_;

    friend struct FieldElement;
};

// Prime factors of n (distinct, ascending) by trial division. Refuses n whose
// second-largest factor exceeds the trial bound; fields in scope are small.
std::vector<u64> distinct_prime_factors(u64 n);

bool is_prime_u64(u64 n);

} // namespace superell
