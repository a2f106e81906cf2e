#include "superell/fqpoly.hpp"

#include <sstream>

namespace superell {

FqPoly FqPoly::zero(FieldPtr F) { return FqPoly{std::move(F), {}}; }

FqPoly FqPoly::one(FieldPtr F) {
    FqPoly f{F, {F->one()}};
    return f;
}

FqPoly FqPoly::x(FieldPtr F) {
    FqPoly f{F, {F->zero(), F->one()}};
    return f;
}

FqPoly FqPoly::from_coeffs(FieldPtr F, std::vector<FieldElement> coeffs) {
    FqPoly f{std::move(F), std::move(coeffs)};
    f.normalize();
    return f;
}

FqPoly FqPoly::from_ints(FieldPtr F, const std::vector<i64>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (i64 v : coeffs) c.push_back(F->from_int(v));
    return from_coeffs(F, std::move(c));
}

void FqPoly::normalize() {
    while (!co.empty() && co.back().is_zero()) co.pop_back();
}

FieldElement FqPoly::coeff(u32 i) const {
    if (i < co.size()) return co[i];
    return F->zero();
}

FieldElement FqPoly::leading() const {
    if (co.empty()) return F->zero();
    return co.back();
}

bool FqPoly::operator==(const FqPoly& o) const {
    if (co.size() != o.co.size()) return false;
    for (size_t i = 0; i < co.size(); ++i)
        if (!(co[i] == o.co[i])) return false;
    return true;
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    FqPoly r{F, {}};
    r.co.resize(std::max(co.size(), o.co.size()), F->zero());
    for (size_t i = 0; i < co.size(); ++i) r.co[i] = r.co[i] + co[i];
    for (size_t i = 0; i < o.co.size(); ++i) r.co[i] = r.co[i] + o.co[i];
    r.normalize();
    return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    FqPoly r{F, {}};
    r.co.resize(std::max(co.size(), o.co.size()), F->zero());
    for (size_t i = 0; i < co.size(); ++i) r.co[i] = r.co[i] + co[i];
    for (size_t i = 0; i < o.co.size(); ++i) r.co[i] = r.co[i] - o.co[i];
    r.normalize();
    return r;
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (co.empty() || o.co.empty()) return zero(F);
    FqPoly r{F, std::vector<FieldElement>(co.size() + o.co.size() - 1, F->zero())};
    for (size_t i = 0; i < co.size(); ++i) {
        if (co[i].is_zero()) continue;
        for (size_t j = 0; j < o.co.size(); ++j)
            r.co[i + j] = r.co[i + j] + co[i] * o.co[j];
    }
    r.normalize();
    return r;
}

FqPoly FqPoly::scaled(const FieldElement& c) const {
    FqPoly r = *this;
    for (auto& a : r.co) a = a * c;
    r.normalize();
    return r;
}

FqPoly FqPoly::pow(u32 e) const {
    FqPoly r = one(F);
    FqPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FqPoly::eval(const FieldElement& x) const {
    FieldElement acc = F->zero();
    for (size_t i = co.size(); i-- > 0;) acc = acc * x + co[i];
    return acc;
}

FqPoly FqPoly::derivative() const {
    if (co.size() <= 1) return zero(F);
    std::vector<FieldElement> d;
    d.reserve(co.size() - 1);
    for (size_t i = 1; i < co.size(); ++i)
        d.push_back(co[i] * F->from_int(static_cast<i64>(i)));
    return from_coeffs(F, std::move(d));
}

FqPoly FqPoly::mapped(const FieldPtr& target) const {
    FqPoly r{target, {}};
    r.co.reserve(co.size());
    for (const auto& c : co) r.co.push_back(target->embed(c));
    r.normalize();
    return r;
}

std::pair<FqPoly, FqPoly> fq_divrem(const FqPoly& num, const FqPoly& den) {
    if (den.is_zero()) throw MathError("polynomial division by zero");
    FqPoly q = FqPoly::zero(num.F);
    FqPoly r = num;
    const FieldElement lcinv = den.leading().inverse();
    const int dd = den.degree();
    while (r.degree() >= dd) {
        const int shift = r.degree() - dd;
        const FieldElement c = r.leading() * lcinv;
        if (static_cast<int>(q.co.size()) < shift + 1) q.co.resize(shift + 1, num.F->zero());
        q.co[shift] = q.co[shift] + c;
        for (int i = 0; i <= dd; ++i) {
            size_t k = static_cast<size_t>(shift + i);
            r.co[k] = r.co[k] - c * den.co[i];
        }
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

FqPoly fq_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = fq_divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(a.leading().inverse());
    return a;
}

bool is_squarefree(const FqPoly& f) {
    if (f.is_zero()) return false;
    FqPoly d = f.derivative();
    if (d.is_zero()) return false; // p-th power component
    return fq_gcd(f, d).degree() == 0;
}

std::string FqPoly::to_string() const {
    if (co.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < co.size(); ++i) {
        if (i) os << " + ";
        os << co[i].to_string();
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
    }
    return os.str();
}

} // namespace superell
