#include "superell/series.hpp"

namespace superell {

TruncSeries TruncSeries::zero(CycloFieldPtr K, u32 n) {
    return TruncSeries{K, std::vector<CycloNum>(n, CycloNum::zero(K))};
}

TruncSeries TruncSeries::one(CycloFieldPtr K, u32 n) {
    TruncSeries s = zero(K, n);
    s.co[0] = CycloNum::one(K);
    return s;
}

TruncSeries TruncSeries::from_poly(const CycloPoly& p, u32 n) {
    TruncSeries s = zero(p.K, n);
    for (u32 i = 0; i < n && i < p.co.size(); ++i) s.co[i] = p.co[i];
    return s;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    if (length() != o.length()) throw MathError("series length mismatch");
    TruncSeries r = *this;
    for (u32 i = 0; i < length(); ++i) r.co[i] = r.co[i] + o.co[i];
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    if (length() != o.length()) throw MathError("series length mismatch");
    TruncSeries r = *this;
    for (u32 i = 0; i < length(); ++i) r.co[i] = r.co[i] - o.co[i];
    return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    if (length() != o.length()) throw MathError("series length mismatch");
    TruncSeries r = zero(K, length());
    for (u32 i = 0; i < length(); ++i) {
        if (co[i].is_zero()) continue;
        for (u32 j = 0; i + j < length(); ++j) {
            if (o.co[j].is_zero()) continue;
            r.co[i + j] = r.co[i + j] + co[i] * o.co[j];
        }
    }
    return r;
}

TruncSeries series_exp(const TruncSeries& s) {
    if (!s.co[0].is_zero()) throw MathError("exp needs vanishing constant term");
    const u32 n = s.length();
    TruncSeries e = TruncSeries::zero(s.K, n);
    e.co[0] = CycloNum::one(s.K);
    for (u32 k = 1; k < n; ++k) {
        CycloNum acc = CycloNum::zero(s.K);
        for (u32 j = 1; j <= k; ++j)
            acc = acc + s.co[j].scaled(j) * e.co[k - j];
        e.co[k] = acc.scaled(mpq_class(1, k));
    }
    return e;
}

TruncSeries series_log(const TruncSeries& u) {
    if (!(u.co[0] == CycloNum::one(u.K))) throw MathError("log needs constant term 1");
    const u32 n = u.length();
    TruncSeries l = TruncSeries::zero(u.K, n);
    for (u32 k = 1; k < n; ++k) {
        CycloNum acc = u.co[k].scaled(k);
        for (u32 j = 1; j < k; ++j)
            acc = acc - l.co[j].scaled(j) * u.co[k - j];
        l.co[k] = acc.scaled(mpq_class(1, k));
    }
    return l;
}

std::optional<CycloPoly> poly_detect(const TruncSeries& s, u32 max_deg) {
    if (s.length() < max_deg + 2)
        throw MathError("series too short to certify polynomial cutoff");
    for (u32 i = max_deg + 1; i < s.length(); ++i)
        if (!s.co[i].is_zero()) return std::nullopt;
    CycloPoly p{s.K, std::vector<CycloNum>(s.co.begin(), s.co.begin() + max_deg + 1)};
    p.normalize();
    return p;
}

} // namespace superell
