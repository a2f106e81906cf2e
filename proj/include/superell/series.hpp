#pragma once

#include "superell/cyclo.hpp"

namespace superell {

// Power series over Q(zeta_m) truncated to N coefficients (t^0 .. t^(N-1)).
struct TruncSeries {
    CycloFieldPtr K;
    std::vector<CycloNum> co;

    static TruncSeries zero(CycloFieldPtr K, u32 n);
    static TruncSeries one(CycloFieldPtr K, u32 n);
    static TruncSeries from_poly(const CycloPoly& p, u32 n);

    u32 length() const { return static_cast<u32>(co.size()); }

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
};

// exp(s), requires s(0) = 0. Recurrence n*E_n = sum_{k=1..n} k s_k E_{n-k}.
TruncSeries series_exp(const TruncSeries& s);

// log(u), requires u(0) = 1.
TruncSeries series_log(const TruncSeries& u);

// The polynomial hiding in a series: returns coefficients 0..max_deg if every
// later stored coefficient vanishes. Requires length >= max_deg + 2 so at
// least two tail coefficients certify the cutoff. nullopt if the tail is
// nonzero.
std::optional<CycloPoly> poly_detect(const TruncSeries& s, u32 max_deg);

} // namespace superell
