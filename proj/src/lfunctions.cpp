#include "superell/lfunctions.hpp"

#include <algorithm>
#include <sstream>

namespace superell {

bool Character::is_trivial() const {
    return std::all_of(exps.begin(), exps.end(), [](u32 e) { return e == 0; });
}

Character Character::inverse() const {
    Character r = *this;
    for (auto& e : r.exps) e = e ? conductor - e : 0;
    return r;
}

Character Character::power(u32 k) const {
    Character r = *this;
    for (auto& e : r.exps) e = static_cast<u32>((static_cast<u64>(e) * k) % conductor);
    return r;
}

CycloNum Character::value(const CycloFieldPtr& K, u32 elem_index) const {
    return CycloNum::zeta(K, exps[elem_index]);
}

CycloNum Character::value_at_inverse(const CycloFieldPtr& K, u32 elem_index) const {
    const u32 e = exps[elem_index];
    return CycloNum::zeta(K, e ? conductor - e : 0);
}

std::string Character::label() const {
    std::ostringstream os;
    os << "chi[";
    for (size_t i = 0; i < exps.size(); ++i) {
        if (i) os << ',';
        os << exps[i];
    }
    os << ']';
    return os.str();
}

std::vector<Character> all_characters(const AutGroupPtr& M, u32 conductor) {
    const u32 n = M->size();
    // generating sequence: greedily extend the generated set
    std::vector<u32> gens;
    std::vector<bool> in_span(n, false);
    in_span[0] = true;
    u32 span_size = 1;
    while (span_size < n) {
        u32 pick = 0;
        for (u32 i = 1; i < n; ++i)
            if (!in_span[i]) { pick = i; break; }
        gens.push_back(pick);
        // close the span under multiplication by pick
        bool grew = true;
        while (grew) {
            grew = false;
            for (u32 i = 0; i < n; ++i) {
                if (!in_span[i]) continue;
                const u32 j = M->product_index(i, pick);
                if (!in_span[j]) {
                    in_span[j] = true;
                    ++span_size;
                    grew = true;
                }
            }
        }
    }

    std::vector<u32> gen_order;
    for (u32 g : gens) gen_order.push_back(M->element_order(g));

    std::vector<Character> out;
    std::vector<u32> choice(gens.size(), 0);
    const u32 kNone = UINT32_MAX;
    while (true) {
        // candidate values chi(gens[i]) = zeta^(choice[i] * conductor / ord)
        std::vector<u32> val(n, kNone);
        val[0] = 0;
        bool ok = true, grew = true;
        while (grew && ok) {
            grew = false;
            for (u32 i = 0; i < n && ok; ++i) {
                if (val[i] == kNone) continue;
                for (size_t gi = 0; gi < gens.size() && ok; ++gi) {
                    const u32 j = M->product_index(i, gens[gi]);
                    const u32 v =
                        static_cast<u32>((val[i] + static_cast<u64>(choice[gi]) * (conductor / gen_order[gi])) % conductor);
                    if (val[j] == kNone) {
                        val[j] = v;
                        grew = true;
                    } else if (val[j] != v) {
                        ok = false;
                    }
                }
            }
        }
        for (u32 i = 0; i < n && ok; ++i)
            if (val[i] == kNone) ok = false; // gens must reach everything
        if (ok) {
            Character chi{M, conductor, std::move(val)};
            bool dup = false;
            for (const auto& c : out)
                if (c == chi) { dup = true; break; }
            if (!dup) out.push_back(std::move(chi));
        }
        // odometer over choices
        size_t pos = 0;
        while (pos < gens.size()) {
            if (++choice[pos] < gen_order[pos]) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == gens.size()) break;
    }
    if (out.size() != n) throw MathError("character count mismatch");
    std::sort(out.begin(), out.end());
    return out;
}

SubgroupView subgroup_view(const AutGroupPtr& H, const AutGroupPtr& M) {
    SubgroupView V{M, {}};
    V.h_index.reserve(M->size());
    for (u32 i = 0; i < M->size(); ++i) V.h_index.push_back(H->index_of(M->at(i)));
    return V;
}

CycloNum a_nu(const LambdaTable& T, const SubgroupView& V, const Character& chi,
              u32 nu, const CycloFieldPtr& K) {
    CycloNum acc = CycloNum::zero(K);
    for (u32 i = 0; i < V.M->size(); ++i) {
        const i64 lam = T.value(V.h_index[i], nu);
        acc = acc + chi.value_at_inverse(K, i).scaled(mpq_class(static_cast<long>(lam)));
    }
    return acc.scaled(mpq_class(1, V.M->size()));
}

TruncSeries l_series(const LambdaTable& T, const SubgroupView& V, const Character& chi,
                     u32 N, const CycloFieldPtr& K) {
    if (N - 1 > T.max_nu()) throw MathError("fixed-point table too short for precision");
    TruncSeries s = TruncSeries::zero(K, N);
    for (u32 nu = 1; nu < N; ++nu)
        s.co[nu] = a_nu(T, V, chi, nu, K).scaled(mpq_class(1, nu));
    return series_exp(s);
}

namespace {

TruncSeries pole_factor(const CycloFieldPtr& K, u32 N, u64 q, u32 u) {
    // ((1-t)(1-qt))^u as a truncated series
    CycloPoly f{K, {CycloNum::one(K), CycloNum::from_rational(K, mpq_class(-1) - mpq_class(static_cast<unsigned long>(q))),
                    CycloNum::from_rational(K, mpq_class(static_cast<unsigned long>(q)))}};
    TruncSeries out = TruncSeries::one(K, N);
    for (u32 i = 0; i < u; ++i) out = out * TruncSeries::from_poly(f, N);
    return out;
}

} // namespace

PolyData p_polynomial(const LambdaTable& T, const SubgroupView& V, const Character& chi,
                      const CycloFieldPtr& K) {
    const u32 g = T.curve().genus();
    const u32 N = 2 * g + 3;
    const u64 q = T.curve().base_field()->order();
    TruncSeries L = l_series(T, V, chi, N, K);
    PolyData out;
    out.pole_order = chi.is_trivial() ? 1 : 0;
    TruncSeries S = L * pole_factor(K, N, q, out.pole_order);
    auto poly = poly_detect(S, 2 * g);
    if (!poly) throw MathError("L-series is not polynomial at certified precision");
    out.P = std::move(*poly);
    if (!(out.P.coeff(0) == CycloNum::one(K))) throw MathError("polynomial constant term is not 1");
    if (!out.P.is_integral()) throw MathError("polynomial has non-integral coefficient");

    // soft invariant: conjugate character gives conjugate coefficients
    const Character inv = chi.inverse();
    out.conj_symmetric = true;
    for (u32 nu = 1; nu < N && out.conj_symmetric; ++nu) {
        if (!(a_nu(T, V, inv, nu, K) == a_nu(T, V, chi, nu, K).conj())) out.conj_symmetric = false;
    }
    return out;
}

CycloPoly zeta_numerator(const LambdaTable& T, const CycloFieldPtr& K) {
    AutGroupPtr triv = AutSubgroup::closure(T.curve(), {});
    SubgroupView V = subgroup_view(T.group(), triv);
    Character chi{triv, K->order(), {0}};
    return p_polynomial(T, V, chi, K).P;
}

ArtinReport artin_check(const LambdaTable& T, const CycloFieldPtr& K) {
    ArtinReport R;
    const u32 g = T.curve().genus();
    const u32 N = 2 * g + 3;
    const AutGroupPtr H = T.group();
    SubgroupView VH = subgroup_view(H, H);

    AutGroupPtr triv = AutSubgroup::closure(T.curve(), {});
    SubgroupView Vtriv = subgroup_view(H, triv);
    Character chi0{triv, K->order(), {0}};
    TruncSeries Z = l_series(T, Vtriv, chi0, N, K);

    TruncSeries prod = TruncSeries::one(K, N);
    u32 degsum = 0;
    R.all_conj_symmetric = true;
    for (const Character& chi : all_characters(H, K->order())) {
        prod = prod * l_series(T, VH, chi, N, K);
        PolyData pd = p_polynomial(T, VH, chi, K);
        degsum += static_cast<u32>(std::max(pd.P.degree(), 0));
        if (!pd.conj_symmetric) R.all_conj_symmetric = false;
    }
    R.factorization_ok = true;
    for (u32 i = 0; i < N; ++i)
        if (!(prod.co[i] == Z.co[i])) R.factorization_ok = false;
    R.degree_sum = degsum;
    R.degree_sum_ok = (degsum == 2 * g);
    return R;
}

} // namespace superell
