#include "superell/galois_ring.hpp"

#include "superell/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace superell {

GroupRingElem GroupRingElem::zero(AutGroupPtr H, CycloFieldPtr K) {
    GroupRingElem e;
    e.H = H;
    e.K = K;
    e.co.assign(H->size(), CycloNum::zero(K));
    return e;
}

GroupRingElem GroupRingElem::unit(AutGroupPtr H, CycloFieldPtr K) {
    GroupRingElem e = zero(H, K);
    e.co[0] = CycloNum::one(K); // identity sits at index 0
    return e;
}

bool GroupRingElem::is_zero() const {
    return std::all_of(co.begin(), co.end(), [](const CycloNum& c) { return c.is_zero(); });
}

bool GroupRingElem::operator==(const GroupRingElem& o) const { return co == o.co; }

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
    GroupRingElem r = *this;
    for (u32 i = 0; i < H->size(); ++i) r.co[i] = r.co[i] + o.co[i];
    return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
    GroupRingElem r = *this;
    for (u32 i = 0; i < H->size(); ++i) r.co[i] = r.co[i] - o.co[i];
    return r;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
    GroupRingElem r = zero(H, K);
    for (u32 i = 0; i < H->size(); ++i) {
        if (co[i].is_zero()) continue;
        for (u32 j = 0; j < H->size(); ++j) {
            if (o.co[j].is_zero()) continue;
            const u32 k = H->product_index(i, j);
            r.co[k] = r.co[k] + co[i] * o.co[j];
        }
    }
    return r;
}

GroupRingElem GroupRingElem::scaled(const CycloNum& r) const {
    GroupRingElem out = *this;
    for (auto& c : out.co) c = c * r;
    return out;
}

GroupRingElem idempotent(const AutGroupPtr& H, const Character& chi, const CycloFieldPtr& K) {
    const SubgroupView V = subgroup_view(H, chi.M);
    GroupRingElem e = GroupRingElem::zero(H, K);
    const mpq_class inv_order(1, chi.M->size());
    for (u32 i = 0; i < chi.M->size(); ++i)
        e.co[V.h_index[i]] = chi.value_at_inverse(K, i).scaled(inv_order);
    return e;
}

GroupRingElem relation_element(const AutGroupPtr& H, const std::vector<RelationTerm>& terms,
                               const CycloFieldPtr& K) {
    GroupRingElem acc = GroupRingElem::zero(H, K);
    for (const auto& term : terms) {
        if (term.s == 0) continue;
        acc = acc + idempotent(H, term.chi, K).scaled(CycloNum::from_integer(K, term.s));
    }
    return acc;
}

bool verify_relation(const AutGroupPtr& H, const std::vector<RelationTerm>& terms,
                     const CycloFieldPtr& K) {
    if (std::all_of(terms.begin(), terms.end(), [](const RelationTerm& t) { return t.s == 0; }))
        throw ConfigError("relation needs a nonzero coefficient");
    return relation_element(H, terms, K).is_zero();
}

namespace {

// Columns are flattened idempotents; returns the rational kernel as integer
// vectors, content 1, first nonzero entry positive, sorted.
std::vector<std::vector<i64>> integer_kernel(std::vector<std::vector<mpq_class>> A, size_t cols) {
    const size_t rows = A.size();
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pr = rank;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[rank]);
        const mpq_class inv = 1 / A[rank][c];
        for (size_t j = c; j < cols; ++j) A[rank][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || A[i][c] == 0) continue;
            const mpq_class f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
        }
        pivot_of_col[c] = rank;
        ++rank;
    }

    std::vector<std::vector<i64>> kernel;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] != SIZE_MAX) continue;
        std::vector<mpq_class> v(cols, 0);
        v[free_col] = 1;
        for (size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] != SIZE_MAX) v[c] = -A[pivot_of_col[c]][free_col];

        mpz_class lcm_den = 1;
        for (const auto& x : v) {
            const mpz_class den = x.get_den();
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
        }
        std::vector<mpz_class> w(cols);
        for (size_t c = 0; c < cols; ++c) {
            mpq_class scaled = v[c] * mpq_class(lcm_den);
            scaled.canonicalize();
            w[c] = scaled.get_num(); // denominator is 1 by the lcm choice
        }
        mpz_class content = 0;
        for (const auto& x : w) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
        if (content == 0) continue;
        int lead_sign = 0;
        for (const auto& x : w)
            if (x != 0) {
                lead_sign = sgn(x);
                break;
            }
        std::vector<i64> out(cols);
        for (size_t c = 0; c < cols; ++c) {
            mpz_class reduced = w[c] / content * lead_sign;
            if (!reduced.fits_slong_p()) throw MathError("relation coefficient overflow");
            out[c] = reduced.get_si();
        }
        kernel.push_back(std::move(out));
    }
    std::sort(kernel.begin(), kernel.end());
    return kernel;
}

} // namespace

std::vector<std::vector<i64>> find_relations(const AutGroupPtr& H,
                                             const std::vector<Character>& candidates,
                                             const CycloFieldPtr& K) {
    if (candidates.size() < 2) throw ConfigError("relation search needs at least two candidates");
    const size_t dim = K->dim();
    const size_t rows = static_cast<size_t>(H->size()) * dim;
    std::vector<std::vector<mpq_class>> A(rows, std::vector<mpq_class>(candidates.size(), 0));
    for (size_t k = 0; k < candidates.size(); ++k) {
        const GroupRingElem e = idempotent(H, candidates[k], K);
        for (u32 i = 0; i < H->size(); ++i)
            for (size_t d = 0; d < dim; ++d) A[i * dim + d][k] = e.co[i].co[d];
    }
    return integer_kernel(std::move(A), candidates.size());
}

TheoremReport theorem_check(const LambdaTable& T, const std::vector<RelationTerm>& terms,
                            const CycloFieldPtr& K) {
    const AutGroupPtr H = T.group();
    if (!verify_relation(H, terms, K))
        throw MathError("term list is not a relation in the group ring");

    TheoremReport rep{{}, {}, CycloPoly::one(K), CycloPoly::one(K), false};
    for (const auto& term : terms) {
        const SubgroupView V = subgroup_view(H, term.chi.M);
        const CycloPoly P = p_polynomial(T, V, term.chi.inverse(), K).P;
        rep.polys.push_back(P);
        rep.degrees.push_back(static_cast<u32>(std::max(P.degree(), 0)));
        CycloPoly& side = term.s > 0 ? rep.lhs : rep.rhs;
        for (i64 k = 0; k < std::abs(term.s); ++k) side = side * P;
    }
    rep.identity_ok = rep.lhs == rep.rhs;
    return rep;
}

CorollaryReport corollary_check(const LambdaTable& T, const std::vector<RelationTerm>& terms,
                                const CycloFieldPtr& K) {
    const AutGroupPtr H = T.group();
    if (!verify_relation(H, terms, K))
        throw MathError("term list is not a relation in the group ring");

    const SuperellipticCurve& curve = T.curve();
    const FqMatrix Cn = cartier_power(curve, cartier_matrix(curve));
    CorollaryReport rep;
    for (const auto& term : terms) {
        const Character target = term.chi.inverse();
        const auto blocks = isotypic_blocks(curve, term.chi.M, term.chi.conductor);
        const u32 g = gamma_block(Cn, find_block(blocks, target));

        const SubgroupView V = subgroup_view(H, term.chi.M);
        const CycloPoly P = p_polynomial(T, V, target, K).P;
        const FieldElement omega = curve.base_field()->root_of_unity(term.chi.conductor);
        const FqPoly reduced = reduce_poly_to_field(P, curve.base_field(), omega);
        const u32 deg = static_cast<u32>(std::max(reduced.degree(), 0));

        rep.gammas.push_back(g);
        rep.mod_p_degrees.push_back(deg);
        rep.gamma_sum += term.s * static_cast<i64>(g);
        rep.degree_sum += term.s * static_cast<i64>(deg);
    }
    rep.gamma_route_zero = rep.gamma_sum == 0;
    rep.degree_route_zero = rep.degree_sum == 0;
    return rep;
}

EmbeddingReport embedding_check(const SuperellipticCurve& curve, const AutGroupPtr& M,
                                u32 conductor, const std::vector<u32>& multiplicities) {
    const auto chars = all_characters(M, conductor);
    if (multiplicities.size() != chars.size())
        throw ConfigError("need one multiplicity per character, in canonical order");

    const FqMatrix Cn = cartier_power(curve, cartier_matrix(curve));
    const auto blocks = isotypic_blocks(curve, M, conductor);

    EmbeddingReport rep;
    std::vector<bool> seen(chars.size(), false);
    for (size_t i = 0; i < chars.size(); ++i) {
        if (seen[i]) continue;
        const OrbitReport orbit = gamma_orbit_check(Cn, blocks, chars[i]);
        u32 mult = multiplicities[i];
        for (const auto& member : orbit.orbit) {
            const auto pos = static_cast<size_t>(
                std::find(chars.begin(), chars.end(), member) - chars.begin());
            if (pos == chars.size()) throw MathError("orbit member is not a character of M");
            seen[pos] = true;
            if (multiplicities[pos] != mult)
                throw ConfigError("multiplicity must be constant on the orbit of " +
                                  chars[i].label());
        }
        EmbeddingOrbit row;
        row.rep = chars[i];
        row.length = orbit.length;
        row.multiplicity = mult;
        row.dim = 1;
        row.gamma = orbit.gamma;
        row.ok = mult * row.dim <= row.gamma;
        rep.all_ok = rep.all_ok && row.ok;
        rep.orbits.push_back(std::move(row));
    }
    return rep;
}

GenusBound genus_bound(u32 m, u32 n_p, u32 g) {
    if (m < 1 || n_p < 1) throw ConfigError("genus bound needs m >= 1 and n_p >= 1");
    GenusBound out;
    out.hypothesis_ok = g >= 2;
    const i64 gm1 = static_cast<i64>(g) - 1;
    const mpz_class num = mpz_class(m) * static_cast<long>(gm1);
    mpq_class ratio(num, mpz_class(n_p));
    ratio.canonicalize();
    out.sub_genus = ratio + 1;
    out.divisible = (static_cast<i64>(m) * gm1) % static_cast<i64>(n_p) == 0;
    out.bound = static_cast<i64>(n_p) + static_cast<i64>(m) * gm1 + g;
    return out;
}

} // namespace superell
