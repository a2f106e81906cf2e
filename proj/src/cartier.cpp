#include "superell/cartier.hpp"

#include "superell/errors.hpp"

#include <algorithm>

namespace superell {

FqMatrix FqMatrix::zero(FieldPtr F, u32 n) {
    FqMatrix M;
    M.F = F;
    M.n = n;
    M.a.assign(static_cast<size_t>(n) * n, F->zero());
    return M;
}

FqMatrix FqMatrix::identity(FieldPtr F, u32 n) {
    FqMatrix M = zero(F, n);
    for (u32 i = 0; i < n; ++i) M.at(i, i) = F->one();
    return M;
}

FqMatrix FqMatrix::mul(const FqMatrix& o) const {
    if (n != o.n) throw MathError("matrix size mismatch");
    FqMatrix R = zero(F, n);
    for (u32 i = 0; i < n; ++i)
        for (u32 k = 0; k < n; ++k) {
            const FieldElement& lhs = at(i, k);
            if (lhs.is_zero()) continue;
            for (u32 j = 0; j < n; ++j) R.at(i, j) = R.at(i, j) + lhs * o.at(k, j);
        }
    return R;
}

FqMatrix FqMatrix::entrywise_pth_root() const {
    FqMatrix R = *this;
    for (auto& e : R.a) e = F->pth_root(e);
    return R;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
    if (n != o.n) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == o.a[i])) return false;
    return true;
}

std::vector<std::pair<u32, u32>> diff_basis(const SuperellipticCurve& curve) {
    const u32 m = curve.m();
    const u32 s = curve.s();
    std::vector<std::pair<u32, u32>> basis;
    for (u32 b = 1; b < m; ++b) {
        const u32 a_max = (b * s + m - 1) / m; // ceil(b s / m)
        for (u32 a = 1; a + 1 <= a_max; ++a) basis.emplace_back(a, b);
    }
    if (basis.size() != curve.genus())
        throw MathError("differential basis size disagrees with the genus");
    return basis;
}

namespace {

u32 inverse_mod(u32 x, u32 m) {
    // m is small; scan is plenty.
    for (u32 y = 1; y < m; ++y)
        if (static_cast<u64>(x) * y % m == 1) return y;
    throw MathError("no inverse modulo m");
}

size_t basis_position(const std::vector<std::pair<u32, u32>>& basis, u32 a, u32 b) {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].first == a && basis[i].second == b) return i;
    throw MathError("differential not in basis");
}

} // namespace

FqMatrix cartier_matrix(const SuperellipticCurve& curve) {
    const auto basis = diff_basis(curve);
    const auto F = curve.base_field();
    const u32 p = static_cast<u32>(F->characteristic());
    const u32 m = curve.m();
    const u32 s = curve.s();
    FqMatrix M = FqMatrix::zero(F, static_cast<u32>(basis.size()));
    if (basis.empty()) return M;

    const u32 p_inv = inverse_mod(p % m, m);
    const FqPoly g = curve.g();
    for (size_t col = 0; col < basis.size(); ++col) {
        const auto [a, b] = basis[col];
        const u32 b_prime = static_cast<u32>(static_cast<u64>(p_inv) * b % m);
        const u32 e = static_cast<u32>((static_cast<u64>(p) * b_prime - b) / m);
        // x^(a-1) * g^e, then pick exponents congruent to p-1 mod p.
        FqPoly h = g.pow(e);
        std::vector<FieldElement> shifted(a - 1, F->zero());
        shifted.insert(shifted.end(), h.co.begin(), h.co.end());
        h = FqPoly::from_coeffs(F, shifted);

        const u32 a_max = (b_prime * s + m - 1) / m;
        for (u32 j = 0; static_cast<int>(p * j + p - 1) <= h.degree(); ++j) {
            const FieldElement c = h.coeff(p * j + p - 1);
            if (c.is_zero()) continue;
            const u32 a_target = static_cast<u32>(j) + 1;
            if (a_target + 1 > a_max)
                throw MathError("regular differential mapped outside the regular range");
            M.at(static_cast<u32>(basis_position(basis, a_target, b_prime)),
                 static_cast<u32>(col)) = F->pth_root(c);
        }
    }
    return M;
}

FqMatrix cartier_power(const SuperellipticCurve& curve, const FqMatrix& cartier) {
    const u32 n = curve.base_field()->degree();
    FqMatrix acc = cartier;
    FqMatrix twisted = cartier;
    for (u32 k = 1; k < n; ++k) {
        twisted = twisted.entrywise_pth_root();
        acc = acc.mul(twisted);
    }
    return acc;
}

std::vector<IsotypicBlock> isotypic_blocks(const SuperellipticCurve& curve, const AutGroupPtr& M,
                                           u32 conductor) {
    const auto F = curve.base_field();
    const FieldElement omega = F->root_of_unity(conductor);
    const auto basis = diff_basis(curve);
    const auto chars = all_characters(M, conductor);

    // Discrete log table against omega, conductor entries.
    std::vector<FieldElement> powers;
    powers.reserve(conductor);
    FieldElement w = F->one();
    for (u32 k = 0; k < conductor; ++k) {
        powers.push_back(w);
        w = w * omega;
    }
    auto dlog = [&](const FieldElement& v) -> u32 {
        for (u32 k = 0; k < conductor; ++k)
            if (powers[k] == v) return k;
        throw MathError("differential eigenvalue is not a root of unity of the conductor");
    };

    std::vector<IsotypicBlock> blocks;
    blocks.reserve(chars.size());
    for (const auto& chi : chars) blocks.push_back({chi, {}});

    for (size_t i = 0; i < basis.size(); ++i) {
        const auto [a, b] = basis[i];
        std::vector<u32> exps;
        exps.reserve(M->size());
        for (u32 t = 0; t < M->size(); ++t) {
            const DiagAut tau = M->at(t);
            const FieldElement v = tau.c.pow(a) * tau.eps.pow(b).inverse();
            exps.push_back(dlog(v));
        }
        bool placed = false;
        for (auto& blk : blocks)
            if (blk.chi.exps == exps) {
                blk.members.push_back(static_cast<u32>(i));
                placed = true;
                break;
            }
        if (!placed) throw MathError("differential eigencharacter is not a character of the group");
    }
    return blocks;
}

void assert_block_closure(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks) {
    std::vector<u32> block_of(cartier_n.n, UINT32_MAX);
    for (u32 bi = 0; bi < blocks.size(); ++bi)
        for (u32 idx : blocks[bi].members) block_of[idx] = bi;
    for (u32 i = 0; i < cartier_n.n; ++i)
        for (u32 j = 0; j < cartier_n.n; ++j) {
            if (block_of[i] == block_of[j]) continue;
            if (!cartier_n.at(i, j).is_zero())
                throw MathError("iterated Cartier operator leaks between isotypic pieces");
        }
}

namespace {

// Rank over F_q by Gaussian elimination; rows/cols indexed into sub.
u32 fq_rank(std::vector<std::vector<FieldElement>> rows) {
    const size_t nr = rows.size();
    const size_t nc = nr == 0 ? 0 : rows[0].size();
    u32 rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < nc && row < nr; ++col) {
        size_t pivot = row;
        while (pivot < nr && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == nr) continue;
        std::swap(rows[pivot], rows[row]);
        const FieldElement inv = rows[row][col].inverse();
        for (size_t j = col; j < nc; ++j) rows[row][j] = rows[row][j] * inv;
        for (size_t i = 0; i < nr; ++i) {
            if (i == row || rows[i][col].is_zero()) continue;
            const FieldElement f = rows[i][col];
            for (size_t j = col; j < nc; ++j) rows[i][j] = rows[i][j] - f * rows[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace

u32 gamma_block(const FqMatrix& cartier_n, const IsotypicBlock& block) {
    const auto F = cartier_n.F;
    const auto& mem = block.members;
    const size_t k = mem.size();
    std::vector<std::vector<FieldElement>> rows(k, std::vector<FieldElement>(k, F->zero()));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            FieldElement v = F->zero() - cartier_n.at(mem[i], mem[j]);
            if (i == j) v = v + F->one();
            rows[i][j] = v;
        }
    return static_cast<u32>(k) - fq_rank(std::move(rows));
}

const IsotypicBlock& find_block(const std::vector<IsotypicBlock>& blocks, const Character& chi) {
    for (const auto& blk : blocks)
        if (blk.chi == chi) return blk;
    throw MathError("character has no isotypic block: " + chi.label());
}

FqPoly reduce_poly_to_field(const CycloPoly& P, const FieldPtr& F, const FieldElement& omega) {
    std::vector<FieldElement> co;
    co.reserve(P.co.size());
    for (const auto& c : P.co) co.push_back(reduce_to_field(c, F, omega));
    return FqPoly::from_coeffs(F, std::move(co));
}

ModPReport mod_p_compare(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks,
                         const Character& chi, const CycloPoly& P) {
    const auto F = cartier_n.F;
    const FieldElement omega = F->root_of_unity(chi.conductor);
    ModPReport rep;
    rep.reduced = reduce_poly_to_field(P, F, omega);
    const IsotypicBlock& direct = find_block(blocks, chi);
    const IsotypicBlock& inverse = find_block(blocks, chi.inverse());
    rep.det_direct = block_char_poly(cartier_n, direct);
    rep.det_inverse = block_char_poly(cartier_n, inverse);
    rep.matched_direct = rep.reduced == rep.det_direct;
    rep.matched_inverse = rep.reduced == rep.det_inverse;
    if (!rep.matched_direct && !rep.matched_inverse)
        throw MathError("reduced L-polynomial matches neither isotypic labeling for " +
                        chi.label());
    rep.degree_reduced = rep.reduced.degree() < 0 ? 0 : static_cast<u32>(rep.reduced.degree());
    rep.gamma_matched = gamma_block(cartier_n, rep.matched_direct ? direct : inverse);
    if (rep.degree_reduced != rep.gamma_matched)
        throw MathError("reduced degree disagrees with the kernel dimension for " + chi.label());
    return rep;
}

OrbitReport gamma_orbit_check(const FqMatrix& cartier_n, const std::vector<IsotypicBlock>& blocks,
                              const Character& chi) {
    const u32 p = static_cast<u32>(cartier_n.F->characteristic());
    OrbitReport rep;
    Character cur = chi;
    while (true) {
        rep.orbit.push_back(cur);
        cur = cur.power(p);
        if (cur == chi) break;
        if (rep.orbit.size() > chi.conductor) throw MathError("character orbit does not close");
    }
    rep.length = static_cast<u32>(rep.orbit.size());
    rep.gamma = gamma_block(cartier_n, find_block(blocks, chi));
    for (const auto& member : rep.orbit)
        if (gamma_block(cartier_n, find_block(blocks, member)) != rep.gamma)
            throw MathError("gamma varies along the Frobenius orbit of " + chi.label());
    return rep;
}

FqPoly block_char_poly(const FqMatrix& cartier_n, const IsotypicBlock& block) {
    const auto F = cartier_n.F;
    const auto& mem = block.members;
    const size_t k = mem.size();
    if (k == 0) return FqPoly::one(F);

    // Bareiss fraction-free elimination over F_q[t] on I - t * Cn.
    std::vector<std::vector<FqPoly>> B(k, std::vector<FqPoly>(k, FqPoly::zero(F)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            FqPoly cell =
                FqPoly::from_coeffs(F, {F->zero(), F->zero() - cartier_n.at(mem[i], mem[j])});
            if (i == j) cell = cell + FqPoly::one(F);
            B[i][j] = cell;
        }

    bool negate = false;
    FqPoly prev = FqPoly::one(F);
    for (size_t step = 0; step + 1 < k; ++step) {
        if (B[step][step].degree() < 0) {
            size_t swap_row = step + 1;
            while (swap_row < k && B[swap_row][step].degree() < 0) ++swap_row;
            if (swap_row == k) return FqPoly::zero(F);
            std::swap(B[swap_row], B[step]);
            negate = !negate;
        }
        for (size_t i = step + 1; i < k; ++i)
            for (size_t j = step + 1; j < k; ++j) {
                const FqPoly num = B[step][step] * B[i][j] - B[i][step] * B[step][j];
                auto [q, r] = fq_divrem(num, prev);
                if (r.degree() >= 0) throw MathError("inexact division in determinant elimination");
                B[i][j] = q;
            }
        prev = B[step][step];
    }
    FqPoly det = B[k - 1][k - 1];
    if (negate) det = FqPoly::zero(F) - det;
    return det;
}

} // namespace superell
