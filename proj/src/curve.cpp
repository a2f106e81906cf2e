#include "superell/curve.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>

#include "superell/parallel.hpp"

namespace superell {

namespace {

u32 gcd_u32(u32 a, u32 b) { return std::gcd(a, b); }

u64 digits_to_index(const u32* digits, u32 deg, u64 p) {
    u64 idx = 0;
    for (u32 i = deg; i-- > 0;) idx = idx * p + digits[i];
    return idx;
}

void index_to_digits(u64 idx, u32* digits, u32 deg, u64 p) {
    for (u32 i = 0; i < deg; ++i) {
        digits[i] = static_cast<u32>(idx % p);
        idx /= p;
    }
}

// Multiplicative class data of F_Q: bucket[j] counts x in F_Q with g(x) != 0
// lying in class gamma^(j mod m) of the unit group; n_zero counts roots of g.
struct ClassScan {
    FieldPtr FQ;
    FieldElement gamma;   // canonical generator of the units
    FieldElement omega;   // gamma^((Q-1)/m), order m
    i64 n_zero = 0;
    std::vector<i64> bucket;
};

ClassScan class_scan(const SuperellipticCurve& curve, u32 nu, u64 cap, u32 workers) {
    const FieldPtr& Fq = curve.base_field();
    ClassScan out;
    out.FQ = Fq->extend(nu);
    const FieldPtr& FQ = out.FQ;
    const u64 Q = FQ->order();
    if (Q > cap) throw CapError("extension enumeration exceeds cap");
    const u32 m = curve.m();
    const u64 p = FQ->characteristic();
    const u32 deg = FQ->degree();

    out.gamma = FQ->smallest_generator();
    out.omega = out.gamma.pow((Q - 1) / m);
    out.bucket.assign(m, 0);

    // class table: residue k mod m at the index of gamma^k
    std::vector<uint8_t> table(Q);
    parallel_segments(Q - 1, workers, [&](u32, u64 lo, u64 hi) {
        FieldElement w = out.gamma.pow(lo);
        std::vector<u32> wd = w.digits;
        std::vector<u32> tmp(deg);
        u32 kmod = static_cast<u32>(lo % m);
        for (u64 k = lo; k < hi; ++k) {
            table[digits_to_index(wd.data(), deg, p)] = static_cast<uint8_t>(kmod);
            FQ->mul_raw(wd.data(), out.gamma.digits.data(), tmp.data());
            wd.swap(tmp);
            if (++kmod == m) kmod = 0;
        }
    });

    // tally classes of g over all of F_Q
    const FqPoly gQ = curve.g().mapped(FQ);
    std::vector<std::vector<u32>> coeffs;
    for (u32 i = 0; i <= static_cast<u32>(gQ.degree()); ++i) coeffs.push_back(gQ.coeff(i).digits);
    const u32 sdeg = static_cast<u32>(gQ.degree());

    std::vector<std::vector<i64>> wbuckets(workers ? workers : 1, std::vector<i64>(m, 0));
    std::vector<i64> wzero(workers ? workers : 1, 0);
    parallel_segments(Q, workers, [&](u32 seg, u64 lo, u64 hi) {
        std::vector<u32> v(deg), acc(deg), tmp(deg);
        index_to_digits(lo, v.data(), deg, p);
        auto& buckets = wbuckets[seg];
        i64 zero = 0;
        for (u64 n = lo; n < hi; ++n) {
            // Horner
            std::memcpy(acc.data(), coeffs[sdeg].data(), deg * sizeof(u32));
            for (u32 i = sdeg; i-- > 0;) {
                FQ->mul_raw(acc.data(), v.data(), tmp.data());
                FQ->add_raw(tmp.data(), coeffs[i].data(), acc.data());
            }
            if (FQ->is_zero_raw(acc.data())) {
                ++zero;
            } else {
                ++buckets[table[digits_to_index(acc.data(), deg, p)]];
            }
            // odometer step
            for (u32 i = 0; i < deg; ++i) {
                if (++v[i] < p) break;
                v[i] = 0;
            }
        }
        wzero[seg] = zero;
    });
    for (const auto& b : wbuckets)
        for (u32 j = 0; j < m; ++j) out.bucket[j] += b[j];
    for (i64 z : wzero) out.n_zero += z;
    return out;
}

// Affine fixed points of (1,eps) o F^nu from class data: a nonzero value
// w = g(x) carries m points iff w^((Q-1)/m) = eps^{-1}, a zero value one.
i64 affine_from_scan(const ClassScan& scan, const SuperellipticCurve& curve, const FieldElement& eps) {
    const u32 m = curve.m();
    const FieldElement target = scan.FQ->embed(eps.inverse());
    FieldElement w = scan.FQ->one();
    for (u32 r = 0; r < m; ++r) {
        if (w == target) return scan.n_zero + static_cast<i64>(m) * scan.bucket[r];
        w = w * scan.omega;
    }
    throw MathError("unit is not an m-th root of unity");
}

// Minimal L >= 1 with 1 + Q + ... + Q^(L-1) divisible by d, so that the
// twisted kernel in F_{Q^L} has full F_Q-dimension.
u32 twist_split_degree(u64 Q, u64 d) {
    if (d == 1) return 1;
    u64 acc = 0, qmod = Q % d, pw = 1;
    for (u32 L = 1; L <= 4096; ++L) {
        acc = (acc + pw) % d;
        if (acc == 0) return L;
        pw = (pw * qmod) % d;
    }
    throw MathError("twist splitting degree out of range");
}

struct KernelBox {
    FieldPtr B;                      // ambient extension containing the box
    std::vector<std::vector<u32>> basis; // F_p-basis of the kernel, in B digits
};

// Solutions of a z^Q = z inside B (the kernel of the twisted Frobenius),
// where a is a unit of the base field embedded in B.
KernelBox twisted_kernel(const FieldPtr& B, const FieldPtr& FQ, const FieldElement& a) {
    const u64 p = B->characteristic();
    const u32 D = B->degree();
    FpMatrix M = B->scalar_matrix(B->embed(a)).mul(B->frobenius_matrix(FQ->degree()));
    for (u32 i = 0; i < D; ++i) M.at(i, i) = (M.at(i, i) + static_cast<u32>(p) - 1) % p;
    KernelBox box{B, fp_kernel(M)};
    if (box.basis.size() != FQ->degree()) throw MathError("twisted kernel has unexpected dimension");
    return box;
}

FieldElement box_element(const KernelBox& box, u64 index) {
    const u64 p = box.B->characteristic();
    FieldElement x = box.B->zero();
    for (const auto& b : box.basis) {
        const u64 digit = index % p;
        index /= p;
        if (!digit)
            continue;
        for (u32 j = 0; j < box.B->degree(); ++j)
            x.digits[j] = static_cast<u32>((x.digits[j] + digit * b[j]) % p);
    }
    return x;
}

// Ambient field and box data for tau o F^nu with general c: x and y conditions
// split over F_{Q^L} with L = lcm of the two twist degrees (and the infinity
// twist when the model has split infinity).
struct BoxSetup {
    FieldPtr FQ;
    FieldPtr B;
    u64 Q = 0;
    KernelBox xbox, ybox;
};

BoxSetup box_setup(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap,
                   bool with_infinity_box, KernelBox* inf_box) {
    const FieldPtr& Fq = curve.base_field();
    BoxSetup S;
    S.FQ = Fq->extend(nu);
    S.Q = S.FQ->order();
    if (S.Q > cap) throw CapError("extension enumeration exceeds cap");

    u32 L = std::lcm(twist_split_degree(S.Q, tau.c.mult_order()),
                     twist_split_degree(S.Q, tau.eps.mult_order()));
    FieldElement winf = Fq->one();
    if (with_infinity_box && curve.split_infinity()) {
        // infinity branches move by eps * c^(-s/m) composed with Frobenius
        winf = tau.eps * tau.c.inverse().pow(curve.s() / curve.m());
        L = std::lcm(L, twist_split_degree(S.Q, winf.mult_order()));
    }
    S.B = S.FQ->extend(L);
    S.xbox = twisted_kernel(S.B, S.FQ, tau.c);
    S.ybox = twisted_kernel(S.B, S.FQ, tau.eps);
    if (inf_box && with_infinity_box && curve.split_infinity())
        *inf_box = twisted_kernel(S.B, S.FQ, winf);
    return S;
}

// Affine fixed points for c != 1 (works for any tau): walk the x-kernel, and
// for each value w = g(x) count the y-kernel solutions of y^m = w through one
// subgroup-membership test in F_Q.
i64 affine_via_boxes(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap) {
    BoxSetup S = box_setup(curve, tau, nu, cap, false, nullptr);
    const FqPoly gB = curve.g().mapped(S.B);
    const u32 m = curve.m();

    FieldElement y0 = S.B->zero();
    y0.digits = S.ybox.basis[0];
    const FieldElement ym_inv = y0.pow(m).inverse();
    const u64 E = (S.Q - 1) / m;

    i64 count = 0;
    for (u64 n = 0; n < S.Q; ++n) {
        const FieldElement x = box_element(S.xbox, n);
        const FieldElement w = gB.eval(x);
        if (w.is_zero()) {
            ++count;
        } else if ((w * ym_inv).pow(E).is_one()) {
            count += m;
        }
    }
    return count;
}

} // namespace

// --- SuperellipticCurve ---

SuperellipticCurve SuperellipticCurve::make(FieldPtr Fq, u32 m, FqPoly g) {
    SuperellipticCurve C;
    if (m < 1 || m > 250) throw ConfigError("curve exponent m out of range");
    if ((Fq->order() - 1) % m != 0) throw ConfigError("m must divide q-1");
    g.normalize();
    if (g.degree() < 1) throw ConfigError("g must be nonconstant");
    if (!is_squarefree(g)) throw ConfigError("g must be squarefree: gcd(g, g') != 1");
    C.m_ = m;
    C.s_ = static_cast<u32>(g.degree());
    C.delta_ = gcd_u32(m, C.s_);
    if (C.delta_ != 1 && C.delta_ != m)
        throw ConfigError("gcd(m, deg g) must be 1 or m");
    const u32 num = (C.s_ - 1) * (m - 1) + 1 - C.delta_;
    if (num % 2 != 0) throw MathError("genus formula is not integral");
    C.genus_ = num / 2;
    C.Fq_ = std::move(Fq);
    C.g_ = std::move(g);
    return C;
}

bool SuperellipticCurve::is_automorphism(const DiagAut& a) const {
    if (a.c.is_zero() || a.eps.is_zero()) return false;
    const FieldElement em = a.eps.pow(m_);
    FieldElement cpow = Fq_->one();
    for (u32 i = 0; i <= s_; ++i) {
        if (!(g_.coeff(i) * cpow == em * g_.coeff(i))) return false;
        cpow = cpow * a.c;
    }
    return true;
}

// --- AutSubgroup ---

AutGroupPtr AutSubgroup::closure(const SuperellipticCurve& curve, std::vector<DiagAut> gens) {
    const FieldPtr& Fq = curve.base_field();
    for (const auto& a : gens) {
        if (a.c.field.get() != Fq.get() || a.eps.field.get() != Fq.get())
            throw ConfigError("automorphism entries must lie in the curve base field");
        if (!curve.is_automorphism(a))
            throw ConfigError("generator is not an automorphism of the curve: " + a.to_string());
    }
    const DiagAut id{Fq->one(), Fq->one()};
    std::vector<DiagAut> elems{id};
    auto known = [&elems](const DiagAut& a) {
        return std::find(elems.begin(), elems.end(), a) != elems.end();
    };
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < elems.size(); ++i) {
            for (const auto& gen : gens) {
                DiagAut prod = elems[i] * gen;
                if (!known(prod)) {
                    elems.push_back(prod);
                    grew = true;
                    if (elems.size() > 4096) throw ConfigError("automorphism group too large");
                }
            }
        }
    }
    std::sort(elems.begin() + 1, elems.end()); // keep identity first
    auto H = std::shared_ptr<AutSubgroup>(new AutSubgroup());
    H->elems_ = std::move(elems);
    return H;
}

u32 AutSubgroup::index_of(const DiagAut& a) const {
    for (u32 i = 0; i < size(); ++i)
        if (elems_[i] == a) return i;
    throw MathError("element not in group");
}

u32 AutSubgroup::inverse_index(u32 i) const { return index_of(elems_[i].inverse()); }

u32 AutSubgroup::product_index(u32 i, u32 j) const { return index_of(elems_[i] * elems_[j]); }

u32 AutSubgroup::element_order(u32 i) const {
    u32 ord = 1;
    DiagAut a = elems_[i];
    while (!a.is_identity()) {
        a = a * elems_[i];
        ++ord;
        if (ord > 4096) throw MathError("element order out of range");
    }
    return ord;
}

u32 AutSubgroup::exponent() const {
    u32 e = 1;
    for (u32 i = 0; i < size(); ++i) e = std::lcm(e, element_order(i));
    return e;
}

bool AutSubgroup::contains(const AutSubgroup& M) const {
    for (const auto& a : M.elements()) {
        bool found = false;
        for (const auto& b : elems_)
            if (a == b) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

// --- point counts ---

i64 infinity_fixed(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu) {
    if (curve.delta() == 1) return 1; // one totally ramified point, always fixed
    // m branches; Frobenius rotates them by kappa = lc^((q-1)/m), the twist
    // moves them by eps * c^(-s/m); all m are fixed or none.
    const u32 m = curve.m();
    const FieldElement kappa = curve.g().leading().pow((curve.base_field()->order() - 1) / m);
    const FieldElement move = tau.eps * tau.c.inverse().pow(curve.s() / m) * kappa.pow(nu);
    return move.is_one() ? static_cast<i64>(m) : 0;
}

i64 lambda_fixed(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap, u32 workers) {
    if (nu < 1) throw ConfigError("Frobenius power must be positive");
    if (!curve.is_automorphism(tau)) throw ConfigError("map is not an automorphism of the curve");
    if (tau.c.is_one()) {
        if (curve.m() == 1) {
            // rational model: one point per x, eps = 1 forced
            const FieldPtr FQ = curve.base_field()->extend(nu);
            if (FQ->order() > cap) throw CapError("extension enumeration exceeds cap");
            return static_cast<i64>(FQ->order()) + infinity_fixed(curve, tau, nu);
        }
        ClassScan scan = class_scan(curve, nu, cap, workers);
        return affine_from_scan(scan, curve, tau.eps) + infinity_fixed(curve, tau, nu);
    }
    return affine_via_boxes(curve, tau, nu, cap) + infinity_fixed(curve, tau, nu);
}

i64 count_points(const SuperellipticCurve& curve, u32 nu, u64 cap, u32 workers) {
    const DiagAut id{curve.base_field()->one(), curve.base_field()->one()};
    return lambda_fixed(curve, id, nu, cap, workers);
}

i64 brute_lambda(const SuperellipticCurve& curve, const DiagAut& tau, u32 nu, u64 cap) {
    if (nu < 1) throw ConfigError("Frobenius power must be positive");
    if (!curve.is_automorphism(tau)) throw ConfigError("map is not an automorphism of the curve");
    const u32 m = curve.m();
    KernelBox inf_box;
    BoxSetup S = box_setup(curve, tau, nu, cap, true, &inf_box);
    const u64 walks = 2 + (curve.split_infinity() ? 1 : 0);
    if (walks * S.Q > cap) throw CapError("box enumeration exceeds cap");
    const FqPoly gB = curve.g().mapped(S.B);

    // all m-th powers over the y-box, counted with multiplicity
    std::map<std::vector<u32>, i64> ypowers;
    for (u64 n = 0; n < S.Q; ++n) {
        const FieldElement y = box_element(S.ybox, n);
        ++ypowers[y.pow(m).digits];
    }
    i64 count = 0;
    for (u64 n = 0; n < S.Q; ++n) {
        const FieldElement x = box_element(S.xbox, n);
        auto it = ypowers.find(gB.eval(x).digits);
        if (it != ypowers.end()) count += it->second;
    }

    // split infinity: branches lambda with lambda^m = lc(g), moved by
    // eps c^(-s/m) lambda^Q; count the fixed ones by direct kernel walk
    if (curve.split_infinity()) {
        const FieldElement lc = S.B->embed(curve.g().leading());
        for (u64 n = 0; n < S.Q; ++n) {
            const FieldElement lam = box_element(inf_box, n);
            if (lam.pow(m) == lc) ++count;
        }
    } else {
        count += 1;
    }
    return count;
}

// --- LambdaTable ---

LambdaTable LambdaTable::compute(const SuperellipticCurve& curve, AutGroupPtr H, u32 max_nu,
                                 u64 cap, u32 workers) {
    LambdaTable T;
    T.curve_ = curve;
    T.H_ = H;
    T.lam_.assign(max_nu, std::vector<i64>(H->size(), 0));
    for (u32 nu = 1; nu <= max_nu; ++nu) {
        auto& row = T.lam_[nu - 1];
        bool need_scan = false;
        for (u32 i = 0; i < H->size(); ++i)
            if (H->at(i).c.is_one()) need_scan = true;
        if (need_scan && curve.m() > 1) {
            ClassScan scan = class_scan(curve, nu, cap, workers);
            for (u32 i = 0; i < H->size(); ++i) {
                const DiagAut& tau = H->at(i);
                if (!tau.c.is_one()) continue;
                row[i] = affine_from_scan(scan, curve, tau.eps) + infinity_fixed(curve, tau, nu);
            }
        } else if (need_scan) { // m == 1, identity only
            const FieldPtr FQ = curve.base_field()->extend(nu);
            if (FQ->order() > cap) throw CapError("extension enumeration exceeds cap");
            for (u32 i = 0; i < H->size(); ++i)
                if (H->at(i).c.is_one())
                    row[i] = static_cast<i64>(FQ->order()) + infinity_fixed(curve, H->at(i), nu);
        }
        for (u32 i = 0; i < H->size(); ++i) {
            const DiagAut& tau = H->at(i);
            if (tau.c.is_one()) continue;
            row[i] = affine_via_boxes(curve, tau, nu, cap) + infinity_fixed(curve, tau, nu);
        }
    }
    return T;
}

// --- quotients ---

QuotientModel quotient_curve(const SuperellipticCurve& curve, const AutSubgroup& M) {
    const FieldPtr& Fq = curve.base_field();
    for (const auto& a : M.elements())
        if (!curve.is_automorphism(a))
            throw ConfigError("quotient group element is not an automorphism");

    bool all_c_one = true;
    for (const auto& a : M.elements())
        if (!a.c.is_one()) all_c_one = false;

    if (all_c_one) {
        const u32 d = M.size();
        if (curve.m() % d != 0) throw MathError("y-twist subgroup order must divide m");
        QuotientModel out{SuperellipticCurve::make(Fq, curve.m() / d, curve.g()), 1, 0, d};
        return out;
    }

    // Klein four family on y^2 = f(x^2): quotients by the x-flip subgroups
    const FieldElement minus1 = -Fq->one();
    bool klein = curve.m() == 2;
    for (const auto& a : M.elements())
        if (!((a.c.is_one() || a.c == minus1) && (a.eps.is_one() || a.eps == minus1)))
            klein = false;
    for (u32 i = 1; i <= curve.s() && klein; i += 2)
        if (!curve.g().coeff(i).is_zero()) klein = false;
    if (!klein) throw ConfigError("quotient shape not supported");

    std::vector<FieldElement> fco;
    for (u32 i = 0; i <= curve.s(); i += 2) fco.push_back(curve.g().coeff(i));
    const FqPoly f = FqPoly::from_coeffs(Fq, fco);

    if (M.size() == 4) {
        return QuotientModel{SuperellipticCurve::make(Fq, 1, f), 2, 0, 2};
    }
    if (M.size() != 2) throw ConfigError("quotient shape not supported");
    const DiagAut& sigma = M.at(1);
    if (sigma.eps.is_one()) {
        // (x,y) -> (-x,y): invariants u = x^2, v = y
        return QuotientModel{SuperellipticCurve::make(Fq, 2, f), 2, 0, 1};
    }
    // (x,y) -> (-x,-y): invariants u = x^2, v = x y with v^2 = u f(u)
    const FqPoly uf = FqPoly::x(Fq) * f;
    return QuotientModel{SuperellipticCurve::make(Fq, 2, uf), 2, 1, 1};
}

} // namespace superell
