#include "superell/fields.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <mutex>
#include <sstream>

namespace superell {

namespace {

constexpr u64 kMaxChar = u64(1) << 26;  // keeps d*(p-1)^2 inside u64 accumulators
constexpr u32 kMaxDigits = 62;          // p^d < 2^62 forces d <= 61 already

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 inv_mod_p(u64 a, u64 p) { return powmod_u64(a % p, p - 2, p); }

// --- dense F_p[x] helpers for modulus search and inverses (not hot) ---

using Poly = std::vector<u64>; // coefficient i = x^i, no trailing-zero guarantee

void ptrim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod_u64(a[i], b[j], p)) % p;
    }
    ptrim(r);
    return r;
}

// a mod f, f monic
Poly pmod(Poly a, const Poly& f, u64 p) {
    ptrim(a);
    const size_t d = f.size() - 1;
    while (a.size() > d) {
        const u64 c = a.back();
        const size_t shift = a.size() - 1 - d;
        if (c) {
            for (size_t j = 0; j < d; ++j) {
                u64 sub = mulmod_u64(c, f[j], p);
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
        }
        a.pop_back();
        ptrim(a);
        if (a.size() <= d && (a.empty() || a.back() != 0)) {
            if (a.size() <= d) break;
        }
    }
    ptrim(a);
    return a;
}

Poly ppowmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    base = pmod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = pmod(pmul(r, base, p), f, p);
        base = pmod(pmul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

Poly pgcd(Poly a, Poly b, u64 p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // reduce a mod b after making b monic
        u64 lcinv = inv_mod_p(b.back(), p);
        Poly bm(b.size());
        for (size_t i = 0; i < b.size(); ++i) bm[i] = mulmod_u64(b[i], lcinv, p);
        Poly r = pmod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^e) mod f via e successive p-power maps
Poly frob_power(const Poly& f, u64 p, u32 e) {
    Poly t{0, 1}; // x
    for (u32 i = 0; i < e; ++i) t = ppowmod(std::move(t), p, f, p);
    return t;
}

// Rabin test: monic f of degree d irreducible over F_p iff x^(p^d) == x mod f
// and gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
bool is_irreducible(const Poly& f, u64 p) {
    const u32 d = static_cast<u32>(f.size() - 1);
    if (d == 1) return true;
    Poly xpd = frob_power(f, p, d);
    Poly x{0, 1};
    if (pmod(xpd, f, p) != pmod(x, f, p)) return false;
    for (u64 r : distinct_prime_factors(d)) {
        Poly t = frob_power(f, p, static_cast<u32>(d / r));
        // t - x
        if (t.size() < 2) t.resize(2, 0);
        t[1] = (t[1] + p - 1) % p;
        ptrim(t);
        Poly g = pgcd(f, t, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit with the standard witness set
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n && q < (u64(1) << 21); ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) {
        if (!is_prime_u64(n))
            throw MathError("factorization out of scope: composite cofactor " + std::to_string(n));
        out.push_back(n);
    }
    return out;
}

// --- FieldElement ---

bool FieldElement::is_zero() const {
    return std::all_of(digits.begin(), digits.end(), [](u32 d) { return d == 0; });
}

bool FieldElement::is_one() const {
    if (digits.empty() || digits[0] != 1) return false;
    return std::all_of(digits.begin() + 1, digits.end(), [](u32 d) { return d == 0; });
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field.get() == o.field.get() && digits == o.digits;
}

bool FieldElement::operator<(const FieldElement& o) const {
    return std::lexicographical_compare(digits.begin(), digits.end(), o.digits.begin(), o.digits.end());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    field->check_element(o, "add");
    FieldElement r{field, std::vector<u32>(digits.size())};
    field->add_raw(digits.data(), o.digits.data(), r.digits.data());
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    field->check_element(o, "sub");
    FieldElement r{field, std::vector<u32>(digits.size())};
    field->sub_raw(digits.data(), o.digits.data(), r.digits.data());
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r{field, digits};
    const u64 p = field->characteristic();
    for (auto& d : r.digits) d = d ? static_cast<u32>(p - d) : 0;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    field->check_element(o, "mul");
    FieldElement r{field, std::vector<u32>(digits.size())};
    field->mul_raw(digits.data(), o.digits.data(), r.digits.data());
    return r;
}

FieldElement FieldElement::pow(u64 e) const {
    FieldElement r = field->one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    const u64 p = field->characteristic();
    // extended Euclid in F_p[x] against the modulus
    Poly r0(field->modulus().begin(), field->modulus().end());
    Poly r1(digits.begin(), digits.end());
    ptrim(r1);
    Poly s0{}, s1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Poly q;
        Poly rem = r0;
        ptrim(rem);
        const u64 lcinv = inv_mod_p(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            const size_t shift = rem.size() - r1.size();
            const u64 c = mulmod_u64(rem.back(), lcinv, p);
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = (q[shift] + c) % p;
            for (size_t j = 0; j < r1.size(); ++j) {
                u64 sub = mulmod_u64(c, r1[j], p);
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
            ptrim(rem);
        }
        Poly s2 = s0; // s2 = s0 - q*s1
        Poly qs = pmul(q, s1, p);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant gcd
    const u64 c = inv_mod_p(r0.empty() ? 1 : r0[0], p);
    FieldElement out = field->zero();
    for (size_t i = 0; i < s0.size() && i < out.digits.size(); ++i)
        out.digits[i] = static_cast<u32>(mulmod_u64(s0[i], c, p));
    return out;
}

u64 FieldElement::mult_order() const {
    if (is_zero()) throw MathError("multiplicative order of zero");
    u64 n = field->order() - 1;
    for (u64 q : distinct_prime_factors(n)) {
        while (n % q == 0 && pow(n / q).is_one()) n /= q;
    }
    return n;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) os << ',';
        os << digits[i];
    }
    os << ']';
    return os.str();
}

// --- FpMatrix ---

FpMatrix FpMatrix::identity(u64 p, u32 n) {
    FpMatrix m{p, n, n, std::vector<u32>(static_cast<size_t>(n) * n, 0)};
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
    if (cols != o.rows || p != o.p) throw MathError("matrix shape mismatch");
    FpMatrix r{p, rows, o.cols, std::vector<u32>(static_cast<size_t>(rows) * o.cols, 0)};
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < o.cols; ++j) {
            u64 acc = 0;
            for (u32 k = 0; k < cols; ++k) acc += static_cast<u64>(at(i, k)) * o.at(k, j);
            r.at(i, j) = static_cast<u32>(acc % p);
        }
    return r;
}

void FpMatrix::apply(const u32* in, u32* out) const {
    for (u32 i = 0; i < rows; ++i) {
        u64 acc = 0;
        const u32* row = a.data() + static_cast<size_t>(i) * cols;
        for (u32 k = 0; k < cols; ++k) acc += static_cast<u64>(row[k]) * in[k];
        out[i] = static_cast<u32>(acc % p);
    }
}

std::vector<std::vector<u32>> fp_kernel(const FpMatrix& m) {
    const u64 p = m.p;
    std::vector<std::vector<u64>> rows(m.rows, std::vector<u64>(m.cols));
    for (u32 i = 0; i < m.rows; ++i)
        for (u32 j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j);
    std::vector<i64> pivot_of_col(m.cols, -1);
    u32 rank = 0;
    for (u32 col = 0; col < m.cols && rank < m.rows; ++col) {
        u32 piv = rank;
        while (piv < m.rows && rows[piv][col] == 0) ++piv;
        if (piv == m.rows) continue;
        std::swap(rows[rank], rows[piv]);
        const u64 inv = inv_mod_p(rows[rank][col], p);
        for (u32 j = 0; j < m.cols; ++j) rows[rank][j] = mulmod_u64(rows[rank][j], inv, p);
        for (u32 i = 0; i < m.rows; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const u64 c = rows[i][col];
            for (u32 j = 0; j < m.cols; ++j) {
                u64 sub = mulmod_u64(c, rows[rank][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::vector<std::vector<u32>> basis;
    for (u32 col = 0; col < m.cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<u32> v(m.cols, 0);
        v[col] = 1;
        for (u32 c2 = 0; c2 < m.cols; ++c2) {
            if (pivot_of_col[c2] < 0) continue;
            const u64 val = rows[static_cast<size_t>(pivot_of_col[c2])][col];
            v[c2] = static_cast<u32>(val ? p - val : 0);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// --- FiniteField ---

void FiniteField::check_element(const FieldElement& e, const char* op) const {
    if (e.field.get() != this) throw MathError(std::string("field mismatch in ") + op);
}

std::shared_ptr<FiniteField> FiniteField::build_impl(u64 p, u32 d, FieldPtr sub) {
    if (!is_prime_u64(p)) throw ConfigError("characteristic is not prime: " + std::to_string(p));
    if (p >= kMaxChar) throw ConfigError("characteristic exceeds supported range");
    if (d < 1 || d > kMaxDigits) throw ConfigError("extension degree out of range");
    // order must fit u64 with margin: p^d < 2^62
    u64 order = 1;
    for (u32 i = 0; i < d; ++i) {
        if (order > (u64(1) << 62) / p) throw ConfigError("field order exceeds word budget");
        order *= p;
    }

    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = p;
    f->deg_ = d;
    f->order_ = order;
    f->sub_ = std::move(sub);

    // canonical modulus: monic x^d + sum c_i x^i with the smallest coefficient
    // tuple (c_{d-1}, ..., c_1, c_0) that is irreducible
    std::vector<u64> c(d, 0); // c[i] = coefficient of x^(d-1-i), odometer order
    bool found = false;
    while (true) {
        Poly cand(d + 1, 0);
        cand[d] = 1;
        for (u32 i = 0; i < d; ++i) cand[d - 1 - i] = c[i];
        if (is_irreducible(cand, p)) {
            f->mod_.assign(d + 1, 0);
            for (u32 i = 0; i <= d; ++i) f->mod_[i] = static_cast<u32>(cand[i]);
            found = true;
            break;
        }
        // odometer step, last position fastest
        u32 pos = d;
        while (pos > 0) {
            --pos;
            if (++c[pos] < p) break;
            c[pos] = 0;
            if (pos == 0) { pos = UINT32_MAX; break; }
        }
        if (pos == UINT32_MAX) break;
    }
    if (!found) throw MathError("no irreducible modulus found"); // cannot happen
    return f;
}

// One instance per canonical presentation, so element equality (which
// requires a shared field object) holds across independent build() calls.
FieldPtr FiniteField::build(u64 p, u32 d) {
    static std::mutex mu;
    static std::map<std::pair<u64, u32>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, d}];
    if (!slot) slot = build_impl(p, d, nullptr);
    return slot;
}

// One shared instance per (field, k), so twin extensions compare equal.
FieldPtr FiniteField::extend(u32 k) const {
    if (k == 0) throw ConfigError("extension degree must be positive");
    if (k == 1) return shared_from_this();
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = ext_cache_[k];
    if (!slot) slot = extend_impl(k);
    return slot;
}

FieldPtr FiniteField::extend_impl(u32 k) const {
    auto self = shared_from_this();
    auto f = build_impl(p_, deg_ * k, self);

    // Embed the subfield generator: its image is a root of the subfield
    // modulus inside the kernel of Frob^deg - id, smallest in canonical order.
    if (deg_ == 1) {
        f->sub_gen_image_.assign(f->deg_, 0); // subfield gen is 0 (x mod x)
        return f;
    }
    const u32 D = f->deg_;
    FpMatrix frob = f->frobenius_matrix(deg_);
    for (u32 i = 0; i < D; ++i) frob.at(i, i) = (frob.at(i, i) + static_cast<u32>(p_) - 1) % p_;
    auto basis = fp_kernel(frob);
    if (basis.size() != deg_) throw MathError("subfield dimension mismatch");
    u64 combos = 1;
    for (u32 i = 0; i < deg_; ++i) {
        combos *= p_;
        if (combos > (u64(1) << 20)) throw CapError("subfield search space too large");
    }
    std::optional<FieldElement> best;
    std::vector<u64> idx(deg_, 0);
    for (u64 n = 0; n < combos; ++n) {
        FieldElement cand = f->zero();
        for (u32 b = 0; b < deg_; ++b) {
            if (!idx[b]) continue;
            for (u32 j = 0; j < D; ++j)
                cand.digits[j] = static_cast<u32>((cand.digits[j] + idx[b] * basis[b][j]) % p_);
        }
        // evaluate the subfield modulus at cand (coefficients are constants)
        FieldElement acc = f->zero();
        for (u32 i = deg_ + 1; i-- > 0;) {
            acc = acc * cand;
            acc = acc + f->from_int(static_cast<i64>(mod_[i]));
        }
        if (acc.is_zero()) {
            if (!best || cand < *best) best = cand;
        }
        u32 pos = deg_;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < p_) break;
            idx[pos] = 0;
        }
    }
    if (!best) throw MathError("subfield root not found");
    f->sub_gen_image_ = best->digits;
    return f;
}

FieldElement FiniteField::zero() const {
    return FieldElement{shared_from_this(), std::vector<u32>(deg_, 0)};
}

FieldElement FiniteField::one() const {
    FieldElement e = zero();
    e.digits[0] = 1;
    return e;
}

FieldElement FiniteField::from_int(i64 v) const {
    i64 m = static_cast<i64>(p_);
    i64 r = ((v % m) + m) % m;
    FieldElement e = zero();
    e.digits[0] = static_cast<u32>(r);
    return e;
}

FieldElement FiniteField::from_digits(std::vector<u32> digits) const {
    if (digits.size() != deg_) throw ConfigError("digit vector length mismatch");
    for (u32 d : digits)
        if (d >= p_) throw ConfigError("digit out of range");
    return FieldElement{shared_from_this(), std::move(digits)};
}

FieldElement FiniteField::gen() const {
    FieldElement e = zero();
    if (deg_ > 1) e.digits[1] = 1;
    return e; // deg 1: x mod x = 0
}

bool FiniteField::on_chain(const FiniteField* f) const {
    if (f == this) return true;
    if (f->deg_ == 1 && f->p_ == p_) return true;
    if (sub_) return sub_->on_chain(f);
    return false;
}

FieldElement FiniteField::embed(const FieldElement& e) const {
    const FiniteField* src = e.field.get();
    if (src == this) return e;
    if (src->deg_ == 1) {
        if (src->p_ != p_) throw MathError("embedding across characteristics");
        return from_int(static_cast<i64>(e.digits[0]));
    }
    if (!sub_) throw MathError("element not on subfield chain");
    FieldElement inner = sub_->embed(e); // may be identity
    // Horner at the stored generator image
    FieldElement g{shared_from_this(), sub_gen_image_};
    FieldElement acc = zero();
    for (u32 i = sub_->deg_; i-- > 0;) {
        acc = acc * g;
        acc = acc + from_int(static_cast<i64>(inner.digits[i]));
    }
    return acc;
}

FieldElement FiniteField::frobenius(const FieldElement& e, u32 k) const {
    check_element(e, "frobenius");
    k %= deg_;
    if (k == 0) return e;
    u64 exp = 1;
    for (u32 i = 0; i < k; ++i) exp *= p_;
    return e.pow(exp);
}

FieldElement FiniteField::pth_root(const FieldElement& e) const {
    return frobenius(e, deg_ - 1); // x -> x^(p^(deg-1)) inverts x -> x^p
}

const FpMatrix& FiniteField::frobenius_matrix(u32 k) const {
    k %= deg_;
    auto it = frob_cache_.find(k);
    if (it != frob_cache_.end()) return it->second;
    FpMatrix m{p_, deg_, deg_, std::vector<u32>(static_cast<size_t>(deg_) * deg_, 0)};
    for (u32 j = 0; j < deg_; ++j) {
        FieldElement col = zero();
        col.digits[j] = 1;
        col = frobenius(col, k);
        for (u32 i = 0; i < deg_; ++i) m.at(i, j) = col.digits[i];
    }
    return frob_cache_.emplace(k, std::move(m)).first->second;
}

FpMatrix FiniteField::scalar_matrix(const FieldElement& s) const {
    check_element(s, "scalar_matrix");
    FpMatrix m{p_, deg_, deg_, std::vector<u32>(static_cast<size_t>(deg_) * deg_, 0)};
    for (u32 j = 0; j < deg_; ++j) {
        FieldElement col = zero();
        col.digits[j] = 1;
        col = col * s;
        for (u32 i = 0; i < deg_; ++i) m.at(i, j) = col.digits[i];
    }
    return m;
}

FieldElement FiniteField::smallest_generator() const {
    const u64 n = order_ - 1;
    if (n == 0) return one(); // F_2: unit group trivial
    auto primes = distinct_prime_factors(n);
    std::vector<u32> digits(deg_, 0);
    while (true) {
        // odometer ascent in canonical (lexicographic) order
        u32 pos = deg_;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < p_) break;
            digits[pos] = 0;
            if (pos == 0) throw MathError("no generator found"); // cannot happen
        }
        FieldElement cand{shared_from_this(), digits};
        if (cand.is_zero()) continue;
        bool ok = true;
        for (u64 r : primes) {
            if (cand.pow(n / r).is_one()) { ok = false; break; }
        }
        if (ok) return cand;
    }
}

FieldElement FiniteField::root_of_unity(u64 m) const {
    if (m == 0) throw ConfigError("root order must be positive");
    if ((order_ - 1) % m != 0)
        throw MathError("field has no primitive root of order " + std::to_string(m));
    if (m == 1) return one();
    return smallest_generator().pow((order_ - 1) / m);
}

std::vector<FieldElement> FiniteField::all_elements(u64 cap) const {
    if (order_ > cap) throw CapError("field enumeration exceeds cap");
    std::vector<FieldElement> out;
    out.reserve(order_);
    std::vector<u32> digits(deg_, 0);
    for (u64 n = 0;; ++n) {
        out.push_back(FieldElement{shared_from_this(), digits});
        u32 pos = deg_;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < p_) { done = false; break; }
            digits[pos] = 0;
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

void FiniteField::add_raw(const u32* a, const u32* b, u32* out) const {
    const u32 p = static_cast<u32>(p_);
    for (u32 i = 0; i < deg_; ++i) {
        u32 s = a[i] + b[i];
        out[i] = s >= p ? s - p : s;
    }
}

void FiniteField::sub_raw(const u32* a, const u32* b, u32* out) const {
    const u32 p = static_cast<u32>(p_);
    for (u32 i = 0; i < deg_; ++i) {
        u32 s = a[i] + p - b[i];
        out[i] = s >= p ? s - p : s;
    }
}

bool FiniteField::is_zero_raw(const u32* a) const {
    for (u32 i = 0; i < deg_; ++i)
        if (a[i]) return false;
    return true;
}

void FiniteField::mul_raw(const u32* a, const u32* b, u32* out) const {
    const u64 p = p_;
    const u32 d = deg_;
    u64 acc[2 * kMaxDigits];
    std::memset(acc, 0, sizeof(u64) * (2 * d));
    for (u32 i = 0; i < d; ++i) {
        const u64 ai = a[i];
        if (!ai) continue;
        u64* row = acc + i;
        for (u32 j = 0; j < d; ++j) row[j] += ai * b[j];
    }
    // fold degrees >= d back down; entries stay below 2^63 for p < 2^26, d <= 61
    for (u32 i = 2 * d - 1; i >= d && i < 2 * d; --i) {
        const u64 c = acc[i] % p;
        if (c) {
            const u32 base = i - d;
            for (u32 j = 0; j < d; ++j) acc[base + j] += c * (p - mod_[j]);
        }
        acc[i] = 0;
        if (i == d) break;
    }
    for (u32 j = 0; j < d; ++j) out[j] = static_cast<u32>(acc[j] % p);
}

void FiniteField::sqr_raw(const u32* a, u32* out) const {
    const u64 p = p_;
    const u32 d = deg_;
    u64 acc[2 * kMaxDigits];
    std::memset(acc, 0, sizeof(u64) * (2 * d));
    for (u32 i = 0; i < d; ++i) {
        const u64 ai = a[i];
        if (!ai) continue;
        acc[2 * i] += ai * ai;
        u64* row = acc + i;
        for (u32 j = i + 1; j < d; ++j) row[j] += 2 * ai * a[j];
    }
    for (u32 i = 2 * d - 1; i >= d && i < 2 * d; --i) {
        const u64 c = acc[i] % p;
        if (c) {
            const u32 base = i - d;
            for (u32 j = 0; j < d; ++j) acc[base + j] += c * (p - mod_[j]);
        }
        acc[i] = 0;
        if (i == d) break;
    }
    for (u32 j = 0; j < d; ++j) out[j] = static_cast<u32>(acc[j] % p);
}

} // namespace superell
