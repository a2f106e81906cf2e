#include "superell/cyclo.hpp"

#include <map>
#include <sstream>

namespace superell {

namespace {

using ZPoly = std::vector<mpz_class>; // constant first, trimmed

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// exact division, remainder must vanish
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    while (num.size() >= den.size() && !num.empty()) {
        mpz_class c = num.back() / den.back();
        if (c * den.back() != num.back()) throw MathError("non-exact cyclotomic division");
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        ztrim(num);
        if (num.size() >= den.size() && num.empty()) break;
    }
    if (!num.empty()) throw MathError("non-exact cyclotomic division");
    return q;
}

} // namespace

std::vector<mpz_class> cyclotomic_poly(u32 m) {
    static std::map<u32, ZPoly> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m == 0) throw ConfigError("cyclotomic order must be positive");
    ZPoly f(m + 1, 0); // x^m - 1
    f[0] = -1;
    f[m] = 1;
    for (u32 d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        f = zdiv_exact(std::move(f), cyclotomic_poly(d));
    }
    cache[m] = f;
    return f;
}

std::shared_ptr<const CycloField> CycloField::make(u32 m) {
    auto K = std::shared_ptr<CycloField>(new CycloField());
    K->m_ = m;
    ZPoly phi = cyclotomic_poly(m);
    K->dim_ = static_cast<u32>(phi.size() - 1);
    const u32 dim = K->dim_;
    // zeta^k coordinates for k = 0 .. 2m, by repeated shift-and-reduce
    K->pow_.assign(2 * static_cast<size_t>(m) + 1, std::vector<mpq_class>(dim));
    K->pow_[0][0] = 1;
    for (u32 k = 1; k <= 2 * m; ++k) {
        const auto& prev = K->pow_[k - 1];
        std::vector<mpq_class> cur(dim);
        // multiply by zeta: shift up, fold z^dim = -(phi_0 + ... + phi_{dim-1} z^{dim-1})
        mpq_class top = prev[dim - 1];
        for (u32 i = dim - 1; i >= 1; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top != 0) {
            for (u32 i = 0; i < dim; ++i) cur[i] -= top * mpq_class(phi[i]);
        }
        K->pow_[k] = std::move(cur);
    }
    return K;
}

const std::vector<mpq_class>& CycloField::zeta_power(u64 k) const {
    return pow_[k % m_];
}

CycloNum CycloNum::zero(CycloFieldPtr K) {
    return CycloNum{K, std::vector<mpq_class>(K->dim())};
}

CycloNum CycloNum::one(CycloFieldPtr K) {
    CycloNum c = zero(K);
    c.co[0] = 1;
    return c;
}

CycloNum CycloNum::from_rational(CycloFieldPtr K, const mpq_class& r) {
    CycloNum c = zero(K);
    c.co[0] = r;
    return c;
}

CycloNum CycloNum::from_integer(CycloFieldPtr K, long v) {
    return from_rational(std::move(K), mpq_class(v));
}

CycloNum CycloNum::zeta(CycloFieldPtr K, u64 k) {
    CycloNum c = zero(K);
    c.co = K->zeta_power(k);
    return c;
}

bool CycloNum::is_zero() const {
    for (const auto& a : co)
        if (a != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (size_t i = 1; i < co.size(); ++i)
        if (co[i] != 0) return false;
    return true;
}

bool CycloNum::is_integral() const {
    for (const auto& a : co)
        if (a.get_den() != 1) return false;
    return true;
}

mpq_class CycloNum::rational_value() const {
    if (!is_rational()) throw MathError("value is not rational");
    return co[0];
}

bool CycloNum::operator==(const CycloNum& o) const { return co == o.co; }

CycloNum CycloNum::operator+(const CycloNum& o) const {
    CycloNum r = *this;
    for (size_t i = 0; i < co.size(); ++i) r.co[i] += o.co[i];
    return r;
}

CycloNum CycloNum::operator-(const CycloNum& o) const {
    CycloNum r = *this;
    for (size_t i = 0; i < co.size(); ++i) r.co[i] -= o.co[i];
    return r;
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& a : r.co) a = -a;
    return r;
}

CycloNum CycloNum::operator*(const CycloNum& o) const {
    const u32 dim = K->dim();
    std::vector<mpq_class> conv(2 * static_cast<size_t>(dim) - 1);
    for (u32 i = 0; i < dim; ++i) {
        if (co[i] == 0) continue;
        for (u32 j = 0; j < dim; ++j) {
            if (o.co[j] == 0) continue;
            conv[i + j] += co[i] * o.co[j];
        }
    }
    CycloNum r = zero(K);
    for (u32 k = 0; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        if (k < dim) {
            r.co[k] += conv[k];
        } else {
            const auto& zk = K->zeta_power(k); // k <= 2*dim-2 <= 2m, table holds
            for (u32 i = 0; i < dim; ++i) r.co[i] += conv[k] * zk[i];
        }
    }
    return r;
}

CycloNum CycloNum::scaled(const mpq_class& r) const {
    CycloNum out = *this;
    for (auto& a : out.co) a *= r;
    return out;
}

CycloNum CycloNum::conj() const {
    const u32 m = K->order();
    CycloNum r = zero(K);
    for (u32 i = 0; i < co.size(); ++i) {
        if (co[i] == 0) continue;
        const auto& zk = K->zeta_power((m - (i % m)) % m);
        for (u32 j = 0; j < r.co.size(); ++j) r.co[j] += co[i] * zk[j];
    }
    return r;
}

std::string CycloNum::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < co.size(); ++i) {
        if (co[i] == 0) continue;
        if (!first) os << " + ";
        os << co[i].get_str();
        if (i >= 1) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FieldElement reduce_to_field(const CycloNum& c, const FieldPtr& F, const FieldElement& omega) {
    const u64 p = F->characteristic();
    FieldElement acc = F->zero();
    FieldElement wpow = F->one();
    for (size_t i = 0; i < c.co.size(); ++i) {
        const mpq_class& a = c.co[i];
        if (a != 0) {
            mpz_class den = a.get_den();
            mpz_class dmod = den % p;
            if (dmod == 0) throw MathError("denominator not invertible in residue field");
            mpz_class num = a.get_num() % p;
            if (num < 0) num += p;
            u64 n = num.get_ui();
            u64 d = dmod.get_ui();
            u64 v = 0;
            // n * d^{-1} mod p via Fermat
            {
                u64 dinv = 1, base = d % p, e = p - 2;
                while (e) {
                    if (e & 1) dinv = (static_cast<unsigned __int128>(dinv) * base) % p;
                    base = (static_cast<unsigned __int128>(base) * base) % p;
                    e >>= 1;
                }
                v = (static_cast<unsigned __int128>(n) * dinv) % p;
            }
            acc = acc + wpow * F->from_int(static_cast<i64>(v));
        }
        wpow = wpow * omega;
    }
    return acc;
}

CycloPoly CycloPoly::zero(CycloFieldPtr K) { return CycloPoly{K, {}}; }

CycloPoly CycloPoly::one(CycloFieldPtr K) {
    return CycloPoly{K, {CycloNum::one(K)}};
}

void CycloPoly::normalize() {
    while (!co.empty() && co.back().is_zero()) co.pop_back();
}

CycloNum CycloPoly::coeff(u32 i) const {
    if (i < co.size()) return co[i];
    return CycloNum::zero(K);
}

bool CycloPoly::operator==(const CycloPoly& o) const {
    if (co.size() != o.co.size()) return false;
    for (size_t i = 0; i < co.size(); ++i)
        if (!(co[i] == o.co[i])) return false;
    return true;
}

CycloPoly CycloPoly::operator+(const CycloPoly& o) const {
    CycloPoly r{K, {}};
    r.co.resize(std::max(co.size(), o.co.size()), CycloNum::zero(K));
    for (size_t i = 0; i < co.size(); ++i) r.co[i] = r.co[i] + co[i];
    for (size_t i = 0; i < o.co.size(); ++i) r.co[i] = r.co[i] + o.co[i];
    r.normalize();
    return r;
}

CycloPoly CycloPoly::operator-(const CycloPoly& o) const {
    CycloPoly r{K, {}};
    r.co.resize(std::max(co.size(), o.co.size()), CycloNum::zero(K));
    for (size_t i = 0; i < co.size(); ++i) r.co[i] = r.co[i] + co[i];
    for (size_t i = 0; i < o.co.size(); ++i) r.co[i] = r.co[i] - o.co[i];
    r.normalize();
    return r;
}

CycloPoly CycloPoly::operator*(const CycloPoly& o) const {
    if (co.empty() || o.co.empty()) return zero(K);
    CycloPoly r{K, std::vector<CycloNum>(co.size() + o.co.size() - 1, CycloNum::zero(K))};
    for (size_t i = 0; i < co.size(); ++i) {
        if (co[i].is_zero()) continue;
        for (size_t j = 0; j < o.co.size(); ++j) r.co[i + j] = r.co[i + j] + co[i] * o.co[j];
    }
    r.normalize();
    return r;
}

bool CycloPoly::is_integral() const {
    for (const auto& c : co)
        if (!c.is_integral()) return false;
    return true;
}

CycloPoly CycloPoly::conj() const {
    CycloPoly r = *this;
    for (auto& c : r.co) c = c.conj();
    return r;
}

std::string CycloPoly::to_string() const {
    if (co.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < co.size(); ++i) {
        if (i) os << " + ";
        os << "(" << co[i].to_string() << ")";
        if (i == 1) os << "*t";
        if (i > 1) os << "*t^" << i;
    }
    return os.str();
}

} // namespace superell
