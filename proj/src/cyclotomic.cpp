#include "tate/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace tate {

Complex RationalAngle::to_complex() const {
    double th = 2.0 * std::numbers::pi * t_.get_d();
    return {std::cos(th), std::sin(th)};
}

Cyclotomic Cyclotomic::root_of_unity(const RationalAngle& a, const mpq_class& scale) {
    Cyclotomic c;
    if (scale != 0) c.terms_[a] = scale;
    return c;
}

void Cyclotomic::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r = *this;
    r += o;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    for (auto& [a, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& [a, c] : r.terms_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    Cyclotomic r;
    for (auto& [a1, c1] : terms_)
        for (auto& [a2, c2] : o.terms_) r.terms_[a1 + a2] += c1 * c2;
    r.prune();
    return r;
}

Cyclotomic Cyclotomic::scaled(const mpq_class& c) const {
    Cyclotomic r;
    if (c == 0) return r;
    for (auto& [a, k] : terms_) r.terms_[a] = k * c;
    return r;
}

Cyclotomic Cyclotomic::rotated(const RationalAngle& a) const {
    Cyclotomic r;
    for (auto& [b, c] : terms_) r.terms_[a + b] = c;
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r;
    for (auto& [a, c] : terms_) r.terms_[-a] += c;
    r.prune();
    return r;
}

Complex Cyclotomic::to_complex() const {
    Complex z = 0;
    for (auto& [a, c] : terms_) z += c.get_d() * a.to_complex();
    return z;
}

namespace {

struct OrderData {
    std::vector<long> q, qpow, qe1, phi, cof_inv;
};

const OrderData& order_data(long ml) {
    static std::map<long, OrderData> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(ml);
    if (it != cache.end()) return it->second;
    OrderData d;
    auto fs = ml == 1 ? std::vector<std::pair<long, int>>{} : factorize(mpz_class(ml));
    size_t dim = fs.size();
    d.q.resize(dim);
    d.qpow.resize(dim);
    d.qe1.resize(dim);
    d.phi.resize(dim);
    d.cof_inv.resize(dim);
    for (size_t i = 0; i < dim; ++i) {
        d.q[i] = fs[i].first;
        d.qpow[i] = 1;
        for (int j = 0; j < fs[i].second; ++j) d.qpow[i] *= fs[i].first;
        d.qe1[i] = d.qpow[i] / fs[i].first;
        d.phi[i] = d.qpow[i] - d.qe1[i];
        // k/m = sum_i k_i/q_i^{e_i} (mod 1), k_i = k * ((m/q_i^{e_i})^{-1} mod q_i^{e_i})
        d.cof_inv[i] = d.qpow[i] == ml
                           ? 1
                           : invmod(mpz_class(ml / d.qpow[i]), mpz_class(d.qpow[i])).get_si();
    }
    return cache.emplace(ml, std::move(d)).first->second;
}

// Coordinates of the formal sum in the power basis of Q(zeta_m), computed
// prime power by prime power via the relation Phi_{q^e}(zeta_{q^e}) = 0,
// i.e. 1 + z^{q^{e-1}} + ... + z^{(q-1) q^{e-1}} = 0.  Exponents are held
// as CRT tuples (k mod q_i^{e_i}); a tuple is reduced when every coordinate
// is below phi(q_i^{e_i}).  Returns false if m exceeds the exact bound.
bool reduce_to_basis(const std::map<RationalAngle, mpq_class>& terms,
                     std::map<std::vector<long>, mpq_class>& basis,
                     std::vector<long>* qpow_out = nullptr) {
    basis.clear();
    if (qpow_out) qpow_out->clear();
    if (terms.empty()) return true;
    mpz_class m = 1;
    for (auto& [a, c] : terms) {
        (void)c;
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), a.order().get_mpz_t());
    }
    if (m > Cyclotomic::kMaxExactOrder) return false;
    long ml = m.get_si();
    const OrderData& od = order_data(ml);
    size_t dim = od.q.size();
    const std::vector<long>&q = od.q, &qpow = od.qpow, &qe1 = od.qe1, &phi = od.phi,
                           &cof_inv = od.cof_inv;
    struct Pending { std::vector<long> key; mpq_class coeff; };
    std::vector<Pending> work;
    for (auto& [a, c] : terms) {
        mpz_class k = a.value().get_num() * (m / a.value().get_den());
        long kl = mod_z(k, m).get_si();
        std::vector<long> key(dim);
        for (size_t i = 0; i < dim; ++i)
            key[i] = static_cast<long>((static_cast<unsigned long long>(kl % qpow[i]) *
                                        static_cast<unsigned long long>(cof_inv[i])) %
                                       static_cast<unsigned long long>(qpow[i]));
        work.push_back({std::move(key), c});
    }
    while (!work.empty()) {
        Pending cur = std::move(work.back());
        work.pop_back();
        size_t bad = dim;
        for (size_t i = 0; i < dim; ++i)
            if (cur.key[i] >= phi[i]) { bad = i; break; }
        if (bad == dim) {
            basis[cur.key] += cur.coeff;
            continue;
        }
        // z^j -> -sum_{t=0}^{q-2} z^{j - (q-1-t) q^{e-1}}; every new exponent
        // lands below phi(q^e) in that coordinate, so one pass suffices.
        for (long t = 0; t <= q[bad] - 2; ++t) {
            Pending nxt{cur.key, -cur.coeff};
            nxt.key[bad] = cur.key[bad] - (q[bad] - 1 - t) * qe1[bad];
            work.push_back(std::move(nxt));
        }
    }
    for (auto it = basis.begin(); it != basis.end();) {
        if (it->second == 0) it = basis.erase(it);
        else ++it;
    }
    if (qpow_out) *qpow_out = qpow;
    return true;
}

}  // namespace

Cyclotomic Cyclotomic::canonical() const {
    std::map<std::vector<long>, mpq_class> basis;
    std::vector<long> qpow;
    if (!reduce_to_basis(terms_, basis, &qpow)) return *this;
    Cyclotomic r;
    for (auto& [key, c] : basis) {
        mpq_class a = 0;
        for (size_t i = 0; i < key.size(); ++i) a += mpq_class(key[i], qpow[i]);
        r.terms_[RationalAngle(a)] += c;
    }
    r.prune();
    return r;
}

bool Cyclotomic::is_zero() const {
    if (terms_.empty()) return true;
    // A single scaled root of unity is never zero.
    if (terms_.size() == 1) return false;
    // Cheap rigorous negative: a vanishing sum evaluates to at most a few
    // ulps of the coefficient mass, far below this threshold.
    double mass = 0.0;
    Complex z = 0.0;
    for (auto& [a, c] : terms_) {
        double cd = c.get_d();
        mass += std::abs(cd);
        z += cd * a.to_complex();
    }
    if (std::abs(z) > mass * 1e-9 + 1e-12) return false;
    std::map<std::vector<long>, mpq_class> basis;
    if (!reduce_to_basis(terms_, basis)) return std::abs(to_complex()) < 1e-12;
    return basis.empty();
}

bool Cyclotomic::is_rational() const {
    std::map<std::vector<long>, mpq_class> basis;
    if (!reduce_to_basis(terms_, basis))
        return std::abs(to_complex().imag()) < 1e-12;  // best effort beyond the bound
    if (basis.empty()) return true;
    if (basis.size() > 1) return false;
    auto& [key, c] = *basis.begin();
    (void)c;
    for (long k : key)
        if (k != 0) return false;
    return true;
}

mpq_class Cyclotomic::rational_value() const {
    std::map<std::vector<long>, mpq_class> basis;
    if (!reduce_to_basis(terms_, basis))
        throw std::domain_error("cyclotomic order exceeds exact bound");
    if (basis.empty()) return mpq_class(0);
    auto& [key, c] = *basis.begin();
    for (long k : key)
        if (k != 0) throw std::domain_error("cyclotomic value is not rational");
    if (basis.size() > 1) throw std::domain_error("cyclotomic value is not rational");
    return c;
}

std::string Cyclotomic::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (!a.is_zero()) os << "*e(" << a.str() << ")";
    }
    return os.str();
}

}  // namespace tate
