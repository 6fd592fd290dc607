#include "tate/adele.hpp"

#include <cmath>
#include <set>

#include "tate/characters.hpp"

namespace tate {

Adele& Adele::set_component(long p, PadicNumber x) {
    if (x.prime() != p) throw std::invalid_argument("override prime mismatch");
    over_.insert_or_assign(p, std::move(x));
    return *this;
}

PadicNumber Adele::component(long p, int prec) const {
    auto it = over_.find(p);
    if (it != over_.end()) return it->second;
    return PadicNumber::from_rational(global_, p, prec);
}

std::vector<long> Adele::support_primes() const {
    std::set<long> ps;
    if (global_ != 0)
        for (auto& [p, e] : factorize(mpz_class(global_.get_den()))) {
            (void)e;
            if (ord_p(global_, p) < 0) ps.insert(p);
        }
    for (auto& [p, x] : over_) {
        if (!x.is_zero() && x.valuation() < 0) ps.insert(p);
        else ps.erase(p);  // overridden by an integral value
    }
    return {ps.begin(), ps.end()};
}

Adele Adele::operator+(const mpq_class& r) const {
    Adele out(mpq_class(global_ + r));
    for (auto& [p, x] : over_) {
        int need = static_cast<int>(std::max<long>(x.abs_precision(), 1)) + 4;
        PadicNumber rr = PadicNumber::from_rational(r, p, need + 8);
        out.over_.insert_or_assign(p, x + rr);
    }
    if (real_) out.real_ = *real_ + r.get_d();
    return out;
}

Adele Adele::scaled(const mpq_class& r) const {
    if (r == 0) throw std::invalid_argument("scaling an adele by 0");
    Adele out(mpq_class(global_ * r));
    for (auto& [p, x] : over_) {
        PadicNumber rr = PadicNumber::from_rational(r, p, std::max(x.is_zero() ? 1 : x.precision(), 1) + 4);
        out.over_.insert_or_assign(p, x * rr);
    }
    if (real_) out.real_ = *real_ * r.get_d();
    return out;
}

Idele::Idele(mpq_class diagonal) : Adele(std::move(diagonal)) {
    if (this->diagonal() == 0) throw std::invalid_argument("idele with zero diagonal");
}

Idele::Idele(const Adele& a) : Adele(a) {
    if (diagonal() == 0) throw std::invalid_argument("idele with zero diagonal");
    for (auto& [p, x] : overrides()) {
        (void)p;
        if (x.is_zero()) throw std::invalid_argument("idele has a zero component");
    }
    if (has_real_override() && real_component() == 0.0)
        throw std::invalid_argument("idele has zero real component");
}

long Idele::local_valuation(long p) const {
    auto it = overrides().find(p);
    if (it != overrides().end()) return it->second.valuation();
    return ord_p(diagonal(), p);
}

AdelicAbs adelic_abs(const Idele& x) {
    // Finite part: |diagonal|_p over the diagonal's support, with overrides
    // replacing the diagonal factor at their primes.
    mpq_class fin = 1;
    std::set<long> seen;
    for (auto& [p, xp] : x.overrides()) {
        fin *= pow_q(p, -xp.valuation());
        seen.insert(p);
    }
    const mpq_class& d = x.diagonal();
    for (auto& [p, e] : factorize(mpz_class(d.get_num()))) {
        (void)e;
        if (!seen.count(p)) fin *= pow_q(p, -ord_p(d, p));
    }
    for (auto& [p, e] : factorize(mpz_class(d.get_den()))) {
        (void)e;
        if (!seen.count(p)) fin *= pow_q(p, -ord_p(d, p));
    }
    return {fin, std::abs(x.real_component())};
}

bool in_fundamental_domain(const Adele& x) {
    if (!x.support_primes().empty()) return false;
    if (x.has_real_override()) {
        double t = x.real_component();
        return t >= 0.0 && t < 1.0;
    }
    return x.diagonal() >= 0 && x.diagonal() < 1;
}

std::pair<Adele, mpq_class> fundamental_domain_reduce(const Adele& x) {
    // r = sum over bad primes of the fractional part of the component; after
    // subtracting it every finite component is integral.
    mpq_class r = 0;
    for (long p : x.support_primes()) {
        auto it = x.overrides().find(p);
        if (it != x.overrides().end()) r += it->second.fractional_part();
        else r += frac_part_p(x.diagonal(), p);
    }
    Adele d1 = x + mpq_class(-r);
    // Integer shift at the infinite place.
    mpz_class k;
    if (auto ex = d1.real_exact()) {
        mpz_fdiv_q(k.get_mpz_t(), ex->get_num_mpz_t(), ex->get_den_mpz_t());
    } else {
        k = static_cast<long>(std::floor(d1.real_component()));
    }
    if (k != 0) d1 = d1 + mpq_class(-k);
    return {d1, mpq_class(r + k)};
}

std::pair<mpq_class, Idele> idele_unit_decomposition(const Idele& x) {
    AdelicAbs a = adelic_abs(x);
    mpq_class q = 1 / a.finite;
    Idele u(x.scaled(1 / q));
    return {q, u};
}

}  // namespace tate
