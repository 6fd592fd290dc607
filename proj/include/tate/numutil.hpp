#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tate {

using Complex = std::complex<double>;

// ord_p(n) for n != 0.
inline long ord_p(mpz_class n, long p) {
    if (n == 0) throw std::domain_error("ord_p: zero has no finite valuation");
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

// ord_p of a rational, possibly negative.
inline long ord_p(const mpq_class& q, long p) {
    if (q == 0) throw std::domain_error("ord_p: zero has no finite valuation");
    return ord_p(mpz_class(q.get_num()), p) - ord_p(mpz_class(q.get_den()), p);
}

inline mpz_class pow_z(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

// p^e as an exact rational, e of either sign.
inline mpq_class pow_q(long p, long e) {
    mpz_class pe = pow_z(p, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(pe) : mpq_class(1, pe);
}

inline mpz_class powmod(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline mpz_class invmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: not invertible");
    return r;
}

// Nonnegative residue of a mod m.
inline mpz_class mod_z(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Legendre symbol (a|p), p an odd prime.
inline int legendre(const mpz_class& a, long p) {
    mpz_class pz(p);
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

inline bool is_prime(long n) {
    mpz_class z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

inline std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    for (long i = 2; i <= bound; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (long j = 2 * i; j <= bound; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return out;
}

// Prime factorization by trial division; intended for the small numbers
// that show up as denominators, conductors and group orders here.
inline std::vector<std::pair<long, int>> factorize(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("factorize: zero");
    std::vector<std::pair<long, int>> fs;
    for (long d = 2; mpz_class(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
            ++e;
        }
        if (e) fs.emplace_back(d, e);
    }
    if (n > 1) {
        if (!n.fits_slong_p()) throw std::domain_error("factorize: residual factor too large");
        fs.emplace_back(n.get_si(), 1);
    }
    return fs;
}

// Smallest primitive root mod p (p an odd prime).
inline long smallest_primitive_root(long p) {
    long phi = p - 1;
    auto fs = factorize(mpz_class(phi));
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fs) {
            (void)e;
            if (powmod(g, phi / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

// Smallest primitive root mod p that stays primitive mod p^2 (hence mod p^n
// for every n; the standard generator of (Z/p^n)^x for odd p).
inline long stable_primitive_root(long p) {
    long g = smallest_primitive_root(p);
    mpz_class p2 = mpz_class(p) * p;
    if (powmod(g, p - 1, p2) == 1) {
        // g + p is then primitive mod p^2.
        if (powmod(g + p, p - 1, p2) == 1)
            throw std::logic_error("stable_primitive_root: unexpected");
        return g + p;
    }
    return g;
}

inline mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

}  // namespace tate
