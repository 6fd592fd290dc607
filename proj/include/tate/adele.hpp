#pragma once

#include <map>
#include <optional>

#include "tate/padic.hpp"

namespace tate {

/**
 * A desk-scale adele over Q: a rational diagonal part, finitely many local
 * p-adic overrides, and an optional real component (overriding the diagonal
 * at the infinite place).  The component at p is the override if present,
 * else the image of the diagonal rational in Q_p.
 */
class Adele {
public:
    explicit Adele(mpq_class diagonal = 0) : global_(std::move(diagonal)) {
        global_.canonicalize();
    }

    const mpq_class& diagonal() const { return global_; }
    const std::map<long, PadicNumber>& overrides() const { return over_; }
    bool has_real_override() const { return real_.has_value(); }
    double real_component() const { return real_ ? *real_ : global_.get_d(); }
    // Exact real component, if it is the diagonal rational.
    std::optional<mpq_class> real_exact() const {
        if (real_) return std::nullopt;
        return global_;
    }

    Adele& set_component(long p, PadicNumber x);
    Adele& set_real(double t) { real_ = t; return *this; }

    // The component at p, materialized at the given precision if diagonal.
    PadicNumber component(long p, int prec = 20) const;
    // Primes where the component might fail to be p-integral (denominator
    // primes of the diagonal plus negative-valuation overrides).
    std::vector<long> support_primes() const;

    Adele operator+(const mpq_class& r) const;
    Adele scaled(const mpq_class& r) const;

private:
    mpq_class global_;
    std::map<long, PadicNumber> over_;
    std::optional<double> real_;
};

/** An adele with every component nonzero. */
class Idele : public Adele {
public:
    explicit Idele(mpq_class diagonal = 1);
    Idele(const Adele& a);

    // v_p of the component at p.
    long local_valuation(long p) const;
};

struct AdelicAbs {
    mpq_class finite;  // product of the finite local absolute values, exact
    double arch;       // |x_oo|
    double value() const { return finite.get_d() * arch; }
};

// |x|_A = prod_{p<=oo} |x_p|_p (all but finitely many factors are 1).
AdelicAbs adelic_abs(const Idele& x);

// x = d + r with d in D = prod Z_p x [0,1) and r rational; unique.
std::pair<Adele, mpq_class> fundamental_domain_reduce(const Adele& x);
// Whether every finite component is integral and the real part lies in [0,1).
bool in_fundamental_domain(const Adele& x);

// Finite idele decomposition x = q * u with q rational > 0 and u everywhere
// a unit: q = |x|_{A,fin}^{-1}.  The real component is ignored.
std::pair<mpq_class, Idele> idele_unit_decomposition(const Idele& x);

}  // namespace tate
