#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tate/numutil.hpp"

namespace tate {

/**
 * An element of Q_p known to finite precision.
 *
 * A nonzero value is stored as x = p^v * u with u a unit kept modulo p^N:
 * the digits a_0,...,a_{N-1} of u (a_0 != 0) are the base-p expansion of the
 * unit part, and the represented value is determined modulo p^{v+N}.  N is
 * the relative precision, v+N the absolute precision.
 *
 * Zero is a distinguished state carrying only an absolute precision M,
 * meaning "0 mod p^M".
 *
 * Precision propagation:
 *   add: result absolute precision = min of operand absolute precisions
 *        (cancellation may reduce relative precision);
 *   mul: result relative precision = min of operand relative precisions.
 *
 * Values are immutable after construction; all operations are pure.
 */
class PadicNumber {
public:
    // numer/denom embedded into Q_p with N significant digits.
    static PadicNumber from_rational(const mpq_class& q, long p, int prec);
    static PadicNumber from_rational(const mpz_class& num, const mpz_class& den, long p, int prec);
    static PadicNumber from_integer(const mpz_class& n, long p, int prec);
    static PadicNumber zero(long p, int abs_prec);
    // x = p^v * u where u is given modulo p^prec (u must be a unit).
    static PadicNumber from_unit(long p, long valuation, const mpz_class& unit, int prec);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }

    // v(x); rejects Zero.
    long valuation() const;
    // Relative precision N for nonzero values.
    int precision() const;
    // v + N, or M for Zero.
    long abs_precision() const { return zero_ ? abs_prec_ : val_ + prec_; }

    // Digits a_0..a_{N-1} of the unit part, a_0 != 0.
    std::vector<int> digits() const;
    // Unit part residue mod p^k, 1 <= k <= N.
    mpz_class unit_residue(int k) const;
    // Residue of the whole value mod p^k for v <= k <= v+N (exact window).
    mpq_class residue_times_power(long k) const;

    // |x|_p = p^{-v}, exact (0 for Zero).
    mpq_class abs() const;
    // u(x) with x = p^{v} u(x).
    PadicNumber unit_part() const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    PadicNumber inverse() const;

    // Hensel square root; absent iff x is not a square in Q_p^x.
    std::optional<PadicNumber> sqrt() const;

    // f(x): the digits below position 0, as an exact element of
    // [0,1) \cap Z[1/p].  Needs the digit window to reach position 0.
    mpq_class fractional_part() const;
    // [x] = x - f(x), an element of Z_p.
    PadicNumber integral_part() const;

    // Truncate to absolute precision k (may produce Zero).
    PadicNumber truncate_abs(long k) const;

    // Representation equality: same prime, state, valuation, digits, precision.
    bool same_value(const PadicNumber& o) const;
    // Agreement modulo p^k.
    bool congruent_to(const PadicNumber& o, long k) const;

    // Canonical text form "p=5 v=1 digits=[2,0,3] prec=3" /
    // "p=5 zero absprec=10"; parse round-trips bit-exactly.  The JSON form
    // carries the same fields.
    std::string to_text() const;
    static PadicNumber parse_text(const std::string& s);
    std::string to_json_text() const;
    static PadicNumber parse_json_text(const std::string& s);

private:
    PadicNumber(long p, long v, mpz_class unit, int prec)
        : p_(p), zero_(false), val_(v), prec_(prec), abs_prec_(0), unit_(std::move(unit)) {}
    PadicNumber(long p, long abs_prec) : p_(p), zero_(true), val_(0), prec_(0), abs_prec_(abs_prec) {}

    void check_same_prime(const PadicNumber& o) const;

    long p_;
    bool zero_;
    long val_;       // valuation (nonzero values)
    int prec_;       // relative precision N (nonzero values)
    long abs_prec_;  // absolute precision M (Zero)
    mpz_class unit_; // unit part mod p^N, in [1, p^N), not divisible by p
};

// ord_p(n!) = sum_k floor(n/p^k).
mpz_class factorial_valuation(const mpz_class& n, long p);

// The Teichmueller lift: the (p-1)st root of unity in Z_p^x whose reduction
// mod p is the smallest primitive root mod p.  p must be odd.
PadicNumber teichmuller(long p, int prec);

struct SeriesOptions {
    long budget = 0;        // 0: use 10 * target
    long monotone_from = 0; // indices >= this may trigger the stopping rule
    long consecutive = 1;   // qualifying terms required back to back
};

// Sum of a p-adic series to a target absolute precision.  Terms are consumed
// until `consecutive` terms in a row reach valuation >= target, at indices
// where the caller certifies eventual valuation growth.  (For series whose
// term valuations dip, e.g. v(n * n!), taking consecutive = p guarantees a
// witness n coprime to p, which bounds the whole tail.)  Throws if the
// budget runs out first.
PadicNumber series_sum(const std::function<PadicNumber(long)>& term, long p, long target_abs,
                       const SeriesOptions& opt = {});

}  // namespace tate
