#pragma once

#include <map>
#include <string>
#include <vector>

#include "tate/numutil.hpp"

namespace tate {

/**
 * An element of Q/Z written as a reduced rational in [0,1); denotes the
 * root of unity exp(2*pi*i*theta).  The group law is addition mod 1.
 */
class RationalAngle {
public:
    RationalAngle() : t_(0) {}
    explicit RationalAngle(mpq_class t) : t_(std::move(t)) { normalize(); }
    RationalAngle(long num, long den) : t_(num, den) { t_.canonicalize(); normalize(); }

    const mpq_class& value() const { return t_; }
    bool is_zero() const { return t_ == 0; }
    // Multiplicative order of the root of unity (the reduced denominator).
    mpz_class order() const { return t_.get_den(); }

    RationalAngle operator+(const RationalAngle& o) const { return RationalAngle(t_ + o.t_); }
    RationalAngle operator-(const RationalAngle& o) const { return RationalAngle(t_ - o.t_); }
    RationalAngle operator-() const { return RationalAngle(-t_); }
    RationalAngle times(const mpz_class& k) const { return RationalAngle(mpq_class(t_ * k)); }

    bool operator==(const RationalAngle& o) const { return t_ == o.t_; }
    bool operator<(const RationalAngle& o) const { return t_ < o.t_; }

    Complex to_complex() const;
    std::string str() const { return t_.get_str(); }

private:
    void normalize() {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), t_.get_num_mpz_t(), t_.get_den_mpz_t());
        t_ -= fl;
        t_.canonicalize();
    }
    mpq_class t_;
};

/**
 * A finite formal sum  sum_j c_j * exp(2*pi*i*a_j)  with rational c_j and
 * exact angles a_j.  This is the coefficient domain in which character sums
 * and Fourier coefficients stay exact.
 *
 * Zero-testing clears all angles to a common root-of-unity order m and
 * rewrites exponents into the power basis of the m-th cyclotomic field,
 * prime power by prime power.  Beyond a configured order bound it falls
 * back to a 1e-12 complex comparison.
 */
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long n) { if (n) terms_[RationalAngle()] = n; }
    explicit Cyclotomic(const mpq_class& c) { if (c != 0) terms_[RationalAngle()] = c; }
    static Cyclotomic root_of_unity(const RationalAngle& a, const mpq_class& scale = 1);

    bool is_structurally_zero() const { return terms_.empty(); }
    bool is_zero() const;
    bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o);

    Cyclotomic scaled(const mpq_class& c) const;
    // Rotation by a root of unity: multiply every term angle by exp(2pi i a).
    Cyclotomic rotated(const RationalAngle& a) const;
    Cyclotomic conj() const;
    // Value-canonical form: angles rewritten through the cyclotomic power
    // basis, so equal values get identical term lists.
    Cyclotomic canonical() const;

    Complex to_complex() const;
    // Exact rational value; throws if the sum is not visibly rational
    // (i.e. does not reduce to the zero angle alone).
    mpq_class rational_value() const;
    bool is_rational() const;

    const std::map<RationalAngle, mpq_class>& terms() const { return terms_; }
    std::string str() const;

    // Order bound beyond which zero-testing falls back to floats.
    static constexpr long kMaxExactOrder = 100000000L;

private:
    void prune();
    std::map<RationalAngle, mpq_class> terms_;
};

}  // namespace tate
