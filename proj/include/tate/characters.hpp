#pragma once

#include <complex>
#include <optional>

#include "tate/cyclotomic.hpp"
#include "tate/padic.hpp"

namespace tate {

// f_p(x) for a rational x: the unique element of [0,1) \cap Z[1/p] with
// x - f_p(x) p-integral.
mpq_class frac_part_p(const mpq_class& x, long p);

/**
 * The additive character chi_{p,t}(x) = exp(2 pi i f(t x)) of Q_p.
 * Its conductor is p^{-v(t)} Z_p (all of Q_p understood as t = 0).
 */
class AdditiveCharacter {
public:
    AdditiveCharacter(long p, mpq_class t) : p_(p), t_(std::move(t)) {}

    long prime() const { return p_; }
    const mpq_class& twist() const { return t_; }
    bool is_trivial() const { return t_ == 0; }
    // n with conductor = p^n Z_p (largest subgroup where the character dies).
    long conductor_level() const;

    RationalAngle eval(const mpq_class& x) const;
    // Needs t*x determined to absolute precision >= 0.
    RationalAngle eval(const PadicNumber& x) const;

private:
    long p_;
    mpq_class t_;
};

// Witness for the product principle: for rational x != 0,
// sum_p f_p(x) - x is an integer (so prod_{p<=oo} chi_p(x) = 1 with
// chi_oo(x) = exp(-2 pi i x)).  Returns that integer.
mpz_class product_principle_witness(const mpq_class& x);

/**
 * A finite-order character of Z_p^x (the chi-underbar of a multiplicative
 * character), given by its degree n and exact angle values on fixed
 * generators: for odd p the stable primitive root g of (Z/p^n)^x, for p = 2
 * the pair (-1, 5).  Degree 0 is the trivial character; degree n >= 1 means
 * trivial on U_{p,n} and nontrivial on U_{p,n-1}.
 */
class UnitCharacter {
public:
    static UnitCharacter trivial(long p);
    // Odd p: character sending the stable generator g to exp(2 pi i a).
    static UnitCharacter from_generator_angle(long p, int degree, const RationalAngle& a);
    // p = 2, degree >= 2: values on -1 and on 5.
    static UnitCharacter mod2(int degree, const RationalAngle& on_minus1, const RationalAngle& on_5);

    long prime() const { return p_; }
    int degree() const { return degree_; }
    bool is_trivial() const { return degree_ == 0; }
    long generator() const;  // odd p, degree >= 1
    const RationalAngle& generator_angle() const { return gen_angle_; }
    const RationalAngle& angle_on_minus1() const { return angle_m1_; }
    const RationalAngle& angle_on_5() const { return angle_5_; }

    // Value on a unit residue e mod p^degree (e coprime to p).
    RationalAngle eval_residue(const mpz_class& e) const;
    // chi(u(x)); needs >= degree digits of the unit part.
    RationalAngle eval(const PadicNumber& x) const;

    UnitCharacter inverse() const;                    // = complex conjugate
    UnitCharacter conjugate() const { return inverse(); }
    int sign_at_minus_one() const;                    // chi(-1) in {+1,-1}

    bool operator==(const UnitCharacter& o) const;

private:
    UnitCharacter(long p, int degree) : p_(p), degree_(degree) {}
    long p_ = 0;
    int degree_ = 0;
    RationalAngle gen_angle_;          // odd p
    RationalAngle angle_m1_, angle_5_; // p = 2
};

// All characters of (Z/p^n)^x of exact degree n (odd p; n >= 1).
std::vector<UnitCharacter> unit_characters_of_degree(long p, int n);
// p-2 for n = 1, p^{n-2}(p-1)^2 for n >= 2.
mpz_class count_characters_of_degree(long p, int n);

/**
 * A character of Q_p^x in the exponent convention: chi = |.|^s chi_ub with
 * s an arbitrary complex exponent.  chi(x) = p^{-v(x) s} chi_ub(u(x)).
 */
struct MultCharacter {
    Complex s;
    UnitCharacter chi;

    long prime() const { return chi.prime(); }
    bool unramified() const { return chi.is_trivial(); }
    int degree() const { return chi.degree(); }

    // chi-check = |.| chi^{-1} (the dual appearing in the functional equation).
    MultCharacter dual() const { return {Complex(1.0, 0.0) - s, chi.inverse()}; }
    MultCharacter conjugate() const { return {std::conj(s), chi.inverse()}; }

    Complex eval(const PadicNumber& x) const;
    // Exact value split: (valuation power, angle): x maps to p^{-v s} e(angle).
    std::pair<long, RationalAngle> eval_exact(const PadicNumber& x) const;
    Complex at_minus_one() const { return {double(chi.sign_at_minus_one()), 0.0}; }
};

// Unitary convention: omega = chi_ub * |.|^{-i w}; local zeta evaluation at
// complex s corresponds to the exponent-convention character |.|^{s - i w} chi_ub.
struct UnitaryMultCharacter {
    double w = 0.0;
    UnitCharacter chi;
    MultCharacter at(Complex s) const { return {s - Complex(0.0, w), chi}; }
};

// Discrete log of a unit residue mod p^n to the stable generator (odd p),
// or the (a, b) with u = (-1)^a 5^b mod 2^n.  Cached baby-step/giant-step
// tables per (p, n); table size capped.
mpz_class unit_dlog(long p, int n, const mpz_class& u);
std::pair<int, mpz_class> unit_dlog_mod2(int n, const mpz_class& u);

}  // namespace tate
