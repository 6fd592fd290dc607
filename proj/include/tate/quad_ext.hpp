#pragma once

#include <string>

#include "tate/padic.hpp"

namespace tate {

/**
 * A square class of Q_p^x.  For odd p the class group has order 4 with
 * representatives {1, u, p, up} (u the Teichmueller lift of the smallest
 * non-residue); for p = 2 it has order 8 with representatives
 * {1, -1, 2, -2, 5, -5, 10, -10}.
 */
class SquareClass {
public:
    enum class Tag { One, U, P, UP };  // odd p

    SquareClass(long p, Tag t);         // odd p
    SquareClass(long p, int rep2);      // p = 2, rep2 in {+-1, +-2, +-5, +-10}

    long prime() const { return p_; }
    bool is_square() const;
    Tag tag() const;
    int rep2() const;           // p = 2 representative
    // A rational representative of the class (u stands in for the
    // Teichmueller lift via the smallest non-residue; same class).
    mpq_class rational_rep() const;
    // The exact representative as a p-adic number (u = Teichmueller lift).
    PadicNumber padic_rep(int prec) const;

    SquareClass operator*(const SquareClass& o) const;
    bool operator==(const SquareClass& o) const { return p_ == o.p_ && code_ == o.code_; }
    std::string name() const;

private:
    SquareClass(long p, int vbit, int ubit) : p_(p), code_(2 * vbit + ubit) {}
    long p_;
    // odd p: code = 2*(v mod 2) + (unit non-residue bit)
    // p = 2: code = 4*(v mod 2) + (u mod 8 index)
    int code_;
    friend SquareClass square_class(const PadicNumber&);
    friend SquareClass square_class_of_rational(const mpq_class&, long);
};

// Class of x in Q_p^x / (Q_p^x)^2; needs >= 3 digits (>= 4 for p = 2).
SquareClass square_class(const PadicNumber& x);
SquareClass square_class_of_rational(const mpq_class& x, long p);

struct RamificationData {
    int e;  // ramification index
    int f;  // residual index
};

// (e, f) of Q_p(sqrt(tau)) for odd p; tau must not be the trivial class.
RamificationData classify_quadratic(const SquareClass& tau);

/**
 * An element x + y sqrt(tau) of the quadratic extension Q_p(sqrt(tau)),
 * p odd, tau a nontrivial square class.
 */
class QuadExtElement {
public:
    QuadExtElement(SquareClass tau, PadicNumber x, PadicNumber y);

    const SquareClass& tau() const { return tau_; }
    const PadicNumber& x() const { return x_; }
    const PadicNumber& y() const { return y_; }

    QuadExtElement operator+(const QuadExtElement& o) const;
    QuadExtElement operator*(const QuadExtElement& o) const;

    // N(x + y sqrt(tau)) = x^2 - tau y^2.
    PadicNumber norm() const;
    // Canonical absolute value |a|_p = |N(a)|_p^{1/2}: a power of p^{1/2},
    // returned as the exact half-integer exponent (|a| = p^{exp}).
    mpq_class abs_canonical_exponent() const;
    // Normalized absolute value |a|_K = |N(a)|_p, exact.
    mpq_class abs_normalized() const;

private:
    SquareClass tau_;
    PadicNumber x_, y_;
};

// sgn_tau(x): +1 iff x is a norm from Q_p(sqrt(tau)) (equivalently lies in
// the index-2 subgroup Q_{p,tau}); p odd.  Multiplicative, trivial on squares.
int sgn_tau(const SquareClass& tau, const PadicNumber& x);
int sgn_tau(const SquareClass& tau, const SquareClass& cls);

}  // namespace tate
