#pragma once

#include <vector>

#include "tate/characters.hpp"
#include "tate/cyclotomic.hpp"

#include "json.hpp"

namespace tate {

/**
 * One building block of a Bruhat function on Q_p:
 *
 *     t  |->  coeff * chi_p(twist * t) * 1_{center + p^level Z_p}(t).
 *
 * The support is a single coset; twist 0 recovers a plain indicator.
 */
struct BruhatTerm {
    Cyclotomic coeff;
    mpq_class twist;
    mpq_class center;
    long level = 0;
};

/**
 * A locally constant, compactly supported function on Q_p, stored as a
 * finite sum of (possibly twisted) coset terms.  The class is exactly
 * closed under the Fourier transform
 *
 *     f^(t) = int f(x) chi_p(t x) dx,
 *
 * which acts on terms by the closed form
 * (c, t0, x0, n) -> (c chi_p(t0 x0) p^{-n}, x0, -t0, -n).
 *
 * canonicalize() produces the flat canonical form: every term refined to
 * one common level L, twists reduced mod p^{-L} Z_p, centers reduced to
 * the representative in [0, p^L) cap Z[1/p], terms with equal (center,
 * twist) merged, zero coefficients dropped, and full sibling groups
 * re-assembled to the coarsest expressible common level.  Equality of
 * functions is decided exactly via the canonical form of the difference.
 */
class BruhatFunction {
public:
    explicit BruhatFunction(long p);

    static BruhatFunction zero(long p);
    static BruhatFunction indicator(long p, const mpq_class& center, long level);
    static BruhatFunction term(long p, Cyclotomic coeff, const mpq_class& twist,
                               const mpq_class& center, long level);

    long prime() const { return p_; }
    const std::vector<BruhatTerm>& terms() const { return terms_; }
    bool canonical() const { return canonical_; }
    long canonical_level() const;
    void append(BruhatTerm t);

    BruhatFunction canonicalize() const;
    bool is_zero() const;

    // Exact pointwise evaluation at a rational point.
    Cyclotomic value_at(const mpq_class& t) const;

    BruhatFunction operator+(const BruhatFunction& o) const;
    BruhatFunction operator-(const BruhatFunction& o) const;
    BruhatFunction scaled(const Cyclotomic& c) const;
    // Pointwise product (twists add, coefficients multiply on refined cosets).
    BruhatFunction operator*(const BruhatFunction& o) const;

    BruhatFunction fourier() const;
    BruhatFunction reflect() const;  // x  |->  f(-x)
    BruhatFunction conj() const;

    // Exact canonical-form equality after canonicalizing the difference.
    bool equals(const BruhatFunction& o) const;
    // Structural identity of canonical forms.
    bool same_canonical_form(const BruhatFunction& o) const;

    // Additive Haar integral (vol(Z_p) = 1), exact.
    Cyclotomic integrate() const;
    // Multiplicative integral with d^x = (p/(p-1)) dx/|x|_p; throws if the
    // canonical form carries a term at 0 (the shell series then diverges).
    Cyclotomic integrate_multiplicative() const;

    nlohmann::ordered_json to_json() const;
    static BruhatFunction from_json(const nlohmann::json& j);

    static constexpr long kMaxTerms = 100000;

private:
    long p_;
    std::vector<BruhatTerm> terms_;
    bool canonical_ = false;
    long clevel_ = 0;
};

// Partial sums of int_{Z_p} log|x|_p dx over the first K+1 shells:
// -log p * sum_{n<=K} n (p^{-n} - p^{-n-1})  ->  -log p / (p-1).
double log_abs_integral(long p, int terms);

// Mellin transform of 1_{Z_p^x} at |.|^s chi: 1 if chi is trivial else 0,
// computed as the explicit character sum over (Z/p^max(n,1))^x.
Cyclotomic mellin_indicator_unit(const UnitCharacter& chi);

}  // namespace tate
