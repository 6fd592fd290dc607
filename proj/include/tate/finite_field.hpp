#pragma once

#include <memory>
#include <vector>

#include "tate/numutil.hpp"

namespace tate {

class FqElement;

/**
 * The field F_{p^m}, presented as F_p[x]/(modulus) with the
 * lexicographically least monic irreducible modulus of degree m
 * (constant coefficient first), so field constructions are deterministic.
 */
class FqField {
public:
    static const FqField& get(long p, int m);

    long p() const { return p_; }
    int degree() const { return m_; }
    mpz_class order() const { return pow_z(p_, static_cast<unsigned long>(m_)); }
    const std::vector<long>& modulus() const { return mod_; }  // degree m monic; coeffs 0..m

    FqElement zero() const;
    FqElement one() const;
    FqElement from_coeffs(std::vector<long> coeffs) const;
    FqElement from_integer(long n) const;
    // Element number i in [0, p^m): base-p digits as coefficients.
    FqElement element(const mpz_class& index) const;

private:
    FqField(long p, int m);
    long p_;
    int m_;
    std::vector<long> mod_;
    friend class FqElement;
};

/** An element of F_{p^m}: a residue polynomial over F_p. */
class FqElement {
public:
    const FqField& field() const { return *f_; }
    const std::vector<long>& coeffs() const { return c_; }
    bool is_zero() const;
    mpz_class index() const;  // inverse of FqField::element

    FqElement operator+(const FqElement& o) const;
    FqElement operator-(const FqElement& o) const;
    FqElement operator*(const FqElement& o) const;
    FqElement pow(const mpz_class& e) const;
    FqElement inverse() const;
    bool operator==(const FqElement& o) const;

private:
    FqElement(const FqField& f, std::vector<long> c) : f_(&f), c_(std::move(c)) {}
    const FqField* f_;
    std::vector<long> c_;
    friend class FqField;
};

// x -> x^q, q = p^f; the generator of Gal(F_{q^n}/F_q) on the big field.
FqElement frobenius(const FqElement& x, const mpz_class& q);

// Norm and trace of F_{q^n}/F_q applied to x in F_{p^{fn}} (q = p^f),
// computed as products/sums of Frobenius conjugates.
FqElement norm(const FqElement& x, const mpz_class& q, int n);
FqElement trace(const FqElement& x, const mpz_class& q, int n);
// Closed forms x^{(q^n-1)/(q-1)} (for x != 0) used as the cross-check route.
FqElement norm_closed_form(const FqElement& x, const mpz_class& q, int n);

// Exhaustive check that the norm F_{q^n} -> F_q is onto F_q^x; q = p^f.
// Throws if p^{fn} exceeds the enumeration bound.
bool norm_surjective(long p, int f, int n, long enumeration_bound = 10000);

/** sigma_{q,n}^k, an element of the cyclic group Gal(F_{q^n}/F_q). */
struct GaloisElement {
    int n;
    long k;  // mod n
    bool operator==(const GaloisElement& o) const { return n == o.n && k == o.k; }
};

// rec_q(k) restricted to level n: k mod n.
GaloisElement rec_q(long k, int n);
// Compatibility of levels m | n under the canonical surjection.
bool rec_compatible(long k, int n, int m);

}  // namespace tate
