#pragma once

#include "tate/bruhat.hpp"
#include "tate/gamma.hpp"

namespace tate {

// A complex value that may be a tagged pole (never a float infinity).
struct CValue {
    Complex v{0.0, 0.0};
    bool pole = false;

    static CValue of(Complex z) { return {z, false}; }
    static CValue pole_at() { return {{0.0, 0.0}, true}; }
    Complex get() const {
        if (pole) throw std::domain_error("value is a pole");
        return v;
    }
};

/**
 * Local zeta function Z(f, chi) = int_{Q_p^x} f(x) chi(x) d^x x for a Bruhat
 * function f and chi = |.|^s chi_ub.  Shell sums are exact cyclotomic data;
 * the geometric tail over deep shells is closed-form (and only exists when
 * chi_ub is trivial).  Convergence needs Re(s) > 0 unless f(0) = 0.
 */
CValue local_zeta(const BruhatFunction& f, const MultCharacter& chi);

// Exact shell coefficient A_k = int_{Z_p^x} f(p^k u) chi_ub(u) d^x u, so that
// Z(f, chi) = sum_k p^{-k s} A_k.
Cyclotomic zeta_shell_coefficient(const BruhatFunction& f, const UnitCharacter& chi, long k);

/**
 * Gauss sum tau(chi) = sum over e in (Z/p^n)^x of chi_ub(e) exp(2 pi i e/p^n),
 * n = degree >= 1.  Exact angle accumulation, one float conversion at the end.
 */
struct GaussSum {
    UnitCharacter chi;
    Cyclotomic exact;
    Complex value;
};
GaussSum gauss_sum(const UnitCharacter& chi);

// int_{Z_p^x} chi_p(v u) chi_ub(u) d^x u by direct residue sum; vanishes
// whenever |v|_p != p^n (n = degree of chi_ub).
Complex twisted_unit_integral(const UnitCharacter& chi, const mpq_class& v);

// Local factors in the unitary parameterization omega = chi_ub |.|^{-iw}:
//   L(omega, s)   = (1 - omega(p) p^{-s})^{-1} if unramified, else 1;
//   rho(omega, s) = L(omega,s)/L(conj omega,1-s)  (unramified)
//                 = tau(omega) chi_ub(-1) p^{n(s - iw - 1)}  (ramified);
//   eps = rho / (L(omega,s)/L(conj omega,1-s)) = 1 or rho.
CValue L_factor(const UnitaryMultCharacter& omega, Complex s);
CValue rho_factor(const UnitaryMultCharacter& omega, Complex s);
Complex epsilon_factor(const UnitaryMultCharacter& omega, Complex s);

// Same factors in the exponent convention chi = |.|^s chi_ub (w folded in).
CValue L_factor(const MultCharacter& chi);
CValue rho_factor(const MultCharacter& chi);
Complex epsilon_factor(const MultCharacter& chi);

// Root number W(chi_ub) = eps(|.|^{1/2} chi_ub); modulus 1.
Complex root_number(const UnitCharacter& chi);

// |Z(f,chi) Z(g^,chi^) - Z(f^,chi^) Z(g,chi)| and |Z(f,chi) - rho Z(f^,chi^)|.
struct FunctionalEquationResiduals {
    double cross;
    double rho_form;
};
FunctionalEquationResiduals functional_equation_check(const BruhatFunction& f,
                                                      const BruhatFunction& g,
                                                      const MultCharacter& chi);

// Archimedean factors (sigma in {0,1}, omega_oo = sgn^sigma |.|^{-iw}):
// L = Gamma_R(s - iw + sigma); rho = (-i)^sigma L(omega,s)/L(conj,1-s).
CValue L_arch(int sigma, double w, Complex s);
CValue rho_arch(int sigma, double w, Complex s);

}  // namespace tate
