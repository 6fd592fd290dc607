#pragma once

#include <functional>
#include <map>

#include "tate/adele.hpp"
#include "tate/local_zeta.hpp"

namespace tate {

// theta(x) = sum_{n in Z} exp(-pi n^2 x), x > 0; terms below 1e-18 dropped.
double theta(double x);
// psi(x) = (theta(x) - 1)/2 = sum_{n>=1} exp(-pi n^2 x).
double psi(double x);

// Completed zeta Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s) via
// 1/(s-1) - 1/s + int_1^oo psi(x) (x^{s/2} + x^{(1-s)/2}) dx/x;
// poles at s = 0, 1 are tagged.
CValue completed_zeta(Complex s);

// Adaptive Gauss-Kronrod quadrature used by the Lambda integral; exposed for
// independent checking.  Integrates f on [a, b] to the given absolute
// tolerance.
Complex integrate_gk(const std::function<Complex(double)>& f, double a, double b, double tol);

/**
 * The test function Phi = prod_p 1_{p^{m_p} Z_p} x exp(-pi x_oo^2): the
 * standard global function with finitely many level shifts.  Its Fourier
 * transform is prod_p p^{-m_p} 1_{p^{-m_p} Z_p} x exp(-pi x_oo^2).
 */
struct PhiSpec {
    std::map<long, long> levels;  // absent prime: level 0
    long level(long p) const {
        auto it = levels.find(p);
        return it == levels.end() ? 0 : it->second;
    }
};

// |LHS - RHS| for  sum_{r in Q} Phi(r x) = 1/|x|_A sum_{q in Q} Phi^(q x^{-1}).
// Both sides are lattice-Gaussian sums determined exactly by the finite data.
double poisson_residual(const PhiSpec& phi, const Idele& x);

}  // namespace tate
