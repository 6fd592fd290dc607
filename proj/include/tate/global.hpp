#pragma once

#include "tate/theta.hpp"

namespace tate {

/**
 * A unitary character omega of the idele class group, written as
 * omega = omega_ub * |.|_A^{-iw}: a real twist w, a finite set of ramified
 * primes carrying finite-order local characters, and sigma in {0,1} at the
 * real place.
 */
struct GlobalCharacter {
    double w = 0.0;
    std::map<long, UnitCharacter> ramified;  // deg >= 1 each
    int sigma = 0;

    bool is_trivial() const { return w == 0.0 && ramified.empty() && sigma == 0; }
    std::vector<long> ramified_primes() const {
        std::vector<long> ps;
        for (auto& [p, c] : ramified) {
            (void)c;
            ps.push_back(p);
        }
        return ps;
    }
    UnitaryMultCharacter local(long p) const {
        auto it = ramified.find(p);
        return {w, it == ramified.end() ? UnitCharacter::trivial(p) : it->second};
    }
};

struct GlobalLResult {
    Complex value;
    double truncation_bound;  // monotone bound on the relative tail error
    bool pole = false;
};

// L(omega, s) = prod_{p <= P} L(omega_p, s) * L(omega_oo, s), Re(s) > 1.
GlobalLResult global_L(const GlobalCharacter& omega, Complex s, long prime_bound);

// eps(omega, s) = prod over ramified primes of the local epsilon factors.
Complex global_epsilon(const GlobalCharacter& omega, Complex s);

// One Euler factor of L(omega1 omega2^{-1}, s)/L(1, s) at p: the ratio
// (1 - p^{-s})/(1 - alpha_p p^{-s}).  alpha_p is 1 exactly when the local
// data of the two characters coincide, making the factor identically 1.
struct EulerFactorRatio {
    long p;
    bool alpha_is_one;   // exact symbolic comparison
    Complex alpha;       // omega_p(p) of the ratio character (0 if ramified)
};

std::vector<EulerFactorRatio> euler_factor_ratio(const GlobalCharacter& o1,
                                                 const GlobalCharacter& o2,
                                                 const std::vector<long>& primes);
bool ratio_identically_one(const std::vector<EulerFactorRatio>& factors);

// Richardson extrapolation of g(h_0 / 2^k), k = 0..n-1, to h -> 0.
double richardson_limit(const std::function<double(double)>& g, double h0, int n);

}  // namespace tate
