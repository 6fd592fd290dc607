#include "tate/global.hpp"

#include <cmath>

namespace tate {

GlobalLResult global_L(const GlobalCharacter& omega, Complex s, long prime_bound) {
    if (s.real() <= 1.0)
        throw std::domain_error("global L: Euler product needs Re(s) > 1");
    Complex prod = 1.0;
    for (long p : primes_up_to(prime_bound)) {
        if (omega.ramified.count(p)) continue;  // ramified prime contributes 1
        // omega_p(p) = p^{iw} * prod_q chi_q(p)^{-1}: triviality on Q^x pins
        // the uniformizer values of the finite-order part at unramified p.
        Complex alpha = std::exp(Complex(0.0, omega.w) * std::log(double(p)));
        for (auto& [q, chi] : omega.ramified) {
            (void)q;
            alpha *= (-chi.eval_residue(p)).to_complex();
        }
        prod /= (1.0 - alpha * std::exp(-s * std::log(double(p))));
    }
    CValue arch = L_arch(omega.sigma, omega.w, s);
    if (arch.pole) return {0.0, 0.0, true};
    Complex val = prod * arch.get();
    // Tail bound: |log prod_{p>P}| <= sum_{n>P} n^{-Re s} < P^{1-Re s}/(Re s - 1).
    double sig = s.real();
    double logtail = std::pow(double(prime_bound), 1.0 - sig) / (sig - 1.0);
    return {val, std::expm1(logtail), false};
}

Complex global_epsilon(const GlobalCharacter& omega, Complex s) {
    Complex prod = 1.0;
    for (auto& [p, chi] : omega.ramified) {
        (void)p;
        prod *= epsilon_factor(UnitaryMultCharacter{omega.w, chi}, s);
    }
    return prod;
}

std::vector<EulerFactorRatio> euler_factor_ratio(const GlobalCharacter& o1,
                                                 const GlobalCharacter& o2,
                                                 const std::vector<long>& primes) {
    std::vector<EulerFactorRatio> out;
    for (long p : primes) {
        EulerFactorRatio f;
        f.p = p;
        bool r1 = o1.ramified.count(p) > 0, r2 = o2.ramified.count(p) > 0;
        if (!r1 && !r2) {
            // alpha_p = p^{i(w1 - w2)}; exactly 1 iff w1 == w2.
            f.alpha_is_one = (o1.w == o2.w);
            f.alpha = std::exp(Complex(0.0, o1.w - o2.w) * std::log(double(p)));
        } else if (r1 && r2 && o1.ramified.at(p) == o2.ramified.at(p) && o1.w == o2.w) {
            // Identical ramified data: the ratio character is unramified
            // trivial at p, alpha_p = 1 exactly.
            f.alpha_is_one = true;
            f.alpha = 1.0;
        } else {
            // Genuinely ramified ratio: alpha_p = 0 and the factor is 1 - p^{-s}.
            f.alpha_is_one = false;
            f.alpha = 0.0;
        }
        out.push_back(f);
    }
    return out;
}

bool ratio_identically_one(const std::vector<EulerFactorRatio>& factors) {
    for (auto& f : factors)
        if (!f.alpha_is_one) return false;
    return true;
}

double richardson_limit(const std::function<double(double)>& g, double h0, int n) {
    // Tableau for g(h) = L + c1 h + c2 h^2 + ...: column j kills the h^j term.
    std::vector<std::vector<double>> T(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) T[i][0] = g(h0 / std::pow(2.0, i));
    for (int j = 1; j < n; ++j) {
        double f = std::pow(2.0, j);
        for (int i = j; i < n; ++i) T[i][j] = (f * T[i][j - 1] - T[i - 1][j - 1]) / (f - 1.0);
    }
    return T[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

}  // namespace tate
