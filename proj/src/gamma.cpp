#include "tate/gamma.hpp"

#include <cmath>
#include <numbers>

namespace tate {

namespace {

// Lanczos, g = 607/128, 15 terms.
constexpr double kG = 607.0 / 128.0;
constexpr double kCoeff[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

std::complex<double> lanczos_log_gamma(std::complex<double> s) {
    // valid for Re(s) > 0
    std::complex<double> acc = kCoeff[0];
    for (int k = 1; k < 15; ++k) acc += kCoeff[k] / (s + double(k - 1));
    std::complex<double> t = s + (kG - 0.5);
    constexpr double half_log_2pi = 0.91893853320467274178;
    return half_log_2pi + (s - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> s) {
    if (s.real() >= 0.5) return lanczos_log_gamma(s);
    // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
    const double pi = std::numbers::pi;
    std::complex<double> ls = std::log(pi / std::sin(pi * s)) - lanczos_log_gamma(1.0 - s);
    return ls;
}

std::complex<double> gamma(std::complex<double> s) {
    if (s.real() >= 0.5) return std::exp(lanczos_log_gamma(s));
    const double pi = std::numbers::pi;
    std::complex<double> sinpis = std::sin(pi * s);
    if (sinpis == std::complex<double>(0.0, 0.0))
        throw std::domain_error("gamma: pole at non-positive integer");
    return pi / (sinpis * std::exp(lanczos_log_gamma(1.0 - s)));
}

std::complex<double> gamma_R(std::complex<double> s) {
    const double pi = std::numbers::pi;
    return std::exp(-0.5 * s * std::log(pi)) * gamma(0.5 * s);
}

std::complex<double> gamma_C(std::complex<double> s) {
    const double two_pi = 2.0 * std::numbers::pi;
    return std::exp((1.0 - s) * std::log(two_pi)) * gamma(s);
}

}  // namespace tate
