#pragma once

#include <complex>

namespace tate {

// Complex Gamma function; Lanczos approximation with reflection for
// Re(s) < 1/2.  Relative accuracy ~1e-13 on the strip |Re(s)| <= 10.
std::complex<double> gamma(std::complex<double> s);
std::complex<double> log_gamma(std::complex<double> s);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
std::complex<double> gamma_R(std::complex<double> s);
// Gamma_C(s) = (2 pi)^{1-s} Gamma(s).
std::complex<double> gamma_C(std::complex<double> s);

}  // namespace tate
