#include "tate/local_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tate {

namespace {

Complex p_pow(long p, Complex e) { return std::exp(e * std::log(double(p))); }

constexpr double kPoleEps = 1e-14;

}  // namespace

Cyclotomic zeta_shell_coefficient(const BruhatFunction& f, const UnitCharacter& chi, long k) {
    long p = f.prime();
    BruhatFunction fc = f.canonicalize();
    long m = std::max<long>({static_cast<long>(chi.degree()), 1, fc.canonical_level() - k});
    for (auto& t : fc.terms())
        if (t.twist != 0) m = std::max(m, -ord_p(t.twist, p) - k);
    mpz_class pm = pow_z(p, static_cast<unsigned long>(m));
    if (pm > 10000000) throw std::runtime_error("shell residue enumeration too large");
    mpq_class pk = pow_q(p, k);
    Cyclotomic sum;
    for (mpz_class e = 1; e < pm; ++e) {
        if (e % p == 0) continue;
        Cyclotomic fv = fc.value_at(mpq_class(mpq_class(e) * pk));
        if (fv.is_structurally_zero()) continue;
        sum += fv.rotated(chi.eval_residue(e));
    }
    return sum.scaled(mpq_class(p, p - 1) * mpq_class(1, pm));
}

CValue local_zeta(const BruhatFunction& f, const MultCharacter& chi) {
    if (f.prime() != chi.prime()) throw std::invalid_argument("prime mismatch");
    long p = f.prime();
    BruhatFunction fc = f.canonicalize();
    if (fc.terms().empty()) return CValue::of(0.0);
    long L = fc.canonical_level();

    // Shells carrying support: one per nonzero cell center, plus everything
    // from L up to the depth where the zero-cell twists stop oscillating.
    std::set<long> shells;
    Cyclotomic f0;  // = f(0): sum of the center-0 coefficients
    long tail_from = L;
    bool zero_cell = false;
    for (auto& t : fc.terms()) {
        if (t.center == 0) {
            zero_cell = true;
            f0 += t.coeff;
            if (t.twist != 0) tail_from = std::max(tail_from, -ord_p(t.twist, p));
        } else {
            shells.insert(ord_p(t.center, p));
        }
    }
    if (zero_cell)
        for (long k = L; k < tail_from; ++k) shells.insert(k);
    Complex total = 0.0;
    for (long k : shells) {
        Cyclotomic a = zeta_shell_coefficient(fc, chi.chi, k);
        if (a.is_zero()) continue;
        total += p_pow(p, -chi.s * double(k)) * a.to_complex();
    }
    if (zero_cell && !f0.is_zero()) {
        // For k >= tail_from every zero-cell character is constant on the
        // shell, so A_k = f(0) [chi_ub trivial] and the tail is geometric.
        if (chi.unramified()) {
            if (chi.s.real() <= 0.0)
                throw std::domain_error("local zeta tail diverges: Re(s) <= 0 with f(0) != 0");
            Complex q = p_pow(p, -chi.s);
            if (std::abs(1.0 - q) < kPoleEps) return CValue::pole_at();
            total += f0.to_complex() * std::pow(q, double(tail_from)) / (1.0 - q);
        }
        // ramified chi_ub: the full character sum kills every deep shell
    }
    return CValue::of(total);
}

GaussSum gauss_sum(const UnitCharacter& chi) {
    if (chi.degree() < 1) throw std::invalid_argument("gauss_sum needs degree >= 1");
    long p = chi.prime();
    int n = chi.degree();
    mpz_class pn = pow_z(p, static_cast<unsigned long>(n));
    Cyclotomic sum;
    for (mpz_class e = 1; e < pn; ++e) {
        if (e % p == 0) continue;
        RationalAngle add_part{mpq_class(e, pn)};
        sum += Cyclotomic::root_of_unity(chi.eval_residue(e) + add_part);
    }
    return GaussSum{chi, sum, sum.to_complex()};
}

Complex twisted_unit_integral(const UnitCharacter& chi, const mpq_class& v) {
    long p = chi.prime();
    long m = std::max<long>({static_cast<long>(chi.degree()), 1, v == 0 ? 1 : -ord_p(v, p)});
    mpz_class pm = pow_z(p, static_cast<unsigned long>(m));
    Cyclotomic sum;
    for (mpz_class e = 1; e < pm; ++e) {
        if (e % p == 0) continue;
        RationalAngle add_part = v == 0 ? RationalAngle()
                                        : RationalAngle(frac_part_p(mpq_class(v * e), p));
        sum += Cyclotomic::root_of_unity(chi.eval_residue(e) + add_part);
    }
    Cyclotomic scaled = sum.scaled(mpq_class(p, p - 1) * mpq_class(1, pm));
    return scaled.to_complex();
}

CValue L_factor(const MultCharacter& chi) {
    if (!chi.unramified()) return CValue::of(1.0);
    long p = chi.prime();
    Complex q = p_pow(p, -chi.s);  // chi(p) = p^{-s}
    if (std::abs(1.0 - q) < kPoleEps) return CValue::pole_at();
    return CValue::of(1.0 / (1.0 - q));
}

CValue rho_factor(const MultCharacter& chi) {
    long p = chi.prime();
    if (chi.unramified()) {
        Complex den = 1.0 - p_pow(p, -chi.s);
        Complex num = 1.0 - p_pow(p, -(1.0 - chi.s));
        if (std::abs(den) < kPoleEps) return CValue::pole_at();
        return CValue::of(num / den);
    }
    GaussSum tau = gauss_sum(chi.chi);
    double sign = chi.chi.sign_at_minus_one();
    long n = chi.degree();
    return CValue::of(tau.value * sign * p_pow(p, double(n) * (chi.s - 1.0)));
}

Complex epsilon_factor(const MultCharacter& chi) {
    if (chi.unramified()) return 1.0;
    return rho_factor(chi).get();
}

CValue L_factor(const UnitaryMultCharacter& omega, Complex s) { return L_factor(omega.at(s)); }
CValue rho_factor(const UnitaryMultCharacter& omega, Complex s) { return rho_factor(omega.at(s)); }
Complex epsilon_factor(const UnitaryMultCharacter& omega, Complex s) {
    return epsilon_factor(omega.at(s));
}

Complex root_number(const UnitCharacter& chi) {
    if (chi.is_trivial()) return 1.0;
    return epsilon_factor(MultCharacter{Complex(0.5, 0.0), chi});
}

FunctionalEquationResiduals functional_equation_check(const BruhatFunction& f,
                                                      const BruhatFunction& g,
                                                      const MultCharacter& chi) {
    MultCharacter dual = chi.dual();
    Complex zf = local_zeta(f, chi).get();
    Complex zg = local_zeta(g, chi).get();
    Complex zfh = local_zeta(f.fourier(), dual).get();
    Complex zgh = local_zeta(g.fourier(), dual).get();
    double cross = std::abs(zf * zgh - zfh * zg);
    Complex rho = rho_factor(chi).get();
    double rho_form = std::abs(zf - rho * zfh);
    return {cross, rho_form};
}

CValue L_arch(int sigma, double w, Complex s) {
    if (sigma != 0 && sigma != 1) throw std::invalid_argument("sigma must be 0 or 1");
    Complex arg = s - Complex(0.0, w) + double(sigma);
    // Gamma_R(arg) has poles where arg/2 hits 0, -1, -2, ...
    Complex half = 0.5 * arg;
    double nearest = std::round(half.real());
    if (nearest <= 0.0 && std::abs(half - nearest) < 1e-12) return CValue::pole_at();
    return CValue::of(gamma_R(arg));
}

CValue rho_arch(int sigma, double w, Complex s) {
    CValue num = L_arch(sigma, w, s);
    CValue den = L_arch(sigma, -w, 1.0 - s);
    if (num.pole) return CValue::pole_at();
    Complex eps = sigma == 0 ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
    if (den.pole) return CValue::of(0.0);  // 1/Gamma vanishes there
    return CValue::of(eps * num.get() / den.get());
}

}  // namespace tate
