#include "tate/theta.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

namespace tate {

namespace {
constexpr double kPi = std::numbers::pi;
}

double psi(double x) {
    if (x <= 0.0) throw std::invalid_argument("psi needs x > 0");
    double s = 0.0;
    for (long n = 1;; ++n) {
        double t = std::exp(-kPi * double(n) * double(n) * x);
        if (t < 1e-18) break;
        s += t;
    }
    return s;
}

double theta(double x) { return 1.0 + 2.0 * psi(x); }

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.000000000000000};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct Panel {
    double a, b;
};

void gk15(const std::function<Complex(double)>& f, double a, double b, Complex& kron,
          double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        Complex fv;
        if (j == 7) {
            fv = f(c);
            resk += kWgk[7] * fv;
            resg += kWg[3] * fv;
        } else {
            Complex f1 = f(c - h * kXgk[j]);
            Complex f2 = f(c + h * kXgk[j]);
            resk += kWgk[j] * (f1 + f2);
            if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
        }
    }
    kron = resk * h;
    err = std::abs(resk - resg) * h;
}

}  // namespace

Complex integrate_gk(const std::function<Complex(double)>& f, double a, double b, double tol) {
    std::vector<Panel> stack{{a, b}};
    Complex total = 0.0;
    int panels = 0;
    while (!stack.empty()) {
        Panel pn = stack.back();
        stack.pop_back();
        Complex v;
        double err;
        gk15(f, pn.a, pn.b, v, err);
        if (err < tol * (pn.b - pn.a) / (b - a) || pn.b - pn.a < 1e-12) {
            total += v;
        } else {
            double mid = 0.5 * (pn.a + pn.b);
            stack.push_back({pn.a, mid});
            stack.push_back({mid, pn.b});
        }
        if (++panels > 100000) throw std::runtime_error("quadrature did not converge");
    }
    return total;
}

CValue completed_zeta(Complex s) {
    if (std::abs(s) < 1e-14 || std::abs(s - 1.0) < 1e-14) return CValue::pole_at();
    // Upper limit: the integrand decays like exp(-pi x) x^{A/2 - 1}.
    double A = std::max({s.real(), 1.0 - s.real(), 1.0});
    double X = 14.0;
    while (std::exp(-kPi * X) * std::pow(X, 0.5 * A) > 1e-17 && X < 400.0) X += 2.0;
    auto integrand = [&](double x) -> Complex {
        double ps = psi(x);
        Complex t1 = std::exp((0.5 * s - 1.0) * std::log(x));
        Complex t2 = std::exp((0.5 * (1.0 - s) - 1.0) * std::log(x));
        return ps * (t1 + t2);
    };
    Complex integral = integrate_gk(integrand, 1.0, X, 1e-13);
    return CValue::of(1.0 / (s - 1.0) - 1.0 / s + integral);
}

double poisson_residual(const PhiSpec& phi, const Idele& x) {
    // r Phi-admissible at p  <=>  v_p(r) >= m_p - v_p(x_p): the rational
    // lattice is a Z with a = prod p^{c_p}.
    std::set<long> ps;
    for (auto& [p, m] : phi.levels) {
        (void)m;
        ps.insert(p);
    }
    for (auto& [p, xp] : x.overrides()) {
        (void)xp;
        ps.insert(p);
    }
    if (x.diagonal() != 0) {
        for (auto& [p, e] : factorize(mpz_class(x.diagonal().get_num()))) {
            (void)e;
            ps.insert(p);
        }
        for (auto& [p, e] : factorize(mpz_class(x.diagonal().get_den()))) {
            (void)e;
            ps.insert(p);
        }
    }
    mpq_class a = 1, b = 1, scale = 1;
    for (long p : ps) {
        long c = phi.level(p) - x.local_valuation(p);
        a *= pow_q(p, c);
        b *= pow_q(p, -c);
        scale *= pow_q(p, -phi.level(p));  // prod p^{-m_p} from the transform
    }
    double t = x.real_component();
    if (t == 0.0) throw std::invalid_argument("poisson: zero real component");

    auto gaussian_lattice_sum = [](double step) {
        double s = 1.0;  // n = 0
        for (long n = 1;; ++n) {
            double u = double(n) * step;
            double term = std::exp(-kPi * u * u);
            if (term < 1e-18) break;
            s += 2.0 * term;
        }
        return s;
    };
    double lhs = gaussian_lattice_sum(a.get_d() * std::abs(t));
    AdelicAbs ab = adelic_abs(x);
    double rhs = scale.get_d() / ab.value() * gaussian_lattice_sum(b.get_d() / std::abs(t));
    return std::abs(lhs - rhs);
}

}  // namespace tate
