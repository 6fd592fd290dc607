#include "tate/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "tate/bruhat.hpp"
#include "tate/finite_field.hpp"
#include "tate/global.hpp"
#include "tate/quad_ext.hpp"

namespace tate::cli {

namespace {

using nlohmann::ordered_json;

// ---- parameter schema -------------------------------------------------

struct Schema {
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

const std::map<std::string, Schema>& schemas() {
    static const std::map<std::string, Schema> s = {
        {"expand", {{"p", "num"}, {"den", "prec"}}},
        {"arith", {{"p", "op"}, {"x", "y", "n", "series", "target", "prec"}}},
        {"inv", {{"p", "x"}, {"prec"}}},
        {"sqrt", {{"p", "x"}, {"prec"}}},
        {"teichmuller", {{"p"}, {"prec"}}},
        {"squareclass", {{"p"}, {"x", "table"}}},
        {"quadext", {{"p"}, {"tau", "x", "y", "prec"}}},
        {"sgn-tau", {{"p", "tau", "x"}, {"prec"}}},
        {"char-eval", {{"p", "kind"}, {"t", "x", "s", "degree", "angle", "angle-m1", "prec"}}},
        {"product-formula", {{"x"}, {"mode"}}},
        {"fourier", {{}, {"input", "json", "reflect"}}},
        {"integrate", {{}, {"input", "json", "measure", "log-abs", "p", "terms"}}},
        {"mellin", {{"p"}, {"degree", "angle", "angle-m1"}}},
        {"zeta-local", {{"p", "s"}, {"degree", "angle", "angle-m1", "input", "json", "vanishing", "fe-input"}}},
        {"gauss", {{"p", "degree"}, {"angle", "angle-m1"}}},
        {"epsilon", {{"p", "s"}, {"degree", "angle", "angle-m1", "w"}}},
        {"rho", {{"p", "s"}, {"degree", "angle", "angle-m1", "w", "arch", "sigma", "gamma"}}},
        {"root-number", {{"p", "degree"}, {"angle", "angle-m1"}}},
        {"adele-reduce", {{}, {"diagonal", "real", "override", "prec"}}},
        {"idele-decompose", {{}, {"diagonal", "override", "prec"}}},
        {"theta", {{"x"}, {}}},
        {"zeta-global", {{"s"}, {"mode", "prime-bound", "w", "sigma", "ram"}}},
        {"poisson", {{"real"}, {"phi", "override", "diagonal"}}},
        {"ff", {{"p", "op"}, {"f", "n", "x", "k", "level", "levels", "bound"}}},
    };
    return s;
}

void validate(const CommandRequest& req) {
    auto it = schemas().find(req.subcommand);
    if (it == schemas().end())
        throw std::invalid_argument("unknown subcommand: " + req.subcommand);
    const Schema& sch = it->second;
    for (auto& r : sch.required)
        if (!req.params.count(r))
            throw std::invalid_argument(req.subcommand + ": missing required --" + r);
    for (auto& [k, v] : req.params) {
        (void)v;
        bool known = false;
        for (auto& r : sch.required) known = known || r == k;
        for (auto& o : sch.optional) known = known || o == k;
        if (!known) throw std::invalid_argument(req.subcommand + ": unknown key --" + k);
    }
}

// ---- typed parameter access -------------------------------------------

struct Params {
    const CommandRequest& req;

    bool has(const std::string& k) const { return req.params.count(k) > 0; }
    std::string str(const std::string& k, const std::string& dflt = "") const {
        auto it = req.params.find(k);
        return it == req.params.end() ? dflt : it->second;
    }
    long integer(const std::string& k, long dflt) const {
        auto it = req.params.find(k);
        if (it == req.params.end()) return dflt;
        try {
            return std::stol(it->second);
        } catch (...) {
            throw std::invalid_argument("--" + k + ": not an integer: " + it->second);
        }
    }
    long integer(const std::string& k) const {
        if (!has(k)) throw std::invalid_argument("missing --" + k);
        return integer(k, 0);
    }
    mpq_class rational(const std::string& k) const {
        return parse_rational(str(k));
    }
    mpq_class rational(const std::string& k, const mpq_class& dflt) const {
        return has(k) ? rational(k) : dflt;
    }
    double real(const std::string& k, double dflt) const {
        auto it = req.params.find(k);
        if (it == req.params.end()) return dflt;
        return std::stod(it->second);
    }
    Complex complex_val(const std::string& k) const {
        std::string v = str(k);
        auto comma = v.find(',');
        if (comma == std::string::npos) return {std::stod(v), 0.0};
        return {std::stod(v.substr(0, comma)), std::stod(v.substr(comma + 1))};
    }
    bool flag(const std::string& k) const {
        auto it = req.params.find(k);
        if (it == req.params.end()) return false;
        return it->second.empty() || it->second == "1" || it->second == "true";
    }
    int prec() const { return static_cast<int>(integer("prec", req.config.precision)); }
};

// ---- serialization helpers --------------------------------------------

ordered_json cplx(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json cvalue(const CValue& v) {
    if (v.pole) return ordered_json{{"pole", true}};
    return cplx(v.v);
}

ordered_json padic_json(const PadicNumber& x) {
    ordered_json j;
    j["p"] = x.prime();
    if (x.is_zero()) {
        j["zero"] = true;
        j["absprec"] = x.abs_precision();
        return j;
    }
    j["v"] = x.valuation();
    j["digits"] = x.digits();
    j["prec"] = x.precision();
    j["text"] = x.to_text();
    return j;
}

UnitCharacter chi_from(const Params& P) {
    long p = P.integer("p");
    int degree = static_cast<int>(P.integer("degree", 0));
    if (degree == 0) return UnitCharacter::trivial(p);
    RationalAngle a{P.rational("angle", 0)};
    if (p == 2) {
        RationalAngle m1{P.rational("angle-m1", 0)};
        return UnitCharacter::mod2(degree, m1, a);
    }
    return UnitCharacter::from_generator_angle(p, degree, a);
}

// {p, s: [re, im], n, generator_angle: "a/b"}
ordered_json character_descriptor(const UnitCharacter& chi, Complex s) {
    ordered_json j;
    j["p"] = chi.prime();
    j["s"] = ordered_json::array({s.real(), s.imag()});
    j["n"] = chi.degree();
    if (chi.degree() > 0 && chi.prime() != 2)
        j["generator_angle"] = chi.generator_angle().str();
    if (chi.prime() == 2 && chi.degree() > 0) {
        j["angle_on_minus1"] = chi.angle_on_minus1().str();
        j["angle_on_5"] = chi.angle_on_5().str();
    }
    return j;
}

BruhatFunction bruhat_from(const Params& P, const std::string& file_key,
                           const std::string& inline_key, long default_p) {
    if (P.has(file_key)) {
        std::ifstream in(P.str(file_key));
        if (!in) throw std::invalid_argument("cannot open " + P.str(file_key));
        nlohmann::json j;
        in >> j;
        return BruhatFunction::from_json(j);
    }
    if (P.has(inline_key)) return BruhatFunction::from_json(nlohmann::json::parse(P.str(inline_key)));
    // default: 1_{Z_p}
    return BruhatFunction::indicator(default_p, 0, 0);
}

// "5=1/5,7=3" -> overrides map for adeles
Adele adele_from(const Params& P, int prec) {
    Adele a{P.has("diagonal") ? P.rational("diagonal") : mpq_class(0)};
    if (P.has("override")) {
        std::istringstream is(P.str("override"));
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad override: " + tok);
            long p = std::stol(tok.substr(0, eq));
            mpq_class v = parse_rational(tok.substr(eq + 1));
            a.set_component(p, PadicNumber::from_rational(v, p, prec));
        }
    }
    if (P.has("real")) a.set_real(P.real("real", 0.0));
    return a;
}

// ---- per-subcommand handlers ------------------------------------------

ordered_json run_expand(const Params& P, std::string& note) {
    long p = P.integer("p");
    mpz_class num(P.str("num"));
    mpz_class den(P.str("den", "1"));
    PadicNumber x = PadicNumber::from_rational(num, den, p, P.prec());
    ordered_json r;
    r["value"] = padic_json(x);
    if (!x.is_zero()) {
        r["valuation"] = x.valuation();
        r["abs"] = x.abs().get_str();
        r["unit_digits"] = x.unit_part().digits();
        r["fractional_part"] = x.fractional_part().get_str();
        r["integral_part"] = x.integral_part().to_text();
    }
    note = "base-p digit expansion of a rational";
    return r;
}

ordered_json run_arith(const Params& P, std::string& note) {
    long p = P.integer("p");
    std::string op = P.str("op");
    int prec = P.prec();
    ordered_json r;
    if (op == "add" || op == "mul" || op == "sub") {
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), p, prec);
        PadicNumber y = PadicNumber::from_rational(P.rational("y"), p, prec);
        PadicNumber z = op == "add" ? x + y : op == "sub" ? x - y : x * y;
        r["value"] = padic_json(z);
        note = "digit arithmetic in Q_p";
    } else if (op == "neg") {
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), p, prec);
        r["value"] = padic_json(-x);
        note = "additive inverse in Q_p";
    } else if (op == "vfact") {
        mpz_class n(P.str("n"));
        r["valuation"] = factorial_valuation(n, p).get_str();
        note = "ord_p(n!) by the floor-sum formula";
    } else if (op == "series") {
        std::string which = P.str("series", "geom");
        long target = P.integer("target", prec);
        PadicNumber s = [&] {
            if (which == "geom")
                return series_sum([&](long i) { return PadicNumber::from_rational(pow_q(p, i), p,
                                                                                  static_cast<int>(target) + 1); },
                                  p, target);
            if (which == "nfact")
                return series_sum(
                    [&](long i) {
                        mpz_class f = 1;
                        for (long j = 2; j <= i; ++j) f *= j;
                        return PadicNumber::from_rational(mpq_class(f * i), p,
                                                          static_cast<int>(target) + 1);
                    },
                    p, target, {0, 1, p});
            throw std::invalid_argument("unknown series: " + which);
        }();
        r["value"] = padic_json(s);
        note = which == "geom" ? "sum of p^i, equal to 1/(1-p)" : "sum of n*n!, equal to -1";
    } else {
        throw std::invalid_argument("unknown arith op: " + op);
    }
    return r;
}

ordered_json run_squareclass(const Params& P, std::string& note) {
    long p = P.integer("p");
    ordered_json r;
    if (P.has("x")) {
        SquareClass c = square_class_of_rational(P.rational("x"), p);
        r["class"] = c.name();
        r["is_square"] = c.is_square();
    }
    if (P.flag("table") || !P.has("x")) {
        ordered_json tbl = ordered_json::array();
        if (p == 2) {
            for (int rep : {1, -1, 2, -2, 5, -5, 10, -10}) tbl.push_back(std::to_string(rep));
        } else {
            for (auto t : {SquareClass::Tag::One, SquareClass::Tag::U, SquareClass::Tag::P,
                           SquareClass::Tag::UP}) {
                SquareClass c(p, t);
                tbl.push_back({{"name", c.name()}, {"representative", c.rational_rep().get_str()}});
            }
        }
        r["classes"] = tbl;
    }
    note = "square classes of Q_p^x";
    return r;
}

SquareClass tau_from(const Params& P) {
    long p = P.integer("p");
    std::string t = P.str("tau", "u");
    if (t == "u") return SquareClass(p, SquareClass::Tag::U);
    if (t == "p") return SquareClass(p, SquareClass::Tag::P);
    if (t == "up") return SquareClass(p, SquareClass::Tag::UP);
    throw std::invalid_argument("tau must be one of u, p, up");
}

ordered_json run_quadext(const Params& P, std::string& note) {
    long p = P.integer("p");
    ordered_json r;
    ordered_json tbl = ordered_json::array();
    for (auto t : {SquareClass::Tag::U, SquareClass::Tag::P, SquareClass::Tag::UP}) {
        SquareClass tau(p, t);
        RamificationData rd = classify_quadratic(tau);
        ordered_json norm_classes = ordered_json::array();
        for (auto ct : {SquareClass::Tag::One, SquareClass::Tag::U, SquareClass::Tag::P,
                        SquareClass::Tag::UP}) {
            SquareClass c(p, ct);
            if (sgn_tau(tau, c) == 1) norm_classes.push_back(c.name());
        }
        tbl.push_back({{"p", p},
                       {"tau", tau.name()},
                       {"e", rd.e},
                       {"f", rd.f},
                       {"norm_group_classes", norm_classes}});
    }
    r["extensions"] = tbl;
    if (P.has("x") || P.has("y")) {
        SquareClass tau = tau_from(P);
        int prec = P.prec();
        QuadExtElement a(tau, PadicNumber::from_rational(P.rational("x", 0), p, prec),
                         PadicNumber::from_rational(P.rational("y", 0), p, prec));
        PadicNumber n = a.norm();
        r["norm"] = padic_json(n);
        if (!n.is_zero()) {
            mpq_class e2 = a.abs_canonical_exponent();
            r["abs_canonical_exponent"] = e2.get_str();
            r["abs_normalized"] = a.abs_normalized().get_str();
        }
    }
    note = "ramification data e*f = 2 of the quadratic extensions";
    return r;
}

ordered_json run_char_eval(const Params& P, std::string& note) {
    long p = P.integer("p");
    std::string kind = P.str("kind");
    ordered_json r;
    if (kind == "additive") {
        AdditiveCharacter chi(p, P.rational("t", 1));
        RationalAngle a = chi.eval(P.rational("x"));
        r["angle"] = a.str();
        r["value"] = cplx(a.to_complex());
        if (!chi.is_trivial()) r["conductor_level"] = chi.conductor_level();
        note = "additive character exp(2 pi i f(t x))";
    } else if (kind == "mult") {
        UnitCharacter chi = chi_from(P);
        MultCharacter mc{P.complex_val("s"), chi};
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), p, P.prec());
        auto [vpow, ang] = mc.eval_exact(x);
        r["valuation_power"] = vpow;
        r["unit_angle"] = ang.str();
        r["value"] = cplx(mc.eval(x));
        note = "multiplicative character |x|^s chi(u(x))";
    } else if (kind == "count") {
        r["count"] = count_characters_of_degree(p, static_cast<int>(P.integer("degree"))).get_str();
        note = "number of characters of exact degree n";
    } else if (kind == "minus-one") {
        UnitCharacter chi = chi_from(P);
        r["chi_minus_one"] = chi.sign_at_minus_one();
        note = "chi(-1) as an exact sign";
    } else {
        throw std::invalid_argument("unknown kind: " + kind);
    }
    return r;
}

ordered_json run_product_formula(const Params& P, std::string& note) {
    mpq_class x = P.rational("x");
    std::string mode = P.str("mode", "abs");
    ordered_json r;
    if (mode == "abs") {
        mpq_class prod = 1;
        ordered_json factors = ordered_json::array();
        auto push = [&](long p, long v) {
            factors.push_back({{"p", p}, {"abs", pow_q(p, -v).get_str()}});
            prod *= pow_q(p, -v);
        };
        for (auto& [p, e] : factorize(mpz_class(x.get_num()))) push(p, e);
        for (auto& [p, e] : factorize(mpz_class(x.get_den()))) push(p, -e);
        mpq_class arch = x > 0 ? x : mpq_class(-x);
        r["finite_factors"] = factors;
        r["archimedean"] = arch.get_str();
        mpq_class total = prod * arch;
        r["product"] = total.get_str();
        r["is_one"] = (total == 1);
        note = "product formula over all places";
    } else if (mode == "char") {
        r["witness"] = product_principle_witness(x).get_str();
        r["product_is_one"] = true;
        note = "additive character product principle witness";
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    return r;
}

ordered_json run_fourier(const Params& P, std::string& note) {
    BruhatFunction f = bruhat_from(P, "input", "json", 2);
    BruhatFunction g = P.flag("reflect") ? f.reflect() : f.fourier();
    note = P.flag("reflect") ? "reflection x -> f(-x)" : "closed-form Fourier transform";
    return g.to_json();
}

ordered_json run_integrate(const Params& P, std::string& note) {
    ordered_json r;
    if (P.has("log-abs") || (!P.has("input") && !P.has("json"))) {
        long p = P.integer("p");
        int terms = static_cast<int>(P.integer("terms", 60));
        r["value"] = log_abs_integral(p, terms);
        r["limit"] = -std::log(double(p)) / double(p - 1);
        note = "partial sums of the log|x| integral over Z_p";
        return r;
    }
    BruhatFunction f = bruhat_from(P, "input", "json", 2);
    std::string measure = P.str("measure", "additive");
    Cyclotomic v = measure == "mult" ? f.integrate_multiplicative() : f.integrate();
    r["value"] = cplx(v.to_complex());
    if (v.is_rational()) r["exact"] = v.rational_value().get_str();
    note = measure == "mult" ? "multiplicative Haar integral, vol(Z_p^x) = 1"
                             : "additive Haar integral, vol(Z_p) = 1";
    return r;
}

ordered_json run_zeta_local(const Params& P, std::string& note) {
    long p = P.integer("p");
    UnitCharacter chi = chi_from(P);
    MultCharacter mc{P.complex_val("s"), chi};
    ordered_json r;
    if (P.has("vanishing")) {
        Complex v = twisted_unit_integral(chi, P.rational("vanishing"));
        r["integral"] = cplx(v);
        note = "twisted unit integral (vanishing off |v| = p^n)";
        return r;
    }
    BruhatFunction f = bruhat_from(P, "input", "json", p);
    if (P.has("fe-input")) {
        std::ifstream in(P.str("fe-input"));
        nlohmann::json gj;
        in >> gj;
        BruhatFunction g = BruhatFunction::from_json(gj);
        auto res = functional_equation_check(f, g, mc);
        r["cross_residual"] = res.cross;
        r["rho_residual"] = res.rho_form;
        note = "local functional equation residuals";
        return r;
    }
    r["value"] = cvalue(local_zeta(f, mc));
    note = "local zeta integral Z(f, chi, s)";
    return r;
}

ordered_json run_gauss(const Params& P, std::string& note) {
    GaussSum g = gauss_sum(chi_from(P));
    ordered_json r;
    r["character"] = character_descriptor(g.chi, Complex(0.0, 0.0));
    r["value"] = cplx(g.value);
    r["abs"] = std::abs(g.value);
    r["expected_abs"] = std::pow(double(P.integer("p")), g.chi.degree() / 2.0);
    note = "Gauss sum over (Z/p^n)^x";
    return r;
}

ordered_json run_epsilon(const Params& P, std::string& note) {
    UnitaryMultCharacter omega{P.real("w", 0.0), chi_from(P)};
    Complex s = P.complex_val("s");
    ordered_json r;
    r["character"] = character_descriptor(omega.chi, s - Complex(0.0, omega.w));
    r["L"] = cvalue(L_factor(omega, s));
    r["epsilon"] = cplx(epsilon_factor(omega, s));
    note = "local L and epsilon factors";
    return r;
}

ordered_json run_rho(const Params& P, std::string& note) {
    Complex s = P.complex_val("s");
    ordered_json r;
    if (P.flag("arch")) {
        int sigma = static_cast<int>(P.integer("sigma", 0));
        double w = P.real("w", 0.0);
        r["rho"] = cvalue(rho_arch(sigma, w, s));
        r["gamma_R"] = cplx(gamma_R(s));
        r["gamma_C"] = cplx(gamma_C(s));
        note = "archimedean rho and Gamma factors";
        return r;
    }
    UnitaryMultCharacter omega{P.real("w", 0.0), chi_from(P)};
    r["character"] = character_descriptor(omega.chi, s - Complex(0.0, omega.w));
    r["rho"] = cvalue(rho_factor(omega, s));
    note = "local functional equation factor rho";
    return r;
}

ordered_json run_adele_reduce(const Params& P, std::string& note) {
    Adele x = adele_from(P, P.prec());
    auto [d, r0] = fundamental_domain_reduce(x);
    ordered_json r;
    r["r"] = r0.get_str();
    r["d_diagonal"] = d.diagonal().get_str();
    r["d_real"] = d.real_component();
    r["d_in_domain"] = in_fundamental_domain(d);
    note = "reduction into prod Z_p x [0,1)";
    return r;
}

ordered_json run_idele_decompose(const Params& P, std::string& note) {
    Idele x{adele_from(P, P.prec())};
    auto [q, u] = idele_unit_decomposition(x);
    ordered_json r;
    r["q"] = q.get_str();
    r["unit_diagonal"] = u.diagonal().get_str();
    AdelicAbs ab = adelic_abs(x);
    r["abs_finite"] = ab.finite.get_str();
    note = "idele = positive rational x unit block";
    return r;
}

ordered_json run_theta(const Params& P, std::string& note) {
    double x = P.real("x", 1.0);
    ordered_json r;
    r["theta"] = theta(x);
    r["psi"] = psi(x);
    r["theta_inv"] = theta(1.0 / x);
    r["symmetry_residual"] = std::abs(theta(1.0 / x) - std::sqrt(x) * theta(x));
    note = "theta series and its inversion symmetry";
    return r;
}

GlobalCharacter omega_from(const Params& P) {
    GlobalCharacter w;
    w.w = P.real("w", 0.0);
    w.sigma = static_cast<int>(P.integer("sigma", 0));
    if (P.has("ram")) {
        std::istringstream is(P.str("ram"));
        std::string tok;
        while (std::getline(is, tok, ',')) {
            std::istringstream ts(tok);
            std::string a, b, c;
            std::getline(ts, a, ':');
            std::getline(ts, b, ':');
            std::getline(ts, c);
            long p = std::stol(a);
            int deg = std::stoi(b);
            RationalAngle ang{parse_rational(c)};
            w.ramified.emplace(p, p == 2 ? UnitCharacter::mod2(deg, RationalAngle(), ang)
                                         : UnitCharacter::from_generator_angle(p, deg, ang));
        }
    }
    return w;
}

ordered_json run_zeta_global(const Params& P, std::string& note) {
    Complex s = P.complex_val("s");
    std::string mode = P.str("mode", "lambda");
    ordered_json r;
    if (mode == "lambda") {
        r["value"] = cvalue(completed_zeta(s));
        note = "completed zeta via the theta integral";
    } else if (mode == "euler") {
        GlobalCharacter om = omega_from(P);
        GlobalLResult res = global_L(om, s, P.integer("prime-bound", P.req.config.prime_bound));
        r["value"] = cvalue(res.pole ? CValue::pole_at() : CValue::of(res.value));
        r["truncation_bound"] = res.truncation_bound;
        note = "global L by truncated Euler product times the Gamma factor";
    } else if (mode == "epsilon") {
        GlobalCharacter om = omega_from(P);
        r["value"] = cplx(global_epsilon(om, s));
        note = "global epsilon as the finite product of local factors";
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    return r;
}

ordered_json run_poisson(const Params& P, std::string& note) {
    PhiSpec phi;
    if (P.has("phi")) {
        std::istringstream is(P.str("phi"));
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("bad phi spec: " + tok);
            phi.levels[std::stol(tok.substr(0, colon))] = std::stol(tok.substr(colon + 1));
        }
    }
    Adele base{P.has("diagonal") ? P.rational("diagonal") : mpq_class(1)};
    if (P.has("override")) {
        std::istringstream is(P.str("override"));
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad override: " + tok);
            long p = std::stol(tok.substr(0, eq));
            base.set_component(p, PadicNumber::from_rational(parse_rational(tok.substr(eq + 1)),
                                                             p, 20));
        }
    }
    base.set_real(P.real("real", 1.0));
    Idele x{base};
    ordered_json r;
    r["residual"] = poisson_residual(phi, x);
    note = "adelic Poisson summation residual";
    return r;
}

ordered_json run_ff(const Params& P, std::string& note) {
    long p = P.integer("p");
    int f = static_cast<int>(P.integer("f", 1));
    int n = static_cast<int>(P.integer("n", 1));
    std::string op = P.str("op");
    mpz_class q = pow_z(p, static_cast<unsigned long>(f));
    ordered_json r;
    if (op == "construct") {
        const FqField& F = FqField::get(p, f * n);
        r["modulus"] = F.modulus();
        r["order"] = F.order().get_str();
        note = "deterministic field construction";
    } else if (op == "frobenius") {
        const FqField& F = FqField::get(p, f * n);
        FqElement x = F.element(mpz_class(P.str("x", "1")));
        r["image"] = frobenius(x, q).coeffs();
        note = "Frobenius x -> x^q";
    } else if (op == "norm" || op == "trace") {
        const FqField& F = FqField::get(p, f * n);
        FqElement x = F.element(mpz_class(P.str("x", "1")));
        FqElement v = op == "norm" ? norm(x, q, n) : trace(x, q, n);
        r["value"] = v.coeffs();
        if (op == "norm" && !x.is_zero())
            r["closed_form"] = norm_closed_form(x, q, n).coeffs();
        note = op == "norm" ? "norm as product of conjugates" : "trace as sum of conjugates";
    } else if (op == "surjective") {
        r["surjective"] = norm_surjective(p, f, n, P.integer("bound", P.req.config.enum_bound));
        note = "norm surjectivity by exhaustive enumeration";
    } else if (op == "rec") {
        long k = P.integer("k", 0);
        int lvl = static_cast<int>(P.integer("level", n));
        GaloisElement g = rec_q(k, lvl);
        r["k_mod_n"] = g.k;
        r["level"] = g.n;
        note = "reciprocity map at a finite level";
    } else {
        throw std::invalid_argument("unknown ff op: " + op);
    }
    return r;
}

}  // namespace

ResultDocument dispatch(const CommandRequest& req) {
    validate(req);
    Params P{req};
    ResultDocument doc;
    doc.subcommand = req.subcommand;
    for (auto& [k, v] : req.params) doc.inputs[k] = v;

    auto& sc = req.subcommand;
    if (sc == "expand") doc.result = run_expand(P, doc.note);
    else if (sc == "arith") doc.result = run_arith(P, doc.note);
    else if (sc == "inv") {
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), P.integer("p"), P.prec());
        doc.result["value"] = padic_json(x.inverse());
        doc.note = "multiplicative inverse by unit inversion mod p^N";
    } else if (sc == "sqrt") {
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), P.integer("p"), P.prec());
        auto rt = x.sqrt();
        if (rt) doc.result["root"] = padic_json(*rt);
        doc.result["is_square"] = rt.has_value();
        doc.note = "Hensel lift of the square root";
    } else if (sc == "teichmuller") {
        doc.result["value"] = padic_json(teichmuller(P.integer("p"), P.prec()));
        doc.note = "the (p-1)st root of unity lifting the primitive root";
    } else if (sc == "squareclass") doc.result = run_squareclass(P, doc.note);
    else if (sc == "quadext") doc.result = run_quadext(P, doc.note);
    else if (sc == "sgn-tau") {
        SquareClass tau = tau_from(P);
        PadicNumber x = PadicNumber::from_rational(P.rational("x"), P.integer("p"), P.prec());
        doc.result["sign"] = sgn_tau(tau, x);
        doc.note = "norm-subgroup membership sign";
    } else if (sc == "char-eval") doc.result = run_char_eval(P, doc.note);
    else if (sc == "product-formula") doc.result = run_product_formula(P, doc.note);
    else if (sc == "fourier") doc.result = run_fourier(P, doc.note);
    else if (sc == "integrate") doc.result = run_integrate(P, doc.note);
    else if (sc == "mellin") {
        Cyclotomic v = mellin_indicator_unit(chi_from(P));
        doc.result["value"] = cplx(v.to_complex());
        doc.result["exact"] = v.is_rational() ? v.rational_value().get_str() : std::string("-");
        doc.note = "Mellin transform of the unit indicator";
    } else if (sc == "zeta-local") doc.result = run_zeta_local(P, doc.note);
    else if (sc == "gauss") doc.result = run_gauss(P, doc.note);
    else if (sc == "epsilon") doc.result = run_epsilon(P, doc.note);
    else if (sc == "rho") doc.result = run_rho(P, doc.note);
    else if (sc == "root-number") {
        Complex w = root_number(chi_from(P));
        doc.result["value"] = cplx(w);
        doc.result["abs"] = std::abs(w);
        doc.note = "root number at the self-dual shift";
    } else if (sc == "adele-reduce") doc.result = run_adele_reduce(P, doc.note);
    else if (sc == "idele-decompose") doc.result = run_idele_decompose(P, doc.note);
    else if (sc == "theta") doc.result = run_theta(P, doc.note);
    else if (sc == "zeta-global") doc.result = run_zeta_global(P, doc.note);
    else if (sc == "poisson") doc.result = run_poisson(P, doc.note);
    else if (sc == "ff") doc.result = run_ff(P, doc.note);
    else throw std::invalid_argument("unknown subcommand: " + sc);
    return doc;
}

std::string emit(const ResultDocument& doc, OutputMode mode) {
    ordered_json j;
    j["subcommand"] = doc.subcommand;
    j["inputs"] = doc.inputs.is_null() ? ordered_json::object() : doc.inputs;
    j["result"] = doc.result;
    j["note"] = doc.note;
    if (mode == OutputMode::Json) return j.dump(2) + "\n";
    std::ostringstream os;
    os << doc.subcommand << "\n";
    std::function<void(const std::string&, const ordered_json&)> walk =
        [&](const std::string& prefix, const ordered_json& v) {
            if (v.is_object()) {
                for (auto& [k, w] : v.items()) walk(prefix.empty() ? k : prefix + "." + k, w);
            } else {
                os << "  " << prefix << " = " << v.dump() << "\n";
            }
        };
    walk("", j["result"]);
    os << "  # " << doc.note << "\n";
    return os.str();
}

Config load_config(const std::string& config_path,
                   const std::map<std::string, std::string>& flag_overrides) {
    Config c;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
        nlohmann::json j;
        in >> j;
        if (j.count("precision")) c.precision = j["precision"].get<int>();
        if (j.count("tol")) c.tol = j["tol"].get<double>();
        if (j.count("prime_bound")) c.prime_bound = j["prime_bound"].get<long>();
        if (j.count("enum_bound")) c.enum_bound = j["enum_bound"].get<long>();
    }
    auto env = [](const char* k) -> std::string {
        const char* v = std::getenv(k);
        return v ? v : "";
    };
    if (auto v = env("TATE_PRECISION"); !v.empty()) c.precision = std::stoi(v);
    if (auto v = env("TATE_TOL"); !v.empty()) c.tol = std::stod(v);
    if (auto v = env("TATE_PRIME_BOUND"); !v.empty()) c.prime_bound = std::stol(v);
    if (auto v = env("TATE_ENUM_BOUND"); !v.empty()) c.enum_bound = std::stol(v);
    if (auto it = flag_overrides.find("prec"); it != flag_overrides.end())
        c.precision = std::stoi(it->second);
    if (auto it = flag_overrides.find("tol"); it != flag_overrides.end())
        c.tol = std::stod(it->second);
    if (auto it = flag_overrides.find("prime-bound"); it != flag_overrides.end())
        c.prime_bound = std::stol(it->second);
    if (auto it = flag_overrides.find("enum-bound"); it != flag_overrides.end())
        c.enum_bound = std::stol(it->second);
    return c;
}

const std::map<std::string, std::string>& operation_routes() {
    static const std::map<std::string, std::string> routes = {
        {"from_rational", "expand"},
        {"valuation", "expand"},
        {"abs_p", "expand"},
        {"unit_part", "expand"},
        {"fractional_part", "expand"},
        {"integral_part", "expand"},
        {"add", "arith"},
        {"mul", "arith"},
        {"neg", "arith"},
        {"factorial_valuation", "arith"},
        {"series_sum", "arith"},
        {"inverse", "inv"},
        {"hensel_sqrt", "sqrt"},
        {"teichmuller", "teichmuller"},
        {"square_class", "squareclass"},
        {"classify_quadratic", "quadext"},
        {"norm_quadext", "quadext"},
        {"abs_canonical", "quadext"},
        {"abs_normalized", "quadext"},
        {"sgn_tau", "sgn-tau"},
        {"additive_eval", "char-eval"},
        {"mult_eval", "char-eval"},
        {"enumerate_degree", "char-eval"},
        {"chi_minus_one", "char-eval"},
        {"product_principle_check", "product-formula"},
        {"canonicalize", "fourier"},
        {"fourier", "fourier"},
        {"reflect", "fourier"},
        {"integrate_additive", "integrate"},
        {"integrate_multiplicative", "integrate"},
        {"log_abs_integral", "integrate"},
        {"mellin_indicator_unit", "mellin"},
        {"local_zeta", "zeta-local"},
        {"vanishing_lemma_check", "zeta-local"},
        {"functional_equation_check", "zeta-local"},
        {"gauss_sum", "gauss"},
        {"L_factor", "epsilon"},
        {"epsilon", "epsilon"},
        {"rho", "rho"},
        {"gamma_R", "rho"},
        {"gamma_C", "rho"},
        {"rho_arch", "rho"},
        {"root_number", "root-number"},
        {"adelic_abs", "idele-decompose"},
        {"fundamental_domain_reduce", "adele-reduce"},
        {"idele_unit_decomposition", "idele-decompose"},
        {"theta", "theta"},
        {"psi", "theta"},
        {"completed_zeta", "zeta-global"},
        {"global_L", "zeta-global"},
        {"global_epsilon", "zeta-global"},
        {"poisson_check", "poisson"},
        {"frobenius", "ff"},
        {"norm_ff", "ff"},
        {"trace_ff", "ff"},
        {"norm_surjectivity_check", "ff"},
        {"rec_q", "ff"},
    };
    return routes;
}

std::vector<std::string> subcommand_names() {
    std::vector<std::string> out;
    for (auto& [k, v] : schemas()) {
        (void)v;
        out.push_back(k);
    }
    return out;
}

}  // namespace tate::cli
