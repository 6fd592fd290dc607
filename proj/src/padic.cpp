#include "tate/padic.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace tate {

namespace {

void check_prime(long p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

void check_prec(int n) {
    if (n < 1) throw std::invalid_argument("precision must be >= 1");
}

}  // namespace

PadicNumber PadicNumber::from_unit(long p, long valuation, const mpz_class& unit, int prec) {
    check_prime(p);
    check_prec(prec);
    mpz_class m = pow_z(p, prec);
    mpz_class u = mod_z(unit, m);
    if (u % p == 0) throw std::invalid_argument("from_unit: not a unit");
    return PadicNumber(p, valuation, u, prec);
}

PadicNumber PadicNumber::zero(long p, int abs_prec) {
    check_prime(p);
    return PadicNumber(p, abs_prec);
}

PadicNumber PadicNumber::from_rational(const mpz_class& num, const mpz_class& den, long p, int prec) {
    check_prime(p);
    check_prec(prec);
    if (den == 0) throw std::invalid_argument("from_rational: zero denominator");
    if (num == 0) return zero(p, prec);
    mpz_class n = num, d = den;
    long v = ord_p(n, p) - ord_p(d, p);
    // Strip the p-parts, then expand the remaining unit n/d mod p^prec.
    mpz_class n1 = n, d1 = d;
    for (long i = ord_p(n, p); i > 0; --i) mpz_divexact_ui(n1.get_mpz_t(), n1.get_mpz_t(), static_cast<unsigned long>(p));
    for (long i = ord_p(d, p); i > 0; --i) mpz_divexact_ui(d1.get_mpz_t(), d1.get_mpz_t(), static_cast<unsigned long>(p));
    mpz_class m = pow_z(p, prec);
    mpz_class u = mod_z(n1 * invmod(mod_z(d1, m), m), m);
    return PadicNumber(p, v, u, prec);
}

PadicNumber PadicNumber::from_rational(const mpq_class& q, long p, int prec) {
    return from_rational(mpz_class(q.get_num()), mpz_class(q.get_den()), p, prec);
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, long p, int prec) {
    return from_rational(n, 1, p, prec);
}

long PadicNumber::valuation() const {
    if (zero_) throw std::domain_error("valuation of Zero rejected; branch on is_zero first");
    return val_;
}

int PadicNumber::precision() const {
    if (zero_) throw std::domain_error("relative precision undefined for Zero");
    return prec_;
}

std::vector<int> PadicNumber::digits() const {
    if (zero_) throw std::domain_error("digits undefined for Zero");
    std::vector<int> ds(static_cast<size_t>(prec_));
    mpz_class u = unit_;
    for (int i = 0; i < prec_; ++i) {
        ds[static_cast<size_t>(i)] = static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p_)));
        mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p_));
    }
    return ds;
}

mpz_class PadicNumber::unit_residue(int k) const {
    if (zero_) throw std::domain_error("unit_residue undefined for Zero");
    if (k < 1 || k > prec_) throw std::invalid_argument("unit_residue: k outside known window");
    return mod_z(unit_, pow_z(p_, k));
}

mpq_class PadicNumber::residue_times_power(long k) const {
    if (zero_) return mpq_class(0);
    if (k < val_ || k > val_ + prec_) throw std::invalid_argument("residue window exceeded");
    mpz_class u = mod_z(unit_, pow_z(p_, static_cast<unsigned long>(k - val_)));
    mpq_class r = mpq_class(u) * pow_q(p_, val_);
    r.canonicalize();
    return r;
}

mpq_class PadicNumber::abs() const {
    if (zero_) return mpq_class(0);
    return pow_q(p_, -val_);
}

PadicNumber PadicNumber::unit_part() const {
    if (zero_) throw std::domain_error("unit_part of Zero rejected");
    return PadicNumber(p_, 0, unit_, prec_);
}

void PadicNumber::check_same_prime(const PadicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("prime mismatch");
}

PadicNumber PadicNumber::truncate_abs(long k) const {
    if (zero_) return PadicNumber(p_, std::min(abs_prec_, k));
    if (k <= val_) return PadicNumber(p_, k);
    long n = std::min<long>(prec_, k - val_);
    return PadicNumber(p_, val_, mod_z(unit_, pow_z(p_, static_cast<unsigned long>(n))), static_cast<int>(n));
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    a.check_same_prime(b);
    long p = a.p_;
    long A = std::min(a.abs_precision(), b.abs_precision());
    if (a.zero_ && b.zero_) return PadicNumber(p, A);
    if (a.zero_) return b.truncate_abs(A);
    if (b.zero_) return a.truncate_abs(A);
    long base = std::min(a.val_, b.val_);
    if (A <= base) return PadicNumber(p, A);
    mpz_class m = pow_z(p, static_cast<unsigned long>(A - base));
    mpz_class r = mod_z(a.unit_ * pow_z(p, static_cast<unsigned long>(a.val_ - base)) +
                        b.unit_ * pow_z(p, static_cast<unsigned long>(b.val_ - base)), m);
    if (r == 0) return PadicNumber(p, A);
    long shift = ord_p(r, p);
    mpz_class u = r;
    for (long i = 0; i < shift; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    long v = base + shift;
    return PadicNumber(p, v, u, static_cast<int>(A - v));
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    mpz_class m = pow_z(p_, prec_);
    return PadicNumber(p_, val_, mod_z(m - unit_, m), prec_);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    a.check_same_prime(b);
    long p = a.p_;
    // O(p^M) * (p^v u) = O(p^{M+v}); O(p^M) * O(p^M') = O(p^{M+M'}).
    if (a.zero_ && b.zero_) return PadicNumber(p, a.abs_prec_ + b.abs_prec_);
    if (a.zero_) return PadicNumber(p, a.abs_prec_ + b.val_);
    if (b.zero_) return PadicNumber(p, b.abs_prec_ + a.val_);
    int n = std::min(a.prec_, b.prec_);
    mpz_class u = mod_z(a.unit_ * b.unit_, pow_z(p, n));
    return PadicNumber(p, a.val_ + b.val_, u, n);
}

PadicNumber PadicNumber::inverse() const {
    if (zero_) throw std::domain_error("inverse of Zero rejected");
    mpz_class m = pow_z(p_, prec_);
    return PadicNumber(p_, -val_, invmod(unit_, m), prec_);
}

std::optional<PadicNumber> PadicNumber::sqrt() const {
    if (zero_) throw std::domain_error("sqrt of Zero rejected");
    if (val_ % 2 != 0) return std::nullopt;
    if (p_ != 2) {
        if (legendre(mod_z(unit_, mpz_class(p_)), p_) != 1) return std::nullopt;
        // Hensel: lift the mod-p root by Newton steps r <- (r + u/r)/2.
        mpz_class r = 0;
        mpz_class u0 = mod_z(unit_, mpz_class(p_));
        for (mpz_class c = 1; c < p_; ++c)
            if (mod_z(c * c, mpz_class(p_)) == u0) { r = c; break; }
        long k = 1;
        while (k < prec_) {
            k = std::min<long>(2 * k, prec_);
            mpz_class m = pow_z(p_, static_cast<unsigned long>(k));
            r = mod_z((r + mod_z(unit_ * invmod(r, m), m)) * invmod(mpz_class(2), m), m);
        }
        return PadicNumber(p_, val_ / 2, r, prec_);
    }
    // p = 2: u is a square iff u = 1 mod 8; each further bit is forced.
    if (prec_ < 3) throw std::invalid_argument("sqrt over Q_2 needs >= 3 digits");
    if (mod_z(unit_, mpz_class(8)) != 1) return std::nullopt;
    int n = prec_ - 1;  // one bit of relative precision is lost at p = 2
    mpz_class r = 1;
    for (int k = 3; k <= n; ++k) {
        mpz_class m = pow_z(2, static_cast<unsigned long>(k + 1));
        if (mod_z(r * r - unit_, m) != 0) r += pow_z(2, static_cast<unsigned long>(k - 1));
    }
    return PadicNumber(2, val_ / 2, mod_z(r, pow_z(2, static_cast<unsigned long>(n))), n);
}

mpq_class PadicNumber::fractional_part() const {
    if (zero_) {
        if (abs_prec_ < 0) throw std::domain_error("fractional_part: digit window below 0");
        return mpq_class(0);
    }
    if (val_ >= 0) return mpq_class(0);
    if (abs_precision() < 0) throw std::domain_error("fractional_part: digit window below 0");
    mpz_class u = mod_z(unit_, pow_z(p_, static_cast<unsigned long>(-val_)));
    mpq_class f = mpq_class(u) * pow_q(p_, val_);
    f.canonicalize();
    return f;
}

PadicNumber PadicNumber::integral_part() const {
    mpq_class f = fractional_part();
    if (f == 0) return zero_ ? *this : truncate_abs(abs_precision());
    long ap = abs_precision();
    int n = static_cast<int>(std::max<long>(ap, 1));
    return *this + PadicNumber::from_rational(-f, p_, n + static_cast<int>(-val_) + 1);
}

bool PadicNumber::same_value(const PadicNumber& o) const {
    if (p_ != o.p_ || zero_ != o.zero_) return false;
    if (zero_) return abs_prec_ == o.abs_prec_;
    return val_ == o.val_ && prec_ == o.prec_ && unit_ == o.unit_;
}

bool PadicNumber::congruent_to(const PadicNumber& o, long k) const {
    if (p_ != o.p_) return false;
    if (abs_precision() < k || o.abs_precision() < k) return false;
    PadicNumber d = *this - o;
    return d.is_zero() ? d.abs_prec_ >= k : d.val_ >= k;
}

std::string PadicNumber::to_text() const {
    std::ostringstream os;
    if (zero_) {
        os << "p=" << p_ << " zero absprec=" << abs_prec_;
        return os.str();
    }
    os << "p=" << p_ << " v=" << val_ << " digits=[";
    auto ds = digits();
    for (size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
    os << "] prec=" << prec_;
    return os.str();
}

PadicNumber PadicNumber::parse_text(const std::string& s) {
    auto fail = [&]() { throw std::invalid_argument("bad p-adic literal: " + s); };
    auto grab = [&](const std::string& key) -> std::string {
        auto pos = s.find(key);
        if (pos == std::string::npos) fail();
        pos += key.size();
        auto end = s.find_first_of(" ]", pos);
        return s.substr(pos, end == std::string::npos ? end : end - pos);
    };
    long p = std::stol(grab("p="));
    if (s.find(" zero ") != std::string::npos) {
        return zero(p, std::stol(grab("absprec=")));
    }
    long v = std::stol(grab("v="));
    int prec = std::stoi(grab("prec="));
    auto lb = s.find('['), rb = s.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail();
    std::string body = s.substr(lb + 1, rb - lb - 1);
    std::vector<int> ds;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) ds.push_back(std::stoi(tok));
    if (static_cast<int>(ds.size()) != prec) fail();
    mpz_class u = 0;
    for (size_t i = ds.size(); i-- > 0;) u = u * p + ds[i];
    return from_unit(p, v, u, prec);
}

std::string PadicNumber::to_json_text() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    if (zero_) {
        j["zero"] = true;
        j["absprec"] = abs_prec_;
    } else {
        j["v"] = val_;
        j["digits"] = digits();
        j["prec"] = prec_;
    }
    return j.dump();
}

PadicNumber PadicNumber::parse_json_text(const std::string& s) {
    nlohmann::json j = nlohmann::json::parse(s);
    long p = j.at("p").get<long>();
    if (j.value("zero", false)) return zero(p, j.at("absprec").get<long>());
    std::vector<int> ds = j.at("digits").get<std::vector<int>>();
    int prec = j.at("prec").get<int>();
    if (static_cast<int>(ds.size()) != prec) throw std::invalid_argument("digit count != prec");
    mpz_class u = 0;
    for (size_t i = ds.size(); i-- > 0;) u = u * p + ds[i];
    return from_unit(p, j.at("v").get<long>(), u, prec);
}

mpz_class factorial_valuation(const mpz_class& n, long p) {
    if (n < 0) throw std::invalid_argument("factorial_valuation: negative n");
    mpz_class total = 0, q = n;
    while (q > 0) {
        q /= p;
        total += q;
    }
    return total;
}

PadicNumber teichmuller(long p, int prec) {
    if (p == 2) throw std::invalid_argument("teichmuller: p = 2 rejected");
    if (!is_prime(p)) throw std::invalid_argument("teichmuller: p not prime");
    long g = smallest_primitive_root(p);
    mpz_class m = pow_z(p, static_cast<unsigned long>(prec));
    // zeta = lim g^{p^k}; the iteration x -> x^p fixes exactly the lift.
    mpz_class x(g), prev(0);
    while (x != prev) {
        prev = x;
        x = powmod(x, mpz_class(p), m);
    }
    return PadicNumber::from_unit(p, 0, x, prec);
}

PadicNumber series_sum(const std::function<PadicNumber(long)>& term, long p, long target_abs,
                       const SeriesOptions& opt) {
    long budget = opt.budget > 0 ? opt.budget : 10 * std::max<long>(target_abs, 1);
    PadicNumber acc = PadicNumber::zero(p, static_cast<int>(std::max<long>(target_abs, 1)));
    long run = 0;
    for (long i = 0; i < budget; ++i) {
        PadicNumber t = term(i);
        if (t.prime() != p) throw std::invalid_argument("series term prime mismatch");
        long tval = t.is_zero() ? t.abs_precision() : t.valuation();
        if (i >= opt.monotone_from && tval >= target_abs) {
            if (++run >= opt.consecutive) return acc.truncate_abs(target_abs);
        } else {
            run = 0;
            acc = acc + t;
        }
    }
    throw std::runtime_error("series_sum: no convergence within budget");
}

}  // namespace tate
