#include "tate/characters.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace tate {

mpq_class frac_part_p(const mpq_class& x_in, long p) {
    if (x_in == 0) return mpq_class(0);
    mpq_class x = x_in;
    x.canonicalize();
    long v = ord_p(x, p);
    if (v >= 0) return mpq_class(0);
    // x = a / (p^{-v} d) with d, a coprime to p.  The digits of x below 0
    // are those of a * d^{-1} mod p^{-v}.
    mpz_class pk = pow_z(p, static_cast<unsigned long>(-v));
    mpz_class d = x.get_den() / pk;  // prime-to-p part of the denominator
    mpz_class c = mod_z(x.get_num() * invmod(mod_z(d, pk), pk), pk);
    mpq_class f(c, pk);
    f.canonicalize();
    return f;
}

long AdditiveCharacter::conductor_level() const {
    if (t_ == 0) throw std::domain_error("trivial character has no conductor level");
    return ord_p(t_, p_);
}

RationalAngle AdditiveCharacter::eval(const mpq_class& x) const {
    if (t_ == 0 || x == 0) return RationalAngle();
    return RationalAngle(frac_part_p(mpq_class(t_ * x), p_));
}

RationalAngle AdditiveCharacter::eval(const PadicNumber& x) const {
    if (t_ == 0) return RationalAngle();
    if (x.prime() != p_) throw std::invalid_argument("prime mismatch");
    if (x.is_zero()) {
        if (x.abs_precision() + ord_p(t_, p_) < 0)
            throw std::domain_error("additive_eval: precision shortfall");
        return RationalAngle();
    }
    long vt = ord_p(t_, p_);
    long v = x.valuation() + vt;
    if (v >= 0) return RationalAngle();
    // f(t x) depends on t x mod Z_p, i.e. on x mod p^{-vt}; the digit window
    // of x must reach position -vt.
    if (x.abs_precision() + vt < 0) throw std::domain_error("additive_eval: precision shortfall");
    mpq_class xr = x.residue_times_power(-vt);  // x mod p^{-vt}, exact rational
    return RationalAngle(frac_part_p(mpq_class(t_ * xr), p_));
}

mpz_class product_principle_witness(const mpq_class& x) {
    if (x == 0) throw std::invalid_argument("product principle: x must be nonzero");
    mpq_class s = 0;
    for (auto& [p, e] : factorize(mpz_class(x.get_den()))) {
        (void)e;
        s += frac_part_p(x, p);
    }
    mpq_class w = s - x;
    if (w.get_den() != 1) throw std::logic_error("product principle violated");
    return mpz_class(w.get_num());
}

UnitCharacter UnitCharacter::trivial(long p) { return UnitCharacter(p, 0); }

UnitCharacter UnitCharacter::from_generator_angle(long p, int degree, const RationalAngle& a) {
    if (p == 2) throw std::invalid_argument("use mod2() for p = 2");
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (degree == 0) {
        if (!a.is_zero()) throw std::invalid_argument("trivial character must have angle 0");
        return trivial(p);
    }
    UnitCharacter c(p, degree);
    c.gen_angle_ = a;
    // Order must divide (p-1) p^{n-1}, with p-part exactly p^{n-1} so that
    // the conductor is exactly p^degree.
    mpz_class order = a.order();
    mpz_class full = mpz_class(p - 1) * pow_z(p, static_cast<unsigned long>(degree - 1));
    if (full % order != 0) throw std::invalid_argument("angle order incompatible with degree");
    if (degree == 1) {
        if (a.is_zero()) throw std::invalid_argument("degree 1 needs a nontrivial angle");
    } else {
        long pe = ord_p(order, p);
        if (pe != degree - 1) throw std::invalid_argument("angle order gives a smaller conductor");
    }
    return c;
}

UnitCharacter UnitCharacter::mod2(int degree, const RationalAngle& on_minus1, const RationalAngle& on_5) {
    if (degree == 0) {
        if (!on_minus1.is_zero() || !on_5.is_zero()) throw std::invalid_argument("trivial needs zero angles");
        return trivial(2);
    }
    if (degree == 1) throw std::invalid_argument("(Z/2)^x is trivial: no degree-1 character");
    if (!(on_minus1.is_zero() || on_minus1.value() == mpq_class(1, 2)))
        throw std::invalid_argument("value on -1 must be +-1");
    UnitCharacter c(2, degree);
    c.angle_m1_ = on_minus1;
    c.angle_5_ = on_5;
    mpz_class ord5 = on_5.order();
    mpz_class full = pow_z(2, static_cast<unsigned long>(degree - 2));
    if (full % ord5 != 0) throw std::invalid_argument("angle order incompatible with degree");
    if (degree == 2) {
        if (on_minus1.is_zero() || !on_5.is_zero())
            throw std::invalid_argument("degree 2 is the sign character of (Z/4)^x");
    } else if (ord5 != full) {
        throw std::invalid_argument("angle order gives a smaller conductor");
    }
    return c;
}

long UnitCharacter::generator() const {
    if (p_ == 2) throw std::domain_error("p = 2 uses generators (-1, 5)");
    if (degree_ == 0) throw std::domain_error("trivial character has no generator data");
    return stable_primitive_root(p_);
}

namespace {

struct DlogTable {
    long baby_count;
    mpz_class giant_step_inv;  // g^{-baby_count} mod p^n
    std::unordered_map<unsigned long long, long> baby;
    mpz_class modulus;
    mpz_class order;
};

constexpr size_t kMaxDlogTable = 1000000;

const DlogTable& dlog_table(long p, int n) {
    static std::map<std::pair<long, int>, DlogTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    DlogTable t;
    t.modulus = pow_z(p, static_cast<unsigned long>(n));
    t.order = mpz_class(p - 1) * pow_z(p, static_cast<unsigned long>(n - 1));
    mpz_class sq;
    mpz_sqrt(sq.get_mpz_t(), t.order.get_mpz_t());
    t.baby_count = sq.get_si() + 1;
    if (static_cast<size_t>(t.baby_count) > kMaxDlogTable)
        throw std::runtime_error("discrete log table size cap exceeded");
    long g = stable_primitive_root(p);
    mpz_class cur = 1;
    for (long j = 0; j < t.baby_count; ++j) {
        t.baby.emplace(cur.get_ui(), j);
        cur = mod_z(cur * g, t.modulus);
    }
    t.giant_step_inv = invmod(powmod(mpz_class(g), mpz_class(t.baby_count), t.modulus), t.modulus);
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

mpz_class unit_dlog(long p, int n, const mpz_class& u) {
    const DlogTable& t = dlog_table(p, n);
    mpz_class x = mod_z(u, t.modulus);
    if (x % p == 0) throw std::invalid_argument("dlog of a non-unit");
    for (long i = 0; i * t.baby_count <= t.order; ++i) {
        auto it = t.baby.find(x.get_ui());
        if (it != t.baby.end()) return mpz_class(i) * t.baby_count + it->second;
        x = mod_z(x * t.giant_step_inv, t.modulus);
    }
    throw std::logic_error("dlog not found");
}

std::pair<int, mpz_class> unit_dlog_mod2(int n, const mpz_class& u) {
    mpz_class m = pow_z(2, static_cast<unsigned long>(n));
    mpz_class x = mod_z(u, m);
    if (x % 2 == 0) throw std::invalid_argument("dlog of a non-unit");
    if (n == 1) return {0, 0};
    int a = (mod_z(x, mpz_class(4)) == 3) ? 1 : 0;
    if (a) x = mod_z(-x, m);
    if (n == 2) return {a, 0};
    // x = 5^b mod 2^n, b determined mod 2^{n-2}; order is small enough here
    // that a direct scan is fine.
    mpz_class cur = 1;
    mpz_class ord = pow_z(2, static_cast<unsigned long>(n - 2));
    for (mpz_class b = 0; b < ord; ++b) {
        if (cur == x) return {a, b};
        cur = mod_z(cur * 5, m);
    }
    throw std::logic_error("dlog mod 2^n not found");
}

RationalAngle UnitCharacter::eval_residue(const mpz_class& e) const {
    if (degree_ == 0) return RationalAngle();
    if (p_ == 2) {
        auto [a, b] = unit_dlog_mod2(degree_, e);
        return angle_m1_.times(a) + angle_5_.times(b);
    }
    return gen_angle_.times(unit_dlog(p_, degree_, e));
}

RationalAngle UnitCharacter::eval(const PadicNumber& x) const {
    if (x.prime() != p_) throw std::invalid_argument("prime mismatch");
    if (x.is_zero()) throw std::domain_error("character of Zero rejected");
    if (degree_ == 0) return RationalAngle();
    if (x.precision() < degree_) throw std::domain_error("mult_eval: precision shortfall");
    return eval_residue(x.unit_residue(degree_));
}

UnitCharacter UnitCharacter::inverse() const {
    UnitCharacter c(p_, degree_);
    c.gen_angle_ = -gen_angle_;
    c.angle_m1_ = -angle_m1_;
    c.angle_5_ = -angle_5_;
    return c;
}

int UnitCharacter::sign_at_minus_one() const {
    if (degree_ == 0) return 1;
    mpz_class m = pow_z(p_, static_cast<unsigned long>(degree_));
    RationalAngle a = eval_residue(m - 1);
    if (a.is_zero()) return 1;
    if (a.value() == mpq_class(1, 2)) return -1;
    throw std::logic_error("chi(-1) not +-1");
}

bool UnitCharacter::operator==(const UnitCharacter& o) const {
    return p_ == o.p_ && degree_ == o.degree_ && gen_angle_ == o.gen_angle_ &&
           angle_m1_ == o.angle_m1_ && angle_5_ == o.angle_5_;
}

mpz_class count_characters_of_degree(long p, int n) {
    if (p == 2) throw std::invalid_argument("count is for odd p");
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    if (n == 1) return p - 2;
    return pow_z(p, static_cast<unsigned long>(n - 2)) * (p - 1) * (p - 1);
}

std::vector<UnitCharacter> unit_characters_of_degree(long p, int n) {
    if (p == 2) throw std::invalid_argument("enumeration is for odd p");
    std::vector<UnitCharacter> out;
    mpz_class full = mpz_class(p - 1) * pow_z(p, static_cast<unsigned long>(n - 1));
    for (mpz_class k = 1; k < full; ++k) {
        RationalAngle a{mpq_class(k, full)};
        // Exact degree n: the p-part of the angle order must be p^{n-1}.
        mpz_class ord = a.order();
        long pe = n == 1 ? 0 : ord_p(ord, p);
        if (n == 1 && ord_p(ord, p) != 0) continue;
        if (n > 1 && pe != n - 1) continue;
        out.push_back(UnitCharacter::from_generator_angle(p, n, a));
    }
    return out;
}

Complex MultCharacter::eval(const PadicNumber& x) const {
    auto [vpow, ang] = eval_exact(x);
    Complex scale = std::exp(-s * std::log(double(prime())) * double(vpow));
    return scale * ang.to_complex();
}

std::pair<long, RationalAngle> MultCharacter::eval_exact(const PadicNumber& x) const {
    if (x.is_zero()) throw std::domain_error("character of Zero rejected");
    return {x.valuation(), chi.eval(x)};
}

}  // namespace tate
