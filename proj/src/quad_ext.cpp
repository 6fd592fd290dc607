#include "tate/quad_ext.hpp"

#include <map>
#include <mutex>
#include <set>

namespace tate {

namespace {

long smallest_nonresidue(long p) {
    for (long a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw std::logic_error("no non-residue found");
}

// index of u mod 8 among the odd residues {1,3,5,7} -> class reps {1,-5,5,-1}
int rep2_of_umod8(long u8) {
    switch (u8) {
        case 1: return 1;
        case 3: return -5;
        case 5: return 5;
        case 7: return -1;
    }
    throw std::logic_error("bad odd residue mod 8");
}

int code_of_rep2(int rep) {
    int v = 0, odd = rep;
    if (odd % 2 == 0) { v = 1; odd /= 2; }
    long u8 = ((odd % 8) + 8) % 8;
    int ui;
    switch (u8) {
        case 1: ui = 0; break;
        case 3: ui = 1; break;
        case 5: ui = 2; break;
        case 7: ui = 3; break;
        default: throw std::invalid_argument("bad Q_2 class representative");
    }
    return 4 * v + ui;
}

int rep2_of_code(int code) {
    static const int odd_rep[4] = {1, -5, 5, -1};
    int r = odd_rep[code % 4];
    return (code >= 4) ? 2 * r : r;
}

}  // namespace

SquareClass::SquareClass(long p, Tag t) : p_(p) {
    if (p == 2) throw std::invalid_argument("tag constructor is for odd p");
    switch (t) {
        case Tag::One: code_ = 0; break;
        case Tag::U: code_ = 1; break;
        case Tag::P: code_ = 2; break;
        case Tag::UP: code_ = 3; break;
        default: throw std::invalid_argument("bad tag");
    }
}

SquareClass::SquareClass(long p, int rep2) : p_(p) {
    if (p != 2) throw std::invalid_argument("integer-representative constructor is for p = 2");
    code_ = code_of_rep2(rep2);
}

bool SquareClass::is_square() const { return code_ == 0; }

SquareClass::Tag SquareClass::tag() const {
    if (p_ == 2) throw std::domain_error("tags are for odd p");
    static const Tag tags[4] = {Tag::One, Tag::U, Tag::P, Tag::UP};
    return tags[code_];
}

int SquareClass::rep2() const {
    if (p_ != 2) throw std::domain_error("rep2 is for p = 2");
    return rep2_of_code(code_);
}

mpq_class SquareClass::rational_rep() const {
    if (p_ == 2) return mpq_class(rep2());
    long u = smallest_nonresidue(p_);
    switch (tag()) {
        case Tag::One: return mpq_class(1);
        case Tag::U: return mpq_class(u);
        case Tag::P: return mpq_class(p_);
        case Tag::UP: return mpq_class(u * p_);
    }
    throw std::logic_error("unreachable");
}

PadicNumber SquareClass::padic_rep(int prec) const {
    if (p_ == 2) return PadicNumber::from_rational(mpq_class(rep2()), 2, prec);
    PadicNumber zeta = teichmuller(p_, prec);
    PadicNumber pp = PadicNumber::from_rational(mpq_class(p_), p_, prec);
    switch (tag()) {
        case Tag::One: return PadicNumber::from_rational(1, 1, p_, prec);
        case Tag::U: return zeta;
        case Tag::P: return pp;
        case Tag::UP: return zeta * pp;
    }
    throw std::logic_error("unreachable");
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    if (p_ != o.p_) throw std::invalid_argument("prime mismatch");
    if (p_ != 2) {
        SquareClass r(p_, Tag::One);
        r.code_ = code_ ^ o.code_;  // Klein four-group
        return r;
    }
    return square_class_of_rational(mpq_class(rep2()) * mpq_class(o.rep2()), 2);
}

std::string SquareClass::name() const {
    if (p_ == 2) return std::to_string(rep2());
    switch (tag()) {
        case Tag::One: return "1";
        case Tag::U: return "u";
        case Tag::P: return "p";
        case Tag::UP: return "up";
    }
    throw std::logic_error("unreachable");
}

SquareClass square_class(const PadicNumber& x) {
    if (x.is_zero()) throw std::domain_error("square class of Zero rejected");
    long p = x.prime();
    int need = p == 2 ? 4 : 3;
    if (x.precision() < need) throw std::domain_error("square_class: insufficient precision");
    int vbit = static_cast<int>(((x.valuation() % 2) + 2) % 2);
    if (p != 2) {
        int ubit = legendre(x.unit_residue(1), p) == 1 ? 0 : 1;
        SquareClass r(p, SquareClass::Tag::One);
        r.code_ = 2 * vbit + ubit;
        return r;
    }
    long u8 = x.unit_residue(3).get_si();  // unit mod 8
    int rep = rep2_of_umod8(u8);
    return SquareClass(2, vbit ? 2 * rep : rep);
}

SquareClass square_class_of_rational(const mpq_class& x, long p) {
    if (x == 0) throw std::domain_error("square class of 0 rejected");
    return square_class(PadicNumber::from_rational(x, p, p == 2 ? 4 : 3));
}

RamificationData classify_quadratic(const SquareClass& tau) {
    if (tau.prime() == 2) throw std::invalid_argument("classification handles odd p only");
    switch (tau.tag()) {
        case SquareClass::Tag::One: throw std::invalid_argument("tau must be a non-square");
        case SquareClass::Tag::U: return {1, 2};   // unramified
        case SquareClass::Tag::P:
        case SquareClass::Tag::UP: return {2, 1};  // ramified
    }
    throw std::logic_error("unreachable");
}

QuadExtElement::QuadExtElement(SquareClass tau, PadicNumber x, PadicNumber y)
    : tau_(std::move(tau)), x_(std::move(x)), y_(std::move(y)) {
    if (tau_.prime() == 2) throw std::invalid_argument("quadratic extensions handled for odd p");
    if (tau_.is_square()) throw std::invalid_argument("tau must be a non-square class");
    if (x_.prime() != tau_.prime() || y_.prime() != tau_.prime())
        throw std::invalid_argument("prime mismatch");
}

QuadExtElement QuadExtElement::operator+(const QuadExtElement& o) const {
    if (!(tau_ == o.tau_)) throw std::invalid_argument("mixed extensions");
    return QuadExtElement(tau_, x_ + o.x_, y_ + o.y_);
}

QuadExtElement QuadExtElement::operator*(const QuadExtElement& o) const {
    if (!(tau_ == o.tau_)) throw std::invalid_argument("mixed extensions");
    int prec = 20;
    if (!x_.is_zero()) prec = x_.precision();
    else if (!y_.is_zero()) prec = y_.precision();
    PadicNumber t = tau_.padic_rep(prec + 4);
    return QuadExtElement(tau_, x_ * o.x_ + t * (y_ * o.y_), x_ * o.y_ + y_ * o.x_);
}

PadicNumber QuadExtElement::norm() const {
    int prec = 20;
    if (!x_.is_zero()) prec = x_.precision();
    else if (!y_.is_zero()) prec = y_.precision();
    PadicNumber t = tau_.padic_rep(prec + 4);
    return x_ * x_ - t * (y_ * y_);
}

mpq_class QuadExtElement::abs_canonical_exponent() const {
    PadicNumber n = norm();
    if (n.is_zero()) throw std::domain_error("norm vanishes to working precision");
    return mpq_class(-n.valuation(), 2);
}

mpq_class QuadExtElement::abs_normalized() const {
    PadicNumber n = norm();
    if (n.is_zero()) return mpq_class(0);
    return n.abs();
}

namespace {

// Norm-group membership table for Q_p(sqrt(tau)), computed once per (p, tau):
// a class c is a norm iff c = x^2 - tau y^2 is solvable, which we witness by
// scanning y and testing whether c + tau y^2 is a square (an exact check:
// even valuation and unit part a quadratic residue, which Hensel lifts).
const std::set<int>& norm_group_codes(long p, SquareClass::Tag tau_tag) {
    static std::map<std::pair<long, int>, std::set<int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, static_cast<int>(tau_tag));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    SquareClass tau(p, tau_tag);
    mpq_class tr = tau.rational_rep();
    std::set<int> members{0};  // squares are norms
    auto is_sq = [&](const mpq_class& z) {
        if (z == 0) return false;
        long v = ord_p(z, p);
        if (v % 2 != 0) return false;
        mpq_class u = z / pow_q(p, v);
        mpz_class num = mod_z(u.get_num(), mpz_class(p));
        mpz_class den = mod_z(u.get_den(), mpz_class(p));
        return legendre(mod_z(num * invmod(den, mpz_class(p)), mpz_class(p)), p) == 1;
    };
    for (SquareClass::Tag ct : {SquareClass::Tag::U, SquareClass::Tag::P, SquareClass::Tag::UP}) {
        mpq_class c = SquareClass(p, ct).rational_rep();
        bool member = false;
        for (long y = 1; y <= 2 * p * p + 2 && !member; ++y) {
            if (is_sq(c + tr * y * y)) member = true;
        }
        if (member) members.insert(SquareClass(p, ct).tag() == SquareClass::Tag::U   ? 1
                                   : SquareClass(p, ct).tag() == SquareClass::Tag::P ? 2
                                                                                     : 3);
    }
    if (members.size() != 2)
        throw std::logic_error("norm group does not have index 2; search too shallow");
    return cache.emplace(key, std::move(members)).first->second;
}

int code_of_class(const SquareClass& c) {
    switch (c.tag()) {
        case SquareClass::Tag::One: return 0;
        case SquareClass::Tag::U: return 1;
        case SquareClass::Tag::P: return 2;
        case SquareClass::Tag::UP: return 3;
    }
    throw std::logic_error("unreachable");
}

}  // namespace

int sgn_tau(const SquareClass& tau, const SquareClass& cls) {
    if (tau.prime() == 2) throw std::invalid_argument("sgn_tau: p = 2 unsupported");
    if (tau.is_square()) throw std::invalid_argument("tau must be a non-square class");
    if (cls.prime() != tau.prime()) throw std::invalid_argument("prime mismatch");
    const auto& grp = norm_group_codes(tau.prime(), tau.tag());
    return grp.count(code_of_class(cls)) ? 1 : -1;
}

int sgn_tau(const SquareClass& tau, const PadicNumber& x) {
    return sgn_tau(tau, square_class(x));
}

}  // namespace tate
