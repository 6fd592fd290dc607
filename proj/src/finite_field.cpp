#include "tate/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace tate {

namespace {

using Poly = std::vector<long>;  // coefficients mod p, constant first

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly add_mod(const Poly& a, const Poly& b, long p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        long v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v % p;
    }
    return trim(r);
}

Poly scale_mod(const Poly& a, long c, long p) {
    Poly r = a;
    for (auto& v : r) v = (v * c) % p;
    return trim(r);
}

Poly mul_mod(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(r);
}

// a mod m (m monic)
Poly rem_mod(Poly a, const Poly& m, long p) {
    a = trim(std::move(a));
    while (a.size() >= m.size()) {
        long lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            long& t = a[i + shift];
            t = ((t - lead * m[i]) % p + p) % p;
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly powmod_poly(Poly base, mpz_class e, const Poly& m, long p) {
    Poly r{1};
    base = rem_mod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem_mod(mul_mod(r, base, p), m, p);
        base = rem_mod(mul_mod(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

Poly gcd_poly(Poly a, Poly b, long p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        // make b monic
        long inv = invmod(b.back(), p).get_si();
        Poly bm = scale_mod(b, inv, p);
        Poly r = rem_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const Poly& f, long p) {
    // monic degree-m f: irreducible iff x^{p^m} = x mod f and
    // gcd(x^{p^{m/l}} - x, f) = 1 for every prime l | m.
    int m = static_cast<int>(f.size()) - 1;
    Poly x{0, 1};
    Poly xq = powmod_poly(x, pow_z(p, static_cast<unsigned long>(m)), f, p);
    Poly diff = add_mod(xq, scale_mod(x, p - 1, p), p);
    if (!diff.empty()) return false;
    for (auto& [l, e] : factorize(mpz_class(m))) {
        (void)e;
        Poly xs = powmod_poly(x, pow_z(p, static_cast<unsigned long>(m / l)), f, p);
        Poly d = add_mod(xs, scale_mod(x, p - 1, p), p);
        if (gcd_poly(f, d, p).size() > 1) return false;
    }
    return true;
}

}  // namespace

FqField::FqField(long p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("FqField: p not prime");
    if (m < 1) throw std::invalid_argument("FqField: degree >= 1 required");
    if (m == 1) {
        mod_ = {0, 1};  // x
        return;
    }
    // Lexicographically least monic irreducible: scan constant-first digit
    // vectors (a_0, ..., a_{m-1}) as base-p numbers.
    mpz_class total = pow_z(p, static_cast<unsigned long>(m));
    for (mpz_class idx = 0; idx < total; ++idx) {
        Poly f(static_cast<size_t>(m) + 1, 0);
        mpz_class t = idx;
        for (int i = 0; i < m; ++i) {
            f[static_cast<size_t>(i)] = mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p));
            t /= p;
        }
        f[static_cast<size_t>(m)] = 1;
        if (is_irreducible(f, p)) {
            mod_ = f;
            return;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

const FqField& FqField::get(long p, int m) {
    static std::map<std::pair<long, int>, std::unique_ptr<FqField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<FqField>(new FqField(p, m))).first;
    return *it->second;
}

FqElement FqField::zero() const { return FqElement(*this, {}); }
FqElement FqField::one() const { return FqElement(*this, {1}); }

FqElement FqField::from_coeffs(std::vector<long> coeffs) const {
    for (auto& c : coeffs) c = ((c % p_) + p_) % p_;
    return FqElement(*this, rem_mod(std::move(coeffs), mod_, p_));
}

FqElement FqField::from_integer(long n) const { return from_coeffs({n}); }

FqElement FqField::element(const mpz_class& index) const {
    if (index < 0 || index >= order()) throw std::invalid_argument("element index out of range");
    std::vector<long> c(static_cast<size_t>(m_), 0);
    mpz_class t = index;
    for (int i = 0; i < m_; ++i) {
        c[static_cast<size_t>(i)] = mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p_));
        t /= p_;
    }
    return FqElement(*this, trim(std::move(c)));
}

bool FqElement::is_zero() const { return c_.empty(); }

mpz_class FqElement::index() const {
    mpz_class idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * f_->p() + c_[i];
    return idx;
}

FqElement FqElement::operator+(const FqElement& o) const {
    if (f_ != o.f_) throw std::invalid_argument("field mismatch");
    return FqElement(*f_, add_mod(c_, o.c_, f_->p()));
}

FqElement FqElement::operator-(const FqElement& o) const {
    if (f_ != o.f_) throw std::invalid_argument("field mismatch");
    return FqElement(*f_, add_mod(c_, scale_mod(o.c_, f_->p() - 1, f_->p()), f_->p()));
}

FqElement FqElement::operator*(const FqElement& o) const {
    if (f_ != o.f_) throw std::invalid_argument("field mismatch");
    return FqElement(*f_, rem_mod(mul_mod(c_, o.c_, f_->p()), f_->modulus(), f_->p()));
}

FqElement FqElement::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    return FqElement(*f_, powmod_poly(c_, e, f_->modulus(), f_->p()));
}

FqElement FqElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return pow(f_->order() - 2);
}

bool FqElement::operator==(const FqElement& o) const { return f_ == o.f_ && c_ == o.c_; }

FqElement frobenius(const FqElement& x, const mpz_class& q) {
    // q must be a power of p
    mpz_class t = q;
    long p = x.field().p();
    while (t > 1) {
        if (!mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p)))
            throw std::invalid_argument("frobenius: q is not a power of p");
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return x.pow(q);
}

FqElement norm(const FqElement& x, const mpz_class& q, int n) {
    FqElement acc = x.field().one();
    FqElement cur = x;
    for (int i = 0; i < n; ++i) {
        acc = acc * cur;
        cur = frobenius(cur, q);
    }
    return acc;
}

FqElement trace(const FqElement& x, const mpz_class& q, int n) {
    FqElement acc = x.field().zero();
    FqElement cur = x;
    for (int i = 0; i < n; ++i) {
        acc = acc + cur;
        cur = frobenius(cur, q);
    }
    return acc;
}

FqElement norm_closed_form(const FqElement& x, const mpz_class& q, int n) {
    mpz_class qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    return x.pow((qn - 1) / (q - 1));
}

bool norm_surjective(long p, int f, int n, long enumeration_bound) {
    const FqField& big = FqField::get(p, f * n);
    mpz_class size = big.order();
    if (size > enumeration_bound) throw std::runtime_error("enumeration bound exceeded");
    mpz_class q = pow_z(p, static_cast<unsigned long>(f));
    std::set<std::vector<long>> images;
    for (mpz_class i = 1; i < size; ++i) {
        FqElement x = big.element(i);
        FqElement nx = norm(x, q, n);
        // The norm must land in the fixed field of x -> x^q.
        if (!(frobenius(nx, q) == nx)) throw std::logic_error("norm left the base field");
        images.insert(nx.coeffs());
    }
    return mpz_class(static_cast<long>(images.size())) == q - 1;
}

GaloisElement rec_q(long k, int n) {
    if (n < 1) throw std::invalid_argument("rec_q: level >= 1");
    long r = ((k % n) + n) % n;
    return GaloisElement{n, r};
}

bool rec_compatible(long k, int n, int m) {
    if (m < 1 || n % m != 0) throw std::invalid_argument("rec_compatible needs m | n");
    return rec_q(k, n).k % m == rec_q(k, m).k;
}

}  // namespace tate
