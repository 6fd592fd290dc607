#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <map>
#include <thread>

#include "tate/characters.hpp"

#include "oracles.hpp"

using namespace tate;

namespace {

// Independent conductor oracle: tabulate the character on every residue of
// (Z/p^n)^x by scanning powers of the generator, then find the least j with
// the character trivial on all residues = 1 mod p^j.
int conductor_by_scan(long p, int n, long g, const mpq_class& gen_angle) {
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    std::map<long, mpq_class> val;
    long cur = 1;
    long order = (p - 1) * (pn / p);
    for (long k = 0; k < order; ++k) {
        mpq_class a = gen_angle * k;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        a -= fl;
        a.canonicalize();
        val[cur] = a;
        cur = (cur * g) % pn;
    }
    for (int j = 0; j <= n; ++j) {
        long pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        bool trivial = true;
        for (auto& [r, a] : val)
            if (r % pj == 1 % pj && a != 0) trivial = false;
        if (trivial) return j;
    }
    return n + 1;
}

}  // namespace

TEST_CASE("fractional part of rationals") {
    CHECK(frac_part_p(mpq_class(7, 2), 5) == 0);  // v >= 0
    CHECK(frac_part_p(mpq_class(3, 5), 5) == mpq_class(3, 5));
    CHECK(frac_part_p(mpq_class(13, 5), 5) == mpq_class(3, 5));
    // f(x+y) - f(x) - f(y) is an integer, and f lands in [0,1) cap Z[1/p]
    for (int t = 0; t < 200; ++t) {
        long p = std::vector<long>{2, 3, 5, 7}[static_cast<size_t>(oracle::rand_in(0, 3))];
        mpq_class x(oracle::rand_in(-400, 400), oracle::rand_in(1, 400));
        mpq_class y(oracle::rand_in(-400, 400), oracle::rand_in(1, 400));
        x.canonicalize();
        y.canonicalize();
        mpq_class fx = frac_part_p(x, p), fy = frac_part_p(y, p), fxy = frac_part_p(x + y, p);
        CHECK(fx >= 0);
        CHECK(fx < 1);
        mpq_class d = fxy - fx - fy;
        CHECK(d.get_den() == 1);
        // denominator of f is a power of p
        mpz_class den = fx.get_den();
        while (den % p == 0) den /= p;
        CHECK(den == 1);
    }
}

TEST_CASE("additive character basics") {
    long p = 5;
    AdditiveCharacter chi(p, 1);
    // x in Z_p -> angle 0
    CHECK(chi.eval(mpq_class(7)).is_zero());
    CHECK(chi.eval(PadicNumber::from_rational(12, 7, p, 8)).is_zero());
    // x = 1/p -> angle 1/p
    CHECK(chi.eval(mpq_class(1, 5)).value() == mpq_class(1, 5));
    // homomorphism on random pairs
    for (int t = 0; t < 150; ++t) {
        mpq_class x(oracle::rand_in(-300, 300), oracle::rand_in(1, 300));
        mpq_class y(oracle::rand_in(-300, 300), oracle::rand_in(1, 300));
        x.canonicalize();
        y.canonicalize();
        RationalAngle lhs = chi.eval(mpq_class(x + y));
        RationalAngle rhs = chi.eval(x) + chi.eval(y);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("conductor of chi_{p,t} is p^{-v(t)} Z_p") {
    long p = 3;
    for (long vt : {-2L, -1L, 0L, 1L, 3L}) {
        mpq_class t = pow_q(p, vt) * 2;  // v(t) = vt
        AdditiveCharacter chi(p, t);
        CHECK(chi.conductor_level() == vt);
        long n = -vt;
        // trivial on p^n Z_p
        for (int k = 0; k < 40; ++k) {
            mpq_class x = pow_q(p, n) * oracle::rand_in(1, 50);
            CHECK(chi.eval(x).is_zero());
        }
        // nontrivial somewhere on p^{n-1} Z_p
        bool hit = false;
        for (int k = 1; k < p; ++k)
            if (!chi.eval(mpq_class(pow_q(p, n - 1) * k)).is_zero()) hit = true;
        CHECK(hit);
    }
}

TEST_CASE("additive character needs enough digits") {
    long p = 5;
    AdditiveCharacter chi(p, 1);
    PadicNumber shallow = PadicNumber::from_unit(p, -6, 2, 3);  // abs prec -3 < 0
    CHECK_THROWS_AS(chi.eval(shallow), std::domain_error);
}

TEST_CASE("product principle witness") {
    // single prime
    CHECK(product_principle_witness(mpq_class(1, 5)) == mpz_class(0) - 0);
    mpq_class x(1, 5);
    mpz_class w = product_principle_witness(x);
    CHECK(mpq_class(frac_part_p(x, 5) - x) == w);
    // composite with primes 5 and 7: 22/7 + 3/5 = 131/35
    mpq_class y = mpq_class(22, 7) + mpq_class(3, 5);
    mpq_class expect = frac_part_p(y, 5) + frac_part_p(y, 7) - y;
    CHECK(expect.get_den() == 1);
    CHECK(product_principle_witness(y) == mpz_class(expect.get_num()));
    // integers: all fractional parts vanish
    CHECK(product_principle_witness(mpq_class(9)) == -9);
    // random rationals: the witness must be integral (throws otherwise)
    for (int t = 0; t < 300; ++t) {
        mpq_class r(oracle::rand_in(-2000, 2000), oracle::rand_in(1, 2000));
        if (r == 0) continue;
        r.canonicalize();
        product_principle_witness(r);
    }
}

TEST_CASE("unramified multiplicative characters") {
    long p = 7;
    MultCharacter chi{Complex(0.7, -0.3), UnitCharacter::trivial(p)};
    PadicNumber pe = PadicNumber::from_rational(p, 1, p, 10);
    Complex got = chi.eval(pe);
    Complex want = std::exp(-chi.s * std::log(double(p)));
    CHECK(std::abs(got - want) < 1e-14);
    CHECK(std::abs(chi.eval(PadicNumber::from_rational(1, 1, p, 10)) - 1.0) < 1e-15);
}

TEST_CASE("order-4 character on Q_5 sends the generator to i") {
    long p = 5;
    UnitCharacter chi = UnitCharacter::from_generator_angle(p, 1, RationalAngle(1, 4));
    long g = chi.generator();
    CHECK(g == 2);  // stable primitive root of 5
    PadicNumber x = PadicNumber::from_rational(g, 1, p, 8);
    RationalAngle a = chi.eval(x);
    CHECK(a.value() == mpq_class(1, 4));
    // order divides p - 1 = 4
    CHECK((a + a + a + a).is_zero());
}

TEST_CASE("multiplicativity of characters at the exact angle level") {
    long p = 5;
    UnitCharacter chi = UnitCharacter::from_generator_angle(p, 2, RationalAngle(1, 20));
    for (int t = 0; t < 150; ++t) {
        long a = oracle::rand_in(1, 10000), b = oracle::rand_in(1, 10000);
        if (a % p == 0 || b % p == 0) continue;
        PadicNumber xa = PadicNumber::from_rational(a, 1, p, 8);
        PadicNumber xb = PadicNumber::from_rational(b, 1, p, 8);
        PadicNumber xab = PadicNumber::from_rational(mpz_class(a) * b, 1, p, 8);
        CHECK(chi.eval(xab) == chi.eval(xa) + chi.eval(xb));
    }
}

TEST_CASE("character counts by exact degree") {
    CHECK(count_characters_of_degree(5, 1) == 3);
    CHECK(count_characters_of_degree(5, 2) == 16);
    CHECK(count_characters_of_degree(3, 3) == 12);
    // enumeration matches the closed form
    CHECK(unit_characters_of_degree(5, 1).size() == 3);
    CHECK(unit_characters_of_degree(5, 2).size() == 16);
    CHECK(unit_characters_of_degree(3, 3).size() == 12);
    CHECK(unit_characters_of_degree(7, 2).size() == 36);
}

TEST_CASE("direct conductor scan agrees for p^n <= 200") {
    for (auto [p, nmax] : std::vector<std::pair<long, int>>{{3, 4}, {5, 3}, {7, 2}, {11, 2}}) {
        long pn = 1;
        for (int i = 0; i < nmax; ++i) pn *= p;
        if (pn > 200) continue;
        for (int n = 1; n <= nmax; ++n) {
            auto chars = unit_characters_of_degree(p, n);
            CHECK(mpz_class(static_cast<long>(chars.size())) == count_characters_of_degree(p, n));
            for (size_t i = 0; i < chars.size(); i += std::max<size_t>(1, chars.size() / 5)) {
                const UnitCharacter& c = chars[i];
                CHECK(conductor_by_scan(p, n, c.generator(), c.generator_angle().value()) == n);
            }
        }
    }
}

TEST_CASE("chi(-1) signs") {
    CHECK(UnitCharacter::trivial(7).sign_at_minus_one() == 1);
    // Legendre symbol mod 5: degree 1, order 2
    UnitCharacter leg5 = UnitCharacter::from_generator_angle(5, 1, RationalAngle(1, 2));
    CHECK(leg5.sign_at_minus_one() == 1);  // 5 = 1 mod 4
    UnitCharacter leg3 = UnitCharacter::from_generator_angle(3, 1, RationalAngle(1, 2));
    CHECK(leg3.sign_at_minus_one() == -1);  // 3 = 3 mod 4
    // and the Legendre character really is the quadratic residue symbol
    for (long a = 1; a < 5; ++a) {
        RationalAngle v = leg5.eval_residue(a);
        int sign = v.is_zero() ? 1 : -1;
        CHECK(sign == legendre(a, 5));
    }
}

TEST_CASE("characters of Q_2^x") {
    // degree 2: the sign character of (Z/4)^x
    UnitCharacter c2 = UnitCharacter::mod2(2, RationalAngle(1, 2), RationalAngle());
    CHECK(c2.eval_residue(3).value() == mpq_class(1, 2));
    CHECK(c2.eval_residue(1).is_zero());
    CHECK(c2.sign_at_minus_one() == -1);
    // degree 3 on generators (-1, 5)
    UnitCharacter c3 = UnitCharacter::mod2(3, RationalAngle(1, 2), RationalAngle(1, 2));
    CHECK(c3.eval_residue(5).value() == mpq_class(1, 2));
    CHECK(c3.eval_residue(7).value() == mpq_class(1, 2));  // 7 = -1 mod 8
    CHECK(c3.eval_residue(3).is_zero());                   // 3 = -5 mod 8
    // dlog decomposition sanity
    auto [a, b] = unit_dlog_mod2(5, mpz_class(27));
    mpz_class rebuilt = oracle::pow_mpz(5, b.get_ui()) % 32;
    if (a) rebuilt = (32 - rebuilt) % 32;
    CHECK(rebuilt == 27);
}

TEST_CASE("mult_eval needs the unit part to degree-many digits") {
    UnitCharacter chi = UnitCharacter::from_generator_angle(5, 2, RationalAngle(1, 5));
    PadicNumber shallow = PadicNumber::from_unit(5, 0, 2, 1);  // one digit only
    CHECK_THROWS_AS(chi.eval(shallow), std::domain_error);
    CHECK_THROWS_AS(chi.eval(PadicNumber::zero(5, 3)), std::domain_error);
}

TEST_CASE("character tables are safe under concurrent evaluation") {
    UnitCharacter chi = UnitCharacter::from_generator_angle(7, 2, RationalAngle(1, 7));
    std::vector<std::thread> workers;
    std::atomic<int> bad{0};
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&] {
            for (long e = 1; e < 49; ++e) {
                if (e % 7 == 0) continue;
                RationalAngle a = chi.eval_residue(e);
                RationalAngle b = chi.eval_residue(e);
                if (!(a == b)) ++bad;
            }
        });
    for (auto& t : workers) t.join();
    CHECK(bad == 0);
}

TEST_CASE("discrete logs match brute force at a larger modulus") {
    long p = 3;
    int n = 7;  // (Z/3^7)^x has order 1458
    long pn = 2187;
    long g = stable_primitive_root(p);
    mpz_class cur = 1;
    for (long k = 0; k < 2 * 1458 / 3; ++k) {
        if (k % 37 == 0) {
            CHECK(unit_dlog(p, n, cur) == k);
        }
        cur = mod_z(cur * g, mpz_class(pn));
    }
}

TEST_CASE("degree validation") {
    CHECK_THROWS_AS(UnitCharacter::from_generator_angle(5, 1, RationalAngle()), std::invalid_argument);
    CHECK_THROWS_AS(UnitCharacter::from_generator_angle(5, 2, RationalAngle(1, 4)),
                    std::invalid_argument);  // order 4 has no 5-part
    CHECK_THROWS_AS(UnitCharacter::from_generator_angle(5, 1, RationalAngle(1, 3)),
                    std::invalid_argument);  // 3 does not divide p-1 = 4
    CHECK_NOTHROW(UnitCharacter::from_generator_angle(5, 2, RationalAngle(1, 5)));
    CHECK_THROWS_AS(UnitCharacter::mod2(1, RationalAngle(), RationalAngle()), std::invalid_argument);
}

TEST_CASE("dual and conjugate characters") {
    UnitCharacter chi = UnitCharacter::from_generator_angle(5, 1, RationalAngle(1, 4));
    MultCharacter mc{Complex(0.3, 0.1), chi};
    MultCharacter dual = mc.dual();
    CHECK(std::abs(dual.s - Complex(0.7, -0.1)) < 1e-15);
    // chi-check of chi-check is chi
    MultCharacter dd = dual.dual();
    CHECK(std::abs(dd.s - mc.s) < 1e-15);
    CHECK(dd.chi == mc.chi);
    // evaluation: chi * conj(chi) is |.|^{2 Re s}
    PadicNumber x = PadicNumber::from_rational(7, 1, 5, 8);
    Complex prod = mc.eval(x) * mc.conjugate().eval(x);
    CHECK(std::abs(prod - 1.0) < 1e-14);  // unit argument, |x| = 1
}
