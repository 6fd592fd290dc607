#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/cyclotomic.hpp"

#include "oracles.hpp"

using namespace tate;

TEST_CASE("angles normalize into [0,1)") {
    CHECK(RationalAngle(mpq_class(7, 3)).value() == mpq_class(1, 3));
    CHECK(RationalAngle(mpq_class(-1, 4)).value() == mpq_class(3, 4));
    CHECK(RationalAngle(mpq_class(5)).is_zero());
    CHECK((RationalAngle(1, 3) + RationalAngle(2, 3)).is_zero());
    CHECK(RationalAngle(1, 2).to_complex().real() == doctest::Approx(-1.0));
}

TEST_CASE("full character sums vanish exactly") {
    for (long m : {2L, 3L, 5L, 7L, 12L, 36L, 49L}) {
        Cyclotomic s;
        for (long k = 0; k < m; ++k) s += Cyclotomic::root_of_unity(RationalAngle(k, m));
        CHECK(s.is_zero());
    }
}

TEST_CASE("partial sums do not vanish") {
    Cyclotomic s;
    for (long k = 0; k < 4; ++k) s += Cyclotomic::root_of_unity(RationalAngle(k, 5));
    CHECK(!s.is_zero());
    CHECK(Cyclotomic(1).is_zero() == false);
    CHECK(Cyclotomic().is_zero());
}

TEST_CASE("zeta_3 + zeta_3^2 equals -1") {
    Cyclotomic s = Cyclotomic::root_of_unity(RationalAngle(1, 3)) +
                   Cyclotomic::root_of_unity(RationalAngle(2, 3));
    CHECK(s.is_rational());
    CHECK(s.rational_value() == -1);
    CHECK((s + Cyclotomic(1)).is_zero());
}

TEST_CASE("multiplication adds angles") {
    Cyclotomic a = Cyclotomic::root_of_unity(RationalAngle(1, 8), 2);
    Cyclotomic b = Cyclotomic::root_of_unity(RationalAngle(3, 8), mpq_class(1, 2));
    Cyclotomic p = a * b;
    CHECK((p - Cyclotomic::root_of_unity(RationalAngle(1, 2))).is_zero());
    CHECK(p.rational_value() == -1);
}

TEST_CASE("conjugation and rotation") {
    Cyclotomic a = Cyclotomic::root_of_unity(RationalAngle(1, 5), 3) + Cyclotomic(2);
    Cyclotomic c = a.conj();
    Complex za = a.to_complex(), zc = c.to_complex();
    CHECK(za.real() == doctest::Approx(zc.real()));
    CHECK(za.imag() == doctest::Approx(-zc.imag()));
    // rotating by 1/2 is multiplication by -1
    CHECK((a.rotated(RationalAngle(1, 2)) + a).is_zero());
    CHECK((a.rotated(RationalAngle(1, 2)) - a * Cyclotomic::root_of_unity(RationalAngle(1, 2)))
              .is_zero());
}

TEST_CASE("canonical form identifies equal values") {
    // 1 + zeta_3 + zeta_3^2 + 5 = 5 exactly
    Cyclotomic s = Cyclotomic(5);
    for (long k = 0; k < 3; ++k) s += Cyclotomic::root_of_unity(RationalAngle(k, 3));
    Cyclotomic c = s.canonical();
    CHECK(c.is_rational());
    CHECK(c.rational_value() == 5);

    // random pair: (a - b).canonical() empty iff equal
    Cyclotomic x = Cyclotomic::root_of_unity(RationalAngle(1, 5)) +
                   Cyclotomic::root_of_unity(RationalAngle(4, 5));
    Cyclotomic y = x * Cyclotomic(1);
    CHECK((x - y).canonical().is_structurally_zero());
}

TEST_CASE("quadratic Gauss sum sanity: sum of e(k^2/5) = sqrt(5)") {
    Cyclotomic g;
    for (long k = 0; k < 5; ++k) g += Cyclotomic::root_of_unity(RationalAngle(k * k, 5));
    Complex z = g.to_complex();
    CHECK(z.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(z.imag() == doctest::Approx(0.0));
}

TEST_CASE("random relation stress: geometric partitions") {
    // sum over a coset decomposition equals the whole-group sum
    for (int t = 0; t < 20; ++t) {
        long m = std::vector<long>{4, 9, 8, 27, 25}[static_cast<size_t>(oracle::rand_in(0, 4))];
        Cyclotomic whole;
        for (long k = 0; k < m; ++k) whole += Cyclotomic::root_of_unity(RationalAngle(k, m));
        CHECK(whole.is_zero());
    }
}
