#include <doctest.h>

#include "crn/matrix.hpp"

using namespace crn;

TEST_CASE("rational parsing accepts integers, fractions and decimals") {
    CHECK(Rational::from_string("5") == Rational(5));
    CHECK(Rational::from_string("-3") == Rational(-3));
    CHECK(Rational::from_string("2/4") == Rational(1, 2));
    CHECK(Rational::from_string("-6/4") == Rational(-3, 2));
    CHECK(Rational::from_string("0.25") == Rational(1, 4));
    CHECK(Rational::from_string("1.5") == Rational(3, 2));
    CHECK(Rational::from_string("-0.2") == Rational(-1, 5));
    CHECK_THROWS_AS(Rational::from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1.2/3"), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact and normalized") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b) == Rational(1, 2));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 18));
    CHECK((a / b) == Rational(2));
    CHECK((-a).str() == "-1/3");
    CHECK(Rational(4, 8).str() == "1/2");
    CHECK(Rational(3, 1).str() == "3");
    CHECK(abs(Rational(-7, 2)) == Rational(7, 2));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2).pow(-2) == Rational(1, 4));
    CHECK(Rational(0).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("integer normalization scales to coprime integers") {
    RVec v(3);
    v << Rational(1, 2), Rational(-1, 3), Rational(1, 6);
    RVec w = integer_normalized(v);
    CHECK(w(0) == Rational(3));
    CHECK(w(1) == Rational(-2));
    CHECK(w(2) == Rational(1));

    RVec neg(2);
    neg << Rational(-2), Rational(4);
    RVec nw = integer_normalized(neg);
    CHECK(nw(0) == Rational(1));
    CHECK(nw(1) == Rational(-2));

    RVec zero = RVec::Zero(2);
    CHECK(integer_normalized(zero) == zero);
}

TEST_CASE("eigen products over rationals are exact") {
    RMat m(2, 2);
    m << Rational(1, 3), Rational(2), Rational(-1, 7), Rational(0);
    RMat p = m * m.transpose();
    CHECK(p(0, 0) == Rational(37, 9));
    CHECK(p(1, 0) == Rational(-1, 21));
    CHECK(RMat::Identity(3, 3).sum() == Rational(3));
}
