#include <doctest.h>
#include "nsrad/rational.hpp"
using nsrad::Rational;

TEST_CASE("rational reduces to lowest terms") {
    Rational r = Rational::parse("6/4");
    CHECK(r.numerator() == 3);
    CHECK(r.denominator() == 2);
    CHECK(r.str() == "3/2");
}
