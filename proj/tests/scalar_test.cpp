#include "doctest.h"
#include "lineal/scalar.hpp"

#include <random>

using namespace lineal;

namespace {

Scalar q(long num, long den = 1) { return Scalar(Scalar::Int(num), Scalar::Int(den)); }

std::vector<Scalar> sample_scalars(unsigned seed, size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<Scalar> out;
    for (size_t i = 0; i < n; ++i) {
        long num = static_cast<long>(rng() % 41) - 20;
        long den = static_cast<long>(rng() % 12) + 1;
        out.push_back(q(num, den));
    }
    return out;
}

}  // namespace

TEST_CASE("ring arithmetic on literals") {
    CHECK(q(1, 4) + q(3, 4) == q(1));
    CHECK(q(3, 8) + q(5, 8) == q(1));
    CHECK(q(2) * q(1, 4) == q(1, 2));
    CHECK(q(1, 2) * q(1, 2) == q(1, 4));
    CHECK(-q(1, 2) == q(-1, 2));
    CHECK((q(3, 8) + q(5, 8)).is_one());
}

TEST_CASE("identities and inverses over sampled values") {
    for (const Scalar& a : sample_scalars(7, 64)) {
        CHECK(a + Scalar::zero() == a);
        CHECK(a * Scalar::one() == a);
        CHECK((a + (-a)).is_zero());
    }
}

TEST_CASE("ring laws over sampled triples") {
    auto xs = sample_scalars(11, 30);
    for (size_t i = 0; i + 2 < xs.size(); i += 3) {
        const Scalar &a = xs[i], &b = xs[i + 1], &c = xs[i + 2];
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("parsing and printing") {
    CHECK(parse_scalar("3/8") == q(3, 8));
    CHECK(parse_scalar("-3") == q(-3));
    CHECK(parse_scalar("0") == Scalar::zero());
    CHECK(parse_scalar("2/4") == q(1, 2));  // normalized on construction
    CHECK(print_scalar(q(1, 2)) == "1/2");
    CHECK(print_scalar(q(-3)) == "-3");
    CHECK(print_scalar(Scalar::zero()) == "0");
    CHECK(print_scalar(q(-2, 4)) == "-1/2");

    CHECK_THROWS_AS(parse_scalar("1/0"), ScalarParseError);
    CHECK_THROWS_AS(parse_scalar("a"), ScalarParseError);
    CHECK_THROWS_AS(parse_scalar("1/"), ScalarParseError);
    CHECK_THROWS_AS(parse_scalar("1 /2"), ScalarParseError);
    CHECK_THROWS_AS(parse_scalar(""), ScalarParseError);

    for (const Scalar& a : sample_scalars(13, 64)) CHECK(parse_scalar(print_scalar(a)) == a);
}

TEST_CASE("large values stay exact") {
    Scalar big = Scalar::one();
    for (int i = 0; i < 40; ++i) big = big * q(3, 7) + q(1, 3);
    Scalar unwound = big;
    for (int i = 0; i < 40; ++i) unwound = (unwound - q(1, 3)) * q(7, 3);
    CHECK(unwound == Scalar::one());
}

TEST_CASE("reciprocal") {
    CHECK(q(3, 8).reciprocal() == q(8, 3));
    CHECK(q(3, 8) * q(3, 8).reciprocal() == Scalar::one());
    CHECK_THROWS_AS(Scalar::zero().reciprocal(), std::domain_error);
}
