#include <catch2/catch_amalgamated.hpp>

#include "qnc/laurent.hpp"

#include <cmath>
#include <random>
#include <vector>

using qnc::BigInt;
using qnc::LaurentPoly;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(0, 5), exponent(-6, 6), coeff(-9, 9);
    LaurentPoly p;
    for (int i = count(rng); i > 0; --i) p.add_term(exponent(rng), coeff(rng));
    return p;
}

BigInt binomial(int n, int k)
{
    std::vector<BigInt> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

}  // namespace

TEST_CASE("zero coefficients are never stored", "[laurent]")
{
    LaurentPoly p = LaurentPoly::q_power(3) + LaurentPoly(2);
    p -= LaurentPoly::q_power(3);
    CHECK(p.size() == 1);
    CHECK(p == LaurentPoly(2));
    p -= LaurentPoly(2);
    CHECK(p.is_zero());
    CHECK(LaurentPoly(0).is_zero());
    CHECK(LaurentPoly::monomial(0, 5).is_zero());
}

TEST_CASE("ring axioms on random polynomials", "[laurent]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == LaurentPoly{});
        CHECK(a * LaurentPoly(1) == a);
    }
}

TEST_CASE("canonical text form", "[laurent]")
{
    CHECK(LaurentPoly{}.to_string() == "0");
    CHECK(LaurentPoly(1).to_string() == "1");
    CHECK(LaurentPoly::q_power(1).to_string() == "q");
    const LaurentPoly p = LaurentPoly::q_power(-1) + LaurentPoly(1) - LaurentPoly::monomial(2, 2);
    CHECK(p.to_string() == "q^-1 + 1 - 2*q^2");
    CHECK((-LaurentPoly::q_power(-2)).to_string() == "-q^-2");
}

TEST_CASE("shift, rescale and evaluation", "[laurent]")
{
    const LaurentPoly p = LaurentPoly(1) - LaurentPoly::monomial(3, -2);
    CHECK(p.shifted(2) == LaurentPoly::q_power(2) - LaurentPoly(3));
    CHECK(p.rescaled(3) == LaurentPoly(1) - LaurentPoly::monomial(3, -6));
    CHECK(p.evaluate(0.5) == Catch::Approx(1.0 - 3.0 * 4.0));
    CHECK(p.evaluate_abs(0.5) == Catch::Approx(1.0 + 3.0 * 4.0));
    CHECK(p.min_exponent() == -2);
    CHECK(p.max_exponent() == 0);
}

TEST_CASE("powers keep exact big coefficients", "[laurent]")
{
    const LaurentPoly x = LaurentPoly(1) + LaurentPoly::q_power(1);
    const LaurentPoly p = qnc::pow(x, 100);
    CHECK(p.size() == 101);
    CHECK(p.coeff(50) == binomial(100, 50));
    CHECK(p.coeff(50) > BigInt(std::numeric_limits<long long>::max()));
    CHECK(qnc::pow(x, 0) == LaurentPoly(1));
}
