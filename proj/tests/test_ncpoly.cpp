#include <catch2/catch_amalgamated.hpp>

#include "oracles/bpoly.hpp"
#include "qnc/error.hpp"
#include "qnc/ncpoly.hpp"

#include <random>

using namespace qnc;

namespace {

NCPoly random_element(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(1, 3), p(-2, 2), rs(0, 2), e(-2, 2), c(-3, 3);
    NCPoly x;
    for (int i = count(rng); i > 0; --i) x.add_term({p(rng), rs(rng), rs(rng)}, LaurentPoly::monomial(c(rng), e(rng)));
    return x;
}

const LaurentPoly qi = LaurentPoly::q_power(-1);

}  // namespace

TEST_CASE("letter products in normal form", "[ncpoly]")
{
    CHECK(NCPoly::z1() * NCPoly::z0() == NCPoly::basis({1, 1, 0}, qi));
    CHECK(NCPoly::z1s() * NCPoly::z0() == NCPoly::basis({1, 0, 1}, qi));
    CHECK(NCPoly::z0s() * NCPoly::z1() == NCPoly::basis({-1, 1, 0}, qi));
    CHECK(NCPoly::z1s() * NCPoly::z1() == NCPoly::b());
    CHECK(NCPoly::z0() * NCPoly::z0s() == NCPoly(1) - NCPoly::b());
    CHECK(NCPoly::z0s() * NCPoly::z0() == NCPoly(1) - NCPoly::b() * LaurentPoly::q_power(-2));
    CHECK(NCPoly::z0() * NCPoly::z0s() + NCPoly::z1() * NCPoly::z1s() == NCPoly(1));
}

TEST_CASE("a a* and a* a for k=2, l=3", "[ncpoly]")
{
    const int k = 2, l = 3;
    const NCPoly a = multiply(power(NCPoly::z0(), l), power(NCPoly::z1s(), k));
    const NCPoly as = star(a);
    // q^{2kl} b^k prod_{m=0}^{l-1} (1 - q^{2m} b)
    oracle::BPoly lhs = oracle::bmul(oracle::b_power(k), oracle::one_minus_product({0, 2, 4}));
    for (auto& c : lhs) c = c.shifted(2 * k * l);
    CHECK(multiply(a, as) == oracle::to_ncpoly(lhs));
    // b^k prod_{m=1}^{l} (1 - q^{-2m} b)
    const oracle::BPoly rhs = oracle::bmul(oracle::b_power(k), oracle::one_minus_product({-2, -4, -6}));
    CHECK(multiply(as, a) == oracle::to_ncpoly(rhs));
}

TEST_CASE("associativity on random triples", "[ncpoly]")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const NCPoly x = random_element(rng), y = random_element(rng), z = random_element(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(NCPoly(1) * x == x);
        CHECK(x * NCPoly(1) == x);
    }
}

TEST_CASE("star is an involutive antihomomorphism", "[ncpoly]")
{
    CHECK(star(NCPoly::z0()) == NCPoly::z0s());
    CHECK(star(NCPoly::z1()) == NCPoly::z1s());
    CHECK(star(NCPoly::b()) == NCPoly::b());
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 150; ++trial) {
        const NCPoly x = random_element(rng), y = random_element(rng);
        CHECK(star(star(x)) == x);
        CHECK(star(x * y) == star(y) * star(x));
    }
}

TEST_CASE("leftmost basis elements", "[ncpoly]")
{
    for (int c = 1; c <= 3; ++c)
        for (int r = 0; r <= 2; ++r)
            for (int s = 0; s <= 2; ++s) {
                const NCPoly direct = power(NCPoly::z0s(), c) * power(NCPoly::z1(), r) * power(NCPoly::z1s(), s);
                CHECK(direct == leftmost_basis_element({-c, r, s}));
            }
    CHECK(leftmost_basis_element({2, 1, 1}) == NCPoly::basis({2, 1, 1}));
}

TEST_CASE("charges and spectral subspaces", "[ncpoly]")
{
    CHECK(charge(Monomial{1, 0, 0}, 2, 3) == 2);
    CHECK(charge(Monomial{0, 1, 0}, 2, 3) == 3);
    CHECK(charge(Monomial{-3, 0, 2}, 2, 3) == -12);
    const NCPoly x = NCPoly::basis({-3, 0, 2}) + NCPoly::basis({0, 1, 1}) + NCPoly::z0();
    CHECK(spectral_projection(x, 2, 2, 3) == NCPoly::basis({-3, 0, 2}));
    CHECK(spectral_projection(x, 0, 2, 3) == NCPoly::b());
    NCPoly sum;
    for (int n = -3; n <= 3; ++n) sum += spectral_projection(x, n, 2, 3);
    CHECK(sum == x - NCPoly::z0());
    CHECK(homogeneous_charge(NCPoly::b(), 2, 3) == 0);
    CHECK_FALSE(homogeneous_charge(x, 2, 3).has_value());
    CHECK(lens_membership(NCPoly::basis({-3, 0, 2}), 2, 3, 2));
    CHECK_FALSE(lens_membership(NCPoly::basis({-3, 0, 2}), 2, 3, 3));
    CHECK_FALSE(lens_membership(NCPoly::z0(), 2, 3, 1));
}

TEST_CASE("charge is additive under products", "[ncpoly]")
{
    const NCPoly x = NCPoly::basis({2, 0, 1});
    const NCPoly y = NCPoly::basis({-3, 1, 0});
    CHECK(homogeneous_charge(x * y, 2, 3) == *homogeneous_charge(x, 2, 3) + *homogeneous_charge(y, 2, 3));
}

TEST_CASE("canonical text", "[ncpoly]")
{
    CHECK(to_string(NCPoly{}) == "0");
    CHECK(to_string(NCPoly(1)) == "(1) * 1");
    CHECK(to_string(NCPoly::basis({-2, 1, 0}, qi)) == "(q^-1) * z1^1 z0s^2");
    CHECK(to_string(NCPoly::z1() * NCPoly::z0()) == "(q^-1) * z0^1 z1^1");
}

TEST_CASE("term limit and weight validation", "[ncpoly]")
{
    const NCPoly x = NCPoly(1) + NCPoly::b() + NCPoly::basis({0, 2, 2});
    CHECK_THROWS_AS(multiply(x, x, 2), ResourceError);
    CHECK_NOTHROW(multiply(x, x, 5));
    CHECK_THROWS_AS(require_coprime(2, 4), DomainError);
    CHECK_THROWS_AS(checked_gcd(0, 1), DomainError);
    CHECK_NOTHROW(require_coprime(3, 5));
}
