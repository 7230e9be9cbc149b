#include <catch2/catch_amalgamated.hpp>

#include "qnc/certified.hpp"
#include "qnc/error.hpp"

#include <cmath>

using namespace qnc;

namespace {

double geometric(double a, double r) { return a / (1.0 - r); }

}  // namespace

TEST_CASE("geometric series against the closed form", "[certified]")
{
    for (double r : {0.1, 0.5, 0.9}) {
        const auto t = certified_trace(std::function<double(int)>([r](int p) { return std::pow(r, p); }), 600, r);
        INFO("r=" << r);
        CHECK(t.contains(geometric(1.0, r)));
        CHECK(t.bound < 1e-12);
    }
    // q^{2+4p} with q = 0.5 sums to 4/15.
    const auto t = certified_trace(std::function<double(int)>([](int p) { return std::pow(0.5, 2 + 4 * p); }), 100, 1.0 / 16);
    CHECK(t.contains(4.0 / 15.0));
}

TEST_CASE("doubling N shrinks the bound and stays consistent", "[certified]")
{
    auto term = std::function<double(int)>([](int p) { return std::pow(0.9, p); });
    const auto coarse = certified_trace(term, 100, 0.9);
    const auto fine = certified_trace(term, 200, 0.9);
    CHECK(fine.bound < coarse.bound);
    CHECK(std::abs(fine.value - coarse.value) <= coarse.bound);
    CHECK(fine.contains(10.0));
    CHECK(coarse.contains(10.0));
}

TEST_CASE("slow decay is refused", "[certified]")
{
    auto harmonic = std::function<double(int)>([](int p) { return 1.0 / ((p + 1.0) * (p + 1.0)); });
    CHECK_THROWS_AS(certified_trace(harmonic, 100, 0.5), CertificationError);
    auto nan = std::function<double(int)>([](int p) { return p == 3 ? std::nan("") : 0.0; });
    CHECK_THROWS_AS(certified_trace(nan, 100, 0.5), CertificationError);
    CHECK_THROWS_AS(certified_trace(harmonic, 5, 0.5), DomainError);
    CHECK_THROWS_AS(certified_trace(harmonic, 100, 1.0), DomainError);
}

TEST_CASE("finitely supported sums", "[certified]")
{
    auto one = std::function<double(int)>([](int p) { return p == 0 ? 1.0 : 0.0; });
    const auto t = certified_trace(one, 50, 0.5);
    CHECK(t.value == 1.0);
    CHECK(t.bound < 1e-14);
    CHECK(certified_integer(t) == 1);
}

TEST_CASE("explicit per-term errors are accumulated", "[certified]")
{
    auto term = std::function<TraceTerm(int)>([](int p) { return TraceTerm{p == 0 ? 1.0 : 0.0, 1e-3}; });
    const auto t = certified_trace(term, 20, 0.5);
    CHECK(t.bound >= 20 * 1e-3);
}

TEST_CASE("rounding to certified integers", "[certified]")
{
    CHECK(certified_integer({2.01, 1e-6}) == 2);
    CHECK(certified_integer({-0.99, 0.05}) == -1);
    CHECK_FALSE(certified_integer({2.2, 0.1}).has_value());
    CHECK_FALSE(certified_integer({2.0, 0.3}).has_value());
    CHECK_FALSE(certified_integer({std::nan(""), 0.0}).has_value());
    CHECK_FALSE(certified_integer({1.0, -1.0}).has_value());
    CHECK(certified_integer({2.2, 0.1}, 0.5) == 2);
}

TEST_CASE("compensated summation", "[certified]")
{
    detail::NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}
