#include <catch2/catch_amalgamated.hpp>

#include "oracles/bpoly.hpp"
#include "oracles/qbinomial.hpp"
#include "qnc/bundle.hpp"
#include "qnc/error.hpp"

using namespace qnc;

namespace {


LaurentPoly qp(int e) { return LaurentPoly::q_power(e); }

/// 1 - X p(X) as a coefficient vector.
UniPoly one_minus_x_times(const UniPoly& p)
{
    UniPoly out(p.size() + 1);
    out[0] = 1;
    for (std::size_t j = 0; j < p.size(); ++j) out[j + 1] = -p[j];
    return out;
}

}  // namespace

TEST_CASE("auxiliary polynomials", "[bundle]")
{
    CHECK(poly_G(1) == UniPoly{LaurentPoly(1)});
    CHECK(poly_G(2) == UniPoly{LaurentPoly(2), LaurentPoly(-1)});
    CHECK(poly_F(1) == UniPoly{qp(-2)});
    CHECK(poly_F(2) == UniPoly{qp(-2) + qp(-4), -qp(-6)});
    CHECK(poly_Ftilde(1) == UniPoly{LaurentPoly(1)});
    CHECK(poly_Ftilde(2) == UniPoly{LaurentPoly(1) + qp(2), -qp(2)});
    CHECK_THROWS_AS(poly_F(0), DomainError);
    // 1 - X F(X) is the defining product.
    for (int l = 1; l <= 6; ++l) {
        std::vector<int> lower, upper;
        for (int m = 1; m <= l; ++m) lower.push_back(-2 * m);
        for (int m = 0; m < l; ++m) upper.push_back(2 * m);
        CHECK(one_minus_x_times(poly_F(l)) == oracle::one_minus_product(lower));
        CHECK(one_minus_x_times(poly_Ftilde(l)) == oracle::one_minus_product(upper));
        CHECK(one_minus_x_times(poly_G(l)) == oracle::one_minus_product(std::vector<int>(l, 0)));
    }
    CHECK(to_string(poly_G(2)) == "(2) + (-1)*X");
}

TEST_CASE("generators for k=l=1", "[bundle]")
{
    const BundleCertificate c = bundle_generators(1, 1);
    REQUIRE(c.xi.size() == 2);
    CHECK(c.xi[0] == NCPoly::z1s() * qp(-2));
    CHECK(c.eta[0] == NCPoly::z1());
    CHECK(c.xi[1] == NCPoly::z0s());
    CHECK(c.eta[1] == NCPoly::z0());
    CHECK(c.alpha[0] == NCPoly::z1());
    CHECK(c.beta[0] == NCPoly::z1s());
    CHECK(c.alpha[1] == NCPoly::z0());
    CHECK(c.beta[1] == NCPoly::z0s());
    CHECK(verify_partition_of_unity(c));
    CHECK(verify_charges(c));
}

TEST_CASE("partition of unity on the weight grid", "[bundle]")
{
    for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 5}}) {
        INFO("k=" << k << " l=" << l);
        const BundleCertificate c = bundle_generators(k, l);
        CHECK(sum_xi_eta(c) == NCPoly(1));
        CHECK(sum_alpha_beta(c) == NCPoly(1));
        CHECK(verify_charges(c));
    }
    CHECK_THROWS_AS(bundle_generators(2, 4), DomainError);
}

TEST_CASE("a broken certificate is rejected", "[bundle]")
{
    BundleCertificate c = bundle_generators(2, 3);
    c.xi[0] = c.xi[0] * LaurentPoly(2);
    CHECK_FALSE(verify_partition_of_unity(c));
    c = bundle_generators(2, 3);
    c.eta[0] = NCPoly::z1();
    CHECK_FALSE(verify_charges(c));
}

TEST_CASE("power certificates", "[bundle]")
{
    const BundleCertificate c = bundle_generators(1, 1);
    const BundleCertificate c1 = power_certificate(c, 1);
    CHECK(c1.xi == c.xi);
    CHECK(c1.eta == c.eta);
    const BundleCertificate c2 = power_certificate(c, 2);
    CHECK(c2.degree == 2);
    REQUIRE(c2.xi.size() == 4);
    // index (0, 1): xi_0 xi_1 paired with eta_1 eta_0
    CHECK(c2.xi[1] == c.xi[0] * c.xi[1]);
    CHECK(c2.eta[1] == c.eta[1] * c.eta[0]);
    CHECK(verify_partition_of_unity(c2));
    CHECK(verify_charges(c2));
    const BundleCertificate c3 = power_certificate(bundle_generators(2, 3), 2);
    CHECK(verify_partition_of_unity(c3));
    CHECK(verify_charges(c3));
}

TEST_CASE("line bundle idempotents", "[bundle]")
{
    for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
        const BundleCertificate c = bundle_generators(k, l);
        for (int sign : {1, -1}) {
            INFO("k=" << k << " l=" << l << " sign=" << sign);
            const NCMatrix e = line_idempotent(c, sign);
            CHECK(is_idempotent(e));
            NCPoly trace;
            for (std::size_t i = 0; i < e.size(); ++i) {
                for (const auto& x : e[i]) CHECK(homogeneous_charge(x, k, l) == 0);
                trace += e[i][i];
            }
            CHECK(homogeneous_charge(trace, k, l) == 0);
        }
    }
    const NCMatrix e = line_idempotent(bundle_generators(1, 1), 1);
    CHECK(e[0][0] == NCPoly::b() * qp(-2));
    CHECK_THROWS_AS(line_idempotent(bundle_generators(1, 1), 0), DomainError);
}

TEST_CASE("q-binomials match the Pascal recurrence", "[bundle]")
{
    CHECK(q_binomial(2, 1) == LaurentPoly(1) + qp(2));
    CHECK(q_binomial(3, 1) == LaurentPoly(1) + qp(2) + qp(4));
    for (int l = 0; l <= 8; ++l)
        for (int m = 0; m <= l; ++m) CHECK(q_binomial(l, m) == oracle::gaussian_binomial_q2(l, m));
    CHECK_THROWS_AS(q_binomial(2, 3), DomainError);
}

TEST_CASE("commutator expansion", "[bundle]")
{
    CHECK(commutator_expansion(1) == NCPoly::b() * (qp(-2) - LaurentPoly(1)));
    for (int l = 1; l <= 5; ++l) CHECK(commutator_expansion_check(l));
    // independent route: difference of the two closed-form b-products
    for (int l = 1; l <= 5; ++l) {
        std::vector<int> lower, upper;
        for (int m = 1; m <= l; ++m) lower.push_back(-2 * m);
        for (int m = 0; m < l; ++m) upper.push_back(2 * m);
        const NCPoly expected = oracle::to_ncpoly(oracle::one_minus_product(upper)) -
                                oracle::to_ncpoly(oracle::one_minus_product(lower));
        CHECK(commutator_expansion(l) == expected);
    }
}

TEST_CASE("weighted projective line relations", "[bundle]")
{
    for (int l = 1; l <= 4; ++l) CHECK(wq_commutation_check(l));
    for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}, {3, 2}, {3, 4}})
        for (const auto& r : verify_wq_relations(k, l)) {
            INFO(r.name << " k=" << k << " l=" << l);
            CHECK(r.passed);
        }
    CHECK(verify_wq_relations(2, 3).size() == 4);
}
