#include <catch2/catch_amalgamated.hpp>

#include "qnc/bundle.hpp"
#include "qnc/error.hpp"
#include "qnc/rep.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

using namespace qnc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// Horner evaluation of a polynomial with Laurent coefficients at (q, x).
double eval_uni(const UniPoly& p, double q, double x)
{
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->evaluate(q);
    return acc;
}

/// p(q^{2e}) collected exactly as a Laurent polynomial before evaluation,
/// so cancellations between the large coefficients are exact.
double eval_at_level(const UniPoly& p, double q, int e)
{
    LaurentPoly acc;
    for (std::size_t j = 0; j < p.size(); ++j) acc += p[j].shifted(2 * e * static_cast<int>(j));
    return acc.evaluate(q);
}

}  // namespace

TEST_CASE("b and a on the first basis vectors", "[rep]")
{
    const RepParams rp{1, 1, 1, 0.5, 16};
    const auto B = rep_b(rp).m;
    CHECK_THAT(B(0, 0), WithinRel(0.25, 1e-15));
    CHECK_THAT(B(1, 1), WithinRel(0.0625, 1e-15));
    const auto A = rep_a(rp).m;
    CHECK_THAT(A(0, 1), WithinRel(0.25 * std::sqrt(0.75), 1e-15));
    CHECK(A.col(0).isZero());
    CHECK(rep_a(rp).band_offset == 1);
    CHECK(adjoint(rep_a(rp)).m == A.transpose());
}

TEST_CASE("parameter validation", "[rep]")
{
    CHECK_THROWS_AS((RepParams{2, 4, 1, 0.5, 16}.validate()), DomainError);
    CHECK_THROWS_AS((RepParams{2, 3, 4, 0.5, 16}.validate()), DomainError);
    CHECK_THROWS_AS((RepParams{2, 3, 1, 1.0, 16}.validate()), DomainError);
    CHECK_THROWS_AS((RepParams{2, 3, 1, 0.5, 4}.validate()), DomainError);
    CHECK((RepParams{2, 3, 1, 0.5, 16}.guard()) == 6);
    CHECK((RepParams{2, 3, 2, 0.5, 16}.level(3)) == 11);
}

TEST_CASE("stable level formulas match direct polynomial evaluation", "[rep]")
{
    for (double q : {0.3, 0.5, 0.8})
        for (int l = 1; l <= 5; ++l)
            for (int e = 1; e <= 12; ++e) {
                CHECK_THAT(detail::F_at_level(q, l, e), WithinRel(eval_at_level(poly_F(l), q, e), 1e-12));
                // 1 - prod(1 - x_m) through log1p/expm1, accurate for tiny x_m
                auto one_minus_prod = [&](int first, int last) {
                    double log_sum = 0.0;
                    for (int t = first; t <= last; ++t) {
                        if (t == 0) return 1.0;
                        log_sum += std::log1p(-std::pow(q, 2 * t));
                    }
                    return -std::expm1(log_sum);
                };
                CHECK_THAT(detail::bF_at_level(q, l, e), WithinRel(one_minus_prod(e - l, e - 1), 1e-12));
                const double u = one_minus_prod(e, e + l - 1);
                CHECK_THAT(detail::one_minus_Y_at_level(q, l, e), WithinRel(u, 1e-12));
                CHECK_THAT(detail::Y_at_level(q, l, e), WithinRel(1.0 - u, 1e-12));
                for (int k = 1; k <= 3; ++k)
                    CHECK_THAT(detail::G_from_one_minus(u, k), WithinRel(eval_uni(poly_G(k), q, 1.0 - u), 1e-9));
            }
}

TEST_CASE("word evaluation", "[rep]")
{
    const RepParams rp{2, 3, 2, 0.5, 40};
    const WqWord w = parse_wq_word("a* a");
    const Eigen::MatrixXd asa = eval_word(rp, w).m;
    for (int p = 0; p < rp.N - 1; ++p) {
        const int e = rp.level(p);
        double expected = std::pow(rp.q, 2 * rp.k * e);
        for (int m = 1; m <= rp.l; ++m) expected *= 1.0 - std::pow(rp.q, 2 * (e - m));
        CHECK_THAT(asa(p, p), WithinAbs(expected, 1e-15));
    }
    CHECK(eval_word(rp, parse_wq_word("a* a")).provenance == "a* a");
    const WqWord scaled = parse_wq_word("0.5 * b p2");
    CHECK(scaled.prefactor == 0.5);
    const Eigen::MatrixXd m = eval_word(rp, scaled).m;
    CHECK_THAT(m(0, 0), WithinRel(0.5 * std::pow(0.5, 4), 1e-15));
    CHECK(m(1, 1) == 0.0);
    CHECK(eval_word(rp, parse_wq_word("p0")).m.isIdentity());
    CHECK(eval_word(rp, parse_wq_word("p1")).m.isZero());
    const Eigen::MatrixXd chi = eval_word(rp, parse_wq_word("chi5")).m;
    CHECK(chi(1, 1) == 1.0);
    CHECK(chi.sum() == 1.0);
    CHECK(eval_word(rp, parse_wq_word("chi4")).m.isZero());
    CHECK_THROWS_AS(parse_wq_word("c"), DomainError);
    CHECK_THROWS_AS(parse_wq_word("x * a"), DomainError);
    CHECK_THROWS_AS(parse_wq_word("pz"), DomainError);
    CHECK_THROWS_AS(eval_word(rp, parse_wq_word("p4")), DomainError);
}

TEST_CASE("projections p_r commute with b", "[rep]")
{
    const RepParams rp{2, 3, 2, 0.5, 40};
    const Eigen::MatrixXd B = rep_b(rp).m;
    for (int r = 0; r <= rp.l; ++r) {
        const Eigen::MatrixXd P = eval_letter(rp, {WqLetter::Kind::p, r}).m;
        CHECK((P * P - P).norm() == 0.0);
        CHECK((P * B - B * P).norm() == 0.0);
    }
}

TEST_CASE("relation residuals on the guarded block", "[rep]")
{
    for (double q : {0.3, 0.5, 0.8})
        for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}})
            for (int s = 1; s <= l; ++s) {
                const RepParams rp{k, l, s, q, 128};
                for (const auto& r : relation_residuals(rp)) {
                    INFO(r.name << " k=" << k << " l=" << l << " s=" << s << " q=" << q);
                    CHECK(r.value < 1e-10);
                }
            }
}

TEST_CASE("generators are contractions", "[rep]")
{
    for (double q : {0.3, 0.8}) {
        const RepParams rp{2, 3, 1, q, 64};
        CHECK(norm_bound(rep_a(rp).m) <= 1.0 + 1e-12);
        CHECK(norm_bound(rep_b(rp).m) <= 1.0 + 1e-12);
    }
}

TEST_CASE("projection P", "[rep]")
{
    const RepParams rp{1, 1, 1, 0.5, 128};
    const XiDiagonals xi = xi_diagonals(rp);
    CHECK_THAT(xi.xi1(0), WithinRel(2.0, 1e-14));
    CHECK_THAT(xi.xi0(5), WithinRel(1.0, 1e-14));
    const TruncOp P = build_projection(rp);
    CHECK(P.m.rows() == 256);
    CHECK((P.m - P.m.transpose()).norm() == 0.0);
    CHECK(projection_defect(rp) < 1e-12);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}})
        for (double q : {0.3, 0.8}) {
            const RepParams r2{k, l, 1, q, 128};
            CHECK(projection_defect(r2) < 1e-10);
        }
    // P11 is 1 on the lowest level and both diagonal corrections vanish deep in.
    const RepParams r3{2, 3, 2, 0.5, 64};
    const ProjectionDiagonal d0 = projection_diagonal(r3, 0);
    CHECK(d0.p11 == 1.0);
    const ProjectionDiagonal deep = projection_diagonal(r3, 50);
    CHECK(std::abs(deep.p11) < 1e-50);
    CHECK(std::abs(deep.p22_minus_one) < 1e-50);
}

TEST_CASE("operator export", "[rep]")
{
    const RepParams rp{1, 2, 1, 0.5, 8};
    const TruncOp A = rep_a(rp);
    std::ostringstream csv;
    write_csv(csv, A);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "8,8");
    std::string row;
    std::getline(in, row);
    std::istringstream fields(row);
    std::vector<double> values;
    for (std::string f; std::getline(fields, f, ',');) values.push_back(std::stod(f));
    REQUIRE(values.size() == 8);
    CHECK(values[1] == A.m(0, 1));

    std::ostringstream bin;
    write_binary(bin, A);
    const std::string bytes = bin.str();
    REQUIRE(bytes.size() == 16 + 64 * sizeof(double));
    std::int64_t dims[2];
    std::memcpy(dims, bytes.data(), sizeof dims);
    CHECK(dims[0] == 8);
    CHECK(dims[1] == 8);
    double v = 0.0;
    std::memcpy(&v, bytes.data() + 16 + sizeof(double), sizeof v);
    CHECK(v == A.m(0, 1));
}
