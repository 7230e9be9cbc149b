#pragma once

// Verification pipelines behind the qnc command-line tool.  Each command
// returns a Report; rendering and exit codes are decided here so the CLI
// stays a thin argument parser.

#include "qnc/bundle.hpp"
#include "qnc/certified.hpp"
#include "qnc/error.hpp"
#include "qnc/kth.hpp"
#include "qnc/ncpoly.hpp"
#include "qnc/pairing.hpp"
#include "qnc/rep.hpp"
#include "qnc/rewrite.hpp"
#include "qnc/sphere.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qnc {

inline constexpr const char* kReportSchema = "qnc-report/1";

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int verification_failure = 1;
inline constexpr int usage_error = 2;
inline constexpr int certification_failure = 3;
}  // namespace exit_code

struct RunConfig {
    int k = 2;
    int l = 3;
    int d = 2;
    double q = 0.5;
    int N = kDefaultTruncation;
    std::uint64_t seed = 42;
    std::string format = "text";
    std::string out;
    bool closed_form = false;
    int threads = 0;           ///< 0: QNC_THREADS or hardware concurrency
    std::string corrupt_rule;  ///< test hook for the negative control

    void validate() const
    {
        require_coprime(k, l);
        if (d < 1) throw DomainError("d must be >= 1");
        if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1)");
        if (N < 32) throw DomainError("--dim must be >= 32");
        if (format != "text" && format != "json") throw DomainError("--format must be text or json");
    }
};

enum class Status { pass, fail, error };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    }
    return "error";
}

struct CheckRecord {
    std::string name;
    Status status = Status::pass;
    std::string detail;
    nlohmann::json evidence = nlohmann::json::object();
    int code = exit_code::pass;
};

struct Report {
    std::string command;
    RunConfig config;
    std::vector<CheckRecord> checks;
    nlohmann::json extra = nlohmann::json::object();
    double wall_time = 0.0;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == Status::pass; });
    }
    int exit_code() const
    {
        int code = exit_code::pass;
        for (const auto& c : checks) code = std::max(code, c.code);
        return code;
    }
    void sort_checks()
    {
        std::stable_sort(checks.begin(), checks.end(),
                         [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    }
};

inline nlohmann::json to_json(const CertifiedReal& x) { return {{"value", x.value}, {"bound", x.bound}}; }

inline nlohmann::json torsion_json(const AbelianGroup& g)
{
    nlohmann::json t = nlohmann::json::array();
    for (const auto& d : g.torsion) {
        if (d <= std::numeric_limits<std::int64_t>::max()) t.push_back(d.convert_to<std::int64_t>());
        else t.push_back(d.str());
    }
    return t;
}

inline nlohmann::json to_json(const AbelianGroup& g) { return {{"rank", g.rank}, {"torsion", torsion_json(g)}}; }

inline nlohmann::json to_json(const PairingMatrix& pm)
{
    return {{"l", pm.l}, {"k", pm.k}, {"q", pm.q}, {"N", pm.N}, {"M", pm.M}, {"max_bound", pm.max_bound}};
}

inline nlohmann::json to_json(const KGroups& g)
{
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : g.K0_hom_basis) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& x : v) col.push_back(x.convert_to<std::int64_t>());
        basis.push_back(col);
    }
    return {{"K0", to_json(g.K0)},
            {"K1", to_json(g.K1)},
            {"K0_hom", to_json(g.K0_hom)},
            {"K1_hom", to_json(g.K1_hom)},
            {"K0_hom_basis", basis},
            {"text",
             {{"K0", to_string(g.K0)}, {"K1", to_string(g.K1)}, {"K0_hom", to_string(g.K0_hom)},
              {"K1_hom", to_string(g.K1_hom)}}}};
}

namespace detail {

inline CheckRecord verdict(std::string name, bool ok, std::string detail, nlohmann::json evidence = nlohmann::json::object())
{
    CheckRecord r;
    r.name = std::move(name);
    r.status = ok ? Status::pass : Status::fail;
    r.code = ok ? exit_code::pass : exit_code::verification_failure;
    r.detail = std::move(detail);
    r.evidence = std::move(evidence);
    return r;
}

/// Runs one check; certification problems become exit code 3, any other
/// failure inside the check becomes an error record with exit code 1.
/// DomainError propagates (usage error).
inline void run_check(Report& rep, const std::string& name, const std::function<CheckRecord()>& body)
{
    try {
        rep.checks.push_back(body());
    } catch (const DomainError&) {
        throw;
    } catch (const CertificationError& e) {
        CheckRecord r;
        r.name = name;
        r.status = Status::error;
        r.code = exit_code::certification_failure;
        r.detail = e.what();
        rep.checks.push_back(std::move(r));
    } catch (const std::exception& e) {
        CheckRecord r;
        r.name = name;
        r.status = Status::error;
        r.code = exit_code::verification_failure;
        r.detail = e.what();
        rep.checks.push_back(std::move(r));
    }
}

inline std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

template <class F>
Report timed(const std::string& command, const RunConfig& cfg, F&& body)
{
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = command;
    rep.config = cfg;
    body(rep);
    rep.sort_checks();
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Test instances of a rule: the two-letter redex, or z0 w z0s for each
/// short w in {z1, z1s}^+.
inline std::vector<Word> rule_instances(const Rule& r)
{
    using L = Letter;
    if (r.kind == Rule::Kind::local) return {{r.first, r.second}};
    std::vector<Word> out;
    for (const Word& w : std::vector<Word>{{L::z1}, {L::z1s}, {L::z1, L::z1s}, {L::z1s, L::z1}, {L::z1, L::z1}, {L::z1s, L::z1s, L::z1}})
        out.push_back(concat(concat({r.first}, w), {r.second}));
    return out;
}

}  // namespace detail

/// Multiplies the first right-hand coefficient of the named rule by q.
inline void corrupt_rule(RuleSet& rules, std::string_view name)
{
    Rule& r = rules.rule(name);
    r.rhs.front().first = r.rhs.front().first.shifted(1);
}

inline RuleSet configured_rules(const RunConfig& cfg)
{
    RuleSet rules = RuleSet::standard();
    if (!cfg.corrupt_rule.empty()) corrupt_rule(rules, cfg.corrupt_rule);
    return rules;
}

/// Every (k,l) in the charge-conservation grid.
inline const std::vector<std::pair<int, int>>& charge_grid()
{
    static const std::vector<std::pair<int, int>> grid{{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 5}, {4, 7}};
    return grid;
}

inline void add_sphere_checks(Report& rep, const RunConfig& cfg)
{
    using namespace detail;
    const RuleSet rules = configured_rules(cfg);
    const SphereRep sphere(cfg.q, 32, 32);

    run_check(rep, "sphere.self_test", [&] {
        nlohmann::json ev = nlohmann::json::object();
        double worst = 0.0;
        for (const auto& [name, r] : sphere.relation_residuals()) {
            ev[name] = r;
            worst = std::max(worst, r);
        }
        return verdict("sphere.self_test", worst < 1e-12, "max relation residual " + fmt(worst), ev);
    });

    for (std::size_t ri = 0; ri < rules.rules().size(); ++ri) {
        const Rule& rule = rules.rules()[ri];
        const std::string name = "rewrite.rule." + rule.name;
        run_check(rep, name, [&] {
            double worst = 0.0;
            for (const Word& w : rule_instances(rule)) {
                for (const Redex& rx : rules.redexes(w)) {
                    if (rx.rule != ri || rx.position != 0 || rx.length != w.size()) continue;
                    WordPoly lhs, rhs;
                    add_term(lhs, w, 1);
                    rules.apply(w, 1, rx, rhs);
                    worst = std::max(worst, sphere.max_difference(lhs, rhs, static_cast<int>(w.size()) + 1));
                }
            }
            const bool ok = worst < 1e-12;
            return verdict(name, ok,
                           ok ? "rule sound in the sphere representation"
                              : "rule '" + rule.name + "' is unsound: residual " + fmt(worst),
                           {{"residual", worst}});
        });
    }

    run_check(rep, "rewrite.relation_soundness", [&] {
        std::mt19937_64 rng(cfg.seed);
        int mismatches = 0, total = 0;
        std::string first;
        for (const auto& rel : sphere_relations()) {
            for (int t = 0; t < 25; ++t) {
                const Word u = random_word(rng, 3);
                const Word v = random_word(rng, 3);
                ++total;
                if (!(normal_form(sandwich(u, rel.lhs, v), rules) == normal_form(sandwich(u, rel.rhs, v), rules))) {
                    if (first.empty()) first = rel.name + " with u=" + to_string(u) + ", v=" + to_string(v);
                    ++mismatches;
                }
            }
        }
        return verdict("rewrite.relation_soundness", mismatches == 0,
                       std::to_string(mismatches) + " of " + std::to_string(total) + " instances differ" +
                           (first.empty() ? "" : "; first: " + first),
                       {{"instances", total}, {"mismatches", mismatches}});
    });

    run_check(rep, "rewrite.confluence", [&] {
        std::mt19937_64 rng(cfg.seed + 1);
        int discrepancies = 0;
        std::string first;
        for (int t = 0; t < 500; ++t) {
            const Word w = random_word(rng, 10);
            const NCPoly left = normal_form(w, 1, rules, {Strategy::leftmost, 0});
            const NCPoly right = normal_form(w, 1, rules, {Strategy::rightmost, 0});
            const NCPoly rnd = normal_form(w, 1, rules, {Strategy::random, cfg.seed + static_cast<std::uint64_t>(t)});
            const NCPoly closed = product_of_letters(w);
            if (!(left == right && left == rnd && left == closed)) {
                if (first.empty()) first = to_string(w);
                ++discrepancies;
            }
        }
        return verdict("rewrite.confluence", discrepancies == 0,
                       std::to_string(discrepancies) + " discrepancies over 500 words" +
                           (first.empty() ? "" : "; first: " + first),
                       {{"words", 500}, {"discrepancies", discrepancies}});
    });

    run_check(rep, "rewrite.idempotent", [&] {
        std::mt19937_64 rng(cfg.seed + 2);
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            const NCPoly nf = normal_form(random_word(rng, 10), 1, rules);
            if (!(normal_form(to_word_poly(nf), rules) == nf)) ++bad;
        }
        return verdict("rewrite.idempotent", bad == 0, std::to_string(bad) + " of 100 normal forms changed",
                       {{"words", 100}, {"changed", bad}});
    });

    run_check(rep, "oracle.numeric_agreement", [&] {
        std::mt19937_64 rng(cfg.seed + 3);
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Word w = random_word(rng, 10);
            worst = std::max(worst, oracle_discrepancy(sphere, w, normal_form(w, 1, rules)));
        }
        return verdict("oracle.numeric_agreement", worst < 1e-9, "max discrepancy " + fmt(worst) + " over 200 words",
                       {{"words", 200}, {"max_discrepancy", worst}, {"tolerance", 1e-9}});
    });

    run_check(rep, "ncalg.star_antihomomorphism", [&] {
        std::mt19937_64 rng(cfg.seed + 4);
        std::uniform_int_distribution<int> coeff(-3, 3), expo(-2, 2);
        auto random_poly = [&] {
            NCPoly x;
            for (int t = 0; t < 3; ++t)
                x += product_of_letters(random_word(rng, 5)) * LaurentPoly::monomial(coeff(rng), expo(rng));
            return x;
        };
        int bad = 0;
        for (int t = 0; t < 50; ++t) {
            const NCPoly x = random_poly(), y = random_poly();
            if (!(star(multiply(x, y)) == multiply(star(y), star(x)))) ++bad;
            if (!(star(star(x)) == x)) ++bad;
        }
        return verdict("ncalg.star_antihomomorphism", bad == 0, std::to_string(bad) + " failures over 50 pairs");
    });

    run_check(rep, "ncalg.charge_conservation", [&] {
        int bad = 0;
        for (const auto& [k, l] : charge_grid()) {
            for (std::size_t ri = 0; ri < rules.rules().size(); ++ri) {
                for (const Word& w : rule_instances(rules.rules()[ri])) {
                    for (const Redex& rx : rules.redexes(w)) {
                        if (rx.rule != ri) continue;
                        WordPoly out;
                        rules.apply(w, 1, rx, out);
                        for (const auto& [ow, oc] : out)
                            if (charge(ow, k, l) != charge(w, k, l)) ++bad;
                    }
                }
            }
        }
        return verdict("ncalg.charge_conservation", bad == 0,
                       std::to_string(bad) + " charge violations over " + std::to_string(charge_grid().size()) +
                           " weight pairs");
    });

    run_check(rep, "wq.symbolic", [&] {
        std::string failed;
        for (const auto& c : verify_wq_relations(cfg.k, cfg.l))
            if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
        return verdict("wq.symbolic", failed.empty(), failed.empty() ? "all identities exact" : "failed: " + failed);
    });

    run_check(rep, "wq.numeric", [&] {
        double worst = 0.0;
        nlohmann::json ev = nlohmann::json::object();
        for (int s = 1; s <= cfg.l; ++s) {
            for (const auto& r : relation_residuals(RepParams{cfg.k, cfg.l, s, cfg.q, 128})) {
                worst = std::max(worst, r.value);
                ev["s" + std::to_string(s)][r.name] = r.value;
            }
        }
        return verdict("wq.numeric", worst < 1e-10, "max residual " + fmt(worst) + " at N=128", ev);
    });
}

inline void add_bundle_checks(Report& rep, const RunConfig& cfg)
{
    using namespace detail;
    const BundleCertificate cert = bundle_generators(cfg.k, cfg.l);
    run_check(rep, "bundle.partition_of_unity", [&] {
        return verdict("bundle.partition_of_unity", verify_partition_of_unity(cert),
                       "sum xi_j eta_j = 1 = sum alpha_i beta_i");
    });
    run_check(rep, "bundle.charges", [&] {
        return verdict("bundle.charges", verify_charges(cert), "xi, beta in charge -kl; eta, alpha in charge +kl");
    });
    const BundleCertificate power = power_certificate(cert, cfg.d);
    run_check(rep, "bundle.power_certificate", [&] {
        const bool ok = verify_partition_of_unity(power) && verify_charges(power);
        return verdict("bundle.power_certificate", ok,
                       "degree " + std::to_string(cfg.d) + " certificate with " + std::to_string(power.xi.size()) +
                           " terms", {{"d", cfg.d}, {"terms", power.xi.size()}});
    });
    for (int sign : {1, -1}) {
        const std::string name = sign > 0 ? "bundle.idempotent.plus" : "bundle.idempotent.minus";
        run_check(rep, name, [&] {
            const NCMatrix e = line_idempotent(power, sign);
            bool charge0 = true;
            for (const auto& row : e)
                for (const auto& x : row) charge0 = charge0 && lens_membership(x, cfg.k, cfg.l, cfg.d) &&
                                                      homogeneous_charge(x, cfg.k, cfg.l).value_or(1) == 0;
            const bool idem = is_idempotent(e);
            return verdict(name, idem && charge0,
                           std::string(idem ? "E^2 = E" : "E^2 != E") + (charge0 ? ", entries in charge 0" : ", entry outside charge 0"),
                           {{"size", e.size()}});
        });
    }
    run_check(rep, "bundle.lens_membership", [&] {
        int bad = 0, total = 0;
        for (const auto* list : {&power.xi, &power.eta, &power.alpha, &power.beta})
            for (const auto& x : *list) {
                ++total;
                if (!lens_membership(x, cfg.k, cfg.l, cfg.d)) ++bad;
            }
        return verdict("bundle.lens_membership", bad == 0,
                       std::to_string(total - bad) + " of " + std::to_string(total) + " entries lie in the lens space algebra");
    });
    run_check(rep, "wq.commutation", [&] {
        return verdict("wq.commutation", wq_commutation_check(cfg.l), "product identities and z0 b = q^2 b z0");
    });
    run_check(rep, "ncalg.commutator_expansion", [&] {
        return verdict("ncalg.commutator_expansion", commutator_expansion_check(cfg.l),
                       "[z0^l, z0s^l] matches the q-binomial sum");
    });
}

/// Bound required of the closed-form trace records.
inline constexpr double kTraceBoundTarget = 1e-8;

inline void add_pairing_checks(Report& rep, const RunConfig& cfg)
{
    using namespace detail;
    run_check(rep, "pairing.matrix", [&] {
        CheckRecord r;
        try {
            const PairingMatrix pm = pairing_matrix(cfg.k, cfg.l, cfg.q, cfg.N, cfg.threads);
            rep.extra["pairing_matrix"] = to_json(pm);
            r = verdict("pairing.matrix", true, "M equals closed_form_M(" + std::to_string(cfg.l) + "), max bound " + fmt(pm.max_bound),
                        to_json(pm));
        } catch (const InternalError& e) {
            r = verdict("pairing.matrix", false, e.what());
        }
        return r;
    });
    for (int s = 1; s <= cfg.l; ++s) {
        const std::string name = "trace.lemma.s" + std::to_string(s);
        run_check(rep, name, [&] {
            const CertifiedReal t = lemma_trace(cfg.l, s, cfg.q, cfg.N);
            const double exact = lemma_trace_closed_form(cfg.l, s, cfg.q);
            nlohmann::json ev = to_json(t);
            ev["closed_form"] = exact;
            if (!(t.bound < kTraceBoundTarget))
                throw CertificationError("trace bound " + fmt(t.bound) + " exceeds " + fmt(kTraceBoundTarget) +
                                         " at N=" + std::to_string(cfg.N) + "; increase --dim");
            const bool ok = std::abs(t.value - exact) <= t.bound;
            return verdict(name, ok, "sum q^{s+lp} = " + std::to_string(t.value) + " +- " + fmt(t.bound), ev);
        });
    }
    for (int s = 1; s <= cfg.l; ++s) {
        const std::string name = "trace.commutator.s" + std::to_string(s);
        run_check(rep, name, [&] {
            const CertifiedReal t = commutator_trace(cfg.l, s, cfg.q, cfg.N);
            const auto n = certified_integer(t);
            if (!n) throw CertificationError("commutator trace not certified: bound " + fmt(t.bound) + "; increase --dim");
            return verdict(name, *n == 1, "certified integer " + std::to_string(*n), to_json(t));
        });
    }
    run_check(rep, "trace.commutator.exact", [&] {
        bool ok = true;
        for (int s = 1; s <= cfg.l; ++s) ok = ok && commutator_exact_check(cfg.l, s);
        return verdict("trace.commutator.exact", ok, "1 - prod (1 - q^{2(s-m)}) = 1 for every s");
    });
    for (int s = 1; s <= cfg.l; ++s) {
        const std::string name = "projection.defect.s" + std::to_string(s);
        run_check(rep, name, [&] {
            const double defect = projection_defect(RepParams{cfg.k, cfg.l, s, cfg.q, cfg.N});
            return verdict(name, defect < 1e-8, "||P^2 - P|| <= " + fmt(defect) + " on the guarded block",
                           {{"defect", defect}, {"tolerance", 1e-8}});
        });
    }
}

inline void add_kgroup_checks(Report& rep, const RunConfig& cfg)
{
    using namespace detail;
    run_check(rep, "kgroups.match", [&] {
        IntMatrix M;
        if (cfg.closed_form) M = closed_form_M(cfg.l);
        else M = to_int_matrix(pairing_matrix(cfg.k, cfg.l, cfg.q, cfg.N, cfg.threads).M);
        const KGroups got = gysin_kgroups(M, cfg.d);
        const KGroups want = expected_kgroups(cfg.l, cfg.d);
        rep.extra["kgroups"] = to_json(got);
        const bool ok = got.same_groups(want);
        const std::string text = "K0 = " + to_string(got.K0) + ", K1 = " + to_string(got.K1) +
                                 ", K^0 = " + to_string(got.K0_hom) + ", K^1 = " + to_string(got.K1_hom);
        return verdict("kgroups.match", ok, ok ? text : text + " (expected K0 = " + to_string(want.K0) + ")",
                       {{"computed", to_json(got)}, {"expected", to_json(want)},
                        {"source", cfg.closed_form ? "closed_form" : "certified"}});
    });
    run_check(rep, "kgroups.K1_free", [&] {
        const KGroups g = gysin_kgroups(closed_form_M(cfg.l), cfg.d);
        return verdict("kgroups.K1_free", g.K1 == AbelianGroup::free(cfg.l), "K1 = " + to_string(g.K1));
    });
    run_check(rep, "kgroups.K1_hom_torsion", [&] {
        const KGroups g = gysin_kgroups(closed_form_M(cfg.l), cfg.d);
        const bool has = cfg.d == 1 ? g.K1_hom.torsion.empty()
                                    : std::find(g.K1_hom.torsion.begin(), g.K1_hom.torsion.end(), BigInt(cfg.d)) !=
                                          g.K1_hom.torsion.end();
        return verdict("kgroups.K1_hom_torsion", has && g.K1_hom.rank == cfg.l, "K^1 = " + to_string(g.K1_hom));
    });
}

inline Report cmd_verify_sphere(const RunConfig& cfg)
{
    return detail::timed("verify-sphere", cfg, [&](Report& r) { add_sphere_checks(r, cfg); });
}
inline Report cmd_bundle_check(const RunConfig& cfg)
{
    return detail::timed("bundle-check", cfg, [&](Report& r) { add_bundle_checks(r, cfg); });
}
inline Report cmd_pairing(const RunConfig& cfg)
{
    return detail::timed("pairing", cfg, [&](Report& r) { add_pairing_checks(r, cfg); });
}
inline Report cmd_kgroups(const RunConfig& cfg)
{
    return detail::timed("kgroups", cfg, [&](Report& r) { add_kgroup_checks(r, cfg); });
}
inline Report cmd_report(const RunConfig& cfg)
{
    return detail::timed("report", cfg, [&](Report& r) {
        add_sphere_checks(r, cfg);
        add_bundle_checks(r, cfg);
        add_pairing_checks(r, cfg);
        add_kgroup_checks(r, cfg);
    });
}

inline nlohmann::json to_json(const RunConfig& c)
{
    return {{"k", c.k}, {"l", c.l}, {"d", c.d}, {"q", c.q}, {"N", c.N}, {"seed", c.seed}, {"closed_form", c.closed_form}};
}

inline nlohmann::json to_json(const Report& rep)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"evidence", c.evidence}});
    nlohmann::json j = {{"schema", kReportSchema},
                        {"command", rep.command},
                        {"config", to_json(rep.config)},
                        {"checks", checks},
                        {"overall", rep.passed() ? "pass" : "fail"},
                        {"exit_code", rep.exit_code()},
                        {"wall_time_s", rep.wall_time}};
    for (const auto& [key, value] : rep.extra.items()) j[key] = value;
    return j;
}

inline std::string render_json(const Report& rep) { return to_json(rep).dump(2) + "\n"; }

inline std::string render_text(const Report& rep)
{
    std::ostringstream os;
    const RunConfig& c = rep.config;
    os << "qnc " << rep.command << "  k=" << c.k << " l=" << c.l << " d=" << c.d << " q=" << c.q << " N=" << c.N
       << " seed=" << c.seed << "\n";
    for (const auto& r : rep.checks) {
        std::string tag = to_string(r.status);
        std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        os << tag << std::string(7 - tag.size(), ' ') << r.name << "  " << r.detail << "\n";
    }
    if (rep.extra.contains("pairing_matrix")) os << "M = " << rep.extra["pairing_matrix"]["M"].dump() << "\n";
    if (rep.extra.contains("kgroups")) {
        const auto& t = rep.extra["kgroups"]["text"];
        os << "K0 = " << t["K0"].get<std::string>() << ", K1 = " << t["K1"].get<std::string>()
           << ", K^0 = " << t["K0_hom"].get<std::string>() << ", K^1 = " << t["K1_hom"].get<std::string>() << "\n";
    }
    os << "overall: " << (rep.passed() ? "PASS" : "FAIL") << " (exit " << rep.exit_code() << ")\n";
    return os.str();
}

inline std::string render(const Report& rep) { return rep.config.format == "json" ? render_json(rep) : render_text(rep); }

/// Structural validation of a rendered report; returns the problems found.
inline std::vector<std::string> validate_report_json(const nlohmann::json& j)
{
    std::vector<std::string> problems;
    auto need = [&](const nlohmann::json& obj, const std::string& key, auto pred, const char* type) {
        if (!obj.contains(key)) problems.push_back("missing key '" + key + "'");
        else if (!pred(obj.at(key))) problems.push_back("key '" + key + "' is not " + type);
    };
    auto is_string = [](const nlohmann::json& v) { return v.is_string(); };
    auto is_number = [](const nlohmann::json& v) { return v.is_number(); };
    auto is_int = [](const nlohmann::json& v) { return v.is_number_integer(); };
    if (!j.is_object()) return {"report is not an object"};
    need(j, "schema", is_string, "a string");
    if (j.contains("schema") && j["schema"] != kReportSchema) problems.push_back("unknown schema version");
    need(j, "command", is_string, "a string");
    need(j, "overall", is_string, "a string");
    need(j, "exit_code", is_int, "an integer");
    need(j, "wall_time_s", is_number, "a number");
    need(j, "config", [](const nlohmann::json& v) { return v.is_object(); }, "an object");
    if (j.contains("config") && j["config"].is_object())
        for (const char* key : {"k", "l", "d", "N", "seed"}) need(j["config"], key, is_int, "an integer");
    need(j, "checks", [](const nlohmann::json& v) { return v.is_array(); }, "an array");
    if (j.contains("checks") && j["checks"].is_array()) {
        std::string prev;
        bool all_pass = true;
        for (const auto& c : j["checks"]) {
            need(c, "name", is_string, "a string");
            need(c, "status", is_string, "a string");
            need(c, "detail", is_string, "a string");
            if (!c.contains("name") || !c["name"].is_string()) continue;
            const std::string name = c["name"];
            if (name < prev) problems.push_back("checks not sorted at '" + name + "'");
            prev = name;
            const std::string st = c.value("status", "");
            if (st != "pass" && st != "fail" && st != "error") problems.push_back("bad status for '" + name + "'");
            all_pass = all_pass && st == "pass";
        }
        if (j.contains("overall") && j["overall"].is_string() && (j["overall"] == "pass") != all_pass)
            problems.push_back("overall status disagrees with the checks");
    }
    if (j.contains("pairing_matrix")) {
        const auto& pm = j["pairing_matrix"];
        for (const char* key : {"l", "k", "N"}) need(pm, key, is_int, "an integer");
        need(pm, "q", is_number, "a number");
        need(pm, "max_bound", is_number, "a number");
        need(pm, "M", [](const nlohmann::json& v) { return v.is_array(); }, "an array");
    }
    return problems;
}

}  // namespace qnc
