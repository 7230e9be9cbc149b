// qnc: verification pipelines for quantum lens spaces.
//
//   qnc verify-sphere | bundle-check | pairing | kgroups | report [flags]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error,
// 3 certification failure.

#include "qnc/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

void add_common_flags(CLI::App& cmd, qnc::RunConfig& cfg)
{
    cmd.add_option("-k", cfg.k, "weight k")->capture_default_str();
    cmd.add_option("-l", cfg.l, "weight l")->capture_default_str();
    cmd.add_option("-d", cfg.d, "lens space degree d")->capture_default_str();
    cmd.add_option("--q", cfg.q, "deformation parameter in (0,1)")->capture_default_str();
    cmd.add_option("--dim", cfg.N, "truncation dimension N (>= 32)")->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
    cmd.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cmd.add_option("--out", cfg.out, "write the report to this file instead of stdout");
    cmd.add_flag("--closed-form", cfg.closed_form, "kgroups: use closed_form_M instead of the certified matrix");
    cmd.add_option("--corrupt-rule", cfg.corrupt_rule)->group("");
}

int emit(const qnc::Report& rep, const qnc::RunConfig& cfg)
{
    const std::string text = qnc::render(rep);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(cfg.out, std::ios::binary);
        if (!os) {
            std::cerr << "qnc: cannot write " << cfg.out << "\n";
            return qnc::exit_code::usage_error;
        }
        os << text;
    }
    return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification of quantum lens spaces as Pimsner algebras"};
    app.require_subcommand(1);
    qnc::RunConfig cfg;
    if (const char* env = std::getenv("QNC_THREADS")) cfg.threads = std::atoi(env);

    struct Entry {
        const char* name;
        const char* help;
        qnc::Report (*run)(const qnc::RunConfig&);
    };
    const Entry entries[] = {
        {"verify-sphere", "rewriting engine, sphere relations and numeric oracle", qnc::cmd_verify_sphere},
        {"bundle-check", "partition of unity, power certificates and idempotents", qnc::cmd_bundle_check},
        {"pairing", "certified index pairing matrix and trace lemmas", qnc::cmd_pairing},
        {"kgroups", "K-theory and K-homology of the lens space", qnc::cmd_kgroups},
        {"report", "full pipeline in one document", qnc::cmd_report},
    };
    const Entry* chosen = nullptr;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common_flags(*sub, cfg);
        sub->callback([&chosen, &e] { chosen = &e; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qnc::exit_code::usage_error;
    }

    try {
        cfg.validate();
        return emit(chosen->run(cfg), cfg);
    } catch (const qnc::DomainError& e) {
        std::cerr << "qnc: " << e.what() << "\n";
        return qnc::exit_code::usage_error;
    } catch (const qnc::CertificationError& e) {
        std::cerr << "qnc: " << e.what() << "\n";
        return qnc::exit_code::certification_failure;
    } catch (const std::exception& e) {
        std::cerr << "qnc: " << e.what() << "\n";
        return qnc::exit_code::verification_failure;
    }
}
