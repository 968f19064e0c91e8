// equiloc: exact equivariant localization runner.
//
//   equiloc run <file> [--output json|text] [--check-substitutions K] [--seed N]
//   equiloc demo quadric [--output json|text] [--check-substitutions K] [--seed N]
//   equiloc calibrate-schubert <n>
//
// Exit codes: 0 success, 1 semantic validation error, 2 parse error,
// 3 math error (NotConstant, VanishingCheckFailed, CalibrationFailed, ...).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "equiloc/equiloc.hpp"

namespace {

using namespace equiloc;

int emit_report(const RunReport& report, const std::string& output) {
    if (output == "json")
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.to_text();
    return 0;
}

int run_text(const std::string& text, const std::string& output, const RunOptions& opts) {
    Scenario scenario;
    try {
        scenario = parse_scenario(text);
    } catch (const ScenarioError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    }
    try {
        return emit_report(run_scenario(scenario, opts), output);
    } catch (const Error& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 3;
    }
}

int calibrate(std::size_t n) {
    try {
        const auto& conv = calibrated_convention();
        std::cout << "calibration: unique convention passes the S_2 and S_3 boundary validations\n";
        std::cout << "  " << conv.to_string() << "\n";
        if (n >= 2) {
            const auto perms = all_permutations(n);
            auto space = flag_fixed_points(n);
            bool ok = true;
            for (std::size_t i = 0; i < perms.size(); ++i) {
                MultiPoly prod = MultiPoly::constant(n, 1);
                for (const auto& t : space.at(i).tangent) prod *= MultiPoly::linear_form(t);
                ok = ok && (c_w_class(n, perms[i]).expand() == prod);
            }
            std::cout << "  c_w equals tangent products on S_" << n << ": "
                      << (ok ? "pass" : "FAIL") << "\n";
            auto w0_table = schubert_localize(n, Permutation::longest(n));
            bool w0_ok = true;
            for (std::size_t u = 0; u < perms.size(); ++u)
                w0_ok = w0_ok && (w0_table.entries[u] == invert(c_w_class(n, perms[u])));
            std::cout << "  fundamental class localizes to 1/c_u on S_" << n << ": "
                      << (w0_ok ? "pass" : "FAIL") << "\n";
            auto e_table = schubert_localize(n, Permutation::identity(n));
            bool e_ok = true;
            for (std::size_t u = 0; u < perms.size(); ++u)
                e_ok = e_ok && (e_table.entries[u]
                                == LocalizedClass::from_rational(n, u == 0 ? 1 : 0));
            std::cout << "  point class localizes to the delta table on S_" << n << ": "
                      << (e_ok ? "pass" : "FAIL") << "\n";
            if (!ok || !w0_ok || !e_ok) return 3;
        }
        return 0;
    } catch (const CalibrationError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact torus-equivariant localization and residue computations"};
    app.require_subcommand(1);

    std::string file;
    std::string output = "text";
    int check_substitutions = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("file", file, "scenario document (JSON)")->required();
    run->add_option("--output", output, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_option("--check-substitutions", check_substitutions,
                    "extra generic-point evaluations of the residue sum");
    run->add_option("--seed", seed, "seed for the substitution-check sampler");
    run->add_option("--threads", threads, "worker threads for per-point contributions");

    auto* demo = app.add_subcommand("demo", "run a built-in scenario");
    std::string which;
    demo->add_option("name", which, "demo name (quadric)")->required();
    demo->add_option("--output", output, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    demo->add_option("--check-substitutions", check_substitutions,
                     "extra generic-point evaluations of the residue sum");
    demo->add_option("--seed", seed, "seed for the substitution-check sampler");
    demo->add_option("--threads", threads, "worker threads for per-point contributions");

    auto* cal = app.add_subcommand("calibrate-schubert", "calibrate and validate conventions");
    std::size_t n = 3;
    cal->add_option("n", n, "validate on S_n after calibrating")->required();

    CLI11_PARSE(app, argc, argv);

    RunOptions opts;
    opts.check_substitutions = check_substitutions;
    opts.seed = seed;
    opts.threads = threads;

    if (run->parsed()) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "parse error: cannot open '" << file << "'\n";
            return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        return run_text(buffer.str(), output, opts);
    }
    if (demo->parsed()) {
        if (which != "quadric") {
            std::cerr << "validation error: unknown demo '" << which << "'\n";
            return 1;
        }
        try {
            return emit_report(run_scenario(quadric_demo_scenario(), opts), output);
        } catch (const Error& e) {
            std::cerr << "math error: " << e.what() << "\n";
            return 3;
        }
    }
    return calibrate(n);
}
