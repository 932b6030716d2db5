// cubeorient: command-line experiments on orientations of hypercubes.
//
//   cubeorient verify --dim 4 --mode exhaustive
//   cubeorient verify --dim 6 --mode sample --samples 1000 --seed 42
//   cubeorient harper --dim 6 --m-max 32
//   cubeorient construct --k 3 --out q6.cubeorient
//   cubeorient counterexample --out q3.cubeorient
//   cubeorient enumerate --dim 4
//   cubeorient facts
//
// Reports go to stdout (JSON by default). Exit status is 0 when every case
// passed, 1 when a case failed, 2 on a usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubeorient/experiments.hpp"

namespace {

using namespace cubeorient;

unsigned resolve_jobs(unsigned flag_value) {
    if (const char* env = std::getenv("CUBE_ORIENT_JOBS"); env != nullptr && *env != '\0') {
        try {
            const auto parsed = std::stoul(env);
            if (parsed > 0) return static_cast<unsigned>(parsed);
        } catch (const std::exception&) {
        }
        throw InputError(std::string("CUBE_ORIENT_JOBS must be a positive integer, got '") + env + "'");
    }
    return flag_value == 0 ? 1U : flag_value;
}

int emit(const ExperimentReport& report, const std::string& format) {
    if (format == "csv") {
        std::cout << "experiment,total,pass,fail,duration_seconds\n"
                  << report.experiment << ',' << report.total << ',' << report.pass << ',' << report.fail << ','
                  << report.duration_seconds << '\n';
    } else {
        std::cout << report_to_json(report).dump(2) << '\n';
    }
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypercube orientation experiments"};
    app.require_subcommand(1);

    int dim = 4;
    int k = 1;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> steps;
    std::optional<std::string> out;
    std::string format = "json";
    unsigned jobs = 1;
    std::optional<std::uint64_t> m_max;
    std::optional<int> facts_k;

    auto* verify = app.add_subcommand("verify", "Check strong (d/2)-node connectivity of Eulerian orientations");
    verify->add_option("--dim", dim, "Even cube dimension")->required();
    verify->add_option("--mode", mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
    verify->add_option("--samples", samples, "Number of sampled orientations");
    verify->add_option("--seed", seed, "Sampler seed");
    verify->add_option("--steps", steps, "Cycle reversals between samples (default 10|E|)");
    verify->add_option("--out", out, "Witness file written on failure")->default_str("witness.cubeorient");
    verify->add_option("--jobs", jobs, "Worker threads (CUBE_ORIENT_JOBS overrides)");
    verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto* harper = app.add_subcommand("harper", "Tabulate Harper's b_v(m, Q_n) against oracles and the bound");
    harper->add_option("--dim", dim, "Even ambient dimension n <= 16")->required();
    harper->add_option("--m-max", m_max, "Largest m (default 2^(n-1))");
    harper->add_option("--out", out, "Write the table here instead of stdout");
    std::string harper_format = "csv";
    harper->add_option("--format", harper_format, "Table format")->check(CLI::IsMember({"json", "csv"}));

    auto* construct = app.add_subcommand("construct", "Build and check the inductive orientation of Q_{2k}");
    construct->add_option("--k", k, "Half the dimension, 1..5")->required();
    construct->add_option("--out", out, "Orientation file");
    construct->add_option("--jobs", jobs, "Worker threads (CUBE_ORIENT_JOBS overrides)");
    construct->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto* counter = app.add_subcommand("counterexample", "Find a smooth, not strongly connected orientation of Q_3");
    counter->add_option("--out", out, "Orientation file");
    counter->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto* enumerate = app.add_subcommand("enumerate", "Count Eulerian orientations under two edge orders");
    enumerate->add_option("--dim", dim, "Even dimension <= 4")->required();
    enumerate->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto* facts = app.add_subcommand("facts", "Numerical checks of the expansion and shadow inequalities");
    facts->add_option("--k", facts_k, "Restrict to one k");
    facts->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.d = dim;
            opt.mode = mode == "sample" ? VerifyMode::sample : VerifyMode::exhaustive;
            opt.samples = samples;
            opt.seed = seed;
            opt.steps = steps;
            opt.jobs = resolve_jobs(jobs);
            opt.witness_path = out.value_or("witness.cubeorient");
            return emit(verify_main_theorem(opt), format);
        }
        if (harper->parsed()) {
            const auto limit = m_max.value_or(dim >= 1 && dim <= 64 ? (std::uint64_t{1} << (dim - 1)) : 0);
            std::string text;
            bool ok = true;
            if (harper_format == "csv") {
                const auto rows = harper_table(dim, limit);
                for (const auto& r : rows) ok = ok && r.bound_satisfied() && (!r.oracle || *r.oracle == r.harper);
                text = harper_table_csv(rows);
            } else {
                const auto report = harper_report(dim, limit);
                ok = report.ok();
                text = report_to_json(report).dump(2) + "\n";
            }
            if (out) {
                std::ofstream file(*out);
                if (!file) throw InputError("cannot open '" + *out + "' for writing");
                file << text;
            } else {
                std::cout << text;
            }
            return ok ? 0 : 1;
        }
        if (construct->parsed()) return emit(construct_report(k, out, resolve_jobs(jobs)), format);
        if (counter->parsed()) return emit(counterexample_q3_report(out), format);
        if (enumerate->parsed()) return emit(enumerate_report(dim), format);
        if (facts->parsed()) return emit(facts_report(facts_k), format);
    } catch (const CubeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
