#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cubeorient/connectivity.hpp"
#include "cubeorient/error.hpp"
#include "cubeorient/generate.hpp"
#include "cubeorient/isoperimetry.hpp"
#include "cubeorient/orientation.hpp"
#include "cubeorient/report_json.hpp"

namespace cubeorient {

struct ExperimentParams {
    std::optional<int> d;
    std::optional<int> k;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> steps;
};

struct Witness {
    std::string orientation;                  // CUBEORIENT v1 text
    std::optional<ConnectivityReport> report;
    std::optional<std::string> file;          // where the orientation was persisted
};

struct ExperimentReport {
    std::string experiment;
    ExperimentParams params;
    std::uint64_t total = 0;
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;
    std::vector<Witness> witnesses;
    nlohmann::json details = nlohmann::json::object();
    double duration_seconds = 0.0;

    [[nodiscard]] bool ok() const { return fail == 0 && pass + fail == total; }
};

inline nlohmann::json report_to_json(const ExperimentReport& r) {
    nlohmann::json params = nlohmann::json::object();
    if (r.params.d) params["d"] = *r.params.d;
    if (r.params.k) params["k"] = *r.params.k;
    if (r.params.mode) params["mode"] = *r.params.mode;
    if (r.params.seed) params["seed"] = *r.params.seed;
    if (r.params.samples) params["samples"] = *r.params.samples;
    if (r.params.steps) params["steps"] = *r.params.steps;

    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::json jw;
        jw["orientation"] = w.orientation;
        if (w.report) jw["report"] = connectivity_report_to_json(*w.report);
        if (w.file) jw["file"] = *w.file;
        witnesses.push_back(std::move(jw));
    }

    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["parameters"] = std::move(params);
    j["outcome"] = {{"total", r.total}, {"pass", r.pass}, {"fail", r.fail}};
    j["witnesses"] = std::move(witnesses);
    j["details"] = r.details;
    j["duration_seconds"] = r.duration_seconds;
    return j;
}

namespace detail {

class Stopwatch {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs check(i) for i in [0, count) on `jobs` threads and stops after the first
// failure. Returns the lowest failing index; all indices below it were checked.
template <typename Check>
std::optional<std::size_t> first_failing_index(std::size_t count, unsigned jobs, Check&& check) {
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> lowest{kNone};
    auto worker = [&](unsigned w) {
        for (std::size_t i = w; i < count; i += jobs) {
            if (i > lowest.load()) return;
            if (!check(i)) {
                auto seen = lowest.load();
                while (i < seen && !lowest.compare_exchange_weak(seen, i)) {
                }
                return;
            }
        }
    };
    jobs = std::max(1U, jobs);
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    if (lowest.load() == kNone) return std::nullopt;
    return lowest.load();
}

}  // namespace detail

enum class VerifyMode { exhaustive, sample };

struct VerifyOptions {
    int d = 4;
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> steps;    // cycle reversals between samples
    unsigned jobs = 1;
    std::optional<std::string> witness_path;  // persisted on the first failure
};

// Checks strong (d/2)-node connectivity of every Eulerian orientation of Q_d
// (exhaustive) or of `samples` consecutive states of a seeded cycle-reversal
// chain. Work stops at the first violation, which is recorded as a witness.
inline ExperimentReport verify_main_theorem(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    if (opt.d < 2 || opt.d % 2 != 0) throw InfeasibleError("verify needs an even dimension d >= 2");
    const HypercubeDim d(opt.d);
    const int k = opt.d / 2;

    ExperimentReport report;
    report.experiment = "verify";
    report.params.d = opt.d;
    report.params.k = k;

    std::vector<Orientation> cases;
    if (opt.mode == VerifyMode::exhaustive) {
        if (opt.d > kMaxEnumerationDim) throw InfeasibleError("exhaustive verification supports d <= 4");
        report.params.mode = "exhaustive";
        enumerate_eulerian_orientations(d, [&](const Orientation& o) { cases.push_back(o); });
    } else {
        if (opt.d != 4 && opt.d != 6) throw InfeasibleError("sampled verification supports d = 4 or d = 6");
        report.params.mode = "sample";
        report.params.seed = opt.seed;
        report.params.samples = opt.samples;
        const auto steps = opt.steps.value_or(10 * d.edge_count());
        report.params.steps = steps;
        EulerianSampler sampler(d, opt.seed);
        cases.reserve(opt.samples);
        for (std::uint64_t i = 0; i < opt.samples; ++i) {
            sampler.advance(steps);
            cases.push_back(sampler.current());
        }
    }

    const auto failing = detail::first_failing_index(cases.size(), opt.jobs, [&](std::size_t i) {
        return is_eulerian_orientation(cases[i]) && is_strongly_k_node_connected(cases[i], k).verdict;
    });

    if (!failing) {
        report.total = report.pass = cases.size();
    } else {
        report.pass = *failing;
        report.fail = 1;
        report.total = report.pass + report.fail;
        const auto& bad = cases[*failing];
        Witness w;
        w.orientation = to_file_text(bad);
        w.report = is_strongly_k_node_connected(bad, k);
        if (opt.witness_path) {
            write_orientation_file(*opt.witness_path, bad);
            w.file = *opt.witness_path;
        }
        report.witnesses.push_back(std::move(w));
        report.details["first_failing_case"] = *failing;
        report.details["aborted"] = report.total < cases.size();
    }
    report.details["cases_generated"] = cases.size();
    report.duration_seconds = clock.seconds();
    return report;
}

struct HarperRow {
    std::uint64_t m = 0;
    std::uint64_t harper = 0;
    std::optional<std::uint64_t> oracle;
    std::int64_t bound = 0;

    [[nodiscard]] bool bound_satisfied() const { return static_cast<std::int64_t>(harper) > bound; }
};

inline constexpr int kMaxHarperTableDim = 16;

// Harper's b_v(m, Q_n) for m = 1..m_max next to an oracle (exhaustive search
// for n <= 4, Hamming-ball segments above) and the expansion bound with k = n/2.
inline std::vector<HarperRow> harper_table(int n, std::uint64_t m_max) {
    if (n < 2 || n % 2 != 0 || n > kMaxHarperTableDim) {
        throw InfeasibleError("harper table needs an even n in [2, " + std::to_string(kMaxHarperTableDim) + "]");
    }
    if (m_max < 1 || m_max > (std::uint64_t{1} << (n - 1))) throw InfeasibleError("m_max must be in [1, 2^(n-1)]");
    const auto profile = n > kMaxBruteForceDim ? hamming_ball_profile(n, m_max) : std::vector<std::uint64_t>{};
    const std::int64_t k = n / 2;
    std::vector<HarperRow> rows;
    rows.reserve(m_max);
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        HarperRow row;
        row.m = m;
        row.harper = harper_bv(m, n);
        row.oracle = n <= kMaxBruteForceDim ? bv_bruteforce(m, n) : profile[m - 1];
        row.bound = expansion_bound(static_cast<std::int64_t>(m), k);
        rows.push_back(row);
    }
    return rows;
}

inline std::string harper_table_csv(const std::vector<HarperRow>& rows) {
    std::ostringstream out;
    out << "m,harper_bv,oracle,bound,bound_satisfied\n";
    for (const auto& r : rows) {
        out << r.m << ',' << r.harper << ',';
        if (r.oracle) out << *r.oracle;
        out << ',' << r.bound << ',' << (r.bound_satisfied() ? "true" : "false") << '\n';
    }
    return out.str();
}

// Rows where Harper's value, the oracle, and the bound all agree count as passes.
inline ExperimentReport harper_report(int n, std::uint64_t m_max) {
    detail::Stopwatch clock;
    ExperimentReport report;
    report.experiment = "harper";
    report.params.d = n;
    report.params.k = n / 2;
    const auto rows = harper_table(n, m_max);
    nlohmann::json table = nlohmann::json::array();
    for (const auto& r : rows) {
        const bool good = r.bound_satisfied() && (!r.oracle || *r.oracle == r.harper);
        ++(good ? report.pass : report.fail);
        table.push_back({{"m", r.m},
                         {"harper_bv", r.harper},
                         {"oracle", r.oracle ? nlohmann::json(*r.oracle) : nlohmann::json()},
                         {"bound", r.bound},
                         {"bound_satisfied", r.bound_satisfied()}});
    }
    report.total = rows.size();
    report.details["rows"] = std::move(table);
    report.duration_seconds = clock.seconds();
    return report;
}

inline constexpr int kMaxVerifiedConstructionK = 3;

// Builds the inductive orientation of Q_{2k}, writes it, and checks it is
// Eulerian and strongly k-node connected when k is small enough to sweep.
inline ExperimentReport construct_report(int k, const std::optional<std::string>& out_path, unsigned jobs = 1) {
    detail::Stopwatch clock;
    ExperimentReport report;
    report.experiment = "construct";
    report.params.k = k;
    report.params.d = 2 * k;
    const auto o = inductive_good_orientation(k);
    if (out_path) write_orientation_file(*out_path, o);
    report.details["eulerian"] = is_eulerian_orientation(o);

    if (k <= kMaxVerifiedConstructionK) {
        const auto conn = is_strongly_k_node_connected(o, k, jobs);
        const bool good = conn.verdict && is_eulerian_orientation(o);
        report.total = 1;
        (good ? report.pass : report.fail) = 1;
        report.details["verified"] = true;
        report.details["connectivity"] = connectivity_report_to_json(conn);
        if (!good) report.witnesses.push_back(Witness{to_file_text(o), conn, out_path});
    } else {
        report.details["verified"] = false;
    }
    if (out_path) report.details["file"] = *out_path;
    report.duration_seconds = clock.seconds();
    return report;
}

// Exhaustive search of Q_3 for a smooth orientation that is not strongly
// connected; the witness is written, read back, and re-checked.
inline ExperimentReport counterexample_q3_report(const std::optional<std::string>& out_path) {
    detail::Stopwatch clock;
    ExperimentReport report;
    report.experiment = "counterexample";
    report.params.d = 3;
    report.total = 1;

    const HypercubeDim d(3);
    const auto found = find_smooth_not_strongly_connected(d, SamplerConfig{});
    if (!found) {
        report.fail = 1;
        report.details["found"] = false;
        report.duration_seconds = clock.seconds();
        return report;
    }

    const auto text = to_file_text(*found);
    Orientation replay = from_file_text(text);
    if (out_path) {
        write_orientation_file(*out_path, *found);
        replay = read_orientation_file(*out_path);
    }
    const bool smooth = is_smooth(replay);
    const bool strong = strongly_connected(replay);
    const bool identical = replay == *found;
    const bool good = smooth && !strong && identical;
    (good ? report.pass : report.fail) = 1;

    report.details["found"] = true;
    report.details["smooth"] = smooth;
    report.details["strongly_connected"] = strong;
    report.details["eulerian"] = is_eulerian_orientation(replay);
    report.details["replay_identical"] = identical;
    report.witnesses.push_back(Witness{text, std::nullopt, out_path});
    report.duration_seconds = clock.seconds();
    return report;
}

// Counts Eulerian orientations of Q_d under two edge orders; they must agree.
inline ExperimentReport enumerate_report(int dimension) {
    detail::Stopwatch clock;
    const HypercubeDim d(dimension);
    ExperimentReport report;
    report.experiment = "enumerate";
    report.params.d = dimension;
    std::uint64_t eulerian = 0;
    const auto canonical = enumerate_eulerian_orientations(
        d, [&](const Orientation& o) { eulerian += is_eulerian_orientation(o) ? 1 : 0; }, EdgeOrder::canonical);
    const auto dim_major = count_eulerian_orientations(d, EdgeOrder::dimension_major);
    report.total = 1;
    (canonical == dim_major && eulerian == canonical ? report.pass : report.fail) = 1;
    report.details["count_canonical_order"] = canonical;
    report.details["count_dimension_major_order"] = dim_major;
    report.duration_seconds = clock.seconds();
    return report;
}

// Every (m', r) with k + 1 <= r <= 2k - 2 and 1 <= m' <= C(2k, r).
inline bool shadow_sweep(int k) {
    for (int r = k + 1; r <= 2 * k - 2; ++r) {
        for (std::uint64_t mp = 1; mp <= binomial(2 * k, r); ++mp) {
            if (!check_claim6(mp, r, k)) return false;
        }
    }
    return true;
}

// Numerical checks behind the expansion hypothesis: the Harper-based condition,
// the small-m and large-m inequalities with their identities, and the shadow
// inequality. Without `only_k` runs the default ranges.
inline ExperimentReport facts_report(std::optional<int> only_k) {
    detail::Stopwatch clock;
    ExperimentReport report;
    report.experiment = "facts";
    if (only_k) report.params.k = *only_k;

    nlohmann::json rows = nlohmann::json::array();
    auto record = [&](const std::string& check, int k, bool ok) {
        ++report.total;
        ++(ok ? report.pass : report.fail);
        rows.push_back({{"check", check}, {"k", k}, {"holds", ok}});
    };

    auto in_range = [&](int k) { return !only_k || *only_k == k; };
    for (int k = 1; k <= 5; ++k) {
        if (in_range(k)) record("expansion_condition", k, check_theorem1_condition(k));
    }
    for (int k = 2; k <= kMaxFactsK; ++k) {
        if (!in_range(k)) continue;
        const auto f = check_expansion_facts(k);
        record("identity_small_m", k, f.identity_small_m);
        record("identity_large_m", k, f.identity_large_m);
        record("small_m_bound", k, f.small_m_bound);
        record("large_m_bound", k, f.large_m_bound);
    }
    for (int k = 3; k <= 4; ++k) {
        if (in_range(k)) record("shadow_sweep", k, shadow_sweep(k));
    }
    if (only_k && report.total == 0) {
        if (*only_k < 1 || *only_k > kMaxExpansionK) throw InfeasibleError("facts supports 1 <= k <= 8");
        record("expansion_condition", *only_k, check_theorem1_condition(*only_k));
    }
    report.details["checks"] = std::move(rows);
    report.duration_seconds = clock.seconds();
    return report;
}

}  // namespace cubeorient
