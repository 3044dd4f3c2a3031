// Command-line front door: instance I/O, hypothesis checks, exact solves,
// witness construction, dimension reduction, instance generators, randomized
// exploration, and report re-verification.
//
// Exit codes: 0 holds/ok, 1 fails (violated hypothesis, failed check,
// unreproducible report), 2 budget exceeded, 3 malformed input.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "boxhelly/cover.hpp"
#include "boxhelly/gallery.hpp"
#include "boxhelly/io.hpp"
#include "boxhelly/reduce.hpp"
#include "boxhelly/trace.hpp"
#include "boxhelly/witness.hpp"

namespace {

using nlohmann::json;
using namespace boxhelly;

constexpr int kExitOk = 0;
constexpr int kExitFails = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMalformed = 3;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t x = seed + (trial + 1) * 0x9E3779B97F4A7C15ull;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

void write_json(const json& doc, const std::string& path) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << canonical_text(doc);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << canonical_text(doc);
}

json report_skeleton(const std::string& command, const json& options,
                     const json& instance) {
    return {{"version", kReportVersion},
            {"command", command},
            {"options", options},
            {"instance", instance},
            {"result", nullptr},
            {"timing_ms", 0}};
}

json refs_json(const std::vector<BoxRef>& refs) {
    json out = json::array();
    for (const BoxRef& ref : refs) out.push_back(boxref_to_json(ref));
    return out;
}

json violation_json(const char* kind, const std::string& what,
                    const std::vector<BoxRef>& transversal) {
    return {{"violation",
             {{"kind", kind}, {"detail", what}, {"transversal", refs_json(transversal)}}}};
}

int verdict_exit(const CheckReport& report) {
    switch (report.verdict) {
        case CheckReport::Verdict::Holds: return kExitOk;
        case CheckReport::Verdict::Fails: return kExitFails;
        case CheckReport::Verdict::BudgetExceeded: return kExitBudget;
    }
    return kExitMalformed;
}

// ---- check ----------------------------------------------------------------

struct CheckOptions {
    std::string mode;
    std::uint64_t n = 1;
    std::size_t k = 1;
    std::size_t p = 1, q = 1;
    std::size_t family = 0;
    bool at_most = false;
    std::uint64_t budget = kDefaultCheckBudget;
};

json check_options_json(const CheckOptions& o) {
    json out = {{"mode", o.mode}, {"budget", o.budget}};
    if (o.mode == "colorful") out["n"] = o.n;
    if (o.mode == "subfamily") {
        out["k"] = o.k;
        out["n"] = o.n;
        out["at_most"] = o.at_most;
        out["family"] = o.family;
    }
    if (o.mode == "pq") {
        out["p"] = o.p;
        out["q"] = o.q;
        out["family"] = o.family;
    }
    return out;
}

CheckReport run_check(const Instance& inst, const CheckOptions& o) {
    if (o.mode == "colorful") return check_colorful_n_intersecting(inst, o.n, o.budget);
    if (o.family >= inst.families.size())
        throw UsageError("family index out of range");
    const std::vector<TraceSet> traces = trace(inst);
    std::vector<TraceSet> fam;
    for (const TraceSet& t : traces)
        if (t.family == o.family) fam.push_back(t);
    if (o.mode == "subfamily")
        return check_subfamily_n_intersecting(
            fam, o.k, o.n, o.budget, o.at_most ? SubsetMode::AtMost : SubsetMode::Exact);
    return check_pq_property(fam, o.p, o.q, o.budget);
}

// ---- solve ----------------------------------------------------------------

struct SolveOptions {
    std::int64_t family = 0;  // -1 = all families
    std::uint64_t k = 1;
    std::string cap = "set";
};

json run_solve(const Instance& inst, const SolveOptions& o) {
    const CapMode cap = o.cap == "multiset" ? CapMode::KCover : CapMode::Multitransversal;
    json families = json::array();
    const std::size_t begin = o.family < 0 ? 0 : static_cast<std::size_t>(o.family);
    const std::size_t end =
        o.family < 0 ? inst.families.size() : static_cast<std::size_t>(o.family) + 1;
    if (begin >= inst.families.size() || end > inst.families.size())
        throw UsageError("family index out of range");
    for (std::size_t f = begin; f < end; ++f) {
        const SolveResult result = solve_exact(make_cover_problem(inst, f, o.k, cap));
        json entry = solve_result_to_json(result);
        entry["family"] = f;
        families.push_back(std::move(entry));
    }
    return {{"families", std::move(families)}};
}

// ---- witness --------------------------------------------------------------

json run_witness(const Instance& inst, const std::string& variant, std::uint64_t n,
                 int& exit_code) {
    try {
        WitnessCertificate cert;
        if (variant == "mono") {
            if (inst.families.size() != 1)
                throw UsageError("mono witness expects a single-family instance");
            cert = witness_monochromatic(inst.families[0], inst.points, n,
                                         inst.dimension);
        } else {
            cert = witness_colorful(inst, n);
        }
        const bool valid = certificate_valid(inst, cert, n);
        if (!valid) throw std::logic_error("emitted certificate failed validation");
        exit_code = kExitOk;
        json out = {{"certificate", certificate_to_json(cert)},
                    {"size", cert.copies.size()},
                    {"verified", true}};
        out["theorem_bound"] =
            variant == "mono" ? 2 * n : colorful_bound(inst.dimension, n);
        return out;
    } catch (const HypothesisViolated& e) {
        exit_code = kExitFails;
        return violation_json("hypothesis", e.what(), e.transversal());
    } catch (const StructureViolated& e) {
        exit_code = kExitFails;
        return violation_json("structure", e.what(), e.transversal());
    }
}

// ---- reduce ---------------------------------------------------------------

json run_reduce(const Instance& inst, std::uint64_t n, std::size_t t, int& exit_code) {
    try {
        auto [reduced, info] = reduce(inst, n, t);
        json taus = json::array();
        for (std::size_t slot = 0; slot < reduced.families.size(); ++slot) {
            const SolveResult before = solve_exact(
                make_cover_problem(inst, info.surviving_families[slot], n));
            const SolveResult after = solve_exact(make_cover_problem(reduced, slot, n));
            json entry = {{"family", info.surviving_families[slot]}};
            entry["original"] =
                before.feasible() ? json(*before.optimum) : json("infeasible");
            entry["reduced"] =
                after.feasible() ? json(*after.optimum) : json("infeasible");
            entry["inequality_ok"] = before.feasible() && after.feasible() &&
                                     *before.optimum <= *after.optimum;
            taus.push_back(std::move(entry));
        }
        exit_code = kExitOk;
        return {{"reduction", reduction_to_json(info)},
                {"reduced_instance", instance_to_json(reduced)},
                {"multitransversal_numbers", std::move(taus)}};
    } catch (const HypothesisViolated& e) {
        exit_code = kExitFails;
        return violation_json("hypothesis", e.what(), e.transversal());
    }
}

json run_reduce_corollary(const Instance& inst, std::size_t k, int& exit_code) {
    if (inst.families.size() != 1)
        throw UsageError("corollary mode expects a single-family instance");
    try {
        ReducePierceReport report =
            reduce_and_compare(inst.families[0], inst.points, inst.dimension, k);
        exit_code = report.inequality_ok ? kExitOk : kExitFails;
        return {{"s", report.s},
                {"t", report.t},
                {"reduced_dimension", report.reduced_dimension},
                {"bound_symbol", report.bound_symbol},
                {"tau_original", report.tau_original},
                {"tau_reduced", report.tau_reduced},
                {"inequality_ok", report.inequality_ok},
                {"reduction", reduction_to_json(report.reduction)},
                {"reduced_instance", instance_to_json(report.reduced_instance)}};
    } catch (const HypothesisViolated& e) {
        exit_code = kExitFails;
        return violation_json("hypothesis", e.what(), e.transversal());
    }
}

// ---- explore --------------------------------------------------------------

struct ExploreOptions {
    std::string problem;  // P4.1 or P4.2
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t d = 2;
    std::uint64_t n = 1;
    std::vector<std::size_t> sizes;
    std::size_t family_size = 8;
};

std::size_t worker_count() {
    const char* env = std::getenv("BOXHELLY_WORKERS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 ? static_cast<std::size_t>(v) : 1;
}

struct TrialOutcome {
    std::uint64_t value = 0;
    bool candidate = false;
    json detail;
};

json run_explore(const ExploreOptions& o) {
    std::vector<std::size_t> sizes = o.sizes;
    if (sizes.empty()) sizes.assign(2 * o.d - 1, 2);
    const std::uint64_t conjecture = o.problem == "P4.1" ? 2 * o.n : 3;

    auto one_trial = [&](std::uint64_t trial) {
        const std::uint64_t trial_seed = mix_seed(o.seed, trial);
        TrialOutcome outcome;
        Instance inst;
        if (o.problem == "P4.1") {
            inst = gen_random_colorful(o.d, o.n, sizes, trial_seed);
            std::uint64_t best = UINT64_MAX;
            std::size_t best_family = 0;
            json optima = json::array();
            for (std::size_t f = 0; f < inst.families.size(); ++f) {
                const SolveResult r = solve_exact(make_cover_problem(inst, f, o.n));
                optima.push_back(r.feasible() ? json(*r.optimum) : json("infeasible"));
                if (r.feasible() && *r.optimum < best) {
                    best = *r.optimum;
                    best_family = f;
                }
            }
            outcome.value = best;
            if (best > conjecture) {
                outcome.candidate = true;
                outcome.detail = {{"trial", trial},
                                  {"seed", trial_seed},
                                  {"best_family", best_family},
                                  {"per_family_optima", optima},
                                  {"instance", instance_to_json(inst)}};
            }
        } else {
            inst = gen_random_subfamily(o.d, 1, o.family_size, 2, trial_seed);
            const SolveResult r = solve_exact(make_cover_problem(inst, 0, 1));
            outcome.value = r.feasible() ? *r.optimum : 0;
            if (outcome.value > conjecture) {
                outcome.candidate = true;
                outcome.detail = {{"trial", trial},
                                  {"seed", trial_seed},
                                  {"tau", outcome.value},
                                  {"instance", instance_to_json(inst)}};
            }
        }
        return outcome;
    };

    std::vector<TrialOutcome> outcomes(o.trials);
    const std::size_t workers = std::min<std::size_t>(
        worker_count(), std::max<std::uint64_t>(o.trials, 1));
    if (workers <= 1) {
        for (std::uint64_t trial = 0; trial < o.trials; ++trial)
            outcomes[trial] = one_trial(trial);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t trial = w; trial < o.trials; trial += workers)
                    outcomes[trial] = one_trial(trial);
            });
        for (std::thread& th : pool) th.join();
    }

    std::uint64_t max_value = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;
    json candidates = json::array();
    for (const TrialOutcome& out : outcomes) {
        max_value = std::max(max_value, out.value);
        ++histogram[out.value];
        if (out.candidate) candidates.push_back(out.detail);
    }
    json jhist = json::object();
    for (const auto& [value, count] : histogram)
        jhist[std::to_string(value)] = count;
    return {{"problem", o.problem},
            {"trials", o.trials},
            {"conjectured_bound", conjecture},
            {"max_observed", o.trials == 0 ? json(nullptr) : json(max_value)},
            {"histogram", std::move(jhist)},
            {"candidates", std::move(candidates)}};
}

// ---- verify ---------------------------------------------------------------

bool verify_certificates(const Instance& inst, const json& result, std::uint64_t n,
                         std::string& why) {
    if (!result.is_object() || !result.contains("certificate")) return true;
    const WitnessCertificate cert = certificate_from_json(result["certificate"]);
    if (!certificate_valid(inst, cert, n)) {
        why = "stored certificate fails verify_cover";
        return false;
    }
    return true;
}

int run_verify(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json report;
    try {
        in >> report;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON report: ") + e.what());
    }
    if (!report.is_object() || report.value("version", "") != kReportVersion)
        throw ParseError("not a boxhelly report");
    const std::string command = report.value("command", "");
    const json options = report.value("options", json::object());
    const json stored = report.value("result", json());

    json fresh;
    int ignored = 0;
    if (command == "check") {
        const Instance inst = instance_from_json(report.at("instance"));
        CheckOptions o;
        o.mode = options.at("mode").get<std::string>();
        o.budget = options.at("budget").get<std::uint64_t>();
        o.n = options.value("n", std::uint64_t{1});
        o.k = options.value("k", std::size_t{1});
        o.p = options.value("p", std::size_t{1});
        o.q = options.value("q", std::size_t{1});
        o.family = options.value("family", std::size_t{0});
        o.at_most = options.value("at_most", false);
        fresh = check_report_to_json(run_check(inst, o));
    } else if (command == "solve") {
        const Instance inst = instance_from_json(report.at("instance"));
        SolveOptions o;
        o.family = options.at("family").get<std::int64_t>();
        o.k = options.at("k").get<std::uint64_t>();
        o.cap = options.at("cap").get<std::string>();
        fresh = run_solve(inst, o);
    } else if (command == "witness") {
        const Instance inst = instance_from_json(report.at("instance"));
        const std::uint64_t n = options.at("n").get<std::uint64_t>();
        std::string why;
        if (!verify_certificates(inst, stored, n, why)) {
            std::cout << "verify: FAILED (" << why << ")\n";
            return kExitFails;
        }
        fresh = run_witness(inst, options.at("variant").get<std::string>(), n, ignored);
    } else if (command == "reduce") {
        const Instance inst = instance_from_json(report.at("instance"));
        if (options.contains("corollary_k"))
            fresh = run_reduce_corollary(inst, options.at("corollary_k").get<std::size_t>(),
                                         ignored);
        else
            fresh = run_reduce(inst, options.at("n").get<std::uint64_t>(),
                               options.at("t").get<std::size_t>(), ignored);
    } else if (command == "explore") {
        ExploreOptions o;
        o.problem = options.at("problem").get<std::string>();
        o.trials = options.at("trials").get<std::uint64_t>();
        o.seed = options.at("seed").get<std::uint64_t>();
        o.d = options.at("d").get<std::size_t>();
        o.n = options.value("n", std::uint64_t{1});
        o.sizes = options.value("sizes", std::vector<std::size_t>{});
        o.family_size = options.value("family_size", std::size_t{8});
        fresh = run_explore(o);
    } else {
        throw ParseError("report command '" + command + "' is not verifiable");
    }

    if (fresh == stored) {
        std::cout << "verify: reproduced\n";
        return kExitOk;
    }
    std::cout << "verify: FAILED (stored result differs from a fresh run)\n";
    return kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact transversal bounds for axis-parallel box traces"};
    app.require_subcommand(1);

    std::string instance_path, out_path, report_path;

    // check
    auto* check = app.add_subcommand("check", "hypothesis checks on an instance");
    CheckOptions check_opts;
    check->add_option("--instance", instance_path, "instance JSON file")->required();
    check->add_option("--mode", check_opts.mode, "colorful | subfamily | pq")
        ->required()
        ->check(CLI::IsMember({"colorful", "subfamily", "pq"}));
    check->add_option("--n", check_opts.n, "required copies in each intersection");
    check->add_option("--k", check_opts.k, "subfamily size");
    check->add_option("--p", check_opts.p, "p of the (p,q) property");
    check->add_option("--q", check_opts.q, "q of the (p,q) property");
    check->add_option("--family", check_opts.family, "family index (subfamily/pq)");
    check->add_flag("--at-most", check_opts.at_most, "check all sizes up to k");
    check->add_option("--budget", check_opts.budget, "max tuples examined");
    check->add_option("--out", out_path, "write the run report here");

    // solve
    auto* solve = app.add_subcommand("solve", "exact multitransversal numbers");
    SolveOptions solve_opts;
    std::string family_arg = "0";
    solve->add_option("--instance", instance_path, "instance JSON file")->required();
    solve->add_option("--family", family_arg, "family index or 'all'");
    solve->add_option("--k", solve_opts.k, "per-box demand");
    solve->add_option("--cap", solve_opts.cap, "set (multitransversal) | multiset (k-cover)")
        ->check(CLI::IsMember({"set", "multiset"}));
    solve->add_option("--out", out_path, "write the run report here");

    // witness
    auto* witness = app.add_subcommand("witness", "build a certified multitransversal");
    std::uint64_t witness_n = 1;
    std::string witness_variant = "colorful";
    witness->add_option("--instance", instance_path, "instance JSON file")->required();
    witness->add_option("--n", witness_n, "required copies per box");
    witness->add_option("--variant", witness_variant, "colorful | mono")
        ->check(CLI::IsMember({"colorful", "mono"}));
    witness->add_option("--out", out_path, "write the run report here");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "dimension reduction");
    std::uint64_t reduce_n = 1;
    std::size_t reduce_t = 1;
    std::int64_t corollary_k = -1;
    reduce_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    reduce_cmd->add_option("--n", reduce_n, "required copies per box");
    reduce_cmd->add_option("--t", reduce_t, "axes to eliminate");
    reduce_cmd->add_option("--corollary-k", corollary_k,
                           "run the 2d-k pipeline on a single-family instance");
    reduce_cmd->add_option("--out", out_path, "write the run report here");

    // generate
    auto* generate = app.add_subcommand("generate", "emit instances");
    generate->require_subcommand(1);
    std::size_t gen_d = 2, gen_size = 8, gen_k = 2;
    std::uint64_t gen_n = 1, gen_seed = 0;
    long gen_range = 24;
    bool gen_splits = false;
    std::vector<std::size_t> gen_sizes;
    std::string gen_extent, gen_margin;

    auto* g_colorful = generate->add_subcommand("colorful-lower",
                                                "tight colorful lower-bound instance");
    g_colorful->add_option("--d", gen_d)->required();
    g_colorful->add_option("--n", gen_n)->required();
    g_colorful->add_option("--extent", gen_extent, "outer half-width (rational, >= 2d)");
    g_colorful->add_option("--margin", gen_margin, "split margin (rational in (0,1))");
    g_colorful->add_option("--out", out_path);

    auto* g_mono = generate->add_subcommand("mono-lower",
                                            "monochromatic lower-bound instance");
    g_mono->add_option("--d", gen_d)->required();
    g_mono->add_option("--n", gen_n)->required();
    g_mono->add_option("--out", out_path);

    auto* g_pq = generate->add_subcommand("pq-lower", "pairwise-intersecting, piercing 3");
    g_pq->add_option("--d", gen_d)->required();
    g_pq->add_option("--out", out_path);

    auto* g_rand = generate->add_subcommand("random-colorful",
                                            "random instance satisfying the hypothesis");
    g_rand->add_option("--d", gen_d)->required();
    g_rand->add_option("--n", gen_n)->required();
    g_rand->add_option("--sizes", gen_sizes, "family sizes (default 2d-1 twos)");
    g_rand->add_option("--seed", gen_seed);
    g_rand->add_option("--range", gen_range, "coordinate half-range");
    g_rand->add_flag("--splits", gen_splits, "force the canonical axis-split shape");
    g_rand->add_option("--out", out_path);

    auto* g_sub = generate->add_subcommand(
        "random-subfamily", "random family with n-intersecting k-subfamilies");
    g_sub->add_option("--d", gen_d)->required();
    g_sub->add_option("--n", gen_n)->required();
    g_sub->add_option("--size", gen_size, "family size");
    g_sub->add_option("--k", gen_k, "subfamily size");
    g_sub->add_option("--seed", gen_seed);
    g_sub->add_option("--range", gen_range, "coordinate half-range");
    g_sub->add_option("--out", out_path);

    // explore
    auto* explore = app.add_subcommand("explore", "randomized search on open problems");
    ExploreOptions explore_opts;
    explore->add_option("--problem", explore_opts.problem, "P4.1 | P4.2")
        ->required()
        ->check(CLI::IsMember({"P4.1", "P4.2"}));
    explore->add_option("--trials", explore_opts.trials)->required();
    explore->add_option("--seed", explore_opts.seed);
    explore->add_option("--d", explore_opts.d);
    explore->add_option("--n", explore_opts.n);
    explore->add_option("--sizes", explore_opts.sizes, "family sizes (P4.1)");
    explore->add_option("--size", explore_opts.family_size, "family size (P4.2)");
    explore->add_option("--out", out_path, "write the run report here");

    // verify
    auto* verify = app.add_subcommand("verify", "re-check a run report");
    verify->add_option("--report", report_path, "report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitMalformed;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed_ms = [&t0] {
            return std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                .count();
        };

        if (check->parsed()) {
            const Instance inst = load_instance(instance_path);
            const CheckReport result = run_check(inst, check_opts);
            json report = report_skeleton("check", check_options_json(check_opts),
                                          instance_to_json(inst));
            report["result"] = check_report_to_json(result);
            report["timing_ms"] = elapsed_ms();
            write_json(report, out_path);
            std::cout << "check " << check_opts.mode << ": "
                      << report["result"]["verdict"].get<std::string>() << " ("
                      << result.tuples_examined << " tuples)\n";
            return verdict_exit(result);
        }

        if (solve->parsed()) {
            solve_opts.family = family_arg == "all" ? -1 : std::stoll(family_arg);
            const Instance inst = load_instance(instance_path);
            const json result = run_solve(inst, solve_opts);
            json report = report_skeleton("solve",
                                          {{"family", solve_opts.family},
                                           {"k", solve_opts.k},
                                           {"cap", solve_opts.cap}},
                                          instance_to_json(inst));
            report["result"] = result;
            report["timing_ms"] = elapsed_ms();
            write_json(report, out_path);
            for (const json& entry : result["families"])
                std::cout << "solve family " << entry["family"] << " k=" << solve_opts.k
                          << " (" << solve_opts.cap << "): "
                          << (entry["status"] == "optimal"
                                  ? entry["optimum"].dump()
                                  : std::string("infeasible"))
                          << "\n";
            return kExitOk;
        }

        if (witness->parsed()) {
            const Instance inst = load_instance(instance_path);
            int exit_code = kExitOk;
            const json result = run_witness(inst, witness_variant, witness_n, exit_code);
            json report = report_skeleton(
                "witness", {{"variant", witness_variant}, {"n", witness_n}},
                instance_to_json(inst));
            report["result"] = result;
            report["timing_ms"] = elapsed_ms();
            write_json(report, out_path);
            if (exit_code == kExitOk)
                std::cout << "witness " << witness_variant << " n=" << witness_n
                          << ": family " << result["certificate"]["family"] << ", size "
                          << result["size"] << " <= bound " << result["theorem_bound"]
                          << " (" << result["certificate"]["branch"].get<std::string>()
                          << ")\n";
            else
                std::cout << "witness " << witness_variant << ": hypothesis violated ("
                          << result["violation"]["detail"].get<std::string>() << ")\n";
            return exit_code;
        }

        if (reduce_cmd->parsed()) {
            const Instance inst = load_instance(instance_path);
            int exit_code = kExitOk;
            json options, result;
            if (corollary_k >= 0) {
                options = {{"corollary_k", corollary_k}};
                result = run_reduce_corollary(inst, static_cast<std::size_t>(corollary_k),
                                              exit_code);
            } else {
                options = {{"n", reduce_n}, {"t", reduce_t}};
                result = run_reduce(inst, reduce_n, reduce_t, exit_code);
            }
            json report = report_skeleton("reduce", options, instance_to_json(inst));
            report["result"] = result;
            report["timing_ms"] = elapsed_ms();
            write_json(report, out_path);
            if (exit_code == kExitOk)
                std::cout << "reduce: ok\n";
            else
                std::cout << "reduce: failed\n";
            return exit_code;
        }

        if (generate->parsed()) {
            Instance inst;
            if (g_colorful->parsed()) {
                const Rational extent = gen_extent.empty()
                                            ? Rational(2 * static_cast<long>(gen_d))
                                            : parse_rational(gen_extent);
                const Rational margin =
                    gen_margin.empty() ? make_rational(1, 2) : parse_rational(gen_margin);
                inst = gen_colorful_lower(gen_d, gen_n, extent, margin);
            } else if (g_mono->parsed()) {
                inst = gen_mono_lower(gen_d, gen_n);
            } else if (g_pq->parsed()) {
                inst = gen_pq_lower(gen_d);
            } else if (g_rand->parsed()) {
                std::vector<std::size_t> sizes = gen_sizes;
                if (sizes.empty()) sizes.assign(2 * gen_d - 1, 2);
                RandomOptions options;
                options.force_axis_splits = gen_splits;
                options.coord_range = gen_range;
                inst = gen_random_colorful(gen_d, gen_n, sizes, gen_seed, options);
            } else {
                RandomOptions options;
                options.coord_range = gen_range;
                inst = gen_random_subfamily(gen_d, gen_n, gen_size, gen_k, gen_seed,
                                            options);
            }
            const json doc = instance_to_json(inst);
            if (out_path.empty())
                std::cout << canonical_text(doc);
            else
                write_json(doc, out_path);
            return kExitOk;
        }

        if (explore->parsed()) {
            const json result = run_explore(explore_opts);
            json report = report_skeleton("explore",
                                          {{"problem", explore_opts.problem},
                                           {"trials", explore_opts.trials},
                                           {"seed", explore_opts.seed},
                                           {"d", explore_opts.d},
                                           {"n", explore_opts.n},
                                           {"sizes", explore_opts.sizes},
                                           {"family_size", explore_opts.family_size}},
                                          nullptr);
            report["result"] = result;
            report["timing_ms"] = elapsed_ms();
            report["seed"] = explore_opts.seed;
            write_json(report, out_path);
            std::cout << "explore " << explore_opts.problem << ": trials="
                      << explore_opts.trials << " max="
                      << result["max_observed"].dump() << " conjectured<="
                      << result["conjectured_bound"] << " candidates="
                      << result["candidates"].size() << "\n";
            return kExitOk;
        }

        if (verify->parsed()) return run_verify(report_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFails;
    }
    return kExitOk;
}
