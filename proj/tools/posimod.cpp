// Command-line front end: loads instance files, runs the verifiers,
// optimizers and enumerators, and prints one machine-readable JSON record
// per result (indented with --pretty).
//
// Exit codes: 0 success, 1 semantic negative (law violation found, or no
// adversary witness exists), 2 usage or parse error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <posimod/posimod.hpp>

using namespace posimod;
using posimod::io::json;

namespace {

struct Options {
    bool pretty = false;
    bool count_raw = false;
};

void print_report(const json& j, const Options& opt) {
    std::cout << (opt.pretty ? j.dump(2) : j.dump()) << "\n";
}

int exhaustive_cap(int fallback) {
    if (const char* env = std::getenv("POSIMOD_N_CAP")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("POSIMOD_N_CAP is not an integer");
        }
    }
    return fallback;
}

struct LoadedInstance {
    io::InstanceFile file;
    SetFunctionOracle oracle;
};

LoadedInstance load(const std::string& path, const Options& opt) {
    io::InstanceFile file = io::load_instance_file(path);
    SetFunctionOracle oracle = file.instance.build();
    if (opt.count_raw) oracle.set_count_raw(true);
    return {std::move(file), std::move(oracle)};
}

class Timer {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int run_verify(const std::string& path, const std::string& law_name_arg, const Options& opt) {
    auto inst = load(path, opt);
    Law law;
    if (law_name_arg == "posimodular") law = Law::posimodular;
    else if (law_name_arg == "submodular") law = Law::submodular;
    else if (law_name_arg == "monotone") law = Law::monotone;
    else if (law_name_arg == "symmetric") law = Law::symmetric;
    else throw std::invalid_argument("unknown law: " + law_name_arg);

    Timer timer;
    VerifyResult violation = verify_law(inst.oracle, law, exhaustive_cap(kDefaultVerifyCap));

    io::RunReport report;
    report.command = "verify";
    report.instance_summary = io::instance_summary(inst.file.instance, inst.oracle);
    report.algorithm = std::string("verify_") + law_name_arg;
    report.oracle_calls = inst.oracle.call_count();
    json res;
    res["law"] = law_name_arg;
    res["ok"] = !violation.has_value();
    if (violation) {
        json v;
        v["x"] = io::mask_to_json(violation->x);
        v["y"] = io::mask_to_json(violation->y);
        v["lhs"] = format_value(violation->lhs);
        v["rhs"] = format_value(violation->rhs);
        res["violation"] = v;
    }
    report.result = res;
    report.wall_time_ms = timer.elapsed_ms();
    print_report(report.to_json(), opt);
    return violation ? 1 : 0;
}

int report_optimization(const LoadedInstance& inst, const OptimizationResult& result, const std::string& command,
                        double ms, const Options& opt) {
    io::RunReport report;
    report.command = command;
    report.instance_summary = io::instance_summary(inst.file.instance, inst.oracle);
    report.algorithm = result.algorithm;
    report.oracle_calls = result.oracle_calls;
    report.result = io::witness_json(result.witness, result.value);
    report.wall_time_ms = ms;
    print_report(report.to_json(), opt);
    return 0;
}

int run_min(const std::string& path, std::string algorithm, const Options& opt) {
    auto inst = load(path, opt);
    SetFunctionOracle f = normalize(inst.oracle);
    if (algorithm == "auto") {
        if (!f.range_bound()) throw std::invalid_argument("instance declares no range_bound; use --algorithm brute");
        algorithm = *f.range_bound() <= 3 ? "d3" : "general";
    }
    Timer timer;
    OptimizationResult result;
    if (algorithm == "brute") result = brute_force_min(f, exhaustive_cap(kDefaultBruteCap));
    else if (algorithm == "d3") result = min_d_le_3(f);
    else if (algorithm == "general") result = min_posimodular(f);
    else throw std::invalid_argument("unknown algorithm: " + algorithm);
    return report_optimization(inst, result, "min", timer.elapsed_ms(), opt);
}

int run_max(const std::string& path, const Options& opt) {
    auto inst = load(path, opt);
    SetFunctionOracle f = normalize(inst.oracle);
    Timer timer;
    OptimizationResult result = max_posimodular(f);
    return report_optimization(inst, result, "max", timer.elapsed_ms(), opt);
}

int run_extreme(const std::string& path, const Options& opt) {
    auto inst = load(path, opt);
    SetFunctionOracle f = normalize(inst.oracle);
    Timer timer;
    auto family = compute_extreme_sets(f);

    io::RunReport report;
    report.command = "extreme";
    report.instance_summary = io::instance_summary(inst.file.instance, inst.oracle);
    report.algorithm = "compute_extreme_sets";
    report.oracle_calls = f.call_count();
    json sets = json::array();
    for (const auto& x : family) sets.push_back(io::mask_to_json(x));
    json res;
    res["extreme_sets"] = sets;
    res["count"] = family.size();
    res["laminar"] = is_laminar(family);
    report.result = res;
    report.wall_time_ms = timer.elapsed_ms();
    print_report(report.to_json(), opt);
    return 0;
}

int run_enum_min(const std::string& path, long long limit, const Options& opt) {
    auto inst = load(path, opt);
    SetFunctionOracle f = normalize(inst.oracle);
    Timer timer;
    long long printed = 0;
    long long emitted = enumerate_all_minimizers(f, [&](SubsetMask x) {
        json line;
        line["minimizer"] = io::mask_to_json(x);
        std::cout << (opt.pretty ? line.dump(2) : line.dump()) << "\n";
        ++printed;
        return limit <= 0 || printed < limit;
    });

    io::RunReport report;
    report.command = "enum-min";
    report.instance_summary = io::instance_summary(inst.file.instance, inst.oracle);
    report.algorithm = "enumerate_all_minimizers";
    report.oracle_calls = f.call_count();
    json res;
    res["emitted"] = emitted;
    if (limit > 0) res["limit"] = limit;
    report.result = res;
    report.wall_time_ms = timer.elapsed_ms();
    print_report(report.to_json(), opt);
    return 0;
}

int run_lowerbound(int n, int k, const std::optional<std::string>& transcript_path, const Options& opt) {
    Timer timer;
    io::RunReport report;
    report.command = "lowerbound";
    json res;
    res["n"] = n;
    res["k"] = k;
    res["q_k_bound"] = format_value(q_k_lower_bound(n, k));
    int exit_code = 0;
    if (transcript_path) {
        QueryTranscript transcript = io::load_transcript_file(*transcript_path);
        auto witness = adversary_witness(transcript, n, k);
        res["transcript_size"] = transcript.queries.size();
        if (witness) {
            res["witness"] = io::mask_to_json(*witness);
        } else {
            res["covered"] = true;
            exit_code = 1;
        }
    }
    report.result = res;
    report.algorithm = "q_k_lower_bound";
    report.wall_time_ms = timer.elapsed_ms();
    print_report(report.to_json(), opt);
    return exit_code;
}

int run_stats(const std::string& path, const Options& opt) {
    auto inst = load(path, opt);
    Timer timer;
    io::RunReport report;
    report.command = "stats";
    report.instance_summary = io::instance_summary(inst.file.instance, inst.oracle);
    json res;
    res["n"] = inst.oracle.n();
    res["subsets"] = inst.oracle.ground().subset_count();
    res["f_empty"] = format_value(inst.oracle.evaluate(SubsetMask()));
    int cap = exhaustive_cap(kDefaultVerifyCap);
    if (inst.oracle.n() <= cap) {
        json laws;
        for (Law law : {Law::posimodular, Law::submodular, Law::monotone, Law::symmetric})
            laws[law_name(law)] = !verify_law(inst.oracle, law, cap).has_value();
        res["laws"] = laws;
        SetFunctionOracle f = normalize(inst.oracle);
        auto mn = brute_force_min(f, cap);
        auto mx = brute_force_max(f, cap);
        res["min"] = io::witness_json(mn.witness, mn.value);
        res["max"] = io::witness_json(mx.witness, mx.value);
    }
    report.result = res;
    report.oracle_calls = inst.oracle.call_count();
    report.wall_time_ms = timer.elapsed_ms();
    print_report(report.to_json(), opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact optimization of posimodular set functions given by value oracles"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--pretty", opt.pretty, "indent JSON output for humans");
    app.add_flag("--count-raw", opt.count_raw, "count every oracle call, cache hits included");

    std::string file;
    std::string law = "posimodular";
    auto* verify = app.add_subcommand("verify", "check a structural law exhaustively");
    verify->add_option("file", file)->required();
    verify->add_option("--law", law, "posimodular|submodular|monotone|symmetric");

    std::string algorithm = "auto";
    auto* min = app.add_subcommand("min", "minimize over nonempty subsets");
    min->add_option("file", file)->required();
    min->add_option("--algorithm", algorithm, "auto|brute|d3|general");

    auto* max = app.add_subcommand("max", "maximize over nonempty subsets");
    max->add_option("file", file)->required();

    auto* extreme = app.add_subcommand("extreme", "compute the family of extreme sets");
    extreme->add_option("file", file)->required();

    long long limit = 0;
    auto* enum_min = app.add_subcommand("enum-min", "stream every minimizer");
    enum_min->add_option("file", file)->required();
    enum_min->add_option("--limit", limit, "stop after this many minimizers");

    int n = 0, k = 0;
    std::optional<std::string> transcript_path;
    auto* lowerbound = app.add_subcommand("lowerbound", "query-count lower bound and adversary witness");
    lowerbound->add_option("--n", n)->required();
    lowerbound->add_option("--k", k)->required();
    std::string transcript_file;
    auto* transcript_opt = lowerbound->add_option("--transcript", transcript_file, "transcript JSON to test");

    auto* stats = app.add_subcommand("stats", "summarize an instance");
    stats->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(file, law, opt);
        if (min->parsed()) return run_min(file, algorithm, opt);
        if (max->parsed()) return run_max(file, opt);
        if (extreme->parsed()) return run_extreme(file, opt);
        if (enum_min->parsed()) return run_enum_min(file, limit, opt);
        if (lowerbound->parsed()) {
            if (transcript_opt->count() > 0) transcript_path = transcript_file;
            return run_lowerbound(n, k, transcript_path, opt);
        }
        if (stats->parsed()) return run_stats(file, opt);
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 2;
}
