#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "namecheck/pipeline.hpp"

namespace {

using namecheck::RunConfig;

std::uint64_t parse_seed_hex(const std::string& hex) {
    std::string s = hex;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    if (s.empty() || s.size() > 16 ||
        s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
        throw namecheck::UsageError("--seed-hex expects up to 16 hex digits");
    return std::stoull(s, nullptr, 16);
}

namecheck::Interval parse_interval(const std::vector<double>& values, const std::string& flag) {
    if (values.size() != 2 || !(values[0] < values[1]))
        throw namecheck::UsageError(flag + " expects lo,hi with lo < hi");
    return {values[0], values[1]};
}

struct CommonFlags {
    std::string names;
    std::string seed_hex;
    std::vector<double> couplings;
    std::size_t variations = 9;
    double sim_threshold = 0.8;
    double mix = 0.5;
    std::vector<double> profile_unique, profile_length, profile_vowel;
};

void add_common_options(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--names", flags.names, "file with one real name per line")->required();
    cmd.add_option("--seed-hex", flags.seed_hex, "64-bit seed as hex digits");
    cmd.add_option("--couplings", flags.couplings,
                   "ring coupling coefficients c1,c2,... (sets p)")
        ->delimiter(',');
    cmd.add_option("--variations", flags.variations, "fake variants per real name");
    cmd.add_option("--sim-threshold", flags.sim_threshold,
                   "Jaro-Winkler threshold for counting similar names");
    cmd.add_option("--mix", flags.mix, "probability a variant is a repeat mutation");
    cmd.add_option("--profile-unique", flags.profile_unique, "unique-letter range lo,hi")
        ->delimiter(',');
    cmd.add_option("--profile-length", flags.profile_length, "name length range lo,hi")
        ->delimiter(',');
    cmd.add_option("--profile-vowel", flags.profile_vowel, "vowel fraction range lo,hi")
        ->delimiter(',');
}

RunConfig config_from(const CommonFlags& flags) {
    RunConfig config;
    config.names_path = flags.names;
    if (!flags.seed_hex.empty()) config.seed = parse_seed_hex(flags.seed_hex);
    if (!flags.couplings.empty()) config.couplings = flags.couplings;
    config.variations_per_name = flags.variations;
    config.sim_threshold = flags.sim_threshold;
    config.mix = flags.mix;
    if (!flags.profile_unique.empty())
        config.profile.unique_range = parse_interval(flags.profile_unique, "--profile-unique");
    if (!flags.profile_length.empty())
        config.profile.length_range = parse_interval(flags.profile_length, "--profile-length");
    if (!flags.profile_vowel.empty())
        config.profile.vowel_range = parse_interval(flags.profile_vowel, "--profile-vowel");
    return config;
}

void print_summary(const namecheck::DetectionReport& report) {
    std::cout << "method=" << namecheck::method_name(report.method) << " k=" << report.k
              << " flagged_cluster=" << report.flagged_cluster
              << " mean_silhouette=" << report.mean_silhouette;
    if (report.precision) std::cout << " precision=" << *report.precision;
    if (report.recall) std::cout << " recall=" << *report.recall;
    std::cout << '\n';
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Fake-username detector: chaotic fake synthesis, "
                 "letter-statistics features and cluster analysis"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run the detection pipeline on a names file");
    CommonFlags analyze_flags;
    add_common_options(*analyze, analyze_flags);
    std::string method_str = "kmeans";
    std::size_t k = 3;
    std::string out_dir = "out";
    std::size_t batch_size = 32, batch_iters = 100;
    analyze->add_option("--method", method_str, "kmeans|minibatch|agglomerative");
    analyze->add_option("--k", k, "number of clusters");
    analyze->add_option("--out-dir", out_dir, "report directory");
    analyze->add_option("--batch-size", batch_size, "mini-batch size");
    analyze->add_option("--batch-iters", batch_iters, "mini-batch iterations");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "mean silhouette across a range of k");
    CommonFlags sweep_flags;
    add_common_options(*sweep, sweep_flags);
    std::size_t kmin = 2, kmax = 20;
    std::string sweep_out_dir = "out";
    std::vector<std::string> methods = {"kmeans", "agglomerative"};
    std::string sweep_method_str = "kmeans";
    std::size_t sweep_k = 3;
    sweep->add_option("--kmin", kmin, "smallest k");
    sweep->add_option("--kmax", kmax, "largest k");
    sweep->add_option("--methods", methods, "comma list of methods to sweep")->delimiter(',');
    sweep->add_option("--out-dir", sweep_out_dir, "report directory");
    sweep->add_option("--method", sweep_method_str, "method for the accompanying report");
    sweep->add_option("--k", sweep_k, "k for the accompanying report");

    // gen
    auto* gen = app.add_subcommand("gen", "emit fake variants of one name");
    std::string gen_name, gen_seed_hex;
    std::size_t gen_count = 10;
    double gen_mix = 0.5;
    std::vector<double> gen_couplings;
    gen->add_option("--name", gen_name, "base name")->required();
    gen->add_option("--count", gen_count, "number of variants");
    gen->add_option("--mix", gen_mix, "probability of a repeat mutation");
    gen->add_option("--seed-hex", gen_seed_hex, "64-bit seed as hex digits");
    gen->add_option("--couplings", gen_couplings, "ring couplings c1,c2,...")->delimiter(',');

    // prng-test
    auto* prng = app.add_subcommand("prng-test", "uniformity and correlation statistics");
    std::size_t samples = 1000000, bins = 100, lags = 10;
    std::string prng_seed_hex;
    std::vector<double> prng_couplings;
    prng->add_option("--samples", samples, "number of samples");
    prng->add_option("--bins", bins, "histogram bins");
    prng->add_option("--lags", lags, "autocorrelation lags to report");
    prng->add_option("--seed-hex", prng_seed_hex, "64-bit seed as hex digits");
    prng->add_option("--couplings", prng_couplings, "ring couplings c1,c2,...")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (analyze->parsed()) {
        RunConfig config = config_from(analyze_flags);
        auto method = namecheck::method_from_name(method_str);
        if (!method) throw namecheck::UsageError("unknown method: " + method_str);
        config.method = *method;
        config.k = k;
        config.minibatch = {batch_size, batch_iters};
        config.output_dir = out_dir;
        const auto report = namecheck::run_detection(config);
        const auto paths = namecheck::emit_reports(report, {}, config.output_dir);
        print_summary(report);
        for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
        return 0;
    }

    if (sweep->parsed()) {
        RunConfig config = config_from(sweep_flags);
        config.k_min = kmin;
        config.k_max = kmax;
        config.sweep_methods.clear();
        for (const std::string& m : methods) {
            auto method = namecheck::method_from_name(m);
            if (!method) throw namecheck::UsageError("unknown method: " + m);
            config.sweep_methods.push_back(*method);
        }
        auto report_method = namecheck::method_from_name(sweep_method_str);
        if (!report_method) throw namecheck::UsageError("unknown method: " + sweep_method_str);
        config.method = *report_method;
        config.k = sweep_k;
        config.output_dir = sweep_out_dir;

        const auto sweep_report = namecheck::silhouette_sweep(config);
        const auto report = namecheck::run_detection(config);
        const auto paths = namecheck::emit_reports(report, sweep_report, config.output_dir);
        print_summary(report);
        std::cout << "sweep rows: " << sweep_report.rows.size() << '\n';
        for (const std::string& s : sweep_report.skipped)
            std::cerr << "skipped cell: " << s << '\n';
        for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
        return 0;
    }

    if (gen->parsed()) {
        std::uint64_t seed = RunConfig::kDefaultSeed;
        if (!gen_seed_hex.empty()) seed = parse_seed_hex(gen_seed_hex);
        std::vector<double> couplings =
            gen_couplings.empty()
                ? std::vector<double>(namecheck::TentRing::kDefaultDimension,
                                      namecheck::TentRing::kDefaultCoupling)
                : gen_couplings;
        namecheck::TentRing ring = namecheck::TentRing::from_seed(seed, couplings);
        const std::string base = namecheck::normalize_name(gen_name);
        if (base.empty()) throw namecheck::UsageError("--name has no alphabetic characters");
        for (const auto& record : namecheck::variations(base, gen_count, gen_mix, ring))
            std::cout << record.name << '\t' << namecheck::origin_tag(record.origin) << '\n';
        return 0;
    }

    // prng-test
    std::uint64_t seed = RunConfig::kDefaultSeed;
    if (!prng_seed_hex.empty()) seed = parse_seed_hex(prng_seed_hex);
    std::vector<double> couplings =
        prng_couplings.empty() ? std::vector<double>(namecheck::TentRing::kDefaultDimension,
                                                     namecheck::TentRing::kDefaultCoupling)
                               : prng_couplings;
    if (samples == 0) throw namecheck::UsageError("--samples must be positive");
    namecheck::TentRing ring = namecheck::TentRing::from_seed(seed, couplings);
    std::vector<double> stream(samples);
    for (double& v : stream) {
        ring.step();
        v = ring.state()[0];
    }
    std::cout << "metric,value\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", namecheck::uniformity_chi_square(stream, bins));
    std::cout << "chi_square," << buf << '\n';
    for (std::size_t lag = 1; lag <= lags; ++lag) {
        std::snprintf(buf, sizeof(buf), "%.6f", namecheck::autocorrelation(stream, lag));
        std::cout << "autocorr_lag_" << lag << ',' << buf << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const namecheck::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const namecheck::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
