#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "namecheck/cluster.hpp"
#include "namecheck/faker.hpp"
#include "namecheck/name_stats.hpp"

namespace namecheck {

/// Bad flags or unusable input data (exit code 1).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Missing/unreadable/unwritable files (exit code 2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    static constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ULL;

    std::filesystem::path names_path;
    std::size_t variations_per_name = 9;
    ClusterMethod method = ClusterMethod::KMeans;
    std::size_t k = 3;
    std::size_t k_min = 2;
    std::size_t k_max = 20;
    std::vector<ClusterMethod> sweep_methods = {ClusterMethod::KMeans,
                                                ClusterMethod::AgglomerativeWard};
    double sim_threshold = 0.8;
    NameProfile profile;
    std::uint64_t seed = kDefaultSeed;
    std::vector<double> couplings = std::vector<double>(TentRing::kDefaultDimension,
                                                        TentRing::kDefaultCoupling);
    double mix = 0.5;
    LengthRange gibberish_length;
    MiniBatchOptions minibatch;
    std::filesystem::path output_dir = "out";
};

struct ReportRow {
    std::string name;
    NameOrigin origin = NameOrigin::Real;
    std::optional<std::string> parent;
    LetterStats stats;
    FeatureVector features;  // raw values; clustering uses normalized copies
    std::size_t cluster = 0;
    double silhouette = 0.0;
};

struct DetectionReport {
    std::vector<ReportRow> rows;
    ClusterMethod method = ClusterMethod::KMeans;
    std::size_t k = 0;
    std::vector<Point> centroids_norm;  // [sim_count_norm, p_invalid_norm]
    std::size_t flagged_cluster = 0;
    std::optional<double> precision;  // absent on a 0/0 denominator
    std::optional<double> recall;
    double mean_silhouette = 0.0;
    std::vector<std::string> warnings;
};

struct SilhouetteRow {
    std::size_t k = 0;
    ClusterMethod method = ClusterMethod::KMeans;
    double mean_silhouette = 0.0;
};

struct SilhouetteReport {
    std::vector<SilhouetteRow> rows;
    std::vector<std::string> skipped;  // "k=..,method=..: reason"
};

/// One name per line, lower-cased and stripped to a-z, deduplicated in
/// order.  Throws IoError when unreadable, UsageError when nothing usable
/// remains.
std::vector<std::string> load_names(const std::filesystem::path& path);

/// Real records first, then variations_per_name variants per real, all drawn
/// from one ring seeded by the config.
std::vector<NameRecord> build_dataset(const std::vector<std::string>& real_names,
                                      const RunConfig& config);

/// The k points with lowest invalidity (dimension 1; ties by input order)
/// become the initial centroids.  Exact duplicates are nudged apart by
/// distinct tiny offsets.
std::vector<Point> seed_centroids(const std::vector<Point>& features, std::size_t k);

/// Min-max normalization to [0,1] per dimension (constant dimensions map
/// to 0).
std::vector<Point> min_max_normalize(const std::vector<FeatureVector>& features);

/// Cluster id whose centroid has the highest invalidity coordinate.
std::size_t flagged_cluster_of(const std::vector<Centroid>& centroids);

/// The full pipeline: load, synthesize, featurize, cluster, flag, score.
DetectionReport run_detection(const RunConfig& config);

/// Mean silhouette for every (k, method) cell in the configured sweep.
SilhouetteReport silhouette_sweep(const RunConfig& config);

/// Writes features.csv, clusters.json, silhouette.csv and flagged.txt into
/// output_dir; returns the written paths.  Throws IoError on failure.
std::vector<std::filesystem::path> emit_reports(const DetectionReport& report,
                                                const SilhouetteReport& sweep,
                                                const std::filesystem::path& output_dir);

}  // namespace namecheck
