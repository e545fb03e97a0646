#include "namecheck/pipeline.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace namecheck {

namespace {

std::string format_double(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

// Deterministic per-purpose sub-seed: purpose 0 = dataset, 1 = minibatch
// sampler, 2+ = sweep cells.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose, std::uint64_t index) {
    std::uint64_t state = master ^ (purpose * 0xD1B54A32D192ED03ULL) ^
                          (index * 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(state);
}

}  // namespace

std::vector<std::string> load_names(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open names file: " + path.string());
    std::vector<std::string> names;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string name = normalize_name(line);
        if (name.empty()) continue;
        if (seen.insert(name).second) names.push_back(std::move(name));
    }
    if (in.bad()) throw IoError("error while reading names file: " + path.string());
    if (names.empty()) throw UsageError("no usable names in " + path.string());
    return names;
}

std::vector<NameRecord> build_dataset(const std::vector<std::string>& real_names,
                                      const RunConfig& config) {
    TentRing ring = TentRing::from_seed(derive_seed(config.seed, 0, 0), config.couplings);
    std::vector<NameRecord> records;
    records.reserve(real_names.size() * (1 + config.variations_per_name));
    for (const std::string& name : real_names)
        records.push_back({name, NameOrigin::Real, std::nullopt});
    for (const std::string& name : real_names) {
        auto variants = variations(name, config.variations_per_name, config.mix, ring,
                                   config.gibberish_length);
        std::move(variants.begin(), variants.end(), std::back_inserter(records));
    }
    return records;
}

std::vector<Point> min_max_normalize(const std::vector<FeatureVector>& features) {
    std::vector<Point> points(features.size(), Point(2, 0.0));
    if (features.empty()) return points;
    double min_x = static_cast<double>(features[0].similarity_count), max_x = min_x;
    double min_y = features[0].p_invalid, max_y = min_y;
    for (const FeatureVector& f : features) {
        const auto x = static_cast<double>(f.similarity_count);
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, f.p_invalid);
        max_y = std::max(max_y, f.p_invalid);
    }
    const double span_x = max_x - min_x, span_y = max_y - min_y;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto x = static_cast<double>(features[i].similarity_count);
        points[i][0] = span_x == 0.0 ? 0.0 : (x - min_x) / span_x;
        points[i][1] = span_y == 0.0 ? 0.0 : (features[i].p_invalid - min_y) / span_y;
    }
    return points;
}

std::vector<Point> seed_centroids(const std::vector<Point>& features, std::size_t k) {
    if (k > features.size())
        throw UsageError("seed_centroids: k exceeds the number of points");
    std::vector<std::size_t> idx(features.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return features[a][1] < features[b][1];
    });

    std::vector<Point> centroids;
    std::set<Point> used;
    centroids.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        Point c = features[idx[i]];
        while (!used.insert(c).second) c[0] += 1e-7;
        centroids.push_back(std::move(c));
    }
    return centroids;
}

std::size_t flagged_cluster_of(const std::vector<Centroid>& centroids) {
    if (centroids.empty()) throw std::invalid_argument("flagged_cluster_of: no centroids");
    std::size_t best = 0;
    for (std::size_t c = 1; c < centroids.size(); ++c)
        if (centroids[c].coords[1] > centroids[best].coords[1]) best = c;
    return best;
}

namespace {

ClusteringResult cluster_points(const std::vector<Point>& points, std::size_t k,
                                ClusterMethod method, const RunConfig& config,
                                std::uint64_t sampler_seed) {
    switch (method) {
        case ClusterMethod::KMeans: {
            LloydOptions opts;
            opts.use_filtering = true;
            return lloyd_kmeans(points, k, seed_centroids(points, k), opts);
        }
        case ClusterMethod::MiniBatch: {
            TentRing ring = TentRing::from_seed(sampler_seed, config.couplings);
            IndexSampler sampler = [&ring](std::size_t m) {
                return static_cast<std::size_t>(ring.uniform_int(m));
            };
            return minibatch_kmeans(points, k, seed_centroids(points, k), sampler,
                                    config.minibatch);
        }
        case ClusterMethod::AgglomerativeWard:
            return agglomerative_ward(points, k);
    }
    throw std::invalid_argument("unknown clustering method");
}

}  // namespace

DetectionReport run_detection(const RunConfig& config) {
    const std::vector<std::string> reals = load_names(config.names_path);
    const std::vector<NameRecord> records = build_dataset(reals, config);
    const std::size_t n = records.size();
    if (config.k < 2 || config.k > n)
        throw UsageError("k must lie in [2, dataset size]");

    std::vector<std::string> corpus;
    corpus.reserve(n);
    for (const NameRecord& r : records) corpus.push_back(r.name);

    std::vector<FeatureVector> features;
    features.reserve(n);
    for (const NameRecord& r : records)
        features.push_back(featurize(r.name, corpus, config.profile, config.sim_threshold));
    const std::vector<Point> points = min_max_normalize(features);

    const ClusteringResult clustering =
        cluster_points(points, config.k, config.method, config, derive_seed(config.seed, 1, 0));

    DetectionReport report;
    report.method = config.method;
    report.k = config.k;
    if (!clustering.converged)
        report.warnings.push_back("clustering hit the iteration limit before converging");

    report.centroids_norm.reserve(clustering.centroids.size());
    for (const Centroid& c : clustering.centroids) report.centroids_norm.push_back(c.coords);
    report.flagged_cluster = flagged_cluster_of(clustering.centroids);

    std::vector<double> sil_values(n, 0.0);
    try {
        SilhouetteResult sil = silhouette(points, clustering.assignments);
        sil_values = std::move(sil.values);
        report.mean_silhouette = sil.mean;
    } catch (const std::invalid_argument&) {
        report.warnings.push_back("silhouette undefined: fewer than two populated clusters");
    }

    std::size_t flagged_total = 0, flagged_fake = 0, fake_total = 0;
    report.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NameRecord& r = records[i];
        ReportRow row;
        row.name = r.name;
        row.origin = r.origin;
        row.parent = r.parent;
        row.stats = letter_stats(r.name);
        row.features = features[i];
        row.cluster = clustering.assignments[i];
        row.silhouette = sil_values[i];
        report.rows.push_back(std::move(row));

        const bool fake = r.origin != NameOrigin::Real;
        if (fake) ++fake_total;
        if (clustering.assignments[i] == report.flagged_cluster) {
            ++flagged_total;
            if (fake) ++flagged_fake;
        }
    }
    if (flagged_total > 0)
        report.precision = static_cast<double>(flagged_fake) / static_cast<double>(flagged_total);
    if (fake_total > 0)
        report.recall = static_cast<double>(flagged_fake) / static_cast<double>(fake_total);
    return report;
}

SilhouetteReport silhouette_sweep(const RunConfig& config) {
    const std::vector<std::string> reals = load_names(config.names_path);
    const std::vector<NameRecord> records = build_dataset(reals, config);
    const std::size_t n = records.size();
    if (config.k_min < 2 || config.k_min > config.k_max || config.k_max > n - 1)
        throw UsageError("sweep range must satisfy 2 <= kmin <= kmax <= n-1");

    std::vector<std::string> corpus;
    corpus.reserve(n);
    for (const NameRecord& r : records) corpus.push_back(r.name);
    std::vector<FeatureVector> features;
    features.reserve(n);
    for (const NameRecord& r : records)
        features.push_back(featurize(r.name, corpus, config.profile, config.sim_threshold));
    const std::vector<Point> points = min_max_normalize(features);

    SilhouetteReport report;
    std::uint64_t cell = 0;
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
        for (ClusterMethod method : config.sweep_methods) {
            ++cell;
            try {
                const ClusteringResult clustering = cluster_points(
                    points, k, method, config, derive_seed(config.seed, 2, cell));
                const SilhouetteResult sil = silhouette(points, clustering.assignments);
                report.rows.push_back({k, method, sil.mean});
            } catch (const std::exception& e) {
                std::ostringstream oss;
                oss << "k=" << k << ",method=" << method_name(method) << ": " << e.what();
                report.skipped.push_back(oss.str());
            }
        }
    }
    return report;
}

std::vector<std::filesystem::path> emit_reports(const DetectionReport& report,
                                                const SilhouetteReport& sweep,
                                                const std::filesystem::path& output_dir) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + output_dir.string());

    auto open = [&](const std::filesystem::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw IoError("cannot write " + p.string());
        return out;
    };
    std::vector<std::filesystem::path> written;

    const auto features_path = output_dir / "features.csv";
    {
        std::ofstream out = open(features_path);
        out << "name,origin,parent,length,vowel_frac,unique_frac,p_invalid,sim_count\n";
        for (const ReportRow& row : report.rows) {
            out << row.name << ',' << origin_tag(row.origin) << ','
                << (row.parent ? *row.parent : "") << ',' << row.stats.length << ','
                << format_double(row.stats.vowel_fraction) << ','
                << format_double(row.stats.unique_fraction) << ','
                << format_double(row.features.p_invalid) << ',' << row.features.similarity_count
                << '\n';
        }
        if (!out) throw IoError("error writing " + features_path.string());
    }
    written.push_back(features_path);

    const auto clusters_path = output_dir / "clusters.json";
    {
        nlohmann::json doc;
        doc["method"] = std::string(method_name(report.method));
        doc["k"] = report.k;
        doc["centroids"] = nlohmann::json::array();
        for (const Point& c : report.centroids_norm) doc["centroids"].push_back({c[0], c[1]});
        doc["assignments"] = nlohmann::json::array();
        for (const ReportRow& row : report.rows) {
            doc["assignments"].push_back({{"name", row.name},
                                          {"cluster", row.cluster},
                                          {"silhouette", row.silhouette}});
        }
        doc["flagged_cluster"] = report.flagged_cluster;
        doc["mean_silhouette"] = report.mean_silhouette;
        doc["precision"] = report.precision ? nlohmann::json(*report.precision)
                                            : nlohmann::json(nullptr);
        doc["recall"] = report.recall ? nlohmann::json(*report.recall) : nlohmann::json(nullptr);
        doc["warnings"] = report.warnings;
        std::ofstream out = open(clusters_path);
        out << doc.dump(2) << '\n';
        if (!out) throw IoError("error writing " + clusters_path.string());
    }
    written.push_back(clusters_path);

    const auto silhouette_path = output_dir / "silhouette.csv";
    {
        std::ofstream out = open(silhouette_path);
        out << "k,method,mean_silhouette\n";
        for (const SilhouetteRow& row : sweep.rows) {
            out << row.k << ',' << method_name(row.method) << ','
                << format_double(row.mean_silhouette) << '\n';
        }
        if (!out) throw IoError("error writing " + silhouette_path.string());
    }
    written.push_back(silhouette_path);

    const auto flagged_path = output_dir / "flagged.txt";
    {
        std::ofstream out = open(flagged_path);
        for (const ReportRow& row : report.rows)
            if (row.cluster == report.flagged_cluster) out << row.name << '\n';
        if (!out) throw IoError("error writing " + flagged_path.string());
    }
    written.push_back(flagged_path);
    return written;
}

}  // namespace namecheck
