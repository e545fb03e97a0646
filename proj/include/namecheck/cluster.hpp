#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "namecheck/kdtree.hpp"

namespace namecheck {

enum class ClusterMethod { KMeans, MiniBatch, AgglomerativeWard };

/// "kmeans", "minibatch" or "agglomerative".
std::string_view method_name(ClusterMethod m);
std::optional<ClusterMethod> method_from_name(std::string_view name);

struct Centroid {
    Point coords;
    std::size_t member_count = 0;
};

struct ClusteringResult {
    std::vector<std::size_t> assignments;  // point index -> cluster id
    std::vector<Centroid> centroids;
    double objective = 0.0;  // sum of squared distances to assigned centroids
    std::size_t iterations = 0;
    ClusterMethod method = ClusterMethod::KMeans;
    bool converged = true;  // false when Lloyd hits max_iter
};

double squared_distance(const Point& a, const Point& b);

/// Nearest-centroid assignment; ties go to the lowest cluster id.
std::vector<std::size_t> assign_step(const std::vector<Point>& points,
                                     const std::vector<Point>& centroids);

/// Per-cluster means.  An empty cluster is reseeded at the point currently
/// farthest from its own centroid (ties: lowest point index); its
/// member_count stays 0 until the next assignment.
std::vector<Centroid> update_step(const std::vector<Point>& points,
                                  const std::vector<std::size_t>& assignments,
                                  std::size_t k);

struct LloydOptions {
    double tol = 1e-9;          // max centroid displacement
    std::size_t max_iter = 300;
    bool use_filtering = false; // kd-tree filtering for the assignment step
};

/// Lloyd iteration until assignments are stable, movement drops below tol,
/// or max_iter.  The filtering and brute-force paths produce identical
/// assignments and centroids.
ClusteringResult lloyd_kmeans(const std::vector<Point>& points, std::size_t k,
                              std::vector<Point> initial_centroids,
                              const LloydOptions& options = {});

struct FilterStats {
    std::size_t nodes_visited = 0;
};

/// Kd-tree filtering assignment: prunes centroids that cannot own any point
/// of a node's box; a subtree with one surviving candidate is assigned
/// wholesale.  Equivalent to assign_step.
std::vector<std::size_t> filter_assign(const KdTree& tree,
                                       const std::vector<Point>& centroids,
                                       FilterStats* stats = nullptr);

struct MiniBatchOptions {
    std::size_t batch_size = 32;
    std::size_t iterations = 100;
};

/// Draws an index uniformly from [0,m).
using IndexSampler = std::function<std::size_t(std::size_t m)>;

/// Per-sample centroid updates with step 1/(update count); the final
/// assignment is one assign_step pass.
ClusteringResult minibatch_kmeans(const std::vector<Point>& points, std::size_t k,
                                  std::vector<Point> initial_centroids,
                                  const IndexSampler& sample,
                                  const MiniBatchOptions& options = {});

/// Ward distance between cluster k and the merge of i and j, from the
/// pairwise distances and cluster sizes:
///   alpha_i*d_ik + alpha_j*d_jk + beta*d_ij,
///   alpha_l = (n_l+n_k)/(n_i+n_j+n_k), beta = -n_k/(n_i+n_j+n_k).
double lance_williams_update(double d_ik, double d_jk, double d_ij,
                             std::size_t n_i, std::size_t n_j, std::size_t n_k);

/// Observer invoked before each merge; distances carry the squared-Euclidean
/// Ward convention (twice the variance increase).
struct WardMergeEvent {
    std::size_t slot_i = 0;  // merge target, keeps the lower slot id
    std::size_t slot_j = 0;
    double distance = 0.0;
    const std::vector<std::vector<std::size_t>>* members = nullptr;  // per slot
    std::function<double(std::size_t, std::size_t)> pair_distance;   // active slots
};
using WardObserver = std::function<void(const WardMergeEvent&)>;

/// Bottom-up Ward clustering from singletons via the Lance-Williams
/// recurrence; stops at target_k clusters (2 when absent).  Merge ties pick
/// the lexicographically lowest slot pair.  Cluster ids are renumbered by
/// smallest member point index.
ClusteringResult agglomerative_ward(const std::vector<Point>& points,
                                    std::optional<std::size_t> target_k = std::nullopt,
                                    const WardObserver& observer = nullptr);

struct SilhouetteResult {
    std::vector<double> values;  // s(i) per point, 0 for singletons
    double mean = 0.0;
};

/// s(i) = (b-a)/max(a,b) with Euclidean dissimilarity.  Throws
/// std::invalid_argument unless at least two clusters have members.
SilhouetteResult silhouette(const std::vector<Point>& points,
                            const std::vector<std::size_t>& assignments);

}  // namespace namecheck
