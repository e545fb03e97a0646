#include "namecheck/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace namecheck {

std::string_view method_name(ClusterMethod m) {
    switch (m) {
        case ClusterMethod::KMeans: return "kmeans";
        case ClusterMethod::MiniBatch: return "minibatch";
        case ClusterMethod::AgglomerativeWard: return "agglomerative";
    }
    return "unknown";
}

std::optional<ClusterMethod> method_from_name(std::string_view name) {
    if (name == "kmeans") return ClusterMethod::KMeans;
    if (name == "minibatch") return ClusterMethod::MiniBatch;
    if (name == "agglomerative") return ClusterMethod::AgglomerativeWard;
    return std::nullopt;
}

double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

namespace {

std::size_t nearest_centroid(const Point& p, const std::vector<Point>& centroids) {
    std::size_t best = 0;
    double best_d = squared_distance(p, centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
        const double d = squared_distance(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double objective_of(const std::vector<Point>& points, const std::vector<std::size_t>& assignments,
                    const std::vector<Centroid>& centroids) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        s += squared_distance(points[i], centroids[assignments[i]].coords);
    return s;
}

std::vector<Point> centroid_coords(const std::vector<Centroid>& centroids) {
    std::vector<Point> out;
    out.reserve(centroids.size());
    for (const Centroid& c : centroids) out.push_back(c.coords);
    return out;
}

}  // namespace

std::vector<std::size_t> assign_step(const std::vector<Point>& points,
                                     const std::vector<Point>& centroids) {
    if (centroids.empty()) throw std::invalid_argument("assign_step: no centroids");
    std::vector<std::size_t> assignments(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        assignments[i] = nearest_centroid(points[i], centroids);
    return assignments;
}

std::vector<Centroid> update_step(const std::vector<Point>& points,
                                  const std::vector<std::size_t>& assignments,
                                  std::size_t k) {
    if (points.empty()) throw std::invalid_argument("update_step: no points");
    const std::size_t dim = points.front().size();
    std::vector<Centroid> centroids(k);
    for (Centroid& c : centroids) c.coords.assign(dim, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        Centroid& c = centroids[assignments[i]];
        for (std::size_t d = 0; d < dim; ++d) c.coords[d] += points[i][d];
        ++c.member_count;
    }
    for (Centroid& c : centroids) {
        if (c.member_count == 0) continue;
        for (double& v : c.coords) v /= static_cast<double>(c.member_count);
    }

    // Reseed each empty cluster at the point farthest from its own centroid.
    std::vector<char> taken(points.size(), 0);
    for (std::size_t c = 0; c < k; ++c) {
        if (centroids[c].member_count != 0) continue;
        std::size_t pick = points.size();
        double pick_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (taken[i]) continue;
            if (centroids[assignments[i]].member_count == 0) continue;
            const double d = squared_distance(points[i], centroids[assignments[i]].coords);
            if (d > pick_d) {
                pick_d = d;
                pick = i;
            }
        }
        if (pick == points.size()) continue;  // fewer distinct points than clusters
        taken[pick] = 1;
        centroids[c].coords = points[pick];
    }
    return centroids;
}

ClusteringResult lloyd_kmeans(const std::vector<Point>& points, std::size_t k,
                              std::vector<Point> initial_centroids,
                              const LloydOptions& options) {
    const std::size_t n = points.size();
    if (k == 0 || k > n) throw std::invalid_argument("lloyd_kmeans: need 1 <= k <= n");
    if (initial_centroids.size() != k)
        throw std::invalid_argument("lloyd_kmeans: wrong number of initial centroids");
    if (options.max_iter == 0) throw std::invalid_argument("lloyd_kmeans: max_iter must be >= 1");
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (initial_centroids[a] == initial_centroids[b])
                throw std::invalid_argument("lloyd_kmeans: initial centroids must be distinct");

    std::optional<KdTree> tree;
    if (options.use_filtering) tree.emplace(points);

    ClusteringResult result;
    result.method = ClusterMethod::KMeans;
    std::vector<Point> coords = std::move(initial_centroids);
    std::vector<std::size_t> prev_assignments;
    std::vector<Centroid> centroids;
    double prev_objective = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t iter = 0;

    while (iter < options.max_iter) {
        std::vector<std::size_t> assignments =
            options.use_filtering ? filter_assign(*tree, coords) : assign_step(points, coords);
        centroids = update_step(points, assignments, k);
        ++iter;

        const double objective = objective_of(points, assignments, centroids);
        if (objective > prev_objective + 1e-9 * std::max(1.0, prev_objective))
            throw std::logic_error("lloyd_kmeans: objective increased");
        prev_objective = objective;

        double max_move = 0.0;
        for (std::size_t c = 0; c < k; ++c)
            max_move = std::max(max_move, squared_distance(coords[c], centroids[c].coords));

        const bool stable = !prev_assignments.empty() && assignments == prev_assignments;
        prev_assignments = std::move(assignments);
        coords = centroid_coords(centroids);
        if (stable || max_move < options.tol * options.tol) {
            converged = true;
            break;
        }
    }

    result.assignments = std::move(prev_assignments);
    result.centroids = std::move(centroids);
    result.objective = objective_of(points, result.assignments, result.centroids);
    result.iterations = iter;
    result.converged = converged;
    return result;
}

namespace {

// Squared distance from a centroid to the node's bounding box.
double box_distance2(const Point& z, const KdNode& node) {
    double s = 0.0;
    for (std::size_t d = 0; d < z.size(); ++d) {
        double diff = 0.0;
        if (z[d] < node.box_min[d]) diff = node.box_min[d] - z[d];
        else if (z[d] > node.box_max[d]) diff = z[d] - node.box_max[d];
        s += diff * diff;
    }
    return s;
}

// True when no point of the box prefers z over the winner (ties go to the
// lower centroid id, matching assign_step).
bool dominated(const Point& z, std::size_t z_id, const Point& winner, std::size_t winner_id,
               const KdNode& node) {
    bool same = true;
    Point corner(z.size());
    for (std::size_t d = 0; d < z.size(); ++d) {
        const double u = z[d] - winner[d];
        if (u != 0.0) same = false;
        corner[d] = u > 0.0 ? node.box_max[d] : node.box_min[d];
    }
    if (same) return z_id > winner_id;
    const double dz = squared_distance(corner, z);
    const double dw = squared_distance(corner, winner);
    if (dz > dw) return true;
    if (dz == dw) return z_id > winner_id;
    return false;
}

struct FilterContext {
    const std::vector<Point>* points;
    const std::vector<std::size_t>* order;
    const std::vector<Point>* centroids;
    std::vector<std::size_t>* assignments;
    std::size_t nodes_visited = 0;
};

void filter_node(FilterContext& ctx, const KdNode& node, const std::vector<std::size_t>& candidates) {
    ++ctx.nodes_visited;
    const auto& points = *ctx.points;
    const auto& order = *ctx.order;
    const auto& centroids = *ctx.centroids;

    if (candidates.size() == 1) {
        for (std::size_t i = node.begin; i < node.end; ++i)
            (*ctx.assignments)[order[i]] = candidates[0];
        return;
    }
    if (node.is_leaf()) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const Point& p = points[order[i]];
            std::size_t best = candidates[0];
            double best_d = squared_distance(p, centroids[best]);
            for (std::size_t c = 1; c < candidates.size(); ++c) {
                const double d = squared_distance(p, centroids[candidates[c]]);
                if (d < best_d) {
                    best_d = d;
                    best = candidates[c];
                }
            }
            (*ctx.assignments)[order[i]] = best;
        }
        return;
    }

    std::size_t winner = candidates[0];
    double winner_d = box_distance2(centroids[winner], node);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
        const double d = box_distance2(centroids[candidates[c]], node);
        if (d < winner_d) {
            winner_d = d;
            winner = candidates[c];
        }
    }

    std::vector<std::size_t> kept;
    kept.reserve(candidates.size());
    for (std::size_t id : candidates) {
        if (id == winner || !dominated(centroids[id], id, centroids[winner], winner, node))
            kept.push_back(id);
    }
    filter_node(ctx, *node.left, kept);
    filter_node(ctx, *node.right, kept);
}

}  // namespace

std::vector<std::size_t> filter_assign(const KdTree& tree, const std::vector<Point>& centroids,
                                       FilterStats* stats) {
    if (centroids.empty()) throw std::invalid_argument("filter_assign: no centroids");
    std::vector<std::size_t> assignments(tree.points().size());
    std::vector<std::size_t> candidates(centroids.size());
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    FilterContext ctx{&tree.points(), &tree.order(), &centroids, &assignments, 0};
    filter_node(ctx, tree.root(), candidates);
    if (stats) stats->nodes_visited = ctx.nodes_visited;
    return assignments;
}

ClusteringResult minibatch_kmeans(const std::vector<Point>& points, std::size_t k,
                                  std::vector<Point> initial_centroids,
                                  const IndexSampler& sample,
                                  const MiniBatchOptions& options) {
    const std::size_t n = points.size();
    if (k == 0 || k > n) throw std::invalid_argument("minibatch_kmeans: need 1 <= k <= n");
    if (initial_centroids.size() != k)
        throw std::invalid_argument("minibatch_kmeans: wrong number of initial centroids");
    if (options.batch_size == 0)
        throw std::invalid_argument("minibatch_kmeans: batch_size must be positive");
    if (!sample) throw std::invalid_argument("minibatch_kmeans: sampler required");

    std::vector<Point> coords = std::move(initial_centroids);
    std::vector<std::size_t> update_counts(k, 0);
    for (std::size_t it = 0; it < options.iterations; ++it) {
        for (std::size_t b = 0; b < options.batch_size; ++b) {
            const std::size_t idx = sample(n);
            const Point& x = points[idx];
            const std::size_t c = nearest_centroid(x, coords);
            const double eta = 1.0 / static_cast<double>(++update_counts[c]);
            for (std::size_t d = 0; d < x.size(); ++d)
                coords[c][d] += eta * (x[d] - coords[c][d]);
        }
    }

    ClusteringResult result;
    result.method = ClusterMethod::MiniBatch;
    result.assignments = assign_step(points, coords);
    result.centroids.resize(k);
    for (std::size_t c = 0; c < k; ++c) result.centroids[c].coords = std::move(coords[c]);
    for (std::size_t a : result.assignments) ++result.centroids[a].member_count;
    result.objective = objective_of(points, result.assignments, result.centroids);
    result.iterations = options.iterations;
    return result;
}

double lance_williams_update(double d_ik, double d_jk, double d_ij,
                             std::size_t n_i, std::size_t n_j, std::size_t n_k) {
    if (n_i == 0 || n_j == 0 || n_k == 0)
        throw std::invalid_argument("lance_williams_update: cluster sizes must be positive");
    const auto total = static_cast<double>(n_i + n_j + n_k);
    const double alpha_i = static_cast<double>(n_i + n_k) / total;
    const double alpha_j = static_cast<double>(n_j + n_k) / total;
    const double beta = -static_cast<double>(n_k) / total;
    return alpha_i * d_ik + alpha_j * d_jk + beta * d_ij;
}

ClusteringResult agglomerative_ward(const std::vector<Point>& points,
                                    std::optional<std::size_t> target_k,
                                    const WardObserver& observer) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("agglomerative_ward: no points");
    if (target_k && (*target_k == 0 || *target_k > n))
        throw std::invalid_argument("agglomerative_ward: target_k must lie in [1, n]");
    const std::size_t target = target_k ? *target_k : std::min<std::size_t>(2, n);

    std::vector<std::vector<std::size_t>> members(n);
    std::vector<char> alive(n, 1);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};

    // full symmetric matrix of current Ward distances between alive slots
    std::vector<double> dist(n * n, 0.0);
    auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[at(i, j)] = dist[at(j, i)] = squared_distance(points[i], points[j]);

    std::size_t alive_count = n;
    std::size_t merges = 0;
    while (alive_count > target) {
        std::size_t best_i = n, best_j = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                const double d = dist[at(i, j)];
                if (d < best_d) {  // strict: ties keep the lowest (i, j) pair
                    best_d = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }

        if (observer) {
            WardMergeEvent ev;
            ev.slot_i = best_i;
            ev.slot_j = best_j;
            ev.distance = best_d;
            ev.members = &members;
            ev.pair_distance = [&dist, at](std::size_t a, std::size_t b) {
                return dist[at(a, b)];
            };
            observer(ev);
        }

        const std::size_t ni = members[best_i].size();
        const std::size_t nj = members[best_j].size();
        for (std::size_t m = 0; m < n; ++m) {
            if (!alive[m] || m == best_i || m == best_j) continue;
            const double updated = lance_williams_update(
                dist[at(best_i, m)], dist[at(best_j, m)], best_d, ni, nj, members[m].size());
            dist[at(best_i, m)] = dist[at(m, best_i)] = updated;
        }
        members[best_i].insert(members[best_i].end(), members[best_j].begin(),
                               members[best_j].end());
        members[best_j].clear();
        alive[best_j] = 0;
        --alive_count;
        ++merges;
    }

    // Stable labels: clusters numbered by their smallest member point index.
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) slots.push_back(i);
    std::sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) {
        return *std::min_element(members[a].begin(), members[a].end()) <
               *std::min_element(members[b].begin(), members[b].end());
    });

    ClusteringResult result;
    result.method = ClusterMethod::AgglomerativeWard;
    result.assignments.assign(n, 0);
    result.centroids.resize(slots.size());
    const std::size_t dim = points.front().size();
    for (std::size_t label = 0; label < slots.size(); ++label) {
        const auto& group = members[slots[label]];
        Centroid& c = result.centroids[label];
        c.coords.assign(dim, 0.0);
        c.member_count = group.size();
        for (std::size_t idx : group) {
            result.assignments[idx] = label;
            for (std::size_t d = 0; d < dim; ++d) c.coords[d] += points[idx][d];
        }
        for (double& v : c.coords) v /= static_cast<double>(group.size());
    }
    result.objective = objective_of(points, result.assignments, result.centroids);
    result.iterations = merges;
    return result;
}

SilhouetteResult silhouette(const std::vector<Point>& points,
                            const std::vector<std::size_t>& assignments) {
    const std::size_t n = points.size();
    if (assignments.size() != n)
        throw std::invalid_argument("silhouette: assignment size mismatch");
    std::size_t k = 0;
    for (std::size_t a : assignments) k = std::max(k, a + 1);
    std::vector<std::vector<std::size_t>> clusters(k);
    for (std::size_t i = 0; i < n; ++i) clusters[assignments[i]].push_back(i);
    std::size_t populated = 0;
    for (const auto& c : clusters)
        if (!c.empty()) ++populated;
    if (populated < 2)
        throw std::invalid_argument("silhouette: need at least two non-empty clusters");

    SilhouetteResult out;
    out.values.assign(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = assignments[i];
        if (clusters[own].size() == 1) continue;  // singleton: s = 0 by convention

        double a = 0.0;
        for (std::size_t j : clusters[own])
            if (j != i) a += std::sqrt(squared_distance(points[i], points[j]));
        a /= static_cast<double>(clusters[own].size() - 1);

        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || clusters[c].empty()) continue;
            double avg = 0.0;
            for (std::size_t j : clusters[c])
                avg += std::sqrt(squared_distance(points[i], points[j]));
            avg /= static_cast<double>(clusters[c].size());
            b = std::min(b, avg);
        }

        const double denom = std::max(a, b);
        out.values[i] = denom == 0.0 ? 0.0 : (b - a) / denom;
        sum += out.values[i];
    }
    out.mean = n == 0 ? 0.0 : sum / static_cast<double>(n);
    return out;
}

}  // namespace namecheck
