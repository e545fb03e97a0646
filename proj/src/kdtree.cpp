#include "namecheck/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace namecheck {

KdTree::KdTree(const std::vector<Point>& points, std::size_t leaf_size)
    : points_(&points), leaf_size_(leaf_size == 0 ? 1 : leaf_size) {
    if (points.empty()) throw std::invalid_argument("KdTree: empty point set");
    dim_ = points.front().size();
    for (const Point& p : points)
        if (p.size() != dim_) throw std::invalid_argument("KdTree: inconsistent dimensions");
    order_.resize(points.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    root_ = build(0, points.size());
}

std::unique_ptr<KdNode> KdTree::build(std::size_t begin, std::size_t end) {
    auto node = std::make_unique<KdNode>();
    ++node_count_;
    node->begin = begin;
    node->end = end;
    node->count = end - begin;
    node->box_min.assign(dim_, 0.0);
    node->box_max.assign(dim_, 0.0);
    node->coord_sum.assign(dim_, 0.0);

    const auto& pts = *points_;
    for (std::size_t d = 0; d < dim_; ++d) {
        node->box_min[d] = node->box_max[d] = pts[order_[begin]][d];
    }
    for (std::size_t i = begin; i < end; ++i) {
        const Point& p = pts[order_[i]];
        for (std::size_t d = 0; d < dim_; ++d) {
            node->box_min[d] = std::min(node->box_min[d], p[d]);
            node->box_max[d] = std::max(node->box_max[d], p[d]);
            node->coord_sum[d] += p[d];
        }
    }

    if (node->count <= leaf_size_) return node;

    std::size_t widest = 0;
    double width = node->box_max[0] - node->box_min[0];
    for (std::size_t d = 1; d < dim_; ++d) {
        const double w = node->box_max[d] - node->box_min[d];
        if (w > width) {
            width = w;
            widest = d;
        }
    }
    if (width == 0.0) return node;  // all points identical: keep as a leaf

    const std::size_t mid = begin + node->count / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         const double va = pts[a][widest], vb = pts[b][widest];
                         return va < vb || (va == vb && a < b);
                     });
    node->split_dim = static_cast<int>(widest);
    node->split_value = pts[order_[mid]][widest];
    node->left = build(begin, mid);
    node->right = build(mid, end);
    return node;
}

}  // namespace namecheck
