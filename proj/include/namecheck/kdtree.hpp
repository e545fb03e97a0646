#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace namecheck {

using Point = std::vector<double>;

struct KdNode {
    std::vector<double> box_min;
    std::vector<double> box_max;
    std::vector<double> coord_sum;  // per-dimension sum over contained points
    std::size_t count = 0;
    std::size_t begin = 0;  // [begin,end) into KdTree::order()
    std::size_t end = 0;
    int split_dim = -1;  // -1 marks a leaf
    double split_value = 0.0;
    std::unique_ptr<KdNode> left;
    std::unique_ptr<KdNode> right;

    bool is_leaf() const { return split_dim < 0; }
};

/// Static kd-tree over a point set: widest-dimension median splits, leaf
/// size 8 by default.  Holds a reference to the points; they must outlive
/// the tree.
class KdTree {
public:
    explicit KdTree(const std::vector<Point>& points, std::size_t leaf_size = 8);

    const KdNode& root() const { return *root_; }
    const std::vector<std::size_t>& order() const { return order_; }
    const std::vector<Point>& points() const { return *points_; }
    std::size_t node_count() const { return node_count_; }
    std::size_t dimension() const { return dim_; }

private:
    std::unique_ptr<KdNode> build(std::size_t begin, std::size_t end);

    const std::vector<Point>* points_;
    std::vector<std::size_t> order_;
    std::unique_ptr<KdNode> root_;
    std::size_t node_count_ = 0;
    std::size_t leaf_size_;
    std::size_t dim_ = 0;
};

}  // namespace namecheck
