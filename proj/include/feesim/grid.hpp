#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace feesim {

// Dense per-path, per-node grid of doubles, path-major.
class PathGrid {
public:
    PathGrid() = default;
    PathGrid(std::size_t n_paths, std::size_t n_nodes, double fill = 0.0)
        : n_paths_(n_paths), n_nodes_(n_nodes), v_(n_paths * n_nodes, fill) {}

    double operator()(std::size_t path, std::size_t node) const {
        return v_[path * n_nodes_ + node];
    }
    double& operator()(std::size_t path, std::size_t node) {
        return v_[path * n_nodes_ + node];
    }

    std::span<const double> path(std::size_t p) const {
        return {v_.data() + p * n_nodes_, n_nodes_};
    }
    std::span<double> path(std::size_t p) {
        return {v_.data() + p * n_nodes_, n_nodes_};
    }

    std::size_t n_paths() const { return n_paths_; }
    std::size_t n_nodes() const { return n_nodes_; }
    bool empty() const { return v_.empty(); }

    bool same_shape(const PathGrid& other) const {
        return n_paths_ == other.n_paths_ && n_nodes_ == other.n_nodes_;
    }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

private:
    std::size_t n_paths_ = 0;
    std::size_t n_nodes_ = 0;
    std::vector<double> v_;
};

}  // namespace feesim
