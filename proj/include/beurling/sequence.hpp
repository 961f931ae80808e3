#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "error.hpp"

namespace beurling {

/// Ordered finite sequence of ball points sharing one dimension.
class PointSequence {
public:
    PointSequence(std::size_t dim, std::vector<BallPoint> points, std::string label = {})
        : dim_(dim), points_(std::move(points)), label_(std::move(label)) {
        if (dim_ == 0) throw DomainError("PointSequence: dimension must be at least 1");
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i].dim() != dim_)
                throw DomainError("PointSequence: point " + std::to_string(i) + " has dimension " +
                                  std::to_string(points_[i].dim()) + ", expected " +
                                  std::to_string(dim_));
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::vector<BallPoint>& points() const noexcept { return points_; }
    const BallPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::string& label() const noexcept { return label_; }

private:
    std::size_t dim_;
    std::vector<BallPoint> points_;
    std::string label_;
};

} // namespace beurling
