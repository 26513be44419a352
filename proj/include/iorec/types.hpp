#pragma once

#include <Eigen/Core>
#include <compare>
#include <vector>

namespace iorec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// One (row, col) entry position in a matrix.
struct Position {
    Index row = 0;
    Index col = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

using PositionList = std::vector<Position>;

/// All positions of a rows x cols grid, row-major order.
PositionList all_positions(Index rows, Index cols);

} // namespace iorec
