#include "iorec/types.hpp"

namespace iorec {

PositionList all_positions(Index rows, Index cols) {
    PositionList positions;
    positions.reserve(static_cast<std::size_t>(rows * cols));
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            positions.push_back(Position{r, c});
        }
    }
    return positions;
}

} // namespace iorec
