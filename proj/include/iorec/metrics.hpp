#pragma once

#include <span>

#include "iorec/types.hpp"

namespace iorec {

/// Root mean square error over the given position set.
double rmse(const Matrix& truth, const Matrix& estimate, std::span<const Position> omega);

/// Symmetric mean absolute percentage error over the given position set,
/// in [0, 100]. Terms with |truth| + |estimate| = 0 count as 0.
double smape(const Matrix& truth, const Matrix& estimate, std::span<const Position> omega);

} // namespace iorec
