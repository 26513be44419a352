#include "iorec/metrics.hpp"

#include <cmath>

#include "iorec/errors.hpp"

namespace iorec {

namespace {

void check_inputs(const Matrix& truth, const Matrix& estimate, std::span<const Position> omega) {
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols()) {
        throw ArgumentError("metric: matrices must have identical shape");
    }
    if (omega.empty()) {
        throw MetricError("metric: position set is empty");
    }
    for (const Position& p : omega) {
        if (p.row < 0 || p.row >= truth.rows() || p.col < 0 || p.col >= truth.cols()) {
            throw ArgumentError("metric: position out of range");
        }
    }
}

} // namespace

double rmse(const Matrix& truth, const Matrix& estimate, std::span<const Position> omega) {
    check_inputs(truth, estimate, omega);
    double sum = 0.0;
    for (const Position& p : omega) {
        const double diff = truth(p.row, p.col) - estimate(p.row, p.col);
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(omega.size()));
}

double smape(const Matrix& truth, const Matrix& estimate, std::span<const Position> omega) {
    check_inputs(truth, estimate, omega);
    double sum = 0.0;
    for (const Position& p : omega) {
        const double a = truth(p.row, p.col);
        const double b = estimate(p.row, p.col);
        const double denom = std::abs(a) + std::abs(b);
        if (denom > 0.0) {
            sum += std::abs(a - b) / denom;
        }
    }
    return 100.0 * sum / static_cast<double>(omega.size());
}

} // namespace iorec
