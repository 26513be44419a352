#include "iorec/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "iorec/errors.hpp"
#include "iorec/linalg.hpp"
#include "iorec/metrics.hpp"
#include "iorec/rng.hpp"
#include "parallel.hpp"

namespace iorec {

namespace {

void check_range(std::span<const Position> positions, Index rows, Index cols,
                 const char* who) {
    for (const Position& p : positions) {
        if (p.row < 0 || p.row >= rows || p.col < 0 || p.col >= cols) {
            throw ArgumentError(std::string(who) + ": position out of range");
        }
    }
}

} // namespace

void ObservationMask::validate() const {
    if (rows <= 0 || cols <= 0) {
        throw ArgumentError("mask: grid dimensions must be positive");
    }
    check_range(train, rows, cols, "mask");
    check_range(val, rows, cols, "mask");
    check_range(test, rows, cols, "mask");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows * cols), 0);
    auto mark = [&](const PositionList& set) {
        for (const Position& p : set) {
            auto& cell = seen[static_cast<std::size_t>(p.row * cols + p.col)];
            if (cell != 0) {
                throw ArgumentError("mask: train/val/test sets overlap");
            }
            cell = 1;
        }
    };
    mark(train);
    mark(val);
    mark(test);
    if (train.size() + val.size() + test.size() != static_cast<std::size_t>(rows * cols)) {
        throw ArgumentError("mask: sets do not cover the grid");
    }
}

ObservationMask mask_split(Index rows, Index cols, const PositionList& obscured,
                           std::uint64_t seed) {
    if (rows <= 0 || cols <= 0) {
        throw ArgumentError("mask_split: grid dimensions must be positive");
    }
    check_range(obscured, rows, cols, "mask_split");

    std::vector<std::uint8_t> hidden(static_cast<std::size_t>(rows * cols), 0);
    for (const Position& p : obscured) {
        auto& cell = hidden[static_cast<std::size_t>(p.row * cols + p.col)];
        if (cell != 0) {
            throw ArgumentError("mask_split: duplicate obscured position");
        }
        cell = 1;
    }

    ObservationMask mask;
    mask.rows = rows;
    mask.cols = cols;
    mask.train.reserve(static_cast<std::size_t>(rows * cols) - obscured.size());
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            if (hidden[static_cast<std::size_t>(r * cols + c)] == 0) {
                mask.train.push_back(Position{r, c});
            }
        }
    }

    PositionList pool = obscured;
    std::sort(pool.begin(), pool.end());
    rng::Engine engine(seed);
    rng::shuffle(pool, engine);

    const auto val_size = static_cast<std::size_t>(
        std::llround(0.25 * static_cast<double>(pool.size())));
    mask.val.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(val_size));
    mask.test.assign(pool.begin() + static_cast<std::ptrdiff_t>(val_size), pool.end());
    return mask;
}

Matrix project(const Matrix& m, std::span<const Position> omega) {
    check_range(omega, m.rows(), m.cols(), "project");
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (const Position& p : omega) {
        out(p.row, p.col) = m(p.row, p.col);
    }
    return out;
}

Matrix project_complement(const Matrix& m, std::span<const Position> omega) {
    check_range(omega, m.rows(), m.cols(), "project");
    Matrix out = m;
    for (const Position& p : omega) {
        out(p.row, p.col) = 0.0;
    }
    return out;
}

Matrix postprocess_nonnegative(const Matrix& m) {
    return m.cwiseMax(0.0);
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(40);
    for (int k = 1; k <= 40; ++k) {
        grid.push_back(std::exp2(0.5 * k - 10.0));
    }
    return grid;
}

std::vector<double> extended_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(80);
    for (int k = 1; k <= 80; ++k) {
        grid.push_back(std::exp2(0.5 * k - 20.0));
    }
    return grid;
}

void CompletionConfig::validate() const {
    if (lambda_grid.empty()) {
        throw ArgumentError("completion config: lambda grid is empty");
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 0.0) || !std::isfinite(lambda_grid[i])) {
            throw ArgumentError("completion config: lambda values must be positive and finite");
        }
        if (i > 0 && lambda_grid[i] <= lambda_grid[i - 1]) {
            throw ArgumentError("completion config: lambda grid must be strictly increasing");
        }
    }
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw ArgumentError("completion config: epsilon must be non-negative");
    }
    if (max_iterations < 1) {
        throw ArgumentError("completion config: max_iterations must be at least 1");
    }
    if (n_threads < 1) {
        throw ArgumentError("completion config: n_threads must be at least 1");
    }
}

double completion_objective(const Matrix& observed, std::span<const Position> train,
                            const Matrix& estimate, double lambda) {
    double fit = 0.0;
    for (const Position& p : train) {
        const double diff = observed(p.row, p.col) - estimate(p.row, p.col);
        fit += diff * diff;
    }
    return 0.5 * fit + lambda * nuclear_norm(estimate);
}

SoftImputeResult soft_impute(const Matrix& observed, std::span<const Position> train,
                             double lambda, double epsilon, int max_iterations,
                             bool record_objective) {
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw ArgumentError("soft_impute: lambda must be finite and non-negative");
    }
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw ArgumentError("soft_impute: epsilon must be non-negative");
    }
    if (max_iterations < 1) {
        throw ArgumentError("soft_impute: max_iterations must be at least 1");
    }
    check_range(train, observed.rows(), observed.cols(), "soft_impute");
    for (const Position& p : train) {
        if (!std::isfinite(observed(p.row, p.col))) {
            throw SanitizeError("soft_impute: observed entries must be finite on the training set");
        }
    }

    SoftImputeResult result;
    Matrix current = Matrix::Zero(observed.rows(), observed.cols());
    Matrix filled(observed.rows(), observed.cols());
    for (int it = 1; it <= max_iterations; ++it) {
        filled = current;
        for (const Position& p : train) {
            filled(p.row, p.col) = observed(p.row, p.col);
        }
        Matrix next = soft_threshold_svd(filled, lambda);
        if (record_objective) {
            result.objective.push_back(completion_objective(observed, train, next, lambda));
        }
        const double change = (next - current).squaredNorm();
        const double base = current.squaredNorm();
        result.iterations = it;
        current = std::move(next);
        if (change == 0.0) {
            // Exact fixed point; every further iterate is identical.
            result.converged = true;
            break;
        }
        if (base > 0.0 && change / base <= epsilon) {
            result.converged = true;
            break;
        }
    }
    result.completed = std::move(current);
    return result;
}

CompletionResult run_lambda_path(const Matrix& observed, const ObservationMask& mask,
                                 const CompletionConfig& config) {
    config.validate();
    mask.validate();
    if (observed.rows() != mask.rows || observed.cols() != mask.cols) {
        throw ArgumentError("run_lambda_path: mask dimensions do not match the matrix");
    }
    if (mask.val.empty()) {
        throw SelectionError("run_lambda_path: validation set is empty");
    }

    CompletionResult result;
    result.path.resize(config.lambda_grid.size());
    result.spectrum_original = svd(observed).singular_values;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::mutex best_mutex;
    double best_value = std::numeric_limits<double>::infinity();
    double best_lambda = std::numeric_limits<double>::infinity();
    Matrix best_completed;

    detail::parallel_for(config.lambda_grid.size(), config.n_threads, [&](std::size_t i) {
        const double lambda = config.lambda_grid[i];
        SoftImputeResult run =
            soft_impute(observed, mask.train, lambda, config.epsilon, config.max_iterations);
        Matrix post = postprocess_nonnegative(run.completed);
        LambdaRecord record;
        record.lambda = lambda;
        record.iterations = run.iterations;
        record.converged = run.converged;
        record.rmse_val = rmse(observed, post, mask.val);
        record.smape_val = smape(observed, post, mask.val);
        record.rmse_test = mask.test.empty() ? nan : rmse(observed, post, mask.test);
        record.smape_test = mask.test.empty() ? nan : smape(observed, post, mask.test);
        result.path[i] = record;

        const double value = config.selection_metric == SelectionMetric::rmse
                                 ? record.rmse_val
                                 : record.smape_val;
        std::lock_guard lock(best_mutex);
        if (value < best_value || (value == best_value && lambda < best_lambda)) {
            best_value = value;
            best_lambda = lambda;
            best_completed = std::move(post);
        }
    });

    result.best_lambda = best_lambda;
    result.completed = std::move(best_completed);
    result.rmse.train = mask.train.empty() ? nan : rmse(observed, result.completed, mask.train);
    result.rmse.val = rmse(observed, result.completed, mask.val);
    result.rmse.test = mask.test.empty() ? nan : rmse(observed, result.completed, mask.test);
    result.smape.train = mask.train.empty() ? nan : smape(observed, result.completed, mask.train);
    result.smape.val = smape(observed, result.completed, mask.val);
    result.smape.test = mask.test.empty() ? nan : smape(observed, result.completed, mask.test);
    result.spectrum_completed = svd(result.completed).singular_values;
    return result;
}

} // namespace iorec
