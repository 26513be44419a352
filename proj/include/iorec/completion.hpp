#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iorec/types.hpp"

namespace iorec {

/// Disjoint train / validation / test position sets covering a rows x cols
/// grid. Validation and test together hold the artificially obscured block
/// positions; train holds everything else.
struct ObservationMask {
    Index rows = 0;
    Index cols = 0;
    PositionList train;
    PositionList val;
    PositionList test;

    /// Checks disjointness, range, and full coverage of the grid.
    void validate() const;
};

/// Splits the obscured positions uniformly at random into validation
/// (round(25%)) and test (the rest); train is the complement within the
/// grid. Deterministic under a fixed seed.
ObservationMask mask_split(Index rows, Index cols, const PositionList& obscured,
                           std::uint64_t seed);

/// Entries kept on omega, zero elsewhere.
Matrix project(const Matrix& m, std::span<const Position> omega);

/// Entries kept off omega, zero on it.
Matrix project_complement(const Matrix& m, std::span<const Position> omega);

/// Negative entries clamped to zero; everything else unchanged.
Matrix postprocess_nonnegative(const Matrix& m);

enum class SelectionMetric { rmse, smape };

/// Regularization grid 2^(k/2 - 10), k = 1..40.
std::vector<double> default_lambda_grid();

/// Wider grid 2^(k/2 - 20), k = 1..80, for panels mixing blocks of very
/// different magnitudes.
std::vector<double> extended_lambda_grid();

struct CompletionConfig {
    std::vector<double> lambda_grid = default_lambda_grid();
    double epsilon = 1e-9;
    int max_iterations = 500;
    SelectionMetric selection_metric = SelectionMetric::rmse;
    std::uint64_t rng_seed = 0;
    int n_threads = 1;

    void validate() const;
};

struct SoftImputeResult {
    Matrix completed;  // raw iterate, no non-negativity post-processing
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective;  // per-iteration value, when recorded
};

/// Iterates M_new <- S_lambda(P_train(observed) + P_train^c(M_old)) from
/// M_old = 0. Stops at an exact fixed point, when the relative squared
/// Frobenius change drops to epsilon (skipped while ||M_old|| = 0), or
/// after max_iterations.
SoftImputeResult soft_impute(const Matrix& observed, std::span<const Position> train,
                             double lambda, double epsilon, int max_iterations,
                             bool record_objective = false);

/// 1/2 sum_train (observed - estimate)^2 + lambda * ||estimate||_*.
double completion_objective(const Matrix& observed, std::span<const Position> train,
                            const Matrix& estimate, double lambda);

struct LambdaRecord {
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    double rmse_val = 0.0;
    double smape_val = 0.0;
    double rmse_test = 0.0;
    double smape_test = 0.0;
};

struct SetMetrics {
    double train = 0.0;
    double val = 0.0;
    double test = 0.0;
};

struct CompletionResult {
    double best_lambda = 0.0;
    Matrix completed;  // post-processed reconstruction at best_lambda
    std::vector<LambdaRecord> path;
    SetMetrics rmse;
    SetMetrics smape;
    Vector spectrum_original;
    Vector spectrum_completed;
};

/// Runs soft_impute over the whole grid, scores each post-processed result
/// on the validation set, keeps the minimizer of the selection metric
/// (ties go to the smaller lambda), and fills final metrics and spectra.
CompletionResult run_lambda_path(const Matrix& observed, const ObservationMask& mask,
                                 const CompletionConfig& config);

} // namespace iorec
