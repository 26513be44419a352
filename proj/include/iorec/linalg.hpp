#pragma once

#include "iorec/types.hpp"

namespace iorec {

/// Thin SVD factors with singular values sorted non-increasing and
/// orthonormal columns in both factor matrices.
struct SvdFactors {
    Matrix u;                // n_rows x r
    Vector singular_values;  // r = min(n_rows, n_cols)
    Matrix v;                // n_cols x r

    Matrix reconstruct() const;
};

/// Singular values below this fraction of the largest one are treated as
/// zero when counting rank (floating-point noise floor).
inline constexpr double kRankFloor = 1e-12;

/// Full thin SVD; rejects empty or non-finite input.
SvdFactors svd(const Matrix& m);

/// Number of singular values above kRankFloor * sigma_1.
Index effective_rank(const Vector& singular_values);

/// Sum of singular values.
double nuclear_norm(const Matrix& m);

/// U diag((sigma_i - lambda)_+) V^T. Only triplets with sigma_i > lambda
/// enter the product; lambda >= sigma_1 yields the zero matrix.
Matrix soft_threshold_svd(const Matrix& y, double lambda);

struct RankTruncation {
    Matrix approx;  // best rank-k approximation in Frobenius norm
    double rmse;    // (1/sqrt(m n)) * sqrt(sum of squared discarded singular values)
};

/// Keeps the k largest singular triplets. k must not exceed min(rows, cols).
RankTruncation truncated_rank_k(const Matrix& m, Index k);

} // namespace iorec
