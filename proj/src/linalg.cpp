#include "iorec/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "iorec/errors.hpp"

namespace iorec {

Matrix SvdFactors::reconstruct() const {
    return u * singular_values.asDiagonal() * v.transpose();
}

SvdFactors svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw ArgumentError("svd: matrix must be non-empty");
    }
    if (!m.allFinite()) {
        throw SanitizeError("svd: input contains NaN or infinite entries");
    }
    Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdFactors{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Index effective_rank(const Vector& singular_values) {
    if (singular_values.size() == 0) {
        return 0;
    }
    const double floor = kRankFloor * singular_values(0);
    Index rank = 0;
    while (rank < singular_values.size() && singular_values(rank) > floor) {
        ++rank;
    }
    return rank;
}

double nuclear_norm(const Matrix& m) {
    return svd(m).singular_values.sum();
}

Matrix soft_threshold_svd(const Matrix& y, double lambda) {
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw ArgumentError("soft_threshold_svd: lambda must be finite and non-negative");
    }
    const SvdFactors factors = svd(y);
    Index kept = 0;
    while (kept < factors.singular_values.size() && factors.singular_values(kept) > lambda) {
        ++kept;
    }
    if (kept == 0) {
        return Matrix::Zero(y.rows(), y.cols());
    }
    const Vector shrunk = factors.singular_values.head(kept).array() - lambda;
    return factors.u.leftCols(kept) * shrunk.asDiagonal() * factors.v.leftCols(kept).transpose();
}

RankTruncation truncated_rank_k(const Matrix& m, Index k) {
    const SvdFactors factors = svd(m);
    const Index r = factors.singular_values.size();
    if (k < 0 || k > r) {
        throw ArgumentError("truncated_rank_k: k exceeds min(rows, cols)");
    }
    Matrix approx = Matrix::Zero(m.rows(), m.cols());
    if (k > 0) {
        approx = factors.u.leftCols(k) * factors.singular_values.head(k).asDiagonal() *
                 factors.v.leftCols(k).transpose();
    }
    const double tail = factors.singular_values.tail(r - k).squaredNorm();
    const double scale = std::sqrt(static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
    return RankTruncation{std::move(approx), std::sqrt(tail) / scale};
}

} // namespace iorec
