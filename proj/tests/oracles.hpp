#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths: a hand-rolled Jacobi eigensolver (SVD cross-check),
// naive metric loops, and a brute-force linkage that re-scans all leaf
// pairs at every step.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "iorec/clustering.hpp"
#include "iorec/rng.hpp"
#include "iorec/types.hpp"

namespace oracles {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// non-increasing. Operates on plain nested vectors, no Eigen involved.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scale = std::max(scale, std::abs(a[i][j]));
        }
    }
    if (scale == 0.0) {
        return std::vector<double>(n, 0.0);
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a[p][q] * a[p][q];
            }
        }
        if (off < 1e-30 * scale * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= 1e-300) {
                    continue;
                }
                const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double app = a[p][p];
                const double aqq = a[q][q];
                const double apq = a[p][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigenvalues[i] = a[i][i];
    }
    std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
    return eigenvalues;
}

/// Singular values of m via the eigenvalues of m^T m.
inline std::vector<double> singular_values_via_gram(const iorec::Matrix& m) {
    const std::size_t rows = static_cast<std::size_t>(m.rows());
    const std::size_t cols = static_cast<std::size_t>(m.cols());
    std::vector<std::vector<double>> gram(cols, std::vector<double>(cols, 0.0));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < rows; ++k) {
                sum += m(static_cast<iorec::Index>(k), static_cast<iorec::Index>(i)) *
                       m(static_cast<iorec::Index>(k), static_cast<iorec::Index>(j));
            }
            gram[i][j] = sum;
        }
    }
    std::vector<double> sigma;
    for (const double ev : jacobi_eigenvalues(std::move(gram))) {
        sigma.push_back(std::sqrt(std::max(ev, 0.0)));
    }
    sigma.resize(std::min(rows, cols));
    return sigma;
}

inline double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double naive_aacd(const iorec::Matrix& a, const iorec::Matrix& b) {
    double sum = 0.0;
    for (iorec::Index i = 0; i < a.cols(); ++i) {
        std::vector<double> x;
        std::vector<double> y;
        for (iorec::Index r = 0; r < a.rows(); ++r) {
            x.push_back(a(r, i));
            y.push_back(b(r, i));
        }
        const double corr = naive_pearson(x, y);
        if (std::isfinite(corr)) {
            sum += std::min(std::abs(corr), 1.0);
        }
    }
    return 1.0 - sum / static_cast<double>(a.cols());
}

inline double naive_rmse(const iorec::Matrix& truth, const iorec::Matrix& estimate,
                         const iorec::PositionList& omega) {
    double sum = 0.0;
    for (const iorec::Position& p : omega) {
        const double d = truth(p.row, p.col) - estimate(p.row, p.col);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(omega.size()));
}

/// Complete linkage by brute force: at every step the distance between two
/// clusters is recomputed as the maximum leaf-pair dissimilarity, and the
/// lowest-index pair among the minima merges.
inline std::vector<iorec::Merge> brute_force_complete_linkage(const iorec::Matrix& d) {
    const int leaves = static_cast<int>(d.rows());
    struct Cluster {
        int id;
        std::vector<int> members;
    };
    std::vector<Cluster> active;
    for (int i = 0; i < leaves; ++i) {
        active.push_back(Cluster{i, {i}});
    }
    std::vector<iorec::Merge> merges;
    for (int step = 0; step < leaves - 1; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 1;
        for (std::size_t i = 0; i + 1 < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double dist = 0.0;
                for (const int a : active[i].members) {
                    for (const int b : active[j].members) {
                        dist = std::max(dist, d(a, b));
                    }
                }
                if (dist < best) {
                    best = dist;
                    bi = i;
                    bj = j;
                }
            }
        }
        Cluster merged;
        merged.id = leaves + step;
        merged.members = active[bi].members;
        merged.members.insert(merged.members.end(), active[bj].members.begin(),
                              active[bj].members.end());
        merges.push_back(iorec::Merge{active[bi].id, active[bj].id, best});
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
        active.push_back(std::move(merged));
        std::sort(active.begin(), active.end(),
                  [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
    }
    return merges;
}

/// Nonnegative planted matrix of the given rank (entrywise product of
/// uniform(0.5, 1.5) factors).
inline iorec::Matrix planted_low_rank(iorec::Index rows, iorec::Index cols, iorec::Index rank,
                                      std::uint64_t seed) {
    iorec::rng::Engine engine(seed);
    iorec::Matrix u(rows, rank);
    iorec::Matrix v(cols, rank);
    for (iorec::Index r = 0; r < rows; ++r) {
        for (iorec::Index k = 0; k < rank; ++k) {
            u(r, k) = 0.5 + engine.uniform();
        }
    }
    for (iorec::Index c = 0; c < cols; ++c) {
        for (iorec::Index k = 0; k < rank; ++k) {
            v(c, k) = 0.5 + engine.uniform();
        }
    }
    return u * v.transpose();
}

/// Random symmetric dissimilarity matrix with zero diagonal.
inline iorec::Matrix random_dissimilarity(int leaves, std::uint64_t seed) {
    iorec::rng::Engine engine(seed);
    iorec::Matrix d = iorec::Matrix::Zero(leaves, leaves);
    for (int i = 0; i + 1 < leaves; ++i) {
        for (int j = i + 1; j < leaves; ++j) {
            const double v = engine.uniform();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

inline iorec::Matrix random_matrix(iorec::Index rows, iorec::Index cols, std::uint64_t seed) {
    iorec::rng::Engine engine(seed);
    iorec::Matrix m(rows, cols);
    for (iorec::Index r = 0; r < rows; ++r) {
        for (iorec::Index c = 0; c < cols; ++c) {
            m(r, c) = engine.uniform();
        }
    }
    return m;
}

} // namespace oracles
