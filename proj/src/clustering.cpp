#include "iorec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "iorec/errors.hpp"

namespace iorec {

CountryBlockSeries build_block_series(const std::vector<IOTable>& tables,
                                      const std::string& reference,
                                      const std::string& country, Direction direction) {
    if (tables.empty()) {
        throw ArgumentError("block series: at least one table required");
    }
    if (country == reference) {
        throw ArgumentError("block series: country must differ from the reference");
    }
    std::vector<const IOTable*> ordered;
    for (const IOTable& table : tables) {
        ordered.push_back(&table);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const IOTable* a, const IOTable* b) { return a->year < b->year; });

    CountryBlockSeries series;
    series.country = country;
    const Index n = tables.front().index.num_sectors();
    const Index width = tables.front().index.block_cols();
    const Index block_rows = direction == Direction::input ? n : width;
    const Index block_cols = direction == Direction::input ? width : n;
    series.columns.resize(static_cast<Index>(ordered.size()) * block_rows, block_cols);
    for (std::size_t y = 0; y < ordered.size(); ++y) {
        const Matrix block = direction == Direction::input
                                 ? extract_block(*ordered[y], reference, country)
                                 : extract_block(*ordered[y], country, reference).transpose();
        series.columns.middleRows(static_cast<Index>(y) * block_rows, block_rows) = block;
    }
    return series;
}

std::vector<CountryBlockSeries> build_all_series(const std::vector<IOTable>& tables,
                                                 const std::string& reference,
                                                 Direction direction) {
    if (tables.empty()) {
        throw ArgumentError("block series: at least one table required");
    }
    tables.front().index.country_pos(reference);
    std::vector<CountryBlockSeries> all;
    for (const std::string& country : tables.front().index.countries) {
        if (country == reference) {
            continue;
        }
        all.push_back(build_block_series(tables, reference, country, direction));
    }
    return all;
}

double aacd(const CountryBlockSeries& a, const CountryBlockSeries& b,
            AacdDiagnostics* diagnostics) {
    if (a.columns.rows() != b.columns.rows() || a.columns.cols() != b.columns.cols()) {
        throw ArgumentError("aacd: series shapes do not match");
    }
    if (a.columns.rows() < 2 || a.columns.cols() < 1) {
        throw ArgumentError("aacd: series need at least two observations per column");
    }
    const Index cols = a.columns.cols();
    const double len = static_cast<double>(a.columns.rows());
    double total = 0.0;
    Index degenerate = 0;
    for (Index i = 0; i < cols; ++i) {
        const auto x = a.columns.col(i);
        const auto y = b.columns.col(i);
        const double mean_x = x.mean();
        const double mean_y = y.mean();
        const double var_x = (x.array() - mean_x).square().sum() / len;
        const double var_y = (y.array() - mean_y).square().sum() / len;
        if (var_x <= 0.0 || var_y <= 0.0) {
            ++degenerate;  // constant series: correlation undefined, counts as 0
            continue;
        }
        const double cov = ((x.array() - mean_x) * (y.array() - mean_y)).sum() / len;
        total += std::min(std::abs(cov / std::sqrt(var_x * var_y)), 1.0);
    }
    if (diagnostics != nullptr) {
        diagnostics->degenerate_columns = degenerate;
    }
    return 1.0 - total / static_cast<double>(cols);
}

void DissimilarityMatrix::validate() const {
    const Index m = static_cast<Index>(labels.size());
    if (d.rows() != m || d.cols() != m) {
        throw ArgumentError("dissimilarity: matrix shape does not match the labels");
    }
    if (!d.allFinite()) {
        throw ArgumentError("dissimilarity: entries must be finite");
    }
    for (Index i = 0; i < m; ++i) {
        if (d(i, i) != 0.0) {
            throw ArgumentError("dissimilarity: diagonal must be zero");
        }
        for (Index j = i + 1; j < m; ++j) {
            if (d(i, j) != d(j, i) || d(i, j) < 0.0) {
                throw ArgumentError("dissimilarity: matrix must be symmetric and non-negative");
            }
        }
    }
}

DissimilarityMatrix dissimilarity_matrix(const std::vector<CountryBlockSeries>& series) {
    if (series.size() < 2) {
        throw ArgumentError("dissimilarity: at least two series required");
    }
    DissimilarityMatrix out;
    const Index m = static_cast<Index>(series.size());
    out.d = Matrix::Zero(m, m);
    for (const CountryBlockSeries& s : series) {
        out.labels.push_back(s.country);
    }
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            const double value =
                aacd(series[static_cast<std::size_t>(i)], series[static_cast<std::size_t>(j)]);
            out.d(i, j) = value;
            out.d(j, i) = value;
        }
    }
    return out;
}

Dendrogram hierarchical_cluster(const DissimilarityMatrix& d, Linkage linkage) {
    d.validate();
    const int leaves = static_cast<int>(d.labels.size());
    if (leaves < 2) {
        throw ArgumentError("clustering: at least two leaves required");
    }

    // Working distances live in a (2L-1)^2 table indexed by node id; Ward
    // updates operate on squared dissimilarities.
    const int total = 2 * leaves - 1;
    Matrix work(total, total);
    work.setZero();
    for (int i = 0; i < leaves; ++i) {
        for (int j = 0; j < leaves; ++j) {
            const double v = d.d(i, j);
            work(i, j) = linkage == Linkage::ward ? v * v : v;
        }
    }
    std::vector<int> active(static_cast<std::size_t>(leaves));
    std::iota(active.begin(), active.end(), 0);
    std::vector<double> size(static_cast<std::size_t>(total), 1.0);

    Dendrogram dendrogram;
    dendrogram.leaves = d.labels;
    for (int step = 0; step < leaves - 1; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 1;
        for (std::size_t i = 0; i + 1 < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double v = work(active[i], active[j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        const int a = active[bi];
        const int b = active[bj];
        const int merged = leaves + step;
        const double height = linkage == Linkage::ward ? std::sqrt(best) : best;
        dendrogram.merges.push_back(Merge{a, b, height});

        for (const int k : active) {
            if (k == a || k == b) {
                continue;
            }
            double updated = 0.0;
            if (linkage == Linkage::complete) {
                updated = std::max(work(a, k), work(b, k));
            } else {
                const double na = size[static_cast<std::size_t>(a)];
                const double nb = size[static_cast<std::size_t>(b)];
                const double nk = size[static_cast<std::size_t>(k)];
                updated = ((na + nk) * work(a, k) + (nb + nk) * work(b, k) - nk * work(a, b)) /
                          (na + nb + nk);
            }
            work(merged, k) = updated;
            work(k, merged) = updated;
        }
        size[static_cast<std::size_t>(merged)] =
            size[static_cast<std::size_t>(a)] + size[static_cast<std::size_t>(b)];
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
        active.push_back(merged);
        std::sort(active.begin(), active.end());
    }
    return dendrogram;
}

ClusterAssignment cut(const Dendrogram& dendrogram, int k) {
    const int leaves = static_cast<int>(dendrogram.leaves.size());
    if (k < 1 || k > leaves) {
        throw ArgumentError("cut: k must be between 1 and the number of leaves");
    }

    std::vector<int> parent(static_cast<std::size_t>(2 * leaves - 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    for (int step = 0; step < leaves - k; ++step) {
        const Merge& merge = dendrogram.merges[static_cast<std::size_t>(step)];
        const int merged = leaves + step;
        parent[static_cast<std::size_t>(find(merge.node_a))] = merged;
        parent[static_cast<std::size_t>(find(merge.node_b))] = merged;
    }

    ClusterAssignment assignment;
    assignment.labels = dendrogram.leaves;
    assignment.cluster.resize(static_cast<std::size_t>(leaves), 0);
    assignment.k = k;
    std::vector<int> id_of_root(static_cast<std::size_t>(2 * leaves - 1), 0);
    int next = 0;
    for (int leaf = 0; leaf < leaves; ++leaf) {
        const int root = find(leaf);
        if (id_of_root[static_cast<std::size_t>(root)] == 0) {
            id_of_root[static_cast<std::size_t>(root)] = ++next;
        }
        assignment.cluster[static_cast<std::size_t>(leaf)] =
            id_of_root[static_cast<std::size_t>(root)];
    }
    return assignment;
}

double wss_tss_ratio(const DissimilarityMatrix& d, const ClusterAssignment& assignment) {
    const Index m = static_cast<Index>(assignment.cluster.size());
    if (d.d.rows() != m) {
        throw ArgumentError("wss/tss: assignment does not match the dissimilarity matrix");
    }
    std::vector<double> cluster_sum(static_cast<std::size_t>(assignment.k) + 1, 0.0);
    std::vector<double> cluster_size(static_cast<std::size_t>(assignment.k) + 1, 0.0);
    double total = 0.0;
    for (Index i = 0; i < m; ++i) {
        cluster_size[static_cast<std::size_t>(assignment.cluster[static_cast<std::size_t>(i)])] +=
            1.0;
        for (Index j = i + 1; j < m; ++j) {
            const double sq = d.d(i, j) * d.d(i, j);
            total += sq;
            if (assignment.cluster[static_cast<std::size_t>(i)] ==
                assignment.cluster[static_cast<std::size_t>(j)]) {
                cluster_sum[static_cast<std::size_t>(
                    assignment.cluster[static_cast<std::size_t>(i)])] += sq;
            }
        }
    }
    const double tss = total / static_cast<double>(m);
    double wss = 0.0;
    for (int c = 1; c <= assignment.k; ++c) {
        if (cluster_size[static_cast<std::size_t>(c)] > 0.0) {
            wss += cluster_sum[static_cast<std::size_t>(c)] /
                   cluster_size[static_cast<std::size_t>(c)];
        }
    }
    if (tss == 0.0) {
        return 0.0;  // all objects coincide; any partition explains everything
    }
    return wss / tss;
}

std::vector<double> wss_tss_trace(const DissimilarityMatrix& d, const Dendrogram& dendrogram) {
    std::vector<double> trace;
    const int leaves = static_cast<int>(dendrogram.leaves.size());
    trace.reserve(static_cast<std::size_t>(leaves));
    for (int k = 1; k <= leaves; ++k) {
        trace.push_back(wss_tss_ratio(d, cut(dendrogram, k)));
    }
    return trace;
}

int select_num_clusters(const DissimilarityMatrix& d, const Dendrogram& dendrogram,
                        double cutoff) {
    if (!(cutoff > 0.0) || !(cutoff < 1.0)) {
        throw ArgumentError("select_num_clusters: cutoff must lie in (0, 1)");
    }
    const int leaves = static_cast<int>(dendrogram.leaves.size());
    for (int k = 1; k <= leaves; ++k) {
        if (wss_tss_ratio(d, cut(dendrogram, k)) < cutoff) {
            return k;
        }
    }
    return leaves;  // unreachable: singletons give WSS = 0
}

void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram) {
    out << "leaves";
    for (const std::string& leaf : dendrogram.leaves) {
        out << ' ' << leaf;
    }
    out << '\n';
    out.precision(17);
    for (const Merge& merge : dendrogram.merges) {
        out << merge.node_a << ' ' << merge.node_b << ' ' << merge.height << '\n';
    }
}

} // namespace iorec
