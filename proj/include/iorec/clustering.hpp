#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iorec/io_model.hpp"
#include "iorec/types.hpp"

namespace iorec {

/// Which side of the trade a country is compared on: what it buys from the
/// reference country (input) or what it sells to it (output).
enum class Direction { input, output };

enum class Linkage { complete, ward };

/// Per-country comparison data: one column per compared series, stacked
/// over the training years. For the input direction the columns are the
/// reference country's cross-country block columns (n+l of them, each of
/// length years*n); for the output direction they are the block rows seen
/// as series (n of them, each of length years*(n+l)).
struct CountryBlockSeries {
    std::string country;
    Matrix columns;
};

CountryBlockSeries build_block_series(const std::vector<IOTable>& tables,
                                      const std::string& reference,
                                      const std::string& country, Direction direction);

/// Series for every country other than the reference, in index order.
std::vector<CountryBlockSeries> build_all_series(const std::vector<IOTable>& tables,
                                                 const std::string& reference,
                                                 Direction direction);

struct AacdDiagnostics {
    Index degenerate_columns = 0;  // column pairs skipped for zero variance
};

/// Average absolute correlation distance: 1 minus the mean absolute Pearson
/// correlation of corresponding columns. Column pairs where either series
/// is constant contribute zero correlation while staying in the average.
double aacd(const CountryBlockSeries& a, const CountryBlockSeries& b,
            AacdDiagnostics* diagnostics = nullptr);

struct DissimilarityMatrix {
    std::vector<std::string> labels;
    Matrix d;  // symmetric, zero diagonal

    void validate() const;
};

DissimilarityMatrix dissimilarity_matrix(const std::vector<CountryBlockSeries>& series);

/// One agglomeration step. Node ids: leaves are 0..L-1, the cluster formed
/// by merge t gets id L+t.
struct Merge {
    int node_a = 0;
    int node_b = 0;
    double height = 0.0;
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;  // length L-1, non-decreasing heights
};

/// Agglomerative clustering with Lance-Williams distance updates. Complete
/// linkage takes the maximum; Ward applies the size-weighted update to
/// squared dissimilarities and reports square-root heights. Ties merge the
/// lowest-index pair first.
Dendrogram hierarchical_cluster(const DissimilarityMatrix& d, Linkage linkage);

struct ClusterAssignment {
    std::vector<std::string> labels;  // leaf order
    std::vector<int> cluster;         // 1..k, numbered by first appearance
    int k = 0;
};

/// Undoes the last k-1 merges and labels the remaining groups 1..k in leaf
/// order.
ClusterAssignment cut(const Dendrogram& dendrogram, int k);

/// Within-over-total sum of squares on pairwise dissimilarities:
/// WSS = sum over clusters of (1/|C|) sum of d^2 over in-cluster pairs,
/// TSS = (1/m) sum of d^2 over all pairs. Coincides with the usual
/// variance ratio when d is a Euclidean distance.
double wss_tss_ratio(const DissimilarityMatrix& d, const ClusterAssignment& assignment);

/// Ratio for every cut k = 1..L.
std::vector<double> wss_tss_trace(const DissimilarityMatrix& d, const Dendrogram& dendrogram);

/// Smallest k whose WSS/TSS falls below the cutoff.
int select_num_clusters(const DissimilarityMatrix& d, const Dendrogram& dendrogram,
                        double cutoff = 0.5);

/// Line format: "leaves <code>..." header, then one "node_a node_b height"
/// line per merge.
void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram);

} // namespace iorec
