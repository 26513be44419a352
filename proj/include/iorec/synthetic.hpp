#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iorec/clustering.hpp"
#include "iorec/completion.hpp"
#include "iorec/io_model.hpp"
#include "iorec/types.hpp"

namespace iorec {

struct SyntheticConfig {
    double alpha = 1.0;  // Gamma shape for the per-replication noise level
    double beta = 1.0;   // Gamma scale
    int replications = 1000;
    std::uint64_t rng_seed = 0;
    int n_threads = 1;

    void validate() const;
};

/// base plus i.i.d. N(0, sd) noise, where sd is one Gamma(alpha, beta) draw
/// per replication. Deterministic in (rng_seed, replication_index), and
/// replications are independent of each other's order.
Matrix generate_synthetic(const Matrix& base, const SyntheticConfig& config,
                          int replication_index);

struct SummaryStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Five-number-plus-mean summary with linear-interpolation quartiles.
SummaryStats summarize(std::vector<double> values);

struct SimulationSummary {
    Direction direction = Direction::input;
    std::vector<int> selected_k;  // one entry per replication
    SummaryStats stats;
};

/// Per replication: perturb the reference country's cross-country data over
/// the training years, cluster with AACD + complete linkage, and record the
/// WSS/TSS-selected cluster count.
SimulationSummary run_cluster_count_simulation(const std::vector<IOTable>& tables,
                                               const std::string& reference,
                                               Direction direction,
                                               const SyntheticConfig& config,
                                               double cutoff = 0.5);

/// Assembles the one-reference/one-group panel with the given block
/// obscured and runs the full regularization path. The group is typically
/// either one cluster or a set of mutually distant countries.
CompletionResult run_similarity_experiment(const std::vector<IOTable>& tables,
                                           const std::string& reference,
                                           const std::vector<std::string>& group,
                                           const BlockRef& obscured, Direction direction,
                                           const CompletionConfig& config);

/// Grid columns of the per-run records: one row per replication.
void write_simulation_csv(std::ostream& out, const SimulationSummary& summary);

} // namespace iorec
