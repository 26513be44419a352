#include "iorec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "iorec/errors.hpp"
#include "iorec/rng.hpp"
#include "parallel.hpp"

namespace iorec {

void SyntheticConfig::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw ArgumentError("synthetic config: alpha and beta must be positive");
    }
    if (replications < 1) {
        throw ArgumentError("synthetic config: at least one replication required");
    }
    if (n_threads < 1) {
        throw ArgumentError("synthetic config: n_threads must be at least 1");
    }
}

namespace {

void add_noise(Matrix& m, double sd, rng::Engine& engine) {
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            m(r, c) += engine.normal(0.0, sd);
        }
    }
}

} // namespace

Matrix generate_synthetic(const Matrix& base, const SyntheticConfig& config,
                          int replication_index) {
    config.validate();
    if (!base.allFinite()) {
        throw SanitizeError("generate_synthetic: base matrix must be finite");
    }
    if (replication_index < 0) {
        throw ArgumentError("generate_synthetic: replication index must be non-negative");
    }
    rng::Engine engine(
        rng::mix(config.rng_seed, static_cast<std::uint64_t>(replication_index)));
    const double sd = engine.gamma(config.alpha, config.beta);
    Matrix out = base;
    add_noise(out, sd, engine);
    return out;
}

SummaryStats summarize(std::vector<double> values) {
    if (values.empty()) {
        throw ArgumentError("summarize: no values");
    }
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        const double frac = pos - std::floor(pos);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    SummaryStats stats;
    stats.min = values.front();
    stats.q1 = quantile(0.25);
    stats.median = quantile(0.5);
    stats.q3 = quantile(0.75);
    stats.max = values.back();
    stats.mean = 0.0;
    for (const double v : values) {
        stats.mean += v;
    }
    stats.mean /= static_cast<double>(values.size());
    return stats;
}

SimulationSummary run_cluster_count_simulation(const std::vector<IOTable>& tables,
                                               const std::string& reference,
                                               Direction direction,
                                               const SyntheticConfig& config,
                                               double cutoff) {
    config.validate();
    const std::vector<CountryBlockSeries> base = build_all_series(tables, reference, direction);

    SimulationSummary summary;
    summary.direction = direction;
    summary.selected_k.resize(static_cast<std::size_t>(config.replications), 0);
    detail::parallel_for(
        static_cast<std::size_t>(config.replications), config.n_threads, [&](std::size_t rep) {
            rng::Engine engine(rng::mix(config.rng_seed, static_cast<std::uint64_t>(rep)));
            const double sd = engine.gamma(config.alpha, config.beta);
            std::vector<CountryBlockSeries> perturbed = base;
            for (CountryBlockSeries& series : perturbed) {
                add_noise(series.columns, sd, engine);
            }
            const DissimilarityMatrix d = dissimilarity_matrix(perturbed);
            const Dendrogram dendrogram = hierarchical_cluster(d, Linkage::complete);
            summary.selected_k[rep] = select_num_clusters(d, dendrogram, cutoff);
        });

    std::vector<double> as_double(summary.selected_k.begin(), summary.selected_k.end());
    summary.stats = summarize(std::move(as_double));
    return summary;
}

CompletionResult run_similarity_experiment(const std::vector<IOTable>& tables,
                                           const std::string& reference,
                                           const std::vector<std::string>& group,
                                           const BlockRef& obscured, Direction direction,
                                           const CompletionConfig& config) {
    if (group.empty()) {
        throw ArgumentError("similarity experiment: group must not be empty");
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (group[i] == reference) {
            throw ArgumentError("similarity experiment: group must not contain the reference");
        }
        for (std::size_t j = i + 1; j < group.size(); ++j) {
            if (group[i] == group[j]) {
                throw ArgumentError("similarity experiment: group countries must be distinct");
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(group.size());
    for (const std::string& country : group) {
        if (direction == Direction::input) {
            pairs.emplace_back(reference, country);
        } else {
            pairs.emplace_back(country, reference);
        }
    }
    const PanelAssembly assembly =
        assemble_panel(tables, pairs, {obscured}, config.rng_seed);
    return run_lambda_path(assembly.panel.m, assembly.mask, config);
}

void write_simulation_csv(std::ostream& out, const SimulationSummary& summary) {
    out << "replication,direction,selected_k\n";
    const char* direction = summary.direction == Direction::input ? "input" : "output";
    for (std::size_t i = 0; i < summary.selected_k.size(); ++i) {
        out << i << ',' << direction << ',' << summary.selected_k[i] << '\n';
    }
    out.precision(17);
    out << "# stats,min," << summary.stats.min << '\n';
    out << "# stats,q1," << summary.stats.q1 << '\n';
    out << "# stats,median," << summary.stats.median << '\n';
    out << "# stats,mean," << summary.stats.mean << '\n';
    out << "# stats,q3," << summary.stats.q3 << '\n';
    out << "# stats,max," << summary.stats.max << '\n';
}

} // namespace iorec
