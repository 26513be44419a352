#include "iorec/io_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "iorec/errors.hpp"

namespace iorec {

Index IOIndex::country_pos(const std::string& code) const {
    const auto it = std::find(countries.begin(), countries.end(), code);
    if (it == countries.end()) {
        throw LookupError("unknown country code: " + code);
    }
    return static_cast<Index>(it - countries.begin());
}

void IOIndex::validate() const {
    if (countries.empty()) {
        throw LayoutError("index: at least one country required");
    }
    if (sectors.empty()) {
        throw LayoutError("index: at least one sector required");
    }
    std::unordered_set<std::string> seen;
    for (const auto& code : countries) {
        if (!seen.insert(code).second) {
            throw LayoutError("index: duplicate country code " + code);
        }
    }
}

void IOTable::validate() const {
    index.validate();
    const Index rows = index.num_countries() * index.num_sectors();
    const Index cols = index.num_countries() * index.block_cols();
    if (t.rows() != rows || t.cols() != cols) {
        throw LayoutError("table: transition matrix shape does not match the index");
    }
}

IOTable build_transition(const Matrix& z, const Matrix& f, IOIndex index, int year) {
    index.validate();
    const Index m = index.num_countries();
    const Index n = index.num_sectors();
    const Index l = index.num_finals();
    if (z.rows() != m * n || z.cols() != m * n) {
        throw LayoutError("build_transition: intermediate-flow matrix shape mismatch");
    }
    if (f.rows() != m * n || f.cols() != m * l) {
        throw LayoutError("build_transition: final-demand matrix shape mismatch");
    }

    IOTable table;
    table.year = year;
    table.index = std::move(index);
    table.t.resize(m * n, m * (n + l));
    for (Index k = 0; k < m; ++k) {
        table.t.middleCols(k * (n + l), n) = z.middleCols(k * n, n);
        if (l > 0) {
            table.t.middleCols(k * (n + l) + n, l) = f.middleCols(k * l, l);
        }
    }
    return table;
}

Matrix extract_block(const IOTable& table, const std::string& input_country,
                     const std::string& output_country) {
    table.validate();
    const Index h = table.index.country_pos(input_country);
    const Index k = table.index.country_pos(output_country);
    const Index n = table.index.num_sectors();
    const Index width = table.index.block_cols();
    return table.t.block(h * n, k * width, n, width);
}

Matrix row_submatrix(const IOTable& table, const std::string& input_country) {
    table.validate();
    const Index h = table.index.country_pos(input_country);
    const Index m = table.index.num_countries();
    const Index n = table.index.num_sectors();
    const Index width = table.index.block_cols();
    Matrix out(n, (m - 1) * width);
    Index col = 0;
    for (Index k = 0; k < m; ++k) {
        if (k == h) {
            continue;
        }
        out.middleCols(col, width) = table.t.block(h * n, k * width, n, width);
        col += width;
    }
    return out;
}

Matrix col_submatrix(const IOTable& table, const std::string& output_country) {
    table.validate();
    const Index k = table.index.country_pos(output_country);
    const Index m = table.index.num_countries();
    const Index n = table.index.num_sectors();
    const Index width = table.index.block_cols();
    Matrix out((m - 1) * n, width);
    Index row = 0;
    for (Index h = 0; h < m; ++h) {
        if (h == k) {
            continue;
        }
        out.middleRows(row, n) = table.t.block(h * n, k * width, n, width);
        row += n;
    }
    return out;
}

Vector gross_output(const IOTable& table) {
    table.validate();
    return table.t.rowwise().sum();
}

std::pair<Matrix, SanitizeReport> sanitize(const Matrix& m) {
    Matrix out = m;
    SanitizeReport report;
    for (Index c = 0; c < out.cols(); ++c) {
        for (Index r = 0; r < out.rows(); ++r) {
            double& v = out(r, c);
            if (std::isnan(v)) {
                v = 0.0;
                ++report.missing;
            } else if (v < 0.0) {
                v = 0.0;
                ++report.negatives;
            } else if (v == 0.0) {
                v = 0.0;  // normalizes -0.0
            }
        }
    }
    return {std::move(out), report};
}

void validate_well_posed(Index rows, Index cols, std::span<const Position> unobserved) {
    if (rows <= 0 || cols <= 0) {
        throw ArgumentError("well-posedness: grid dimensions must be positive");
    }
    std::vector<Index> row_hits(static_cast<std::size_t>(rows), 0);
    std::vector<Index> col_hits(static_cast<std::size_t>(cols), 0);
    for (const Position& p : unobserved) {
        if (p.row < 0 || p.row >= rows || p.col < 0 || p.col >= cols) {
            throw ArgumentError("well-posedness: position out of range");
        }
        ++row_hits[static_cast<std::size_t>(p.row)];
        ++col_hits[static_cast<std::size_t>(p.col)];
    }
    for (Index r = 0; r < rows; ++r) {
        if (row_hits[static_cast<std::size_t>(r)] >= cols) {
            throw IllPosedLayoutError(
                "ill-posed layout: matrix row " + std::to_string(r) +
                " has no observed entry; its reconstruction would be identically zero");
        }
    }
    for (Index c = 0; c < cols; ++c) {
        if (col_hits[static_cast<std::size_t>(c)] >= rows) {
            throw IllPosedLayoutError(
                "ill-posed layout: matrix column " + std::to_string(c) +
                " has no observed entry; its reconstruction would be identically zero");
        }
    }
}

PositionList PanelLayout::block_positions(const BlockRef& ref) const {
    const auto year_it = std::find(years.begin(), years.end(), ref.year);
    if (year_it == years.end()) {
        throw LayoutError("panel: year " + std::to_string(ref.year) + " not in the grid");
    }
    const auto pair_it = std::find(pairs.begin(), pairs.end(),
                                   std::make_pair(ref.input_country, ref.output_country));
    if (pair_it == pairs.end()) {
        throw LayoutError("panel: pair " + ref.input_country + "/" + ref.output_country +
                          " not in the grid");
    }
    const Index row0 = static_cast<Index>(year_it - years.begin()) * block_rows;
    const Index col0 = static_cast<Index>(pair_it - pairs.begin()) * block_cols;
    PositionList positions;
    positions.reserve(static_cast<std::size_t>(block_rows * block_cols));
    for (Index r = 0; r < block_rows; ++r) {
        for (Index c = 0; c < block_cols; ++c) {
            positions.push_back(Position{row0 + r, col0 + c});
        }
    }
    return positions;
}

PanelAssembly assemble_panel(const std::vector<IOTable>& tables,
                             const std::vector<std::pair<std::string, std::string>>& pairs,
                             const std::vector<BlockRef>& obscured,
                             std::uint64_t mask_seed) {
    if (tables.empty()) {
        throw LayoutError("panel: at least one table required");
    }
    if (pairs.empty()) {
        throw LayoutError("panel: at least one country pair required");
    }
    for (const IOTable& table : tables) {
        table.validate();
        if (table.index != tables.front().index) {
            throw LayoutError("panel: all tables must share one index");
        }
    }

    std::vector<const IOTable*> ordered;
    ordered.reserve(tables.size());
    for (const IOTable& table : tables) {
        ordered.push_back(&table);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const IOTable* a, const IOTable* b) { return a->year < b->year; });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        if (ordered[i]->year == ordered[i - 1]->year) {
            throw LayoutError("panel: duplicate year " + std::to_string(ordered[i]->year));
        }
    }

    const IOIndex& index = tables.front().index;
    for (const auto& [input, output] : pairs) {
        index.country_pos(input);
        index.country_pos(output);
    }

    PanelLayout layout;
    layout.pairs = pairs;
    layout.obscured = obscured;
    layout.block_rows = index.num_sectors();
    layout.block_cols = index.block_cols();
    for (const IOTable* table : ordered) {
        layout.years.push_back(table->year);
    }

    Matrix panel(layout.rows(), layout.cols());
    for (std::size_t y = 0; y < ordered.size(); ++y) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const Matrix block = extract_block(*ordered[y], pairs[p].first, pairs[p].second);
            if (!block.allFinite()) {
                throw SanitizeError("panel: block " + pairs[p].first + "/" + pairs[p].second +
                                    " of year " + std::to_string(ordered[y]->year) +
                                    " contains non-finite entries; sanitize tables first");
            }
            panel.block(static_cast<Index>(y) * layout.block_rows,
                        static_cast<Index>(p) * layout.block_cols, layout.block_rows,
                        layout.block_cols) = block;
        }
    }

    PositionList hidden;
    std::set<std::pair<Index, Index>> seen;
    for (const BlockRef& ref : obscured) {
        for (const Position& pos : layout.block_positions(ref)) {
            if (!seen.insert({pos.row, pos.col}).second) {
                throw LayoutError("panel: obscured blocks overlap");
            }
            hidden.push_back(pos);
        }
    }

    validate_well_posed(layout.rows(), layout.cols(), hidden);

    PanelAssembly assembly;
    assembly.mask = mask_split(layout.rows(), layout.cols(), hidden, mask_seed);
    assembly.panel.layout = std::move(layout);
    assembly.panel.m = std::move(panel);
    return assembly;
}

} // namespace iorec
