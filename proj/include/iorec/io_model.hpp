#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iorec/completion.hpp"
#include "iorec/types.hpp"

namespace iorec {

/// Ordered label sets defining the geometry of a multi-country table:
/// m countries, n intermediate sectors, l final-output categories.
struct IOIndex {
    std::vector<std::string> countries;
    std::vector<std::string> sectors;
    std::vector<std::string> finals;

    Index num_countries() const { return static_cast<Index>(countries.size()); }
    Index num_sectors() const { return static_cast<Index>(sectors.size()); }
    Index num_finals() const { return static_cast<Index>(finals.size()); }

    /// Columns per country: sectors first, then finals.
    Index block_cols() const { return num_sectors() + num_finals(); }

    Index country_pos(const std::string& code) const;

    void validate() const;

    friend bool operator==(const IOIndex&, const IOIndex&) = default;
};

/// One year's full table: the transition matrix holding intermediate flows
/// side by side with final-demand flows, (m n) x (m (n+l)).
struct IOTable {
    int year = 0;
    IOIndex index;
    Matrix t;

    void validate() const;
};

/// One cross-country block of a given year: rows from the input country's
/// sectors, columns from the output country's sectors and finals.
struct BlockRef {
    std::string input_country;
    std::string output_country;
    int year = 0;

    friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

/// Horizontal concatenation [z | f] laid out by country, with each
/// country's sector columns followed by its final-output columns.
IOTable build_transition(const Matrix& z, const Matrix& f, IOIndex index, int year);

/// The n x (n+l) block for (input_country, output_country).
Matrix extract_block(const IOTable& table, const std::string& input_country,
                     const std::string& output_country);

/// All blocks with the given country in input, concatenated horizontally in
/// index order; the domestic block is excluded. n x (m-1)(n+l).
Matrix row_submatrix(const IOTable& table, const std::string& input_country);

/// All blocks with the given country in output, stacked vertically in index
/// order; the domestic block is excluded. (m-1)n x (n+l).
Matrix col_submatrix(const IOTable& table, const std::string& output_country);

/// Derived accounting check x = Z 1 + F 1 (gross output per country-sector
/// row); never stored on the table.
Vector gross_output(const IOTable& table);

struct SanitizeReport {
    std::int64_t negatives = 0;
    std::int64_t missing = 0;
};

/// NaN and negative entries replaced by zero; counts each replacement kind.
std::pair<Matrix, SanitizeReport> sanitize(const Matrix& m);

/// Rejects grids in which some matrix row or column would keep no observed
/// entry: completion then degenerates to an all-zero reconstruction of that
/// row or column, so assembly refuses eagerly.
void validate_well_posed(Index rows, Index cols, std::span<const Position> unobserved);

/// Grid of cross-country blocks: one block row per year (ascending), one
/// block column per ordered country pair (fixed order across years).
struct PanelLayout {
    std::vector<int> years;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<BlockRef> obscured;
    Index block_rows = 0;  // n
    Index block_cols = 0;  // n + l

    Index rows() const { return static_cast<Index>(years.size()) * block_rows; }
    Index cols() const { return static_cast<Index>(pairs.size()) * block_cols; }

    /// Positions covered by one block of the grid.
    PositionList block_positions(const BlockRef& ref) const;
};

struct PanelMatrix {
    PanelLayout layout;
    Matrix m;
};

struct PanelAssembly {
    PanelMatrix panel;
    ObservationMask mask;
};

/// Builds the panel from the given tables (one per year), obscures the
/// listed blocks, and splits their positions into validation and test sets.
/// Tables must share a single index; the layout must be well-posed.
PanelAssembly assemble_panel(const std::vector<IOTable>& tables,
                             const std::vector<std::pair<std::string, std::string>>& pairs,
                             const std::vector<BlockRef>& obscured,
                             std::uint64_t mask_seed);

} // namespace iorec
