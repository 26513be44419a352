#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iorec/io_model.hpp"
#include "iorec/types.hpp"

namespace iorec {

enum class CsvFormat { long_form, wide_form };

/// Input-file conventions. The long form carries one flow per line
/// (year,input_country,input_sector,output_country,output_item,value);
/// the wide form is a value grid with "CCC_item" labels on both axes,
/// country code and item separated by the first underscore.
struct SchemaOptions {
    CsvFormat format = CsvFormat::long_form;
    char delimiter = ',';
    char decimal = '.';

    /// Output items to treat as final-demand categories. When empty, items
    /// that never appear as an input sector are taken as finals.
    std::vector<std::string> final_labels;

    /// Country codes stripped from both axes (e.g. a rest-of-world
    /// aggregate).
    std::vector<std::string> drop_countries;

    /// Labels stripped wherever they appear, matched against the item part
    /// or the whole label (e.g. taxes / value-added rows, total columns).
    std::vector<std::string> drop_labels;

    /// Table year; required for the wide form, cross-checked for the long
    /// form when present.
    std::optional<int> year;
};

IOTable parse_table(const std::string& path, const SchemaOptions& options);
IOTable parse_table(std::istream& in, const SchemaOptions& options,
                    const std::string& name = "<stream>");

/// Percentage of exactly-zero entries, computed on the raw parsed table.
double sparsity_stats(const IOTable& table);

/// Long-form serialization; missing entries become empty value fields.
void write_long_csv(const IOTable& table, const std::string& path);
void write_long_csv(const IOTable& table, std::ostream& out);

/// Binary PPM image of the matrix on a log2 gray scale: positive entries
/// span the ramp, zeros and negatives sit one log unit below the smallest
/// positive value. A sibling "<path>.csv" holds the mapped log values.
void export_heatmap(const Matrix& m, const std::string& path);

/// CSV with columns index,sigma_original,sigma_completed.
void export_spectrum(const Matrix& original, const Matrix& completed,
                     const std::string& path);

} // namespace iorec
