#include "iorec/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "iorec/errors.hpp"
#include "iorec/linalg.hpp"

namespace iorec {

namespace {

std::string format_double(double v) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, end);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    for (const char ch : line) {
        if (ch == delimiter) {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    fields.push_back(field);
    return fields;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
    throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

double parse_value(std::string field, char decimal, const std::string& name, std::size_t line) {
    if (field.empty() || field == "NA" || field == "NaN" || field == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (decimal != '.') {
        std::replace(field.begin(), field.end(), decimal, '.');
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) {
            fail(name, line, "malformed numeric value '" + field + "'");
        }
        return v;
    } catch (const std::exception&) {
        fail(name, line, "malformed numeric value '" + field + "'");
    }
}

bool contains(const std::vector<std::string>& list, const std::string& value) {
    return std::find(list.begin(), list.end(), value) != list.end();
}

void push_unique(std::vector<std::string>& list, const std::string& value) {
    if (!contains(list, value)) {
        list.push_back(value);
    }
}

struct LongRecord {
    std::size_t line = 0;
    int year = 0;
    std::string input_country;
    std::string input_sector;
    std::string output_country;
    std::string output_item;
    double value = 0.0;
};

IOTable parse_long(std::istream& in, const SchemaOptions& options, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(name + ": empty file");
    }
    ++line_no;
    const auto header = split_line(line, options.delimiter);
    if (header.size() != 6 || header[0] != "year") {
        fail(name, line_no,
             "expected header 'year,input_country,input_sector,output_country,output_item,value'");
    }

    std::vector<LongRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_line(line, options.delimiter);
        if (fields.size() != 6) {
            fail(name, line_no, "expected 6 fields, found " + std::to_string(fields.size()));
        }
        LongRecord record;
        record.line = line_no;
        try {
            record.year = std::stoi(fields[0]);
        } catch (const std::exception&) {
            fail(name, line_no, "malformed year '" + fields[0] + "'");
        }
        record.input_country = fields[1];
        record.input_sector = fields[2];
        record.output_country = fields[3];
        record.output_item = fields[4];
        if (record.input_country.empty() || record.input_sector.empty() ||
            record.output_country.empty() || record.output_item.empty()) {
            fail(name, line_no, "empty label");
        }
        record.value = parse_value(fields[5], options.decimal, name, line_no);
        if (contains(options.drop_countries, record.input_country) ||
            contains(options.drop_countries, record.output_country) ||
            contains(options.drop_labels, record.input_sector)) {
            continue;
        }
        records.push_back(std::move(record));
    }
    if (records.empty()) {
        throw ParseError(name + ": no usable records");
    }

    const int year = options.year.value_or(records.front().year);
    IOIndex index;
    std::vector<std::string> output_items;
    for (const LongRecord& record : records) {
        if (record.year != year) {
            fail(name, record.line, "year mismatch: expected " + std::to_string(year));
        }
        push_unique(index.countries, record.input_country);
        push_unique(index.countries, record.output_country);
        push_unique(index.sectors, record.input_sector);
        push_unique(output_items, record.output_item);
    }
    for (const std::string& item : output_items) {
        const bool is_final = options.final_labels.empty()
                                  ? !contains(index.sectors, item)
                                  : contains(options.final_labels, item);
        if (is_final) {
            index.finals.push_back(item);
        } else if (!contains(index.sectors, item)) {
            throw ParseError(name + ": output item '" + item +
                             "' is neither a sector nor a listed final label");
        }
    }
    index.validate();

    const Index n = index.num_sectors();
    const Index width = index.block_cols();
    IOTable table;
    table.year = year;
    table.index = index;
    table.t = Matrix::Constant(index.num_countries() * n, index.num_countries() * width,
                               std::numeric_limits<double>::quiet_NaN());

    std::vector<std::uint8_t> filled(static_cast<std::size_t>(table.t.size()), 0);
    for (const LongRecord& record : records) {
        const Index h = index.country_pos(record.input_country);
        const Index k = index.country_pos(record.output_country);
        const auto sector_it =
            std::find(index.sectors.begin(), index.sectors.end(), record.input_sector);
        const Index si = static_cast<Index>(sector_it - index.sectors.begin());
        Index ti = 0;
        const auto out_sector =
            std::find(index.sectors.begin(), index.sectors.end(), record.output_item);
        if (out_sector != index.sectors.end() &&
            !(contains(options.final_labels, record.output_item))) {
            ti = static_cast<Index>(out_sector - index.sectors.begin());
        } else {
            const auto final_it =
                std::find(index.finals.begin(), index.finals.end(), record.output_item);
            ti = n + static_cast<Index>(final_it - index.finals.begin());
        }
        const Index row = h * n + si;
        const Index col = k * width + ti;
        auto& cell = filled[static_cast<std::size_t>(row * table.t.cols() + col)];
        if (cell != 0) {
            fail(name, record.line,
                 "duplicate cell " + record.input_country + "." + record.input_sector + " -> " +
                     record.output_country + "." + record.output_item);
        }
        cell = 1;
        table.t(row, col) = record.value;
    }
    return table;
}

struct AxisLabel {
    std::string country;
    std::string item;
};

// Returns nullopt for labels configured to be dropped.
std::optional<AxisLabel> parse_axis_label(const std::string& label, const SchemaOptions& options,
                                          const std::string& name, std::size_t line) {
    const auto sep = label.find('_');
    if (sep == std::string::npos) {
        if (contains(options.drop_labels, label)) {
            return std::nullopt;
        }
        fail(name, line, "label '" + label + "' has no country_item separator");
    }
    AxisLabel parsed{label.substr(0, sep), label.substr(sep + 1)};
    if (parsed.country.empty() || parsed.item.empty()) {
        fail(name, line, "malformed label '" + label + "'");
    }
    if (contains(options.drop_countries, parsed.country) ||
        contains(options.drop_labels, parsed.item) || contains(options.drop_labels, label)) {
        return std::nullopt;
    }
    return parsed;
}

IOTable parse_wide(std::istream& in, const SchemaOptions& options, const std::string& name) {
    if (!options.year.has_value()) {
        throw ParseError(name + ": wide format requires the year option");
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(name + ": empty file");
    }
    ++line_no;
    const auto header = split_line(line, options.delimiter);
    if (header.size() < 2) {
        fail(name, line_no, "header must carry at least one column label");
    }

    struct Column {
        AxisLabel label;
        std::size_t field = 0;
    };
    std::vector<Column> columns;
    for (std::size_t f = 1; f < header.size(); ++f) {
        if (header[f].empty()) {
            continue;  // trailing delimiter
        }
        if (auto parsed = parse_axis_label(header[f], options, name, line_no)) {
            columns.push_back(Column{std::move(*parsed), f});
        }
    }
    if (columns.empty()) {
        fail(name, line_no, "no usable columns after filtering");
    }

    struct Row {
        AxisLabel label;
        std::vector<double> values;
        std::size_t line = 0;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_line(line, options.delimiter);
        if (fields.size() != header.size()) {
            fail(name, line_no,
                 "expected " + std::to_string(header.size()) + " fields, found " +
                     std::to_string(fields.size()));
        }
        auto parsed = parse_axis_label(fields[0], options, name, line_no);
        if (!parsed) {
            continue;
        }
        Row row;
        row.label = std::move(*parsed);
        row.line = line_no;
        row.values.reserve(columns.size());
        for (const Column& column : columns) {
            row.values.push_back(parse_value(fields[column.field], options.decimal, name, line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError(name + ": no usable rows after filtering");
    }

    IOIndex index;
    for (const Row& row : rows) {
        push_unique(index.countries, row.label.country);
        push_unique(index.sectors, row.label.item);
    }
    std::vector<std::string> column_countries;
    for (const Column& column : columns) {
        push_unique(column_countries, column.label.country);
        const bool is_final = options.final_labels.empty()
                                  ? !contains(index.sectors, column.label.item)
                                  : contains(options.final_labels, column.label.item);
        if (is_final) {
            push_unique(index.finals, column.label.item);
        }
    }
    for (const std::string& country : column_countries) {
        if (!contains(index.countries, country)) {
            throw ParseError(name + ": country " + country + " appears only in columns");
        }
    }
    for (const std::string& country : index.countries) {
        if (!contains(column_countries, country)) {
            throw ParseError(name + ": country " + country + " appears only in rows");
        }
    }
    index.validate();

    const Index n = index.num_sectors();
    const Index width = index.block_cols();
    IOTable table;
    table.year = *options.year;
    table.index = index;
    table.t = Matrix::Constant(index.num_countries() * n, index.num_countries() * width,
                               std::numeric_limits<double>::quiet_NaN());

    // Map source columns onto the canonical country-major order.
    std::map<std::pair<std::string, std::string>, Index> column_of;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto key = std::make_pair(columns[c].label.country, columns[c].label.item);
        if (column_of.count(key) != 0) {
            throw ParseError(name + ": duplicate column " + columns[c].label.country + "_" +
                             columns[c].label.item);
        }
        column_of[key] = static_cast<Index>(c);
    }
    for (Index k = 0; k < index.num_countries(); ++k) {
        for (Index t = 0; t < width; ++t) {
            const std::string& item = t < n ? index.sectors[static_cast<std::size_t>(t)]
                                            : index.finals[static_cast<std::size_t>(t - n)];
            if (column_of.count({index.countries[static_cast<std::size_t>(k)], item}) == 0) {
                throw ParseError(name + ": missing column " +
                                 index.countries[static_cast<std::size_t>(k)] + "_" + item);
            }
        }
    }

    std::vector<std::uint8_t> row_seen(
        static_cast<std::size_t>(index.num_countries() * n), 0);
    for (const Row& row : rows) {
        const Index h = index.country_pos(row.label.country);
        const auto sector_it =
            std::find(index.sectors.begin(), index.sectors.end(), row.label.item);
        const Index si = static_cast<Index>(sector_it - index.sectors.begin());
        const Index target_row = h * n + si;
        auto& seen = row_seen[static_cast<std::size_t>(target_row)];
        if (seen != 0) {
            fail(name, row.line,
                 "duplicate row " + row.label.country + "_" + row.label.item);
        }
        seen = 1;
        for (Index k = 0; k < index.num_countries(); ++k) {
            for (Index t = 0; t < width; ++t) {
                const std::string& item = t < n ? index.sectors[static_cast<std::size_t>(t)]
                                                : index.finals[static_cast<std::size_t>(t - n)];
                const Index source =
                    column_of.at({index.countries[static_cast<std::size_t>(k)], item});
                table.t(target_row, k * width + t) =
                    row.values[static_cast<std::size_t>(source)];
            }
        }
    }
    for (std::size_t r = 0; r < row_seen.size(); ++r) {
        if (row_seen[r] == 0) {
            const Index h = static_cast<Index>(r) / n;
            const Index si = static_cast<Index>(r) % n;
            throw ParseError(name + ": missing row " +
                             index.countries[static_cast<std::size_t>(h)] + "_" +
                             index.sectors[static_cast<std::size_t>(si)]);
        }
    }
    return table;
}

} // namespace

IOTable parse_table(std::istream& in, const SchemaOptions& options, const std::string& name) {
    return options.format == CsvFormat::long_form ? parse_long(in, options, name)
                                                  : parse_wide(in, options, name);
}

IOTable parse_table(const std::string& path, const SchemaOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return parse_table(in, options, path);
}

double sparsity_stats(const IOTable& table) {
    table.validate();
    std::int64_t zeros = 0;
    for (Index c = 0; c < table.t.cols(); ++c) {
        for (Index r = 0; r < table.t.rows(); ++r) {
            if (table.t(r, c) == 0.0) {
                ++zeros;
            }
        }
    }
    return 100.0 * static_cast<double>(zeros) / static_cast<double>(table.t.size());
}

void write_long_csv(const IOTable& table, std::ostream& out) {
    table.validate();
    const Index n = table.index.num_sectors();
    const Index width = table.index.block_cols();
    out << "year,input_country,input_sector,output_country,output_item,value\n";
    for (Index h = 0; h < table.index.num_countries(); ++h) {
        for (Index si = 0; si < n; ++si) {
            for (Index k = 0; k < table.index.num_countries(); ++k) {
                for (Index t = 0; t < width; ++t) {
                    const std::string& item =
                        t < n ? table.index.sectors[static_cast<std::size_t>(t)]
                              : table.index.finals[static_cast<std::size_t>(t - n)];
                    const double v = table.t(h * n + si, k * width + t);
                    out << table.year << ','
                        << table.index.countries[static_cast<std::size_t>(h)] << ','
                        << table.index.sectors[static_cast<std::size_t>(si)] << ','
                        << table.index.countries[static_cast<std::size_t>(k)] << ',' << item
                        << ',' << (std::isnan(v) ? std::string() : format_double(v)) << '\n';
                }
            }
        }
    }
}

void write_long_csv(const IOTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    write_long_csv(table, out);
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

void export_heatmap(const Matrix& m, const std::string& path) {
    if (!m.allFinite()) {
        throw ArgumentError("heatmap: matrix must be finite");
    }
    double min_log = std::numeric_limits<double>::infinity();
    double max_log = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) > 0.0) {
                const double v = std::log2(m(r, c));
                min_log = std::min(min_log, v);
                max_log = std::max(max_log, v);
            }
        }
    }
    const bool any_positive = std::isfinite(min_log);
    const double floor = any_positive ? min_log - 1.0 : 0.0;

    Matrix mapped(m.rows(), m.cols());
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            mapped(r, c) = m(r, c) > 0.0 ? std::log2(m(r, c)) : floor;
        }
    }
    const double lo = any_positive ? floor : 0.0;
    const double hi = any_positive ? max_log : 0.0;
    const double range = hi - lo;

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << "P6\n" << m.cols() << ' ' << m.rows() << "\n255\n";
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            const double scaled =
                range > 0.0 ? (mapped(r, c) - lo) / range : (any_positive ? 1.0 : 0.0);
            const auto gray = static_cast<unsigned char>(
                std::lround(255.0 * std::clamp(scaled, 0.0, 1.0)));
            const char pixel[3] = {static_cast<char>(gray), static_cast<char>(gray),
                                   static_cast<char>(gray)};
            out.write(pixel, 3);
        }
    }
    if (!out) {
        throw IoError("failed writing " + path);
    }

    std::ofstream csv(path + ".csv");
    if (!csv) {
        throw IoError("cannot open " + path + ".csv for writing");
    }
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            csv << (c > 0 ? "," : "") << format_double(mapped(r, c));
        }
        csv << '\n';
    }
    if (!csv) {
        throw IoError("failed writing " + path + ".csv");
    }
}

void export_spectrum(const Matrix& original, const Matrix& completed, const std::string& path) {
    if (original.rows() != completed.rows() || original.cols() != completed.cols()) {
        throw ArgumentError("spectrum: matrices must have identical shape");
    }
    const Vector sigma_original = svd(original).singular_values;
    const Vector sigma_completed = svd(completed).singular_values;
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << "index,sigma_original,sigma_completed\n";
    for (Index i = 0; i < sigma_original.size(); ++i) {
        out << i + 1 << ',' << format_double(sigma_original(i)) << ','
            << format_double(sigma_completed(i)) << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

} // namespace iorec
