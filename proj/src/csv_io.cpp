#include "mitensor/csv_io.hpp"

#include "mitensor/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace mitensor {

namespace csvio {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& token) {
    if (token.empty()) throw Error("empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw Error("malformed numeric field: " + token);
    return v;
}

std::string escape_field(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> parse_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace csvio

namespace {

void append_optional(std::string& line, const std::optional<double>& v) {
    line += ',';
    if (v) line += csvio::format_double(*v);
}

} // namespace

void write_features_csv(std::ostream& out, std::span<const FeatureRow> rows) {
    out << kFeatureCsvHeader << '\n';
    for (const auto& row : rows) {
        std::string line = csvio::escape_field(row.path);
        line += ',';
        if (row.label) line += to_string(*row.label);
        append_optional(line, row.lambda1);
        append_optional(line, row.lambda2);
        append_optional(line, row.delta);
        append_optional(line, row.mass);
        append_optional(line, row.i00);
        append_optional(line, row.i01);
        append_optional(line, row.i11);
        out << line << '\n';
    }
}

void write_features_csv(const std::filesystem::path& path, std::span<const FeatureRow> rows) {
    std::ofstream out(path, std::ios::binary); // binary: no platform newline surprises
    if (!out) throw FileNotReadable("cannot open for writing: " + path.string());
    write_features_csv(out, rows);
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotReadable("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) return {};
    const auto header = csvio::parse_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    if (!col.contains("path")) throw Error("feature CSV lacks a path column: " + path.string());

    auto get = [&](const std::vector<std::string>& fields,
                   const char* name) -> std::optional<double> {
        const auto it = col.find(name);
        if (it == col.end() || it->second >= fields.size()) return std::nullopt;
        const std::string& token = fields[it->second];
        if (token.empty()) return std::nullopt;
        return csvio::parse_double(token);
    };

    std::vector<FeatureRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = csvio::parse_line(line);
        FeatureRow row;
        row.path = fields[col.at("path")];
        if (const auto it = col.find("label"); it != col.end() && it->second < fields.size()) {
            const std::string& token = fields[it->second];
            if (!token.empty()) {
                const auto label = label_from_string(token);
                if (!label) throw Error("unknown class label in CSV: " + token);
                row.label = *label;
            }
        }
        row.lambda1 = get(fields, "lambda1");
        row.lambda2 = get(fields, "lambda2");
        row.delta = get(fields, "delta");
        row.mass = get(fields, "mass");
        row.i00 = get(fields, "i00");
        row.i01 = get(fields, "i01");
        row.i11 = get(fields, "i11");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FeatureVector> rows_to_vectors(std::span<const FeatureRow> rows,
                                           const FeatureSelection& needed, bool require_label) {
    auto column = [](const FeatureRow& row, Feature f) -> const std::optional<double>& {
        switch (f) {
            case Feature::Lambda1: return row.lambda1;
            case Feature::Lambda2: return row.lambda2;
            case Feature::Delta: return row.delta;
            case Feature::Mass: return row.mass;
        }
        return row.lambda1; // unreachable
    };

    std::vector<FeatureVector> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        for (Feature f : needed) {
            if (!column(row, f))
                throw FeatureSelectionMismatch(std::string("feature CSV lacks column '") +
                                               to_string(f) + "' required by the model (row " +
                                               row.path + ")");
        }
        if (require_label && !row.label)
            throw Error("feature CSV row has no label: " + row.path);
        FeatureVector fv;
        fv.lambda1 = row.lambda1.value_or(0.0);
        fv.lambda2 = row.lambda2.value_or(0.0);
        fv.mass = row.mass.value_or(0.0);
        if (row.delta) {
            fv.delta = *row.delta;
        } else if (row.lambda1 && row.lambda2) {
            fv.delta = fv.lambda1 - fv.lambda2;
        }
        if (row.lambda1 && row.lambda2 && row.delta) {
            const double scale = std::abs(fv.lambda1) + std::abs(fv.lambda2) + 1.0;
            if (std::abs(fv.delta - (fv.lambda1 - fv.lambda2)) > 1e-9 * scale)
                throw Error("feature row violates delta = lambda1 - lambda2: " + row.path);
        }
        fv.label = row.label;
        out.push_back(fv);
    }
    return out;
}

} // namespace mitensor
