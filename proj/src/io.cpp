#include "mixclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mixclust::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << content;
}

// --------------------------------------------------------------------------
// CSV
// --------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw InputError("unterminated quote in " + where);
    out.push_back(std::move(field));
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

bool is_missing_token(const std::string& s) { return s.empty() || s == "NA" || s == "?"; }

double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw InputError("cannot parse '" + s + "' as a number in " + where);
    return v;
}

} // namespace

RawCsv read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    RawCsv csv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            csv.header = split_csv_line(line, path.string() + ":1");
            continue;
        }
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line, path.string() + ":" + std::to_string(lineno));
        if (cells.size() != csv.header.size())
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(csv.header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        csv.rows.push_back(std::move(cells));
    }
    if (csv.header.empty()) throw InputError(path.string() + ": missing header row");
    return csv;
}

void write_csv(const std::filesystem::path& path, const RawCsv& csv) {
    std::ostringstream out;
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
        if (j) out << ',';
        out << csv_escape(csv.header[j]);
    }
    out << '\n';
    for (const auto& row : csv.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << csv_escape(row[j]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

Table load_table(const RawCsv& csv, const VariableSchema& schema, bool drop_incomplete,
                 std::size_t* dropped_rows) {
    if (schema.columns.size() != csv.header.size())
        throw SchemaMismatch("schema describes " + std::to_string(schema.columns.size()) +
                             " columns, CSV has " + std::to_string(csv.header.size()));
    for (const auto& name : csv.header)
        if (!schema.find(name))
            throw SchemaMismatch("schema has no entry for CSV column '" + name + "'");

    std::vector<std::size_t> kept;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        bool incomplete = false;
        for (const auto& cell : csv.rows[i])
            if (is_missing_token(cell)) {
                incomplete = true;
                break;
            }
        if (incomplete && drop_incomplete) {
            ++dropped;
            continue;
        }
        if (incomplete)
            throw MissingValue("missing value in CSV data row " + std::to_string(i + 1) +
                               " (use --drop-incomplete to skip such rows)");
        kept.push_back(i);
    }
    if (dropped_rows) *dropped_rows = dropped;

    Table t;
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
        const ColumnSpec& spec = *schema.find(csv.header[j]);
        Column col;
        col.name = csv.header[j];
        if (spec.kind == ColumnKind::nominal) {
            col.labels.reserve(kept.size());
            for (std::size_t i : kept) col.labels.push_back(csv.rows[i][j]);
        } else {
            col.numeric.reserve(kept.size());
            for (std::size_t i : kept)
                col.numeric.push_back(parse_double(
                    csv.rows[i][j], "column '" + col.name + "' data row " +
                                        std::to_string(i + 1)));
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

Table load_table(const std::filesystem::path& path, const VariableSchema& schema,
                 bool drop_incomplete, std::size_t* dropped_rows) {
    return load_table(read_csv(path), schema, drop_incomplete, dropped_rows);
}

// --------------------------------------------------------------------------
// Schema JSON
// --------------------------------------------------------------------------

VariableSchema load_schema(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InputError("cannot parse schema '" + path.string() + "': " + e.what());
    }
    if (!j.contains("columns") || !j["columns"].is_array())
        throw SchemaMismatch("schema '" + path.string() + "' lacks a \"columns\" array");

    VariableSchema schema;
    for (const auto& c : j["columns"]) {
        ColumnSpec spec;
        if (!c.contains("name") || !c.contains("kind"))
            throw SchemaMismatch("schema column entries need \"name\" and \"kind\"");
        spec.name = c["name"].get<std::string>();
        spec.kind = column_kind_from_string(c["kind"].get<std::string>());
        if (c.contains("levels")) spec.levels = c["levels"].get<int>();
        if (c.contains("n_categories")) spec.n_categories = c["n_categories"].get<int>();
        if (spec.kind == ColumnKind::ordinal && spec.levels < 2)
            throw SchemaMismatch("ordinal column '" + spec.name + "' needs levels >= 2");
        for (const auto& prev : schema.columns)
            if (prev.name == spec.name)
                throw SchemaMismatch("duplicate schema column '" + spec.name + "'");
        schema.columns.push_back(std::move(spec));
    }
    if (schema.columns.empty()) throw SchemaMismatch("schema has no columns");
    return schema;
}

void save_schema(const std::filesystem::path& path, const VariableSchema& schema) {
    json cols = json::array();
    for (const auto& c : schema.columns) {
        json e;
        e["name"] = c.name;
        e["kind"] = mixclust::to_string(c.kind);
        if (c.levels > 0) e["levels"] = c.levels;
        if (c.n_categories > 0) e["n_categories"] = c.n_categories;
        cols.push_back(e);
    }
    json j;
    j["columns"] = cols;
    write_text_file(path, j.dump(2) + "\n");
}

// --------------------------------------------------------------------------
// Coded matrix
// --------------------------------------------------------------------------

void write_coded_csv(const std::filesystem::path& path, const coding::CodedMatrix& coded) {
    RawCsv csv;
    csv.header = coded.column_labels;
    csv.rows.reserve(coded.values.rows());
    for (std::size_t i = 0; i < coded.values.rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(coded.values.cols());
        for (std::size_t j = 0; j < coded.values.cols(); ++j)
            row.push_back(format_double(coded.values(i, j)));
        csv.rows.push_back(std::move(row));
    }
    write_csv(path, csv);
}

void write_coding_metadata(const std::filesystem::path& path,
                           const coding::CodedMatrix& coded, std::size_t n_rows) {
    json vars = json::array();
    for (const auto& c : coded.codings) {
        json e;
        e["name"] = c.name;
        e["kind"] = mixclust::to_string(c.kind);
        e["method"] = coding::to_string(c.method);
        e["width"] = c.tuple_width;
        if (c.kind == ColumnKind::continuous &&
            c.method == coding::CodingMethod::barycentric) {
            e["mu"] = c.scale.mu;
            e["max"] = c.scale.max_value;
            e["d0"] = c.scale.d0;
            e["m"] = c.scale.points;
        }
        if (c.scale_points > 0) e["scale_points"] = c.scale_points;
        if (!c.categories.empty()) e["categories"] = c.categories;
        if (c.method == coding::CodingMethod::triangular &&
            c.kind == ColumnKind::continuous)
            e["hinges"] = {c.hinges[0], c.hinges[1], c.hinges[2]};
        if (c.method == coding::CodingMethod::escofier &&
            c.kind == ColumnKind::continuous) {
            e["mean"] = c.mean;
            e["sd"] = c.sd;
        }
        vars.push_back(e);
    }
    json j;
    j["rows"] = n_rows;
    j["variables"] = vars;
    j["has_negative_entries"] = coded.has_negative_entries;
    write_text_file(path, j.dump(2) + "\n");
}

// --------------------------------------------------------------------------
// Partitions
// --------------------------------------------------------------------------

void write_partition_csv(const std::filesystem::path& path, const Partition& p) {
    std::ostringstream out;
    out << "row_id,cluster\n";
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        out << i << ',' << p.labels[i] << '\n';
    write_text_file(path, out.str());
}

Partition read_partition_csv(const std::filesystem::path& path) {
    const RawCsv csv = read_csv(path);
    if (csv.header.size() != 2 || csv.header[0] != "row_id" || csv.header[1] != "cluster")
        throw InputError("partition file '" + path.string() +
                         "' must have header row_id,cluster");
    std::vector<std::pair<long, int>> entries;
    entries.reserve(csv.rows.size());
    for (const auto& row : csv.rows)
        entries.emplace_back(std::lround(parse_double(row[0], "row_id")),
                             static_cast<int>(std::lround(parse_double(row[1], "cluster"))));
    std::sort(entries.begin(), entries.end());
    std::vector<int> labels;
    labels.reserve(entries.size());
    for (const auto& [id, label] : entries) labels.push_back(label);
    return normalize_partition(labels);
}

// --------------------------------------------------------------------------
// Dendrograms
// --------------------------------------------------------------------------

void write_dendrogram_json(const std::filesystem::path& path, const ward::Dendrogram& d) {
    json merges = json::array();
    for (const auto& m : d.merges) {
        json e;
        e["left"] = m.left;
        e["right"] = m.right;
        e["height"] = m.cost;
        e["id"] = m.id;
        e["mass"] = m.mass;
        e["size"] = m.size;
        merges.push_back(e);
    }
    json j;
    j["leaf_count"] = d.leaf_count;
    j["merges"] = merges;
    write_text_file(path, j.dump(2) + "\n");
}

ward::Dendrogram read_dendrogram_json(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InputError("cannot parse dendrogram '" + path.string() + "': " + e.what());
    }
    ward::Dendrogram d;
    try {
        d.leaf_count = j.at("leaf_count").get<std::size_t>();
        for (const auto& e : j.at("merges")) {
            ward::Dendrogram::Merge m;
            m.left = e.at("left").get<std::size_t>();
            m.right = e.at("right").get<std::size_t>();
            m.cost = e.at("height").get<double>();
            m.id = e.at("id").get<std::size_t>();
            m.mass = e.value("mass", 0.0);
            m.size = e.value("size", std::size_t{0});
            d.merges.push_back(m);
        }
    } catch (const json::exception& e) {
        throw InputError("malformed dendrogram '" + path.string() + "': " + e.what());
    }
    if (d.merges.size() + 1 != d.leaf_count)
        throw InputError("dendrogram '" + path.string() + "' has " +
                         std::to_string(d.merges.size()) + " merges for " +
                         std::to_string(d.leaf_count) + " leaves");
    return d;
}

std::string dendrogram_newick(const ward::Dendrogram& d) {
    const std::size_t I = d.leaf_count;
    std::vector<double> height(I + d.merges.size(), 0.0);
    for (const auto& m : d.merges) height[m.id] = m.cost;

    // Recursive expansion without recursion: memoized strings per node.
    std::vector<std::string> repr(I + d.merges.size());
    for (std::size_t i = 0; i < I; ++i) repr[i] = std::to_string(i);
    for (const auto& m : d.merges) {
        const double hl = height[m.id] - height[m.left];
        const double hr = height[m.id] - height[m.right];
        repr[m.id] = "(" + repr[m.left] + ":" + format_double(hl) + "," + repr[m.right] +
                     ":" + format_double(hr) + ")";
    }
    return repr[I + d.merges.size() - 1] + ";";
}

void write_dendrogram_newick(const std::filesystem::path& path, const ward::Dendrogram& d) {
    write_text_file(path, dendrogram_newick(d) + "\n");
}

} // namespace mixclust::io
