#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mixclust/coding.hpp"
#include "mixclust/errors.hpp"
#include "mixclust/table.hpp"
#include "mixclust/ward.hpp"

namespace mixclust::io {

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// UTF-8, comma-delimited, header row required, double quotes honored.
RawCsv read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const RawCsv& csv);

// Types the raw cells against the schema. Empty cells, "NA" and "?" count
// as missing: a hard error unless drop_incomplete removes those rows.
Table load_table(const RawCsv& csv, const VariableSchema& schema, bool drop_incomplete,
                 std::size_t* dropped_rows = nullptr);
Table load_table(const std::filesystem::path& path, const VariableSchema& schema,
                 bool drop_incomplete, std::size_t* dropped_rows = nullptr);

// Schema file: {"columns":[{"name":..,"kind":"continuous|ordinal|nominal",
// "levels":m?,"n_categories":n?}]}
VariableSchema load_schema(const std::filesystem::path& path);
void save_schema(const std::filesystem::path& path, const VariableSchema& schema);

void write_coded_csv(const std::filesystem::path& path, const coding::CodedMatrix& coded);
void write_coding_metadata(const std::filesystem::path& path,
                           const coding::CodedMatrix& coded, std::size_t n_rows);

void write_partition_csv(const std::filesystem::path& path, const Partition& p);
Partition read_partition_csv(const std::filesystem::path& path);

void write_dendrogram_json(const std::filesystem::path& path, const ward::Dendrogram& d);
ward::Dendrogram read_dendrogram_json(const std::filesystem::path& path);

// Newick with merge costs as node heights: each branch carries the height
// difference between parent and child, leaves sit at height zero.
std::string dendrogram_newick(const ward::Dendrogram& d);
void write_dendrogram_newick(const std::filesystem::path& path, const ward::Dendrogram& d);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace mixclust::io
