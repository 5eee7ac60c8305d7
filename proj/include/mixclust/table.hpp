#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mixclust/errors.hpp"

namespace mixclust {

enum class ColumnKind { nominal, ordinal, continuous };

std::string to_string(ColumnKind kind);
ColumnKind column_kind_from_string(const std::string& s);

// Per-column coding parameters. `levels` is the m of an ordinal rating
// scale (required for ordinal columns); `n_categories` is the fuzzy tuple
// width for ordinal/continuous columns (0 = use the pipeline default).
struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    int levels = 0;
    int n_categories = 0;
};

struct VariableSchema {
    std::vector<ColumnSpec> columns;

    const ColumnSpec* find(const std::string& name) const {
        for (const auto& c : columns)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// One data column: numeric storage for continuous/ordinal values, text
// storage for nominal categories. Exactly one of the two is populated.
struct Column {
    std::string name;
    std::vector<double> numeric;
    std::vector<std::string> labels;

    bool is_text() const { return !labels.empty() || numeric.empty(); }
    std::size_t size() const { return is_text() ? labels.size() : numeric.size(); }
};

struct Table {
    std::vector<Column> columns;

    std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t n_cols() const { return columns.size(); }

    const Column& column(const std::string& name) const {
        for (const auto& c : columns)
            if (c.name == name) return c;
        throw SchemaMismatch("no column named '" + name + "' in table");
    }
};

// Flat cluster assignment; ids are 1..k and every id occurs at least once
// in a valid partition.
struct Partition {
    std::vector<int> labels;
    int k = 0;

    std::size_t size() const { return labels.size(); }
};

// Remaps arbitrary labels to 1..k in order of first appearance.
Partition normalize_partition(const std::vector<int>& raw_labels);

bool valid_partition(const Partition& p);

} // namespace mixclust
