#include "mixclust/table.hpp"

#include <algorithm>
#include <unordered_map>

namespace mixclust {

std::string to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::nominal: return "nominal";
        case ColumnKind::ordinal: return "ordinal";
        case ColumnKind::continuous: return "continuous";
    }
    return "?";
}

ColumnKind column_kind_from_string(const std::string& s) {
    if (s == "nominal") return ColumnKind::nominal;
    if (s == "ordinal") return ColumnKind::ordinal;
    if (s == "continuous") return ColumnKind::continuous;
    throw SchemaMismatch("unknown column kind '" + s + "'");
}

Partition normalize_partition(const std::vector<int>& raw_labels) {
    Partition p;
    p.labels.reserve(raw_labels.size());
    std::unordered_map<int, int> remap;
    for (int raw : raw_labels) {
        auto [it, fresh] = remap.try_emplace(raw, static_cast<int>(remap.size()) + 1);
        (void)fresh;
        p.labels.push_back(it->second);
    }
    p.k = static_cast<int>(remap.size());
    return p;
}

bool valid_partition(const Partition& p) {
    if (p.k < 1 || p.labels.empty()) return false;
    std::vector<bool> seen(static_cast<std::size_t>(p.k), false);
    for (int l : p.labels) {
        if (l < 1 || l > p.k) return false;
        seen[static_cast<std::size_t>(l) - 1] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

} // namespace mixclust
