#include "mixclust/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mixclust/baselines.hpp"
#include "mixclust/correspondence.hpp"
#include "mixclust/eval.hpp"
#include "mixclust/io.hpp"
#include "mixclust/svg.hpp"
#include "mixclust/ward.hpp"

namespace mixclust::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["input"] = c.input;
    if (!c.input_b.empty()) j["input_b"] = c.input_b;
    j["schema"] = c.schema;
    j["coding"] = c.coding;
    j["n_categories"] = c.n_categories;
    j["k"] = c.k;
    j["k_min"] = c.k_min;
    j["k_max"] = c.k_max;
    j["seed"] = c.seed;
    j["out"] = c.out;
    j["drop_incomplete"] = c.drop_incomplete;
    j["prune_empty_columns"] = c.prune_empty_columns;
    j["sim_k"] = c.sim_k;
    j["sim_n"] = c.sim_n;
    j["densities"] = c.densities;
    j["omegas"] = c.omegas;
    j["cat_fractions"] = c.cat_fractions;
    j["dims"] = c.dims;
    j["cat_levels"] = c.cat_levels;
    j["discretized_as_ordinal"] = c.discretized_as_ordinal;
    j["replicates"] = c.replicates;
    j["methods"] = c.methods;
    return j;
}

void write_manifest(const RunConfig& c) {
    json j;
    j["tool"] = "mixclust";
    j["version"] = kVersion;
    j["config"] = config_json(c);
    io::write_text_file(fs::path(c.out) / "manifest.json", j.dump(2) + "\n");
}

fs::path make_out_dir(const RunConfig& c) {
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

Table load_input_table(const RunConfig& c, const VariableSchema& schema,
                       std::size_t* dropped = nullptr) {
    if (c.input.empty()) throw InputError(c.command + ": --input is required");
    if (c.schema.empty()) throw InputError(c.command + ": --schema is required");
    return io::load_table(fs::path(c.input), schema, c.drop_incomplete, dropped);
}

coding::CodedMatrix code_table(const RunConfig& c, const Table& table,
                               const VariableSchema& schema) {
    const auto method = coding::coding_method_from_string(c.coding);
    auto coded = coding::build_coded_matrix(table, schema, method, c.n_categories);
    if (c.prune_empty_columns) correspondence::prune_empty_columns(coded);
    return coded;
}

std::pair<std::size_t, std::size_t> selectk_range(const RunConfig& c, std::size_t leaves) {
    const std::size_t k_min = static_cast<std::size_t>(std::max(c.k_min, 2));
    std::size_t k_max = c.k_max > 0 ? static_cast<std::size_t>(c.k_max)
                                    : std::min<std::size_t>(10, leaves - 1);
    k_max = std::min(k_max, leaves - 1);
    return {k_min, k_max};
}

void write_selectk_json(const fs::path& path, const ward::KSelection& sel) {
    json ratios = json::array();
    for (const auto& r : sel.ratios) {
        json e;
        e["k"] = r.k;
        e["delta_k"] = r.delta_k;
        e["delta_k_next"] = r.delta_k_next;
        e["ratio"] = r.ratio;
        ratios.push_back(e);
    }
    json j;
    j["selected_k"] = sel.k;
    j["degenerate"] = sel.degenerate;
    j["ratios"] = ratios;
    io::write_text_file(path, j.dump(2) + "\n");
}

} // namespace

void validate(const RunConfig& c) {
    const auto method = coding::coding_method_from_string(c.coding);
    const bool clusters = c.command == "cluster" || c.command == "bench";
    if (method == coding::CodingMethod::escofier && clusters)
        throw InputError(
            "escofier coding emits negative entries and cannot feed the chi-square "
            "clustering path; use it with `code` only");
    if (c.n_categories < 2) throw InputError("--n-categories must be >= 2");
    if (c.k < 0) throw InputError("--k must be positive");
    if (c.k_min < 2) throw InputError("--k-min must be >= 2");
    if (c.k_max != 0 && c.k_max < c.k_min)
        throw InputError("--k-max must be >= --k-min");
    if (c.replicates < 1) throw InputError("--replicates must be >= 1");
    for (const auto& m : c.methods) simgen::method_from_string(m);
    for (const auto& d : c.densities) simgen::density_from_string(d);
    for (double w : c.omegas)
        if (!(w > 0.0 && w < 1.0)) throw InputError("--omega values must lie in (0, 1)");
    for (double f : c.cat_fractions)
        if (f < 0.0 || f > 1.0) throw InputError("--cat-fraction values must lie in [0, 1]");
}

int cmd_code(const RunConfig& c) {
    validate(c);
    const auto schema = io::load_schema(c.schema);
    const Table table = load_input_table(c, schema);
    const auto coded = code_table(c, table, schema);

    const fs::path dir = make_out_dir(c);
    io::write_coded_csv(dir / "coded.csv", coded);
    io::write_coding_metadata(dir / "coded_meta.json", coded, table.n_rows());
    write_manifest(c);
    std::cout << "coded " << table.n_rows() << " rows into " << coded.values.cols()
              << " columns (" << c.coding << ")\n";
    return 0;
}

int cmd_cluster(const RunConfig& c) {
    validate(c);
    const auto schema = io::load_schema(c.schema);
    const Table table = load_input_table(c, schema);
    const auto coded = code_table(c, table, schema);
    const auto view = correspondence::correspondence_view(coded);
    const auto tree = ward::ward_cluster(view);
    const auto gains = ward::inertia_gains(tree);

    std::size_t k = static_cast<std::size_t>(c.k);
    ward::KSelection sel;
    const fs::path dir = make_out_dir(c);
    if (k == 0) {
        const auto [lo, hi] = selectk_range(c, tree.leaf_count);
        sel = ward::select_k(gains, lo, hi);
        k = sel.k;
        write_selectk_json(dir / "selectk.json", sel);
        std::cout << "selected k = " << k << (sel.degenerate ? " (degenerate gains)" : "")
                  << "\n";
    }
    const Partition p = ward::cut(tree, k);

    io::write_dendrogram_json(dir / "dendrogram.json", tree);
    io::write_dendrogram_newick(dir / "dendrogram.nwk", tree);
    io::write_partition_csv(dir / "partition.csv", p);
    io::write_text_file(dir / "dendrogram.svg", svg::dendrogram_svg(tree, k));
    io::write_text_file(dir / "inertia_gains.svg", svg::inertia_barplot_svg(gains));
    write_manifest(c);
    std::cout << "clustered " << table.n_rows() << " rows, cut at k = " << k << "\n";
    return 0;
}

int cmd_cut(const RunConfig& c) {
    validate(c);
    if (c.input.empty()) throw InputError("cut: --input must name a dendrogram JSON file");
    if (c.k < 1) throw BadK("cut: --k is required and must be >= 1");
    const auto tree = io::read_dendrogram_json(c.input);
    const Partition p = ward::cut(tree, static_cast<std::size_t>(c.k));
    const fs::path dir = make_out_dir(c);
    io::write_partition_csv(dir / "partition.csv", p);
    write_manifest(c);
    std::cout << "cut " << tree.leaf_count << " leaves into k = " << c.k << "\n";
    return 0;
}

int cmd_selectk(const RunConfig& c) {
    validate(c);
    if (c.input.empty())
        throw InputError("selectk: --input must name a dendrogram JSON file");
    const auto tree = io::read_dendrogram_json(c.input);
    const auto gains = ward::inertia_gains(tree);
    const auto [lo, hi] = selectk_range(c, tree.leaf_count);
    const auto sel = ward::select_k(gains, lo, hi);

    const fs::path dir = make_out_dir(c);
    write_selectk_json(dir / "selectk.json", sel);
    write_manifest(c);
    std::cout << "k,delta_k,delta_k_next,ratio\n";
    for (const auto& r : sel.ratios)
        std::cout << r.k << ',' << io::format_double(r.delta_k) << ','
                  << io::format_double(r.delta_k_next) << ',' << io::format_double(r.ratio)
                  << "\n";
    std::cout << "selected k = " << sel.k << (sel.degenerate ? " (degenerate gains)" : "")
              << "\n";
    return 0;
}

int cmd_ari(const RunConfig& c) {
    if (c.input.empty() || c.input_b.empty())
        throw InputError("ari: two partition CSV files are required");
    const Partition a = io::read_partition_csv(c.input);
    const Partition b = io::read_partition_csv(c.input_b);
    const auto res = eval::ari_ex(a, b);
    std::cout << io::format_double(res.value) << "\n";
    if (res.degenerate)
        std::cerr << "note: degenerate partitions, chance correction undefined\n";
    return 0;
}

namespace {

std::vector<simgen::SimDesign> expand_grid(const RunConfig& c) {
    std::vector<simgen::SimDesign> designs;
    for (std::size_t k : c.sim_k)
        for (std::size_t n : c.sim_n)
            for (const auto& dens : c.densities)
                for (double omega : c.omegas)
                    for (double cf : c.cat_fractions) {
                        simgen::SimDesign d;
                        d.k = k;
                        d.n = n;
                        d.density = simgen::density_from_string(dens);
                        d.omega = omega;
                        d.cat_fraction = cf;
                        d.dims = c.dims;
                        d.cat_levels = c.cat_levels;
                        d.discretized_as_ordinal = c.discretized_as_ordinal;
                        designs.push_back(d);
                    }
    return designs;
}

void write_table_csv(const fs::path& path, const Table& table,
                     const VariableSchema& schema) {
    io::RawCsv csv;
    for (const auto& col : table.columns) csv.header.push_back(col.name);
    csv.rows.resize(table.n_rows());
    for (std::size_t i = 0; i < table.n_rows(); ++i) {
        auto& row = csv.rows[i];
        row.reserve(table.columns.size());
        for (const auto& col : table.columns) {
            const ColumnSpec& spec = *schema.find(col.name);
            if (spec.kind == ColumnKind::nominal) row.push_back(col.labels[i]);
            else if (spec.kind == ColumnKind::ordinal)
                row.push_back(std::to_string(static_cast<long>(col.numeric[i])));
            else row.push_back(io::format_double(col.numeric[i]));
        }
    }
    io::write_csv(path, csv);
}

} // namespace

int cmd_simulate(const RunConfig& c) {
    validate(c);
    auto designs = expand_grid(c);
    if (designs.size() != 1)
        throw InputError("simulate: give exactly one value per design factor");
    designs.front().seed = c.seed;
    const auto data = simgen::generate(designs.front());

    const fs::path dir = make_out_dir(c);
    write_table_csv(dir / "data.csv", data.table, data.schema);
    io::save_schema(dir / "schema.json", data.schema);
    io::write_partition_csv(dir / "truth.csv", data.truth);
    write_manifest(c);
    std::cout << "simulated " << data.table.n_rows() << " rows, k = " << data.design.k
              << ", separation " << io::format_double(data.separation) << "\n";
    return 0;
}

int cmd_bench(const RunConfig& c) {
    validate(c);
    const auto designs = expand_grid(c);
    std::vector<simgen::Method> methods;
    for (const auto& m : c.methods) methods.push_back(simgen::method_from_string(m));

    // Same iteration order and seed derivation as simgen::run_grid, with
    // the partitions kept around so the agreement matrix reuses them.
    const std::size_t M = methods.size();
    std::vector<double> agree(M * M, 0.0);
    std::size_t runs = 0, result_rows = 0;
    std::ostringstream results;
    results << "k,n,density,omega,cat_fraction,method,replicate,ari\n";
    for (std::size_t s = 0; s < designs.size(); ++s)
        for (std::size_t r = 0; r < c.replicates; ++r) {
            simgen::SimDesign d = designs[s];
            d.seed = simgen::derive_seed(c.seed, s, r);
            const auto data = simgen::generate(d);
            std::vector<Partition> parts;
            parts.reserve(M);
            for (auto m : methods) {
                parts.push_back(simgen::run_method(m, data, c.n_categories));
                results << d.k << ',' << d.n << ',' << simgen::to_string(d.density) << ','
                        << io::format_double(d.omega) << ','
                        << io::format_double(d.cat_fraction) << ',' << simgen::to_string(m)
                        << ',' << r << ',' << io::format_double(eval::ari(parts.back(), data.truth))
                        << '\n';
                ++result_rows;
            }
            for (std::size_t a = 0; a < M; ++a)
                for (std::size_t b = 0; b < M; ++b)
                    agree[a * M + b] += eval::ari(parts[a], parts[b]);
            ++runs;
        }

    const fs::path dir = make_out_dir(c);
    io::write_text_file(dir / "results.csv", results.str());
    {
        std::ostringstream out;
        out << "method";
        for (auto m : methods) out << ',' << simgen::to_string(m);
        out << '\n';
        for (std::size_t a = 0; a < M; ++a) {
            out << simgen::to_string(methods[a]);
            for (std::size_t b = 0; b < M; ++b)
                out << ',' << io::format_double(agree[a * M + b] / static_cast<double>(runs));
            out << '\n';
        }
        io::write_text_file(dir / "agreement.csv", out.str());
    }
    write_manifest(c);
    std::cout << "bench wrote " << result_rows << " result rows over " << designs.size()
              << " scenarios\n";
    return 0;
}

int run(const RunConfig& c) {
    if (c.command == "code") return cmd_code(c);
    if (c.command == "cluster") return cmd_cluster(c);
    if (c.command == "cut") return cmd_cut(c);
    if (c.command == "selectk") return cmd_selectk(c);
    if (c.command == "ari") return cmd_ari(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "bench") return cmd_bench(c);
    throw InputError("unknown command '" + c.command + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e)) return 2;
    if (dynamic_cast<const NumericError*>(&e)) return 3;
    return 3;
}

} // namespace mixclust::cli
