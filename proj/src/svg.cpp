#include "mixclust/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mixclust/io.hpp"

namespace mixclust::svg {

namespace {

std::string num(double v) {
    // Two decimals are plenty for pixel coordinates and keep files small
    // and byte-stable.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Layout {
    std::vector<double> x;      // per node id
    std::vector<double> height; // per node id
    std::vector<std::size_t> leaf_order;
};

Layout layout_tree(const ward::Dendrogram& d) {
    const std::size_t I = d.leaf_count;
    const std::size_t total = I + d.merges.size();

    // Leaf order from a traversal of the final tree, left child first.
    std::vector<std::array<std::size_t, 2>> children(total, {0, 0});
    std::vector<bool> internal(total, false);
    for (const auto& m : d.merges) {
        children[m.id] = {m.left, m.right};
        internal[m.id] = true;
    }
    Layout lay;
    lay.x.assign(total, 0.0);
    lay.height.assign(total, 0.0);
    std::vector<std::size_t> stack{total - 1};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        if (!internal[node]) {
            lay.leaf_order.push_back(node);
            continue;
        }
        stack.push_back(children[node][1]);
        stack.push_back(children[node][0]);
    }
    for (std::size_t i = 0; i < lay.leaf_order.size(); ++i)
        lay.x[lay.leaf_order[i]] = static_cast<double>(i);
    for (const auto& m : d.merges) {
        lay.x[m.id] = 0.5 * (lay.x[m.left] + lay.x[m.right]);
        lay.height[m.id] = m.cost;
    }
    return lay;
}

} // namespace

std::string dendrogram_svg(const ward::Dendrogram& d, std::size_t k) {
    const std::size_t I = d.leaf_count;
    const Layout lay = layout_tree(d);
    const double max_h = d.merges.empty() ? 1.0 : d.merges.back().cost;

    const double margin = 40.0, leaf_gap = 18.0, plot_h = 360.0;
    const double width = margin * 2 + leaf_gap * static_cast<double>(I - 1);
    const double height = plot_h + margin * 2;
    auto X = [&](double leaf_x) { return margin + leaf_x * leaf_gap; };
    auto Y = [&](double h) {
        return margin + plot_h * (1.0 - (max_h > 0 ? h / max_h : 0.0));
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
        << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& m : d.merges) {
        const double y = Y(m.cost);
        const double xl = X(lay.x[m.left]), xr = X(lay.x[m.right]);
        const double yl = Y(lay.height[m.left]), yr = Y(lay.height[m.right]);
        out << "<path d=\"M " << num(xl) << " " << num(yl) << " L " << num(xl) << " "
            << num(y) << " L " << num(xr) << " " << num(y) << " L " << num(xr) << " "
            << num(yr) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    for (std::size_t pos = 0; pos < lay.leaf_order.size(); ++pos) {
        const std::size_t leaf = lay.leaf_order[pos];
        out << "<text x=\"" << num(X(static_cast<double>(pos))) << "\" y=\""
            << num(margin + plot_h + 14.0)
            << "\" font-size=\"9\" text-anchor=\"middle\" font-family=\"sans-serif\">" << leaf
            << "</text>\n";
    }

    if (k >= 1 && k <= I && !d.merges.empty()) {
        // Rectangle per cluster of the k-cut, topped just under the first
        // undone merge.
        const double cut_h = k == 1 ? max_h * 1.02 : d.merges[I - k].cost;
        const Partition p = ward::cut(d, k);
        for (int c = 1; c <= p.k; ++c) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = 0; i < I; ++i) {
                if (p.labels[i] != c) continue;
                lo = std::min(lo, lay.x[i]);
                hi = std::max(hi, lay.x[i]);
            }
            out << "<rect x=\"" << num(X(lo) - 5.0) << "\" y=\"" << num(Y(cut_h))
                << "\" width=\"" << num(X(hi) - X(lo) + 10.0) << "\" height=\""
                << num(margin + plot_h - Y(cut_h)) << "\" fill=\"none\" stroke=\"red\""
                << " stroke-width=\"1.2\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string inertia_barplot_svg(const std::vector<ward::InertiaGain>& gains,
                                std::size_t max_k) {
    std::vector<ward::InertiaGain> shown;
    for (const auto& g : gains)
        if (g.k <= max_k) shown.push_back(g);
    if (shown.empty()) shown = gains;

    double top = 0.0;
    for (const auto& g : shown) top = std::max(top, g.gain);
    if (top <= 0.0) top = 1.0;

    const double margin = 40.0, bar_w = 26.0, plot_h = 300.0;
    const double width = margin * 2 + bar_w * static_cast<double>(shown.size());
    const double height = plot_h + margin * 2;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
        << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < shown.size(); ++i) {
        const double h = plot_h * shown[i].gain / top;
        const double x = margin + bar_w * static_cast<double>(i);
        out << "<rect x=\"" << num(x + 3.0) << "\" y=\"" << num(margin + plot_h - h)
            << "\" width=\"" << num(bar_w - 6.0) << "\" height=\"" << num(h)
            << "\" fill=\"steelblue\"/>\n";
        out << "<text x=\"" << num(x + bar_w / 2.0) << "\" y=\"" << num(margin + plot_h + 14.0)
            << "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << shown[i].k << "</text>\n";
    }
    out << "<text x=\"" << num(margin) << "\" y=\"" << num(margin - 10.0)
        << "\" font-size=\"11\" font-family=\"sans-serif\">inertia gain by cluster count"
        << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace mixclust::svg
