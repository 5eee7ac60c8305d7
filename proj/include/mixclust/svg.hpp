#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mixclust/ward.hpp"

namespace mixclust::svg {

// Dendrogram drawing with the merge costs as heights; when k > 0 the k
// clusters of the corresponding cut get outline rectangles.
std::string dendrogram_svg(const ward::Dendrogram& d, std::size_t k = 0);

// Barplot of the inertia gains Delta(K), K = 2..min(max_k, I).
std::string inertia_barplot_svg(const std::vector<ward::InertiaGain>& gains,
                                std::size_t max_k = 15);

} // namespace mixclust::svg
