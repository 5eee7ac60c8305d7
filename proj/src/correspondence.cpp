#include "mixclust/correspondence.hpp"

#include <cmath>
#include <string>

namespace mixclust::correspondence {

CorrespondenceView correspondence_view(const Matrix& Z) {
    const std::size_t I = Z.rows(), J = Z.cols();
    if (I == 0 || J == 0) throw InputError("correspondence_view: empty matrix");

    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j)
            if (Z(i, j) < 0.0)
                throw NegativeEntry("correspondence_view: negative entry at (" +
                                    std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                    "); chi-square geometry needs nonnegative input");

    const double grand = Z.total();
    if (grand <= 0.0) throw ZeroMarginal("correspondence_view: zero grand total");

    CorrespondenceView v;
    v.P = Matrix(I, J);
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j) v.P(i, j) = Z(i, j) / grand;

    v.row_mass.assign(I, 0.0);
    v.col_mass.assign(J, 0.0);
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j) {
            v.row_mass[i] += v.P(i, j);
            v.col_mass[j] += v.P(i, j);
        }
    for (std::size_t i = 0; i < I; ++i)
        if (v.row_mass[i] <= 0.0)
            throw ZeroMarginal("correspondence_view: row " + std::to_string(i + 1) +
                               " has zero mass");
    for (std::size_t j = 0; j < J; ++j)
        if (v.col_mass[j] <= 0.0)
            throw ZeroMarginal("correspondence_view: column " + std::to_string(j + 1) +
                               " has zero mass (prune empty columns first)");

    v.profiles = Matrix(I, J);
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j) v.profiles(i, j) = v.P(i, j) / v.row_mass[i];
    return v;
}

CorrespondenceView correspondence_view(const coding::CodedMatrix& Z) {
    return correspondence_view(Z.values);
}

double chi2_distance_sq(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& col_mass) {
    if (a.size() != b.size() || a.size() != col_mass.size())
        throw LengthMismatch("chi2_distance_sq: profile lengths differ");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (col_mass[j] <= 0.0)
            throw ZeroColumnMass("chi2_distance_sq: zero column mass at " +
                                 std::to_string(j + 1));
        const double d = a[j] - b[j];
        s += d * d / col_mass[j];
    }
    return s;
}

double chi2_distance_sq(std::size_t i, std::size_t j, const CorrespondenceView& view) {
    if (i >= view.n_rows() || j >= view.n_rows())
        throw InputError("chi2_distance_sq: row index out of range");
    double s = 0.0;
    const double* a = view.profiles.row(i);
    const double* b = view.profiles.row(j);
    for (std::size_t k = 0; k < view.n_cols(); ++k) {
        const double d = a[k] - b[k];
        s += d * d / view.col_mass[k];
    }
    return s;
}

double chi2_distance(std::size_t i, std::size_t j, const CorrespondenceView& view) {
    return std::sqrt(chi2_distance_sq(i, j, view));
}

Matrix chi2_distance_matrix(const CorrespondenceView& view) {
    const std::size_t I = view.n_rows();
    Matrix d(I, I);
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = i + 1; j < I; ++j) {
            const double v = chi2_distance(i, j, view);
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

double total_inertia(const CorrespondenceView& view) {
    const std::size_t I = view.n_rows(), J = view.n_cols();

    double phi2 = 0.0;
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j) {
            const double e = view.row_mass[i] * view.col_mass[j];
            const double d = view.P(i, j) - e;
            phi2 += d * d / e;
        }

    // Cross-check: mass-weighted squared chi-square distance of the row
    // profiles to the centroid (the column-mass vector).
    double centered = 0.0;
    for (std::size_t i = 0; i < I; ++i)
        centered += view.row_mass[i] *
                    chi2_distance_sq(view.profiles.row_copy(i), view.col_mass, view.col_mass);

    if (std::abs(phi2 - centered) > 1e-10 * std::max(1.0, std::abs(phi2)))
        throw NumericError("total_inertia: decomposition routes disagree");
    return phi2;
}

std::size_t prune_empty_columns(coding::CodedMatrix& coded) {
    const std::size_t I = coded.values.rows(), J = coded.values.cols();
    std::vector<bool> keep(J, false);
    std::size_t kept = 0;
    for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t i = 0; i < I; ++i)
            if (coded.values(i, j) != 0.0) {
                keep[j] = true;
                break;
            }
        if (keep[j]) ++kept;
    }
    if (kept == J) return 0;

    Matrix pruned(I, kept);
    std::vector<std::string> labels;
    labels.reserve(kept);
    std::vector<coding::ColumnBlock> blocks;
    std::size_t out_j = 0;
    for (const auto& blk : coded.blocks) {
        coding::ColumnBlock nb{blk.variable, out_j, 0};
        for (std::size_t j = blk.offset; j < blk.offset + blk.width; ++j) {
            if (!keep[j]) continue;
            for (std::size_t i = 0; i < I; ++i) pruned(i, out_j) = coded.values(i, j);
            labels.push_back(coded.column_labels[j]);
            ++nb.width;
            ++out_j;
        }
        blocks.push_back(nb);
    }
    const std::size_t removed = J - kept;
    coded.values = std::move(pruned);
    coded.column_labels = std::move(labels);
    coded.blocks = std::move(blocks);
    return removed;
}

} // namespace mixclust::correspondence
