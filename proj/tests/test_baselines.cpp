#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mixclust/baselines.hpp"
#include "mixclust/eval.hpp"
#include "oracles/exhaustive_pam.hpp"

using namespace mixclust;
using namespace mixclust::baselines;

namespace {

DissimilarityMatrix random_dissimilarity(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    DissimilarityMatrix d;
    d.n = n;
    d.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.at(i, j) = d.at(j, i) = u(rng);
    return d;
}

Table mixed_table() {
    Table t;
    t.columns.push_back({"x", {0.0, 5.0, 10.0, 2.0}, {}});
    t.columns.push_back({"g", {}, {"a", "a", "b", "b"}});
    t.columns.push_back({"r", {1, 2, 3, 1}, {}});
    return t;
}

VariableSchema mixed_schema() {
    VariableSchema s;
    s.columns = {{"x", ColumnKind::continuous, 0, 0},
                 {"g", ColumnKind::nominal, 0, 0},
                 {"r", ColumnKind::ordinal, 3, 0}};
    return s;
}

} // namespace

TEST_CASE("gower combines range-normalized and matching parts") {
    const Table t = mixed_table();
    const VariableSchema s = mixed_schema();
    const DissimilarityMatrix d = gower(t, s);

    CHECK(d.at(0, 0) == 0.0);
    CHECK(d.at(1, 1) == 0.0);
    // rows 0 and 1: |0-5|/10 = 0.5, nominal equal = 0, |1-2|/2 = 0.5
    CHECK(d.at(0, 1) == doctest::Approx((0.5 + 0.0 + 0.5) / 3.0).epsilon(1e-12));
    // rows 0 and 2: full range, different category, full level range
    CHECK(d.at(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(d.at(i, j) == d.at(j, i));
            CHECK(d.at(i, j) >= 0.0);
            CHECK(d.at(i, j) <= 1.0 + 1e-12);
        }
}

TEST_CASE("gower rejects zero ranges") {
    Table t;
    t.columns.push_back({"x", {3.0, 3.0, 3.0}, {}});
    VariableSchema s;
    s.columns = {{"x", ColumnKind::continuous, 0, 0}};
    CHECK_THROWS_AS(gower(t, s), ConstantContinuousColumn);
}

TEST_CASE("identical rows have zero dissimilarity") {
    Table t;
    t.columns.push_back({"x", {1.0, 1.0, 4.0}, {}});
    t.columns.push_back({"g", {}, {"u", "u", "v"}});
    VariableSchema s;
    s.columns = {{"x", ColumnKind::continuous, 0, 0}, {"g", ColumnKind::nominal, 0, 0}};
    const DissimilarityMatrix d = gower(t, s);
    CHECK(d.at(0, 1) == 0.0);
}

TEST_CASE("pam endpoints") {
    std::mt19937 rng(3);
    const DissimilarityMatrix d = random_dissimilarity(7, rng);
    const Partition all = pam(d, 7, 0);
    CHECK(all.k == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(all.labels[i] == static_cast<int>(i) + 1);

    const Partition one = pam(d, 1, 0);
    for (int l : one.labels) CHECK(l == 1);
    CHECK_THROWS_AS(pam(d, 0, 0), BadK);
    CHECK_THROWS_AS(pam(d, 8, 0), BadK);
}

TEST_CASE("pam recovers two well-separated pairs") {
    // Points on a line: {0, 1} and {10, 11}.
    DissimilarityMatrix d;
    d.n = 4;
    d.values.assign(16, 0.0);
    const double pos[4] = {0.0, 1.0, 10.0, 11.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) d.at(i, j) = std::abs(pos[i] - pos[j]);
    const Partition p = pam(d, 2, 0);
    CHECK(p.labels[0] == p.labels[1]);
    CHECK(p.labels[2] == p.labels[3]);
    CHECK(p.labels[0] != p.labels[2]);
    CHECK(pam_cost(d, {0, 2}) == doctest::Approx(2.0));
}

TEST_CASE("pam matches the exhaustive optimum on tiny instances") {
    std::mt19937 rng(11);
    int mismatches = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 6 + rng() % 7; // up to 12
        const std::size_t k = 2 + rng() % 2; // 2 or 3
        const DissimilarityMatrix d = random_dissimilarity(n, rng);
        const PamResult res = pam_full(d, k, 0);

        CHECK(res.cost <= res.build_cost + 1e-12);
        const double optimum = oracle::exhaustive_pam_cost(d, k);
        CHECK(res.cost >= optimum - 1e-12);
        if (res.cost > optimum + 1e-9) {
            ++mismatches;
            // PAM is a heuristic; a rare miss is logged, not failed.
            MESSAGE("pam missed the exhaustive optimum: ", res.cost, " vs ", optimum);
        }
    }
    CHECK(mismatches <= 4); // empirically zero; a small allowance keeps this honest
}

TEST_CASE("pam is invariant to row permutation up to relabeling") {
    std::mt19937 rng(13);
    const std::size_t n = 10;
    const DissimilarityMatrix d = random_dissimilarity(n, rng);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    DissimilarityMatrix dp;
    dp.n = n;
    dp.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dp.at(perm[i], perm[j]) = d.at(i, j);

    const Partition a = pam(d, 3, 0);
    const Partition b = pam(dp, 3, 0);
    Partition a_perm;
    a_perm.k = a.k;
    a_perm.labels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) a_perm.labels[perm[i]] = a.labels[i];
    CHECK(eval::ari(a_perm, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swap cost never rises above the build cost, runs deterministic") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 8 + rng() % 10;
        const std::size_t k = 2 + rng() % 3;
        const DissimilarityMatrix d = random_dissimilarity(n, rng);
        const PamResult res = pam_full(d, k, 0);
        CHECK(res.cost <= res.build_cost + 1e-12);
        CHECK(res.cost == pam_cost(d, res.medoids));
        // seed is documentation only: the algorithm is deterministic
        const Partition q = pam(d, k, 99);
        CHECK(res.partition.labels == q.labels);
    }
}
