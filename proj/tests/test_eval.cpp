#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mixclust/eval.hpp"

using namespace mixclust;
using namespace mixclust::eval;

namespace {

Partition make(std::vector<int> labels) { return normalize_partition(labels); }

Partition random_partition(std::size_t n, int k, std::mt19937& rng) {
    for (;;) {
        std::vector<int> labels(n);
        std::uniform_int_distribution<int> u(1, k);
        for (int& l : labels) l = u(rng);
        Partition p;
        p.labels = labels;
        p.k = k;
        if (valid_partition(p)) return p;
    }
}

} // namespace

TEST_CASE("hand example is exactly -1/2") {
    const Partition p = make({1, 1, 2, 2});
    const Partition q = make({1, 2, 1, 2});
    CHECK(ari(p, q) == -0.5);
}

TEST_CASE("identical partitions score exactly 1") {
    const Partition p = make({1, 1, 2, 3, 3, 2, 1});
    CHECK(ari(p, p) == 1.0);

    // Any bijective relabeling still scores 1.
    const Partition q = make({3, 3, 1, 2, 2, 1, 3});
    CHECK(ari(p, q) == 1.0);
}

TEST_CASE("ari is symmetric and bounded by 1") {
    std::mt19937 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 5 + rng() % 50;
        const Partition p = random_partition(n, 2 + rng() % 4, rng);
        const Partition q = random_partition(n, 2 + rng() % 4, rng);
        const double a = ari(p, q);
        CHECK(a == ari(q, p));
        CHECK(a <= 1.0);
    }
}

TEST_CASE("ari rejects mismatched lengths") {
    CHECK_THROWS_AS(ari(make({1, 2}), make({1, 2, 3})), LengthMismatch);
}

TEST_CASE("degenerate partitions are flagged") {
    // All singletons vs all singletons: no pairs anywhere, M = E = 0.
    const Partition p = make({1, 2, 3, 4});
    const AriResult same = ari_ex(p, p);
    CHECK(same.degenerate);
    CHECK(same.value == 1.0);

    // Identical as set partitions despite different label values.
    const AriResult relabeled = ari_ex(make({4, 3, 2, 1}), p);
    CHECK(relabeled.degenerate);
    CHECK(relabeled.value == 1.0);

    // Singletons vs one block: still degenerate one way? M != E here, so
    // a regular value comes back.
    const AriResult mixed = ari_ex(p, make({1, 1, 1, 1}));
    CHECK_FALSE(mixed.value == 1.0);
}

TEST_CASE("random partitions score near zero on average") {
    std::mt19937 rng(2025);
    double sum = 0.0;
    const int draws = 500;
    for (int rep = 0; rep < draws; ++rep) {
        const Partition p = random_partition(200, 4, rng);
        const Partition q = random_partition(200, 4, rng);
        sum += ari(p, q);
    }
    const double mean = sum / draws;
    CHECK(mean > -0.02);
    CHECK(mean < 0.02);
}

TEST_CASE("cluster_profile summarizes sizes, means and frequencies") {
    Table t;
    t.columns.push_back({"x", {1.0, 3.0, 10.0, 14.0}, {}});
    t.columns.push_back({"g", {}, {"a", "a", "b", "b"}});
    VariableSchema s;
    s.columns = {{"x", ColumnKind::continuous, 0, 0}, {"g", ColumnKind::nominal, 0, 0}};
    const Partition p = make({1, 1, 2, 2});

    const auto prof = cluster_profile(p, t, s);
    REQUIRE(prof.size() == 2);
    CHECK(prof[0].size == 2);
    CHECK(prof[0].share == 0.5);
    CHECK(prof[1].share == 0.5);
    CHECK(prof[0].numeric[0].cluster_mean == doctest::Approx(2.0));
    CHECK(prof[0].numeric[0].overall_mean == doctest::Approx(7.0));
    CHECK(prof[1].numeric[0].cluster_mean == doctest::Approx(12.0));

    // Pure clusters: dominant category frequency 1 within the cluster.
    const auto& freq = prof[0].categorical[0].frequencies;
    REQUIRE(freq.size() == 2);
    CHECK(freq[0].first == "a");
    CHECK(freq[0].second.first == 1.0);  // all of cluster 1 is "a"
    CHECK(freq[0].second.second == 0.5); // half overall

    double share_sum = 0.0;
    for (const auto& c : prof) share_sum += c.share;
    CHECK(share_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single cluster equals the global statistics") {
    Table t;
    t.columns.push_back({"x", {2.0, 4.0, 9.0}, {}});
    VariableSchema s;
    s.columns = {{"x", ColumnKind::continuous, 0, 0}};
    const auto prof = cluster_profile(make({1, 1, 1}), t, s);
    REQUIRE(prof.size() == 1);
    CHECK(prof[0].numeric[0].cluster_mean == prof[0].numeric[0].overall_mean);
    CHECK(prof[0].share == 1.0);
}
