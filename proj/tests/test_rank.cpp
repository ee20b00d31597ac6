#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "ccpart/rank.hpp"

using namespace ccpart;

namespace {

std::vector<RowStructure> block_rows(std::size_t m, std::size_t n, std::size_t r) {
    std::vector<RowStructure> rows;
    for (std::size_t j = 0; j < r; ++j) {
        std::size_t width = (j + 1 == r) ? n : m;
        IndexSet s(n);
        for (std::size_t c = 0; c < width; ++c) s.insert(static_cast<int>(c));
        rows.push_back({static_cast<int>(j), s, static_cast<long long>(width),
                        2 * static_cast<long long>(width)});
    }
    return rows;
}

// rows with an i.i.d. gaussian-ish coefficient per support entry
CoefficientSampler random_sampler(const std::vector<RowStructure>& rows, std::size_t n) {
    return [rows, n](Rng& rng, const std::vector<int>& ids, std::vector<double>& out) {
        out.assign(ids.size() * n, 0.0);
        for (std::size_t i = 0; i < ids.size(); ++i)
            rows[static_cast<std::size_t>(ids[i])].var_support.for_each([&](int c) {
                out[i * n + static_cast<std::size_t>(c)] = rng.uniform(-1.0, 1.0);
            });
    };
}

}  // namespace

TEST_CASE("support proxy on the block structure") {
    auto rows = block_rows(3, 8, 5);
    CHECK(support_proxy_rank(rows, IndexSet::of({0, 1}, 5)) == 3);
    CHECK(support_proxy_rank(rows, IndexSet::of({4}, 5)) == 8);
    CHECK(support_proxy_rank(rows, IndexSet::full(5)) == 8);
    CHECK(support_proxy_rank(rows, IndexSet(5)) == 0);
    CHECK_THROWS_AS(support_proxy_rank(rows, IndexSet::of({7}, 8)), std::out_of_range);
}

TEST_CASE("sampled rank of generic random rows equals the support proxy") {
    const std::size_t n = 6, r = 8;
    std::vector<RowStructure> rows;
    Rng mk(99);
    for (std::size_t j = 0; j < r; ++j) {
        IndexSet s(n);
        while (s.is_empty())
            for (std::size_t c = 0; c < n; ++c)
                if (mk.uniform() < 0.4) s.insert(static_cast<int>(c));
        rows.push_back({static_cast<int>(j), s, static_cast<long long>(s.count()), 0});
    }
    RankOracle sampled = RankOracle::sampled_linear(rows, n, random_sampler(rows, n), 8, 1e-9, 17);
    RankOracle proxy = RankOracle::support_proxy(rows, n);
    for (std::uint64_t mask = 0; mask < (1u << r); ++mask) {
        IndexSet a = IndexSet::from_mask(mask, r);
        CHECK(sampled.rank(a) <= proxy.rank(a));
        // with several independent draws per row the sampled rank hits the proxy a.s.
        CHECK(sampled.rank(a) == proxy.rank(a));
    }
    CHECK_FALSE(sampled.degenerate_seen());
}

TEST_CASE("coefficients confined to a plane collapse the sampled rank") {
    const std::size_t n = 5;
    std::vector<RowStructure> rows(3);
    for (int j = 0; j < 3; ++j) rows[j] = {j, IndexSet::full(n), 5, 10};
    // every row's gradient lives in span{v1, v2} no matter the draw
    const double v1[n] = {1, 2, 0, -1, 3}, v2[n] = {0, 1, 1, 1, -2};
    CoefficientSampler sampler = [&](Rng& rng, const std::vector<int>& ids,
                                     std::vector<double>& out) {
        double w0 = rng.uniform(-1, 1), w1 = rng.uniform(-1, 1);
        out.assign(ids.size() * n, 0.0);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            double a = (ids[i] + 1) * w0, b = (ids[i] - 4) * w1;
            for (std::size_t c = 0; c < n; ++c) out[i * n + c] = a * v1[c] + b * v2[c];
        }
    };
    RankOracle oracle = RankOracle::sampled_linear(rows, n, sampler, 6, 1e-9, 4);
    CHECK(oracle.rank(IndexSet::full(3)) == 2);
    CHECK(oracle.rank(IndexSet::of({1, 2}, 3)) == 2);
    CHECK(oracle.rank(IndexSet::of({1}, 3)) == 2);
    // the structural proxy cannot see the collapse
    RankOracle proxy = RankOracle::support_proxy(rows, n);
    CHECK(proxy.rank(IndexSet::full(3)) == 5);
}

TEST_CASE("degenerate all-zero samples are flagged") {
    std::vector<RowStructure> rows = {{0, IndexSet::full(3), 3, 6}};
    CoefficientSampler zero = [](Rng&, const std::vector<int>& ids, std::vector<double>& out) {
        out.assign(ids.size() * 3, 0.0);
    };
    RankOracle oracle = RankOracle::sampled_linear(rows, 3, zero, 2, 1e-9, 1);
    CHECK(oracle.rank(IndexSet::full(1)) == 0);
    CHECK(oracle.degenerate_seen());
}

TEST_CASE("memoization and the rho adapter share state") {
    auto rows = block_rows(2, 4, 3);
    RankOracle oracle = RankOracle::sampled_linear(rows, 4, random_sampler(rows, 4), 3, 1e-9, 5);
    IndexSet a = IndexSet::of({0, 1}, 3);
    std::size_t v1 = oracle.rank(a);
    std::size_t count = oracle.eval_count();
    CHECK(oracle.rank(a) == v1);
    CHECK(oracle.eval_count() == count);

    RhoFn rho = oracle.as_rho_fn();
    CHECK(rho(a) == v1);
    CHECK(oracle.eval_count() == count);  // served from the shared memo
}

TEST_CASE("query order does not change sampled ranks") {
    auto rows = block_rows(3, 7, 6);
    auto mk = [&] {
        return RankOracle::sampled_linear(rows, 7, random_sampler(rows, 7), 3, 1e-9, 123);
    };
    RankOracle fwd = mk(), rev = mk();
    std::vector<IndexSet> sets;
    for (std::uint64_t mask = 1; mask < (1u << 6); ++mask)
        sets.push_back(IndexSet::from_mask(mask, 6));
    std::vector<std::size_t> a, b;
    for (auto it = sets.begin(); it != sets.end(); ++it) a.push_back(fwd.rank(*it));
    for (auto it = sets.rbegin(); it != sets.rend(); ++it) b.push_back(rev.rank(*it));
    std::reverse(b.begin(), b.end());
    CHECK(a == b);
}
