#include "ccpart/rank.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ccpart {

std::size_t support_proxy_rank(const std::vector<RowStructure>& rows, const IndexSet& A) {
    if (rows.empty()) return 0;
    IndexSet u(rows.front().var_support.universe());
    A.for_each([&](int j) {
        if (static_cast<std::size_t>(j) >= rows.size())
            throw std::out_of_range("support_proxy_rank: row index " + std::to_string(j) +
                                    " outside row list");
        u = u.united(rows[static_cast<std::size_t>(j)].var_support);
    });
    return u.count();
}

std::size_t sampled_linear_rank(const std::vector<RowStructure>& rows, std::size_t n,
                                const CoefficientSampler& sampler, const IndexSet& A,
                                std::size_t sample_count, double tolerance, std::uint64_t seed,
                                bool* degenerate) {
    if (degenerate) *degenerate = false;
    std::vector<int> members = A.members();
    if (members.empty()) return 0;
    for (int j : members)
        if (static_cast<std::size_t>(j) >= rows.size())
            throw std::out_of_range("sampled_linear_rank: row index " + std::to_string(j) +
                                    " outside row list");
    if (sample_count < 1) throw std::domain_error("sampled_linear_rank: sample_count must be >= 1");
    if (!(tolerance > 0)) throw std::domain_error("sampled_linear_rank: tolerance must be positive");

    const std::size_t rows_a = members.size();
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(rows_a * sample_count),
                          static_cast<Eigen::Index>(n));
    // per-set stream so results do not depend on query order
    Rng rng(derive_seed(seed, A.hash()));
    std::vector<double> coeffs;
    for (std::size_t s = 0; s < sample_count; ++s) {
        sampler(rng, members, coeffs);
        if (coeffs.size() != rows_a * n)
            throw std::runtime_error("sampled_linear_rank: sampler returned wrong coefficient count");
        for (std::size_t i = 0; i < rows_a; ++i)
            for (std::size_t c = 0; c < n; ++c)
                stack(static_cast<Eigen::Index>(s * rows_a + i), static_cast<Eigen::Index>(c)) =
                    coeffs[i * n + c];
    }

    if (stack.lpNorm<Eigen::Infinity>() == 0.0) {
        if (degenerate) *degenerate = true;
        return 0;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stack);
    qr.setThreshold(tolerance);  // relative to the largest |R| diagonal
    return static_cast<std::size_t>(qr.rank());
}

struct RankOracle::Impl {
    enum class Kind { Proxy, Sampled } kind;
    std::vector<RowStructure> rows;
    std::size_t n = 0;
    CoefficientSampler sampler;
    std::size_t sample_count = 0;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;

    mutable std::mutex mutex;
    mutable std::unordered_map<IndexSet, std::size_t, IndexSetHash> memo;
    mutable std::atomic<std::size_t> evals{0};
    mutable std::atomic<bool> degenerate{false};

    std::size_t compute(const IndexSet& A) const {
        if (kind == Kind::Proxy) return std::min(support_proxy_rank(rows, A), n);
        bool degen = false;
        std::size_t r = sampled_linear_rank(rows, n, sampler, A, sample_count, tolerance, seed, &degen);
        if (degen) degenerate.store(true, std::memory_order_relaxed);
        return r;
    }
};

RankOracle RankOracle::support_proxy(std::vector<RowStructure> rows, std::size_t n) {
    RankOracle o;
    o.impl_ = std::make_shared<Impl>();
    o.impl_->kind = Impl::Kind::Proxy;
    o.impl_->rows = std::move(rows);
    o.impl_->n = n;
    return o;
}

RankOracle RankOracle::sampled_linear(std::vector<RowStructure> rows, std::size_t n,
                                      CoefficientSampler sampler, std::size_t sample_count,
                                      double tolerance, std::uint64_t seed) {
    RankOracle o;
    o.impl_ = std::make_shared<Impl>();
    o.impl_->kind = Impl::Kind::Sampled;
    o.impl_->rows = std::move(rows);
    o.impl_->n = n;
    o.impl_->sampler = std::move(sampler);
    o.impl_->sample_count = sample_count;
    o.impl_->tolerance = tolerance;
    o.impl_->seed = seed;
    return o;
}

std::size_t RankOracle::rank(const IndexSet& A) const {
    auto& im = *impl_;
    if (A.is_empty()) return 0;
    {
        std::lock_guard<std::mutex> lock(im.mutex);
        auto it = im.memo.find(A);
        if (it != im.memo.end()) return it->second;
    }
    std::size_t v = im.compute(A);
    im.evals.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(im.mutex);
    im.memo.emplace(A, v);
    return v;
}

std::size_t RankOracle::eval_count() const { return impl_->evals.load(std::memory_order_relaxed); }
bool RankOracle::degenerate_seen() const { return impl_->degenerate.load(std::memory_order_relaxed); }
std::size_t RankOracle::n() const { return impl_->n; }

RhoFn RankOracle::as_rho_fn() const {
    RankOracle self = *this;  // shared impl keeps the memo alive
    return [self](const IndexSet& A) { return self.rank(A); };
}

}  // namespace ccpart
