#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "ccpart/bounds.hpp"

using namespace ccpart;

namespace {

using big_float = boost::multiprecision::cpp_bin_float_100;

// 100-digit reference for the binomial tail; all terms are positive so the
// only error source is the ~1e-100 rounding of each operation
double exact_tail_log(std::size_t rho, long long K, double eps) {
    big_float e(eps);
    big_float one_minus = 1 - e;
    big_float sum = 0;
    big_float binom = 1;  // C(K, l)
    for (std::size_t l = 0; l < rho; ++l) {
        sum += binom * pow(e, static_cast<int>(l)) *
               pow(one_minus, static_cast<int>(K - static_cast<long long>(l)));
        binom = binom * (K - static_cast<long long>(l)) / (static_cast<long long>(l) + 1);
    }
    return static_cast<double>(log(sum));
}

}  // namespace

TEST_CASE("explicit closed form at frozen reference points") {
    CHECK(explicit_sample_size(0.05, 1e-3, 20).K == 820);
    CHECK(explicit_sample_size(0.1, 1e-3, 21).K == 426);
    CHECK(explicit_sample_size(0.025, 5e-4, 1).K == 481);
    CHECK(explicit_sample_size(0.025, 5e-4, 40).K == 2949);
    // K never below rho
    CHECK(explicit_sample_size(0.5, 0.3, 40).K >= 40);
}

TEST_CASE("implicit bound at frozen reference points") {
    CHECK(implicit_sample_size(0.1, 1e-3, 1).K == 66);
    CHECK(implicit_sample_size(0.05, 1e-3, 20).K == 726);
    CHECK(implicit_sample_size(0.5, 0.3, 1).K == 2);
    CHECK(implicit_sample_size(0.025, 5e-4, 10).K == 943);
    CHECK(implicit_sample_size(0.1, 1e-3, 21).K == 372);
}

TEST_CASE("rho = 1 closed form and bound ordering on a grid") {
    for (double eps : {0.01, 0.05, 0.1, 0.25, 0.5})
        for (double beta : {0.3, 1e-2, 1e-3, 1e-6}) {
            long long expected = static_cast<long long>(std::ceil(std::log(beta) / std::log1p(-eps)));
            CHECK(implicit_sample_size(eps, beta, 1).K == expected);
        }
    for (double eps : {0.02, 0.1, 0.3})
        for (double beta : {0.25, 1e-3, 1e-5})
            for (std::size_t rho : {std::size_t{1}, std::size_t{3}, std::size_t{10}, std::size_t{40}})
                for (std::uint64_t cfg : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{1024}}) {
                    long long ke = explicit_sample_size(eps, beta, rho, cfg).K;
                    long long ki = implicit_sample_size(eps, beta, rho, cfg).K;
                    CHECK(ki <= ke);
                    CHECK(ki >= static_cast<long long>(rho));
                }
}

TEST_CASE("implicit minimality certificate") {
    for (double eps : {0.05, 0.2})
        for (std::size_t rho : {std::size_t{2}, std::size_t{7}}) {
            SampleSizeResult r = implicit_sample_size(eps, 1e-4, rho, 4);
            double at = std::log(4.0) + binomial_tail_log(rho, r.K, eps);
            double below = std::log(4.0) + binomial_tail_log(rho, r.K - 1, eps);
            CHECK(at <= std::log(1e-4) + 1e-12);
            CHECK(below > std::log(1e-4));
        }
}

TEST_CASE("binomial tail log matches the exact-rational oracle") {
    struct Pt {
        std::size_t rho;
        long long K;
        double eps;
    };
    const Pt pts[] = {{1, 10, 0.1},    {3, 50, 0.05},   {5, 200, 0.02},  {10, 500, 0.05},
                      {21, 426, 0.1},  {20, 820, 0.05}, {2, 2000, 0.01}, {50, 2000, 0.05},
                      {7, 1234, 0.003}};
    for (const Pt& p : pts) {
        double ours = binomial_tail_log(p.rho, p.K, p.eps);
        double exact = exact_tail_log(p.rho, p.K, p.eps);
        CHECK(std::abs(ours - exact) <= 1e-12 * std::abs(exact));
    }
}

TEST_CASE("parameter validation and beta allocation") {
    CHECK_THROWS_AS(explicit_sample_size(0.0, 1e-3, 1), std::domain_error);
    CHECK_THROWS_AS(explicit_sample_size(1.0, 1e-3, 1), std::domain_error);
    CHECK_THROWS_AS(explicit_sample_size(0.1, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(implicit_sample_size(0.1, -1.0, 1), std::domain_error);
    RiskSpec rs{0.1, 0.5, 1};  // beta >= 1/e rejected at the problem level
    CHECK_THROWS_AS(rs.validate(), std::domain_error);

    std::vector<double> betas = allocate_beta(1e-3, 4);
    REQUIRE(betas.size() == 4);
    for (double b : betas) CHECK(b == doctest::Approx(2.5e-4));

    CHECK(config_count_from_binary_dim(0) == 1);
    CHECK(config_count_from_binary_dim(10) == 1024);
    CHECK_THROWS(config_count_from_binary_dim(63));
}
