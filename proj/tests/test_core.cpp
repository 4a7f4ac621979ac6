#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "partialzeta/graph.hpp"
#include "partialzeta/io.hpp"
#include "partialzeta/numberfield.hpp"

using namespace pzeta;

namespace {

PrimeDatum prime_with_norm(double norm) { return {0, norm, 1, 0}; }

std::vector<cd> random_points(int count, double re_lo, double re_hi, double im_max, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_max, im_max);
    std::vector<cd> out;
    for (int i = 0; i < count; ++i) out.emplace_back(re(rng), im(rng));
    return out;
}

std::shared_ptr<ExplicitSystem> order6_system() {
    // primes of every Frobenius order 1, 2, 3, 6 in Z/6
    std::vector<ExplicitSystem::Entry> e;
    const int classes[] = {0, 3, 2, 4, 1, 5, 0, 1, 2, 3, 4, 5};
    double norm = 2.0;
    for (int c : classes) {
        e.push_back({norm, c});
        norm += 1.37;
    }
    return std::make_shared<ExplicitSystem>(6, e);
}

}  // namespace

TEST_CASE("local factor") {
    CHECK(local_factor(prime_with_norm(2), 1.0) == cd(2.0));
    CHECK(std::abs(local_factor(prime_with_norm(3), 2.0) - 9.0 / 8.0) < 1e-15);
    // 2^{-i pi / log 2} = -1
    CHECK(std::abs(local_factor(prime_with_norm(2), cd(0.0, M_PI / std::log(2.0))) - 0.5) < 1e-15);
    CHECK_THROWS_AS(local_factor(prime_with_norm(2), cd(0.0, 2 * M_PI / std::log(2.0))), Error);
}

TEST_CASE("partition into Frobenius orders, d = 5") {
    auto sys = kronecker_system(5);
    auto parts = partition_Pn(*sys, 12);
    std::vector<double> p1, p2;
    for (const auto& p : parts[1]) p1.push_back(p.norm);
    for (const auto& p : parts[2]) p2.push_back(p.norm);
    CHECK(p1 == std::vector<double>{11});
    CHECK(p2 == std::vector<double>{2, 3, 7});
    for (const auto& [n, list] : parts) CHECK(2 % n == 0);
}

TEST_CASE("split primes are the nonzero squares mod 5 up to 1e4") {
    auto sys = kronecker_system(5);
    for (const auto& p : sys->enumerate(1e4)) {
        long r = p.id % 5;
        bool square = (r == 1 || r == 4);
        CHECK(p.id != 5);
        CHECK((p.frob_order == 1) == square);
    }
}

TEST_CASE("partition with a single prime below the cutoff") {
    ExplicitSystem sys(3, {{2.0, 1}, {3.0, 0}});
    auto parts = partition_Pn(sys, 2.5);
    CHECK(parts.size() == 1);
    CHECK(parts.at(3).size() == 1);
}

TEST_CASE("graph backend with trivial voltage puts every cycle in P_1") {
    std::istringstream in("4 2 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    GraphSystem sys(read_voltage_graph(in));
    auto parts = partition_Pn(sys, 64);
    CHECK(parts.count(3) == 0);
    CHECK(parts.at(1).size() > 0);
}

TEST_CASE("truncated zeta over P_n") {
    auto sys = kronecker_system(5);
    TruncationPolicy pol{1e4};
    SUBCASE("n not dividing #G gives the empty product") {
        auto v = truncated_zeta_Pn(*sys, 3, 2.0, pol);
        CHECK(v.value == cd(1.0));
        CHECK(v.factors == 0);
    }
    SUBCASE("d = 5, n = 2, s = 2 against a high-cutoff summation") {
        auto v = truncated_zeta_Pn(*sys, 2, 2.0, pol);
        double oracle = 0.0;
        for (long p : primes_up_to(10'000'000)) {
            long r = p % 5;
            if (r == 2 || r == 3) oracle += -std::log1p(-1.0 / (static_cast<double>(p) * p));
        }
        // The neglected primes between 1e4 and 1e7 carry about 8e-6; the
        // certified tail must cover that.
        double diff = std::abs(std::log(v.value.real()) - oracle);
        CHECK(diff <= v.tail);
        CHECK(diff < 1e-5);
        CHECK(v.certified);
    }
    SUBCASE("P_1 times P_2 equals the full truncated product") {
        auto a = truncated_zeta_Pn(*sys, 1, 2.0, pol);
        auto b = truncated_zeta_Pn(*sys, 2, 2.0, pol);
        auto all = truncated_zeta_P(*sys, 2.0, pol);
        CHECK(std::abs(a.value * b.value / all.value - 1.0) < 1e-14);
    }
}

TEST_CASE("factor-complete partition at random points") {
    auto sys = cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}}));
    TruncationPolicy pol{1e5};
    for (cd s : random_points(10, 1.05, 3.0, 20.0, 11)) {
        cd log_sum = 0.0;
        for (int n : {1, 3}) log_sum += truncated_zeta_Pn(*sys, n, s, pol).log_value;
        auto all = truncated_zeta_P(*sys, s, pol);
        CHECK(std::abs(std::exp(log_sum - all.log_value) - 1.0) < 1e-12);
    }
}

TEST_CASE("monotone truncation and tail soundness") {
    for (SystemPtr sys : {SystemPtr(kronecker_system(5)), SystemPtr(kronecker_system(-1)),
                          SystemPtr(cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}})))}) {
        for (double sigma : {1.3, 2.0}) {
            double prev_value = 0.0, prev_tail = INFINITY;
            std::vector<TruncatedValue> vals;
            for (double x = 1e3; x <= 1.6e6; x *= 2) {
                auto v = truncated_zeta_P(*sys, sigma, {x});
                CHECK(v.value.real() >= prev_value);
                CHECK(v.tail <= prev_tail);
                prev_value = v.value.real();
                prev_tail = v.tail;
                vals.push_back(v);
            }
            // the last value stands in for the true one
            for (std::size_t i = 0; i + 1 < vals.size(); ++i)
                CHECK(std::abs(vals.back().log_value - vals[i].log_value) <= vals[i].tail);
        }
    }
}

TEST_CASE("enumeration is deterministic, sorted and append-only") {
    auto sys = kronecker_system(-7);
    auto small = sys->enumerate(1000);
    auto big = sys->enumerate(5000);
    REQUIRE(big.size() > small.size());
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i].id == big[i].id);
    for (std::size_t i = 1; i < big.size(); ++i) CHECK(big[i - 1].norm < big[i].norm);
    CHECK(sys->enumerate(1000).size() == small.size());
}

TEST_CASE("character values") {
    CHECK(character_value({5, 0}, 3) == cd(1.0));
    CHECK(character_value({2, 1}, 1) == cd(-1.0));
    CHECK(std::abs(character_value({3, 1}, 2) - std::polar(1.0, 4 * M_PI / 3)) < 1e-15);
}

TEST_CASE("truncated L") {
    auto sys = kronecker_system(5);
    TruncationPolicy pol{1e4};
    SUBCASE("trivial character is zeta_P") {
        auto l = truncated_L(*sys, {2, 0}, cd(2.0, 1.0), pol);
        auto z = truncated_zeta_P(*sys, cd(2.0, 1.0), pol);
        CHECK(l.value == z.value);
    }
    SUBCASE("sign character at s = 2 against the Dirichlet series") {
        // sum chi_5(n)/n^2 over n < N, remainder below 1/N
        double series = 0.0;
        const long N = 2'000'000;
        for (long n = 1; n < N; ++n) {
            long r = n % 5;
            int chi = (r == 1 || r == 4) ? 1 : (r == 0 ? 0 : -1);
            series += chi / (static_cast<double>(n) * n);
        }
        auto l = truncated_L(*sys, {2, 1}, 2.0, pol);
        CHECK(std::abs(l.value.real() - series) < 1e-6);
    }
    SUBCASE("single prime") {
        ExplicitSystem one(2, {{2.0, 1}});
        auto l = truncated_L(one, {2, 1}, 1.0, {10});
        CHECK(std::abs(l.value - 2.0 / 3.0) < 1e-15);
    }
    SUBCASE("conjugate characters give conjugate values at real s") {
        auto cub = cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}}));
        auto a = truncated_L(*cub, {3, 1}, 1.7, pol);
        auto b = truncated_L(*cub, {3, 2}, 1.7, pol);
        CHECK(std::abs(a.value - std::conj(b.value)) < 1e-14);
    }
}

TEST_CASE("truncated Z") {
    SUBCASE("order 2, Frobenius order 2 prime") {
        ExplicitSystem sys(2, {{3.0, 1}});
        auto z = truncated_Z(sys, 1.5, {10});
        CHECK(std::abs(z.value - 1.0 / (1.0 - std::pow(3.0, -3.0))) < 1e-14);
    }
    SUBCASE("order 3, norm 2, s = 1") {
        ExplicitSystem sys(3, {{2.0, 1}});
        auto z = truncated_Z(sys, 1.0, {10});
        cd brute = 1.0;
        for (int j = 0; j < 3; ++j) brute /= 1.0 - std::polar(1.0, 2 * M_PI * j / 3) / 2.0;
        CHECK(std::abs(z.value - brute) < 1e-14);
        CHECK(std::abs(z.value - 8.0 / 7.0) < 1e-14);
    }
    SUBCASE("real for real s") {
        auto cub = cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}}));
        auto z = truncated_Z(*cub, 1.4, {1e4});
        CHECK(std::abs(z.value.imag()) < 1e-12 * std::abs(z.value));
    }
}

TEST_CASE("Z_P factorization residual") {
    auto cub = cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}}));
    for (SystemPtr sys : {SystemPtr(kronecker_system(5)), SystemPtr(cub), SystemPtr(order6_system())})
        for (cd s : random_points(10, 1.1, 3.0, 10.0, 3)) CHECK(zp_factorization_residual(*sys, s, 1e4) <= 1e-10);
    ExplicitSystem empty(3, {});
    CHECK(zp_factorization_residual(empty, 2.0, 1e4) == 0.0);
    CHECK_THROWS_AS(zp_factorization_residual(empty, 0.9, 1e4), Error);
}

TEST_CASE("order 2: log Z = 2 log zeta_P1(s) + log zeta_P2(2s)") {
    auto sys = kronecker_system(13);
    TruncationPolicy pol{1e4};
    cd s(1.3, 4.0);
    cd lhs = truncated_Z(*sys, s, pol).log_value;
    cd rhs = 2.0 * truncated_zeta_Pn(*sys, 1, s, pol).log_value + truncated_zeta_Pn(*sys, 2, 2.0 * s, pol).log_value;
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("per-prime local identity prod_j (1 - w^{jk} x) = (1 - x^n)^{m/n}") {
    // coefficientwise comparison of the expanded products for m <= 12
    for (int m = 2; m <= 12; ++m) {
        for (int k = 0; k < m; ++k) {
            const int n = frobenius_order(k, m);
            std::vector<cd> lhs{1.0};
            for (int j = 0; j < m; ++j) {
                cd w = std::polar(1.0, 2 * M_PI * j * k / m);
                std::vector<cd> next(lhs.size() + 1, 0.0);
                for (std::size_t i = 0; i < lhs.size(); ++i) {
                    next[i] += lhs[i];
                    next[i + 1] -= w * lhs[i];
                }
                lhs = next;
            }
            auto rhs = ExactSeries::binomial(1, static_cast<std::size_t>(n)).pow(static_cast<unsigned>(m / n));
            for (std::size_t i = 0; i < lhs.size(); ++i)
                CHECK(std::abs(lhs[i] - rhs.coefficient(i).get_d()) < 1e-9);
        }
    }
}

TEST_CASE("system JSON round trip") {
    std::vector<SystemPtr> systems{kronecker_system(5), kronecker_system(-3),
                                   cyclic_system(DirichletCharacter::from_generators(7, 3, {{3, 1}})),
                                   cyclic_system(DirichletCharacter::from_generators(9, 3, {{2, 1}})),
                                   order6_system()};
    for (const auto& sys : systems) {
        auto back = system_from_json(sys->to_json());
        CHECK(back->to_json() == sys->to_json());
        auto a = sys->enumerate(200), b = back->enumerate(200);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].norm == b[i].norm);
            CHECK(a[i].frob_class == b[i].frob_class);
        }
    }
}

TEST_CASE("tail bounds") {
    auto sys = kronecker_system(5);
    CHECK(std::isinf(sys->tail_bound(1e4, 1.0)));
    bool certified = true;
    CHECK(std::isinf(tail_for(*sys, 0.8, {1e4}, certified)));
    CHECK_FALSE(certified);
}
