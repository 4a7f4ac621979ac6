#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "partialzeta/graph.hpp"

using namespace pzeta;

namespace {

ExactSeries poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return ExactSeries::polynomial(v);
}

VoltageGraph load(const char* name) { return read_voltage_graph_file(std::string(PZETA_DATA_DIR) + "/" + name); }

// (1-u^2)^{m-n} prod_lambda (1 - lambda u + q u^2) from a known integer spectrum.
ExactSeries spectral_form(int m, int n, int q, const std::vector<std::pair<long, unsigned>>& spectrum) {
    auto out = ExactSeries::binomial(1, 2).pow(static_cast<unsigned>(m - n));
    for (auto [lambda, mult] : spectrum) out *= poly({1, -lambda, q}).pow(mult);
    return out;
}

// Closed non-backtracking tailless walks of length k, by exhaustive search.
long brute_force_trace(const MultiGraph& g, int k) {
    long count = 0;
    std::vector<int> path;
    const int oriented = 2 * g.edge_count();
    std::function<void()> extend = [&] {
        if (static_cast<int>(path.size()) == k) {
            if (g.head(path.back()) == g.tail(path.front()) && path.front() != MultiGraph::reverse(path.back())) ++count;
            return;
        }
        for (int f = 0; f < oriented; ++f) {
            if (!path.empty() && (g.tail(f) != g.head(path.back()) || f == MultiGraph::reverse(path.back()))) continue;
            path.push_back(f);
            extend();
            path.pop_back();
        }
    };
    extend();
    return count;
}

bool bfs_connected(const MultiGraph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<bool> seen(adj.size());
    std::queue<int> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++reached;
                todo.push(w);
            }
    }
    return reached == adj.size();
}

// Random (q+1)-regular multigraph by pairing half-edges; loops and parallel edges allowed.
MultiGraph random_regular(int n, int degree, std::mt19937& rng) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < degree; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
    return MultiGraph(n, edges);
}

}  // namespace

TEST_CASE("Ihara zeta against the spectral factorization") {
    CHECK(ihara_det(load("k4_z3.txt").base) == spectral_form(6, 4, 2, {{3, 1}, {-1, 3}}));
    CHECK(ihara_det(load("cube_z3.txt").base) == spectral_form(12, 8, 2, {{3, 1}, {1, 3}, {-1, 3}, {-3, 1}}));
    CHECK(ihara_det(load("petersen_z3.txt").base) == spectral_form(15, 10, 2, {{3, 1}, {1, 5}, {-2, 4}}));
}

TEST_CASE("basic shape of the reciprocal Ihara zeta") {
    for (const char* name : {"k4_z3.txt", "cube_z3.txt", "petersen_z3.txt"}) {
        auto g = load(name).base;
        auto z = ihara_det(g);
        CHECK(z.coefficient(0) == 1);
        CHECK(z.degree() == 2 * g.edge_count());
        CHECK(z == ihara_edge(g));
        // u = 1/q_g is a simple zero of zeta^{-1}
        auto [quot, rem] = poly_divmod(z, poly({1, -2}));
        CHECK(rem.is_zero());
        CHECK(!poly_divmod(quot, poly({1, -2})).second.is_zero());
    }
}

TEST_CASE("cycle counts") {
    auto k4 = load("k4_z3.txt").base;
    auto counts = count_cycles(k4, 6);
    CHECK(counts.traces[0] == 0);
    CHECK(counts.traces[1] == 0);
    CHECK(counts.traces[2] == 24);
    CHECK(counts.primitive[2] == 8);
    for (int k = 1; k <= 6; ++k) CHECK(counts.traces[static_cast<std::size_t>(k - 1)] == brute_force_trace(k4, k));
    auto cycles = enumerate_primitive_cycles(k4, 6);
    for (int k = 1; k <= 6; ++k) {
        const auto n = std::count_if(cycles.begin(), cycles.end(), [&](const PrimitiveCycle& c) { return c.length() == k; });
        CHECK(counts.primitive[static_cast<std::size_t>(k - 1)] == n);
    }
}

TEST_CASE("log derivative of zeta generates the traces") {
    for (const char* name : {"k4_z3.txt", "petersen_z3.txt"}) {
        auto g = load(name).base;
        auto z = ihara_det(g);
        // u d/du log zeta = -u P'/P with P = zeta^{-1}
        auto lhs = -divide(poly({0, 1}) * z.derivative(), z, 13);
        auto counts = count_cycles(g, 12);
        for (int k = 1; k <= 12; ++k) CHECK(lhs.coefficient(static_cast<std::size_t>(k)) == counts.traces[static_cast<std::size_t>(k - 1)]);
    }
}

TEST_CASE("Euler product over primitive cycles") {
    auto g = load("cube_z3.txt").base;
    const int L = 10;
    auto product = ExactSeries::series({Rational(1)}, L + 1);
    for (const auto& c : enumerate_primitive_cycles(g, L))
        product = divide(product, ExactSeries::binomial(1, static_cast<std::size_t>(c.length())), L + 1);
    CHECK(product == ihara_det(g).inverse(L + 1));
}

TEST_CASE("Bass identity on random regular multigraphs") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + 2 * (trial % 4);
        const int degree = 3 + (trial % 2);
        auto g = random_regular(n, degree, rng);
        CHECK(ihara_det(g) == ihara_edge(g));
    }
}

TEST_CASE("voltage graph parsing") {
    std::istringstream ok("# triangle with a chord\n4 2 3\n0 1\n0 2\n0 3\n1 2\n1 3 # note\n2 3 1\n");
    auto vg = read_voltage_graph(ok);
    CHECK(vg.base.vertex_count() == 4);
    CHECK(vg.alpha == std::vector<int>{0, 0, 0, 0, 0, 1});
    CHECK(vg.voltage(11) == 2);
    std::istringstream not_regular("3 2 3\n0 1\n1 2\n");
    CHECK_THROWS_AS(read_voltage_graph(not_regular), Error);
    std::istringstream composite("4 2 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3 1\n");
    CHECK_THROWS_AS(read_voltage_graph(composite), Error);
    std::istringstream junk("4 2 3\n0 x\n");
    CHECK_THROWS_AS(read_voltage_graph(junk), Error);
}

TEST_CASE("covers") {
    for (const char* name : {"k4_z3.txt", "cube_z3.txt", "petersen_z3.txt"}) {
        auto vg = load(name);
        auto cover = build_cover(vg);
        CHECK(cover.graph.vertex_count() == vg.base.vertex_count() * vg.q_c);
        CHECK(cover.graph.edge_count() == vg.base.edge_count() * vg.q_c);
        CHECK(cover.graph.regularity() == std::optional<int>(vg.q_g));
        CHECK(cover.connected == bfs_connected(cover.graph));
        CHECK(cover.connected);

        auto zy = ihara_det(cover.graph);
        auto zx = ihara_det(vg.base);
        CHECK(zy == zx * nontrivial_L_product(vg));
        CHECK(poly_divmod(zy, zx).second.is_zero());
    }
    auto flat = load("k4_z3.txt");
    std::fill(flat.alpha.begin(), flat.alpha.end(), 0);
    auto split = build_cover(flat);
    CHECK(!split.connected);
    CHECK(!bfs_connected(split.graph));
}

TEST_CASE("graph L-functions") {
    auto vg = load("k4_z3.txt");
    auto trivial = graph_L(vg, 0);
    REQUIRE(trivial.is_rational());
    CHECK(trivial.to_rational() == ihara_edge(vg.base));
    auto l1 = graph_L(vg, 1), l2 = graph_L(vg, 2);
    // reversing a cycle conjugates its character, so L is real on an undirected graph
    REQUIRE(l1.is_rational());
    CHECK(l1.to_rational() == l2.to_rational());
    CHECK(!(l1.to_rational() == trivial.to_rational()));
    for (double u : {0.1, 0.3, -0.45, 0.7}) CHECK(std::abs(l1.evaluate(u) - std::conj(l2.evaluate(u))) < 1e-12);
    // the product over all characters is the cover's zeta
    auto all = trivial * l1 * l2;
    REQUIRE(all.is_rational());
    CHECK(all.to_rational() == ihara_det(build_cover(vg).graph));
}

TEST_CASE("partial zeta series by both routes") {
    for (const char* name : {"k4_z3.txt", "cube_z3.txt", "petersen_z3.txt"}) {
        auto vg = load(name);
        auto pz = partial_zeta_series(vg, 12);
        CHECK(pz.direct == pz.recursive);
        CHECK(pz.direct.coefficient(0) == 1);
        CHECK(pz.g == graph_g_rational(vg).series(13));
        // F^q = F(u^q) G
        auto lhs = pz.direct.pow(static_cast<unsigned>(vg.q_c)).truncated(13);
        auto rhs = (pz.direct.substitute_power(static_cast<std::size_t>(vg.q_c)) * pz.g).truncated(13);
        CHECK(lhs == rhs);
    }
    auto flat = load("k4_z3.txt");
    std::fill(flat.alpha.begin(), flat.alpha.end(), 0);
    auto pz = partial_zeta_series(flat, 8);
    CHECK(!pz.connected);
    CHECK(pz.direct == ExactSeries::series({Rational(1)}, 9));
    CHECK(pz.recursive == ExactSeries::series({Rational(1)}, 9));
    auto g = graph_g_rational(flat);
    CHECK(g.numerator == poly({1}));
    CHECK(g.denominator == poly({1}));
}

TEST_CASE("Frobenius classes") {
    auto vg = load("petersen_z3.txt");
    for (const auto& c : enumerate_primitive_cycles(vg.base, 9)) {
        int sum = 0;
        for (int e : c.edges) sum += vg.voltage(e);
        CHECK(frobenius_class(vg, c) == ((sum % vg.q_c) + vg.q_c) % vg.q_c);
        PrimitiveCycle rev;
        for (auto it = c.edges.rbegin(); it != c.edges.rend(); ++it) rev.edges.push_back(MultiGraph::reverse(*it));
        CHECK((frobenius_class(vg, c) + frobenius_class(vg, rev)) % vg.q_c == 0);
        auto rotated = c;
        std::rotate(rotated.edges.begin(), rotated.edges.begin() + 1, rotated.edges.end());
        CHECK(frobenius_class(vg, rotated) == frobenius_class(vg, c));
    }
}

TEST_CASE("singularity map from u to s") {
    RationalFunction f{poly({1, 1, 2}), poly({1})};
    auto cat = graph_singularities_in_s(f, 2, 40);
    REQUIRE(cat.points.size() >= 4);
    const double spacing = 2 * M_PI / std::log(2.0);
    std::map<long, std::vector<double>> by_phase;
    for (const auto& p : cat.points) {
        CHECK(p.location.real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.order == 1);
        by_phase[std::lround(std::fmod(p.location.imag(), spacing) * 1e6)].push_back(p.location.imag());
    }
    CHECK(by_phase.size() == 2);
    for (auto& [phase, ims] : by_phase)
        for (std::size_t i = 1; i < ims.size(); ++i) CHECK(ims[i] - ims[i - 1] == doctest::Approx(spacing).epsilon(1e-12));

    RationalFunction pole{poly({1}), poly({1, 1, 2})};
    for (const auto& p : graph_singularities_in_s(pole, 2, 40).points) CHECK(p.order == -1);
    // a real root u0 = 1/2 gives s = 1, outside the open strip
    RationalFunction edge{poly({1, -2}), poly({1})};
    CHECK(graph_singularities_in_s(edge, 2, 40).points.empty());
}

TEST_CASE("graph systems") {
    auto vg = load("k4_z3.txt");
    GraphSystem sys(vg);
    CHECK(sys.length_for(8.0) == 3);
    CHECK(sys.length_for(15.9) == 3);
    auto primes = sys.enumerate(8.0);
    CHECK(primes.size() == 8);
    for (const auto& p : primes) CHECK(p.norm == 8.0);
    CHECK(sys.enumerate(1.5).empty());
    CHECK(std::isinf(sys.tail_bound(64, 1.0)));
    CHECK(sys.tail_bound(64, 1.5) > sys.tail_bound(4096, 1.5));
    CHECK(feq_residual(sys, cd(1.3, 2.0), 4096) <= 1e-10);
}
