#pragma once

// Ihara zeta functions of regular multigraphs, cyclic voltage covers, graph
// L-functions and exact power-series forms of the partial zeta.

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "partialzeta/continuation.hpp"
#include "partialzeta/exact.hpp"

namespace pzeta {

inline constexpr int kMaxGraphVertices = 64;
inline constexpr int kMaxSeriesOrder = 24;

struct Edge {
    int u = 0;
    int v = 0;
};

/// Undirected multigraph. Oriented edge 2i runs u -> v along edge i, 2i+1
/// runs v -> u; reverse(e) = e ^ 1. A loop contributes 2 to its vertex's
/// degree and to the adjacency diagonal.
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    int tail(int e) const;
    int head(int e) const;
    static int reverse(int e) { return e ^ 1; }

    std::vector<int> degrees() const;
    /// q_g with every degree equal to q_g + 1, if the graph is regular.
    std::optional<int> regularity() const;
    /// q_g; invalid_input unless regular of degree >= 2.
    int require_regular() const;
    bool connected() const;
    bool bipartite() const;
    std::vector<std::vector<Integer>> adjacency() const;

    /// Non-backtracking successors: f with tail(f) = head(e), f != reverse(e).
    std::vector<std::vector<int>> edge_successors() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Base graph with voltages in Z/q_c: voltage(2i) = alpha_i, voltage(2i+1) = -alpha_i.
struct VoltageGraph {
    MultiGraph base;
    int q_g = 0;
    int q_c = 0;
    std::vector<int> alpha;

    int voltage(int oriented_edge) const;
    void validate() const;
};

/// Text format: header "n q_g q_c", then one "u v [voltage]" line per edge;
/// '#' starts a comment. Vertices are 0-based.
VoltageGraph read_voltage_graph(std::istream& in);
VoltageGraph read_voltage_graph_file(const std::string& path);

/// zeta_X(u)^{-1} = (1-u^2)^{m-n} det(I - A u + q_g u^2 I), exactly.
ExactSeries ihara_det(const MultiGraph& x);
/// det(I - u T) over oriented edges, via traces of T^k and Newton's identities.
ExactSeries ihara_edge(const MultiGraph& x);

struct CycleCounts {
    std::vector<Integer> traces;     // entry k-1: N_k = tr T^k
    std::vector<Integer> primitive;  // entry k-1: classes of primitive cycles of length k
};

CycleCounts count_cycles(const MultiGraph& x, int max_length);

struct PrimitiveCycle {
    std::vector<int> edges;  // least rotation of the oriented-edge sequence
    int length() const { return static_cast<int>(edges.size()); }
};

/// Every class of primitive closed non-backtracking tailless cycles of
/// length <= max_length, one canonical representative each, sorted by
/// (length, edge sequence). budget_exceeded when more than `budget` classes.
std::vector<PrimitiveCycle> enumerate_primitive_cycles(const MultiGraph& x, int max_length,
                                                       std::size_t budget = 2'000'000);

/// Voltage sum of a cycle in Z/q_c.
int frobenius_class(const VoltageGraph& vg, const PrimitiveCycle& c);

struct Cover {
    MultiGraph graph;
    bool connected = true;
};

/// Derived graph on (v, a) -> v * q_c + a with edges (u, a) - (v, a + alpha).
Cover build_cover(const VoltageGraph& vg);

/// Polynomial in u with coefficients in Q(zeta_{q_c}).
struct CyclotomicPolynomial {
    int p = 0;
    std::vector<Cyclotomic<Rational>> coeffs;

    bool is_rational() const;
    /// The polynomial as an element of Q[u]; invalid_input if not rational.
    ExactSeries to_rational() const;
    CyclotomicPolynomial operator*(const CyclotomicPolynomial& o) const;
    /// Value at u under the embedding zeta -> exp(2 pi i power_of_root / p).
    cd evaluate(cd u, int power_of_root = 1) const;
};

/// L(u, chi_j)^{-1} = det(I - u T_chi), T_chi[e -> f] = chi_j(alpha(f)) T[e -> f].
CyclotomicPolynomial graph_L(const VoltageGraph& vg, int j);

/// prod_{j=1}^{q_c-1} L(u, chi_j)^{-1}, multiplied symbolically so the
/// result is rational.
ExactSeries nontrivial_L_product(const VoltageGraph& vg);

/// G(u) = zeta_X(u)^{q_c-1} / prod_{j>=1} L(u, chi_j) as numerator and
/// denominator polynomials, common factors removed.
struct RationalFunction {
    ExactSeries numerator;
    ExactSeries denominator;

    cd evaluate(cd u) const;
    ExactSeries series(std::size_t order) const;
};

RationalFunction graph_g_rational(const VoltageGraph& vg);

struct PartialZetaSeries {
    ExactSeries direct;
    ExactSeries recursive;
    ExactSeries g;
    bool connected = true;
    std::size_t classes_used = 0;
};

/// F(u) = prod over classes whose voltage sum has order q_c of (1-u^nu)^{-1},
/// by direct enumeration and by solving F(u)^{q_c} = F(u^{q_c}) G(u)
/// coefficient by coefficient, both modulo u^{order+1}.
PartialZetaSeries partial_zeta_series(const VoltageGraph& vg, int order, std::size_t budget = 2'000'000);

/// Roots of numerator (zeros) and denominator (poles) of G mapped to
/// s = (log(1/u0) + 2 pi i k) / log q_g inside 0 < Re s < 1, 0 < Im s < height.
SingularityCatalog graph_singularities_in_s(const RationalFunction& g, int q_g, double height);

/// Zeta system whose primes are primitive cycle classes with norm q_g^length
/// and Frobenius class the voltage sum.
class GraphSystem final : public ZetaSystem {
public:
    explicit GraphSystem(VoltageGraph vg, std::size_t budget = 2'000'000);

    std::vector<PrimeDatum> enumerate(double cutoff) const override;
    int group_order() const override { return vg_.q_c; }
    double tail_bound(double cutoff, double sigma) const override;
    std::string backend() const override { return "graph"; }
    nlohmann::json params() const override;

    const VoltageGraph& voltage_graph() const { return vg_; }
    /// Largest cycle length with q_g^length <= cutoff.
    int length_for(double cutoff) const;

private:
    VoltageGraph vg_;
    std::size_t budget_;
    mutable std::mutex mutex_;
    mutable int cached_length_ = 0;
    mutable std::vector<PrimeDatum> cache_;
};

/// g(s) = G(q_g^{-s}), with the Euler-product log from the root factorization.
GEvaluator graph_g_evaluator(const VoltageGraph& vg, double height);

}  // namespace pzeta
