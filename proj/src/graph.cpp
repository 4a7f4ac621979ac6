#include "partialzeta/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace pzeta {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

Rational scale_by(const Rational& x, const Rational& f) { return x * f; }
Cyclotomic<Rational> scale_by(Cyclotomic<Rational> x, const Rational& f) { return x.scale(f); }

/// det(I - uM) from p_k = tr M^k: c_k = -(1/k) sum_{i=1}^k p_i c_{k-i}.
template <class T>
std::vector<T> newton_identities(const std::vector<T>& traces, const T& one) {
    std::vector<T> c{one};
    for (std::size_t k = 1; k <= traces.size(); ++k) {
        T acc = one - one;
        for (std::size_t i = 1; i <= k; ++i) acc += traces[i - 1] * c[k - i];
        c.push_back(acc);
        c.back() = scale_by(acc, Rational(-1, static_cast<long>(k)));
    }
    return c;
}

std::vector<Integer> edge_traces(const MultiGraph& x, int max_power) {
    const auto succ = x.edge_successors();
    const std::size_t E = succ.size();
    std::vector<std::vector<Integer>> w(E, std::vector<Integer>(E, 0));
    for (std::size_t i = 0; i < E; ++i) w[i][i] = 1;
    std::vector<Integer> traces;
    for (int k = 1; k <= max_power; ++k) {
        std::vector<std::vector<Integer>> next(E, std::vector<Integer>(E, 0));
        for (std::size_t a = 0; a < E; ++a)
            for (std::size_t e = 0; e < E; ++e) {
                if (w[a][e] == 0) continue;
                for (int f : succ[e]) next[a][static_cast<std::size_t>(f)] += w[a][e];
            }
        w = std::move(next);
        Integer t = 0;
        for (std::size_t a = 0; a < E; ++a) t += w[a][a];
        traces.push_back(t);
    }
    return traces;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiGraph

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 1) fail(ErrorKind::invalid_input, "graph needs at least one vertex");
    for (const auto& e : edges_)
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
            fail(ErrorKind::invalid_input, "edge endpoint out of range");
}

int MultiGraph::tail(int e) const {
    const auto& ed = edges_[static_cast<std::size_t>(e / 2)];
    return (e % 2 == 0) ? ed.u : ed.v;
}

int MultiGraph::head(int e) const {
    const auto& ed = edges_[static_cast<std::size_t>(e / 2)];
    return (e % 2 == 0) ? ed.v : ed.u;
}

std::vector<int> MultiGraph::degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_), 0);
    for (const auto& e : edges_) {
        ++d[static_cast<std::size_t>(e.u)];
        ++d[static_cast<std::size_t>(e.v)];
    }
    return d;
}

std::optional<int> MultiGraph::regularity() const {
    auto d = degrees();
    if (std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) != d.end()) return std::nullopt;
    return d.front() - 1;
}

int MultiGraph::require_regular() const {
    auto q = regularity();
    if (!q) fail(ErrorKind::invalid_input, "graph is not regular");
    if (*q < 1) fail(ErrorKind::invalid_input, "regular graph needs degree at least 2");
    return *q;
}

bool MultiGraph::connected() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (const auto& e : edges_) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                queue.push_back(w);
            }
    }
    return count == n_;
}

bool MultiGraph::bipartite() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (const auto& e : edges_) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<int> color(static_cast<std::size_t>(n_), -1);
    for (int s = 0; s < n_; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                int& cw = color[static_cast<std::size_t>(w)];
                if (cw < 0) {
                    cw = 1 - color[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (cw == color[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::vector<Integer>> MultiGraph::adjacency() const {
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(n_), std::vector<Integer>(static_cast<std::size_t>(n_), 0));
    for (const auto& e : edges_) {
        a[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] += 1;
        a[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] += 1;
    }
    return a;
}

std::vector<std::vector<int>> MultiGraph::edge_successors() const {
    const int E = 2 * edge_count();
    std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(n_));
    for (int f = 0; f < E; ++f) out_edges[static_cast<std::size_t>(tail(f))].push_back(f);
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(E));
    for (int e = 0; e < E; ++e)
        for (int f : out_edges[static_cast<std::size_t>(head(e))])
            if (f != reverse(e)) succ[static_cast<std::size_t>(e)].push_back(f);
    return succ;
}

// ---------------------------------------------------------------------------
// Voltage graphs

int VoltageGraph::voltage(int e) const {
    int a = alpha[static_cast<std::size_t>(e / 2)];
    int v = (e % 2 == 0) ? a : -a;
    return ((v % q_c) + q_c) % q_c;
}

void VoltageGraph::validate() const {
    if (base.vertex_count() > kMaxGraphVertices)
        fail(ErrorKind::invalid_input, "graph exceeds the 64-vertex cap");
    if (!is_prime(q_c)) fail(ErrorKind::invalid_input, "cover group order q_c must be prime");
    if (static_cast<int>(alpha.size()) != base.edge_count())
        fail(ErrorKind::invalid_input, "one voltage per edge required");
    int q = base.require_regular();
    if (q != q_g) fail(ErrorKind::invalid_input, "header q_g does not match the graph's degree");
    if (!base.connected()) fail(ErrorKind::invalid_input, "base graph must be connected");
}

VoltageGraph read_voltage_graph(std::istream& in) {
    std::string line;
    std::optional<std::array<int, 3>> header;
    std::vector<Edge> edges;
    std::vector<int> alpha;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::vector<long> fields;
        long x;
        while (ls >> x) fields.push_back(x);
        if (!ls.eof()) fail(ErrorKind::invalid_input, "malformed graph line: " + line);
        if (fields.empty()) continue;
        if (!header) {
            if (fields.size() != 3) fail(ErrorKind::invalid_input, "graph header must be 'n q_g q_c'");
            header = std::array<int, 3>{static_cast<int>(fields[0]), static_cast<int>(fields[1]),
                                        static_cast<int>(fields[2])};
            continue;
        }
        if (fields.size() < 2 || fields.size() > 3)
            fail(ErrorKind::invalid_input, "edge line must be 'u v [voltage]'");
        edges.push_back({static_cast<int>(fields[0]), static_cast<int>(fields[1])});
        alpha.push_back(fields.size() == 3 ? static_cast<int>(fields[2]) : 0);
    }
    if (!header) fail(ErrorKind::invalid_input, "missing graph header");
    VoltageGraph vg;
    const auto [n, q_g, q_c] = *header;
    if (n < 1 || n > kMaxGraphVertices) fail(ErrorKind::invalid_input, "vertex count must be in 1..64");
    if (q_c < 2) fail(ErrorKind::invalid_input, "cover group order must be at least 2");
    vg.base = MultiGraph(n, std::move(edges));
    vg.q_g = q_g;
    vg.q_c = q_c;
    for (int& a : alpha) a = ((a % q_c) + q_c) % q_c;
    vg.alpha = std::move(alpha);
    vg.validate();
    return vg;
}

VoltageGraph read_voltage_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_input, "cannot open graph file " + path);
    return read_voltage_graph(in);
}

// ---------------------------------------------------------------------------
// Ihara zeta

ExactSeries ihara_det(const MultiGraph& x) {
    const int q = x.require_regular();
    const int n = x.vertex_count();
    const auto a = x.adjacency();
    std::vector<Rational> xs, ys;
    for (int t = 0; t <= 2 * n; ++t) {
        std::vector<std::vector<Integer>> m(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
                Integer v = -a[i][j] * t;
                if (i == j) v += 1 + q * t * t;
                m[i][j] = v;
            }
        xs.emplace_back(t);
        ys.emplace_back(bareiss_determinant(std::move(m)));
    }
    ExactSeries det = interpolate(xs, ys);
    // m - n = n (q - 1) / 2 >= 0
    const int extra = x.edge_count() - n;
    return det * ExactSeries::binomial(1, 2).pow(static_cast<unsigned>(extra));
}

ExactSeries ihara_edge(const MultiGraph& x) {
    const int E = 2 * x.edge_count();
    auto traces = edge_traces(x, E);
    std::vector<Rational> p(traces.begin(), traces.end());
    return ExactSeries::polynomial(newton_identities(p, Rational(1)));
}

CycleCounts count_cycles(const MultiGraph& x, int max_length) {
    if (max_length < 1) fail(ErrorKind::invalid_input, "cycle length must be at least 1");
    CycleCounts out;
    out.traces = edge_traces(x, max_length);
    for (int k = 1; k <= max_length; ++k) {
        Integer acc = 0;
        for (int d = 1; d <= k; ++d)
            if (k % d == 0) acc += mobius(d) * out.traces[static_cast<std::size_t>(k / d - 1)];
        out.primitive.push_back(acc / k);
    }
    return out;
}

namespace {

struct CycleSearch {
    const std::vector<std::vector<int>>& succ;
    const MultiGraph& x;
    int max_length;
    std::size_t budget;
    std::vector<int> path;
    std::vector<PrimitiveCycle> found;

    // Canonical iff strictly smaller than every nontrivial rotation; equality
    // with a rotation means the cycle is a power.
    bool canonical_primitive() const {
        const std::size_t k = path.size();
        for (std::size_t r = 1; r < k; ++r) {
            for (std::size_t i = 0; i < k; ++i) {
                int a = path[i], b = path[(i + r) % k];
                if (a < b) goto next_rotation;
                if (a > b) return false;
            }
            return false;
        next_rotation:;
        }
        return true;
    }

    void extend(int e0) {
        const int last = path.back();
        if (x.head(last) == x.tail(e0) && e0 != MultiGraph::reverse(last) && canonical_primitive()) {
            if (found.size() >= budget)
                fail(ErrorKind::budget_exceeded,
                     "more than " + std::to_string(budget) + " primitive cycle classes");
            found.push_back({path});
        }
        if (static_cast<int>(path.size()) >= max_length) return;
        for (int f : succ[static_cast<std::size_t>(last)]) {
            if (f < e0) continue;
            path.push_back(f);
            extend(e0);
            path.pop_back();
        }
    }
};

}  // namespace

std::vector<PrimitiveCycle> enumerate_primitive_cycles(const MultiGraph& x, int max_length, std::size_t budget) {
    if (max_length > kMaxSeriesOrder)
        fail(ErrorKind::budget_exceeded, "cycle length beyond the series order cap 24");
    const auto succ = x.edge_successors();
    CycleSearch search{succ, x, max_length, budget, {}, {}};
    if (max_length < 1) return {};
    for (int e0 = 0; e0 < 2 * x.edge_count(); ++e0) {
        search.path = {e0};
        search.extend(e0);
    }
    auto out = std::move(search.found);
    std::sort(out.begin(), out.end(), [](const PrimitiveCycle& a, const PrimitiveCycle& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.edges < b.edges;
    });
    return out;
}

int frobenius_class(const VoltageGraph& vg, const PrimitiveCycle& c) {
    long acc = 0;
    for (int e : c.edges) acc += vg.voltage(e);
    return static_cast<int>(acc % vg.q_c);
}

Cover build_cover(const VoltageGraph& vg) {
    const int q = vg.q_c;
    std::vector<Edge> edges;
    for (int i = 0; i < vg.base.edge_count(); ++i) {
        const auto& e = vg.base.edges()[static_cast<std::size_t>(i)];
        const int a = vg.alpha[static_cast<std::size_t>(i)];
        for (int s = 0; s < q; ++s) edges.push_back({e.u * q + s, e.v * q + (s + a) % q});
    }
    Cover c;
    c.graph = MultiGraph(vg.base.vertex_count() * q, std::move(edges));
    c.connected = c.graph.connected();
    return c;
}

// ---------------------------------------------------------------------------
// Graph L-functions

bool CyclotomicPolynomial::is_rational() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.is_rational(); });
}

ExactSeries CyclotomicPolynomial::to_rational() const {
    if (!is_rational()) fail(ErrorKind::invalid_input, "polynomial has non-rational coefficients");
    std::vector<Rational> c;
    for (const auto& x : coeffs) c.push_back(x.rational_part());
    return ExactSeries::polynomial(std::move(c));
}

CyclotomicPolynomial CyclotomicPolynomial::operator*(const CyclotomicPolynomial& o) const {
    CyclotomicPolynomial out{p, {}};
    if (coeffs.empty() || o.coeffs.empty()) return out;
    out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, Cyclotomic<Rational>(p));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    return out;
}

cd CyclotomicPolynomial::evaluate(cd u, int power_of_root) const {
    cd acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * u + coeffs[i].evaluate(power_of_root);
    return acc;
}

CyclotomicPolynomial graph_L(const VoltageGraph& vg, int j) {
    using Cyc = Cyclotomic<Integer>;
    const int p = vg.q_c;
    const auto succ = vg.base.edge_successors();
    const std::size_t E = succ.size();
    std::vector<Cyc> weight;
    for (std::size_t f = 0; f < E; ++f)
        weight.push_back(Cyc::root_power(p, static_cast<long>(j) * vg.voltage(static_cast<int>(f))));

    std::vector<std::vector<Cyc>> w(E, std::vector<Cyc>(E, Cyc(p)));
    for (std::size_t i = 0; i < E; ++i) w[i][i] = Cyc::scalar(p, 1);
    std::vector<Cyclotomic<Rational>> traces;
    for (std::size_t k = 1; k <= E; ++k) {
        std::vector<std::vector<Cyc>> next(E, std::vector<Cyc>(E, Cyc(p)));
        for (std::size_t a = 0; a < E; ++a)
            for (std::size_t e = 0; e < E; ++e) {
                if (w[a][e].is_zero()) continue;
                for (int f : succ[e]) next[a][static_cast<std::size_t>(f)] += w[a][e];
            }
        for (std::size_t a = 0; a < E; ++a)
            for (std::size_t f = 0; f < E; ++f)
                if (!next[a][f].is_zero()) next[a][f] = next[a][f] * weight[f];
        w = std::move(next);
        Cyc t(p);
        for (std::size_t a = 0; a < E; ++a) t += w[a][a];
        Cyclotomic<Rational> tr(p);
        for (std::size_t i = 0; i < t.coefficients().size(); ++i) {
            Cyclotomic<Rational> term = Cyclotomic<Rational>::root_power(p, static_cast<long>(i));
            tr += term.scale(Rational(t.coefficients()[i]));
        }
        traces.push_back(tr);
    }
    CyclotomicPolynomial out{p, newton_identities(traces, Cyclotomic<Rational>::scalar(p, 1))};
    while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
    return out;
}

ExactSeries nontrivial_L_product(const VoltageGraph& vg) {
    CyclotomicPolynomial acc{vg.q_c, {Cyclotomic<Rational>::scalar(vg.q_c, 1)}};
    for (int j = 1; j < vg.q_c; ++j) acc = acc * graph_L(vg, j);
    return acc.to_rational();
}

cd RationalFunction::evaluate(cd u) const { return numerator.evaluate(u) / denominator.evaluate(u); }

ExactSeries RationalFunction::series(std::size_t order) const { return divide(numerator, denominator, order); }

RationalFunction graph_g_rational(const VoltageGraph& vg) {
    ExactSeries num = nontrivial_L_product(vg);
    ExactSeries den = ihara_edge(vg.base).pow(static_cast<unsigned>(vg.q_c - 1));
    ExactSeries g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    // Normalize both to constant term 1 (G(0) = 1).
    Rational n0 = num.coefficient(0), d0 = den.coefficient(0);
    num *= Rational(1) / n0;
    den *= Rational(1) / d0;
    return {num, den};
}

PartialZetaSeries partial_zeta_series(const VoltageGraph& vg, int order, std::size_t budget) {
    vg.validate();
    if (order < 0 || order > kMaxSeriesOrder) fail(ErrorKind::invalid_input, "series order must be in 0..24");
    const int q = vg.q_c;
    const std::size_t prec = static_cast<std::size_t>(order) + 1;
    PartialZetaSeries out;
    out.connected = build_cover(vg).connected;

    // direct: multiply by 1/(1 - u^nu) in place for each class in P_q
    std::vector<Rational> direct(prec, 0);
    direct[0] = 1;
    for (const auto& c : enumerate_primitive_cycles(vg.base, order, budget)) {
        if (frobenius_order(frobenius_class(vg, c), q) != q) continue;
        ++out.classes_used;
        const std::size_t nu = static_cast<std::size_t>(c.length());
        for (std::size_t k = nu; k < prec; ++k) direct[k] += direct[k - nu];
    }
    out.direct = ExactSeries::series(std::move(direct), prec);

    out.g = graph_g_rational(vg).series(prec);

    // recursive: coefficient k of F^q is q a_k + (terms in a_1..a_{k-1});
    // coefficient k of F(u^q) G(u) involves only a_i with i <= k/q.
    std::vector<Rational> a(prec, 0);
    a[0] = 1;
    for (std::size_t k = 1; k < prec; ++k) {
        ExactSeries f = ExactSeries::series(a, k + 1);
        Rational lhs = f.pow(static_cast<unsigned>(q)).coefficient(k);
        Rational rhs = (f.substitute_power(static_cast<std::size_t>(q)) * out.g).coefficient(k);
        a[k] = (rhs - lhs) / q;
    }
    out.recursive = ExactSeries::series(std::move(a), prec);
    return out;
}

SingularityCatalog graph_singularities_in_s(const RationalFunction& g, int q_g, double height) {
    if (q_g < 2) fail(ErrorKind::invalid_input, "q_g must be at least 2 to map u to s");
    const double lq = std::log(static_cast<double>(q_g));
    const double period = 2.0 * std::numbers::pi / lq;
    SingularityCatalog cat;
    cat.complete_up_to = height;
    auto add_tower = [&](cd u0, int order) {
        const double re = -std::log(std::abs(u0)) / lq;
        if (!(re > 1e-9 && re < 1.0 - 1e-9)) return;
        const double im0 = -std::arg(u0) / lq;
        long k = static_cast<long>(std::floor(-im0 / period));
        for (;; ++k) {
            const double im = im0 + period * static_cast<double>(k);
            if (im <= 1e-12) continue;
            if (im >= height) break;
            cat.points.push_back({cd(re, im), order});
        }
    };
    for (const auto& r : polynomial_roots(g.numerator)) add_tower(r.value, r.multiplicity);
    for (const auto& r : polynomial_roots(g.denominator)) add_tower(r.value, -r.multiplicity);
    cat.sort();
    return cat;
}

// ---------------------------------------------------------------------------
// GraphSystem

GraphSystem::GraphSystem(VoltageGraph vg, std::size_t budget) : vg_(std::move(vg)), budget_(budget) {
    vg_.validate();
    if (vg_.q_g < 2) fail(ErrorKind::invalid_input, "graph system needs q_g >= 2");
}

int GraphSystem::length_for(double cutoff) const {
    if (cutoff < vg_.q_g) return 0;
    return static_cast<int>(std::floor(std::log(cutoff) / std::log(static_cast<double>(vg_.q_g)) + 1e-9));
}

std::vector<PrimeDatum> GraphSystem::enumerate(double cutoff) const {
    const int len = length_for(cutoff);
    if (len > kMaxSeriesOrder)
        fail(ErrorKind::budget_exceeded, "cutoff needs cycles longer than the cap 24");
    std::lock_guard<std::mutex> lock(mutex_);
    if (len > cached_length_) {
        cache_.clear();
        auto cycles = enumerate_primitive_cycles(vg_.base, len, budget_);
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            int cls = frobenius_class(vg_, cycles[i]);
            cache_.push_back({static_cast<std::int64_t>(i), std::pow(static_cast<double>(vg_.q_g), cycles[i].length()),
                              frobenius_order(cls, vg_.q_c), cls});
        }
        cached_length_ = len;
    }
    std::vector<PrimeDatum> out;
    for (const auto& p : cache_)
        if (p.norm <= cutoff * (1.0 + 1e-12)) out.push_back(p);
    return out;
}

double GraphSystem::tail_bound(double cutoff, double sigma) const {
    if (sigma <= 1.0) return std::numeric_limits<double>::infinity();
    const double qg = vg_.q_g;
    const int len = length_for(cutoff);
    const double r = std::pow(qg, 1.0 - sigma);
    const double c = 1.0 / (1.0 - std::pow(qg, -sigma));
    const double m2 = 2.0 * vg_.base.edge_count();
    return m2 * c / (len + 1) * std::pow(r, len + 1) / (1.0 - r);
}

nlohmann::json GraphSystem::params() const {
    nlohmann::json edges = nlohmann::json::array();
    for (int i = 0; i < vg_.base.edge_count(); ++i) {
        const auto& e = vg_.base.edges()[static_cast<std::size_t>(i)];
        edges.push_back({e.u, e.v, vg_.alpha[static_cast<std::size_t>(i)]});
    }
    return {{"n", vg_.base.vertex_count()}, {"q_g", vg_.q_g}, {"q_c", vg_.q_c}, {"edges", edges}};
}

GEvaluator graph_g_evaluator(const VoltageGraph& vg, double height) {
    auto rf = std::make_shared<RationalFunction>(graph_g_rational(vg));
    auto num_roots = std::make_shared<std::vector<PolynomialRoot>>(polynomial_roots(rf->numerator));
    auto den_roots = std::make_shared<std::vector<PolynomialRoot>>(polynomial_roots(rf->denominator));
    const double lq = std::log(static_cast<double>(vg.q_g));
    GEvaluator g;
    g.provenance = GProvenance::rational_in_u;
    g.description = "G(u) = prod_{j>=1} L(u,chi_j)^{-1} / zeta_X(u)^{-(q_c-1)} at u = q_g^{-s}";
    g.value = [rf, lq](cd s) { return rf->evaluate(std::exp(-s * lq)); };
    // Every root has |u0| >= 1/q_g, so for Re s > 1 each log(1 - u/u0) is on
    // its power-series branch.
    g.log_value = [num_roots, den_roots, lq](cd s) {
        const cd u = std::exp(-s * lq);
        cd acc = 0.0;
        for (const auto& r : *num_roots) acc += static_cast<double>(r.multiplicity) * log1p(-u / r.value);
        for (const auto& r : *den_roots) acc -= static_cast<double>(r.multiplicity) * log1p(-u / r.value);
        return acc;
    };
    g.log_valid_above = 1.01;
    g.catalog = graph_singularities_in_s(*rf, vg.q_g, height);
    return g;
}

}  // namespace pzeta
