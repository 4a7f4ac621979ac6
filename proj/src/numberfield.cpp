#include "partialzeta/numberfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>

namespace pzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// B_2 .. B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,     1.0 / 42.0,        -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0,  7.0 / 6.0,       -3617.0 / 510.0,   43867.0 / 798.0,  -174611.0 / 330.0,
};

// (2k)! for k = 1..10
constexpr std::array<double, 10> kFactorial2k = {
    2.0, 24.0, 720.0, 40320.0, 3628800.0, 479001600.0, 87178291200.0, 20922789888000.0,
    6402373705728000.0, 2432902008176640000.0,
};

struct SieveCache {
    std::mutex mutex;
    std::int64_t limit = 0;
    std::vector<std::int64_t> primes;
};

SieveCache& sieve_cache() {
    static SieveCache cache;
    return cache;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Euler-Maclaurin tail sum_{n >= N} f(n) for f(x) = (x + a)^-s without the
// leading integral term: f(N)/2 - sum_k B_2k/(2k)! f^(2k-1)(N).
cd em_corrections(cd s, double x, int terms) {
    cd x_pow = std::exp(-s * std::log(x));  // x^-s
    cd acc = 0.5 * x_pow;
    cd rising = s;                          // s (s+1) ... (s+2k-2)
    cd term_pow = x_pow / x;                // x^{-s-1}
    const double inv_x2 = 1.0 / (x * x);
    for (int k = 1; k <= terms && k <= static_cast<int>(kBernoulli.size()); ++k) {
        acc += kBernoulli[static_cast<std::size_t>(k - 1)] / kFactorial2k[static_cast<std::size_t>(k - 1)] * rising * term_pow;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        term_pow *= inv_x2;
    }
    return acc;
}

int em_terms(cd s, const EulerMaclaurinOptions& opt) {
    return std::max(opt.min_terms, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
}

// (e^z - 1) / z
cd expm1_over(cd z) {
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
    return (std::exp(z) - 1.0) / z;
}

}  // namespace

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    if (limit > kSieveCap)
        fail(ErrorKind::budget_exceeded, "prime cutoff " + std::to_string(limit) + " exceeds the sieve cap 1e7");
    if (limit < 2) return {};
    auto& cache = sieve_cache();
    std::lock_guard<std::mutex> lock(cache.mutex);
    if (limit > cache.limit) {
        std::int64_t target = std::min<std::int64_t>(kSieveCap, std::max<std::int64_t>(limit, 2 * cache.limit));
        std::vector<bool> composite(static_cast<std::size_t>(target + 1), false);
        std::vector<std::int64_t> primes;
        for (std::int64_t i = 2; i <= target; ++i) {
            if (composite[static_cast<std::size_t>(i)]) continue;
            primes.push_back(i);
            for (std::int64_t j = i * i; j <= target; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
        cache.primes = std::move(primes);
        cache.limit = target;
    }
    auto end = std::upper_bound(cache.primes.begin(), cache.primes.end(), limit);
    return {cache.primes.begin(), end};
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        if (twos % 2 == 1) {
            std::int64_t r = mod(a, 8);
            if (r == 3 || r == 5) result = -result;
        }
    }
    // Jacobi symbol (a / n) for odd n > 0
    a = mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// DirichletCharacter

void DirichletCharacter::reduce_order() {
    int g = order_;
    for (int k : log_table_)
        if (k > 0) g = std::gcd(g, k);
    if (g == order_) {
        // every class is 0: principal
        for (int& k : log_table_)
            if (k > 0) k = 0;
        order_ = 1;
        return;
    }
    for (int& k : log_table_)
        if (k > 0) k /= g;
    order_ /= g;
}

DirichletCharacter DirichletCharacter::principal(int modulus) {
    if (modulus < 1) fail(ErrorKind::invalid_input, "modulus must be positive");
    DirichletCharacter chi;
    chi.modulus_ = modulus;
    chi.order_ = 1;
    chi.log_table_.assign(static_cast<std::size_t>(modulus), -1);
    for (int a = 0; a < modulus; ++a)
        if (std::gcd(a, modulus) == 1) chi.log_table_[static_cast<std::size_t>(a)] = 0;
    return chi;
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t discriminant) {
    const std::int64_t m = discriminant < 0 ? -discriminant : discriminant;
    if (m < 3) fail(ErrorKind::invalid_input, "discriminant too small");
    DirichletCharacter chi;
    chi.modulus_ = static_cast<int>(m);
    chi.order_ = 2;
    chi.log_table_.assign(static_cast<std::size_t>(m), -1);
    for (std::int64_t a = 1; a <= m; ++a) {
        int k = kronecker_symbol(discriminant, a);
        if (k == 0) continue;
        chi.log_table_[static_cast<std::size_t>(a % m)] = k == 1 ? 0 : 1;
    }
    chi.reduce_order();
    return chi;
}

DirichletCharacter DirichletCharacter::from_generators(int modulus, int order,
                                                       const std::vector<std::pair<int, int>>& gens) {
    if (modulus < 2 || order < 1) fail(ErrorKind::invalid_input, "invalid character modulus or order");
    DirichletCharacter chi;
    chi.modulus_ = modulus;
    chi.order_ = order;
    chi.log_table_.assign(static_cast<std::size_t>(modulus), -1);
    chi.log_table_[1 % static_cast<std::size_t>(modulus)] = 0;
    std::deque<int> queue{1 % modulus};
    for (const auto& [g, e] : gens)
        if (std::gcd(mod(g, modulus), static_cast<std::int64_t>(modulus)) != 1)
            fail(ErrorKind::invalid_input, "generator not coprime to modulus");
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& [g, e] : gens) {
            int y = static_cast<int>(mod(static_cast<std::int64_t>(x) * g, modulus));
            int v = static_cast<int>(mod(chi.log_table_[static_cast<std::size_t>(x)] + e, order));
            int& slot = chi.log_table_[static_cast<std::size_t>(y)];
            if (slot < 0) {
                slot = v;
                queue.push_back(y);
            } else if (slot != v) {
                fail(ErrorKind::invalid_input, "generator values are inconsistent");
            }
        }
    }
    for (int a = 1; a < modulus; ++a)
        if (std::gcd(a, modulus) == 1 && chi.log_table_[static_cast<std::size_t>(a)] < 0)
            fail(ErrorKind::invalid_input, "generators do not generate the unit group");
    chi.reduce_order();
    return chi;
}

int DirichletCharacter::class_of(std::int64_t n) const {
    return log_table_[static_cast<std::size_t>(mod(n, modulus_))];
}

cd DirichletCharacter::value(std::int64_t n) const {
    int k = class_of(n);
    if (k < 0) return 0.0;
    if (k == 0) return 1.0;
    if (2 * k == order_) return -1.0;
    return std::polar(1.0, kTwoPi * k / order_);
}

bool DirichletCharacter::is_principal() const { return order_ == 1; }

int DirichletCharacter::parity() const {
    if (modulus_ <= 2) return 0;
    int k = class_of(modulus_ - 1);
    return (k == 0) ? 0 : 1;
}

int DirichletCharacter::conductor() const {
    for (int d = 1; d <= modulus_; ++d) {
        if (modulus_ % d != 0) continue;
        bool induced = true;
        for (int a = 1; a < modulus_ && induced; a += d) {
            if (std::gcd(a, modulus_) != 1) continue;
            if (class_of(a) != 0) induced = false;
        }
        if (induced) return d;
    }
    return modulus_;
}

DirichletCharacter DirichletCharacter::power(int j) const {
    DirichletCharacter out = *this;
    for (int& k : out.log_table_)
        if (k >= 0) k = static_cast<int>(mod(static_cast<std::int64_t>(k) * j, order_));
    if (out.order_ > 1) out.reduce_order();
    return out;
}

cd DirichletCharacter::gauss_sum() const {
    cd acc = 0.0;
    for (int a = 0; a < modulus_; ++a) acc += value(a) * std::polar(1.0, kTwoPi * a / modulus_);
    return acc;
}

std::vector<std::pair<int, int>> DirichletCharacter::generator_values() const {
    std::vector<std::pair<int, int>> gens;
    std::vector<bool> reached(static_cast<std::size_t>(modulus_), false);
    std::vector<int> members{1 % modulus_};
    reached[static_cast<std::size_t>(members[0])] = true;
    for (int a = 2; a < modulus_; ++a) {
        if (std::gcd(a, modulus_) != 1 || reached[static_cast<std::size_t>(a)]) continue;
        gens.emplace_back(a, class_of(a));
        // <H, a> is the union of the cosets H a^k
        const std::vector<int> base = members;
        const std::vector<bool> in_base = reached;
        for (std::int64_t power = a; !in_base[static_cast<std::size_t>(power)]; power = power * a % modulus_)
            for (int h : base) {
                int y = static_cast<int>(h * power % modulus_);
                if (!reached[static_cast<std::size_t>(y)]) {
                    reached[static_cast<std::size_t>(y)] = true;
                    members.push_back(y);
                }
            }
    }
    return gens;
}

nlohmann::json DirichletCharacter::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& [g, e] : generator_values()) gens.push_back({g, e});
    return {{"modulus", modulus_}, {"order", order_}, {"generator_values", gens}};
}

DirichletCharacter DirichletCharacter::from_json(const nlohmann::json& j) {
    try {
        std::vector<std::pair<int, int>> gens;
        for (const auto& ge : j.at("generator_values")) gens.emplace_back(ge.at(0).get<int>(), ge.at(1).get<int>());
        return from_generators(j.at("modulus").get<int>(), j.at("order").get<int>(), gens);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("malformed character spec: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// AbelianSystem

AbelianSystem::AbelianSystem(DirichletCharacter chi, std::int64_t kronecker_d)
    : chi_(std::move(chi)), kronecker_d_(kronecker_d) {
    if (chi_.order() < 2) fail(ErrorKind::invalid_input, "abelian system needs a non-principal character");
}

std::vector<PrimeDatum> AbelianSystem::enumerate(double cutoff) const {
    if (cutoff > static_cast<double>(kSieveCap))
        fail(ErrorKind::budget_exceeded, "cutoff exceeds the sieve cap 1e7");
    std::vector<PrimeDatum> out;
    const int q = chi_.order();
    for (std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(cutoff)))) {
        int k = chi_.class_of(p);
        if (k < 0) continue;
        out.push_back({p, static_cast<double>(p), frobenius_order(k, q), k});
    }
    return out;
}

double AbelianSystem::tail_bound(double cutoff, double sigma) const { return rosser_schoenfeld_tail(cutoff, sigma); }

std::vector<std::int64_t> AbelianSystem::ramified() const {
    std::vector<std::int64_t> out;
    for (std::int64_t p : primes_up_to(chi_.modulus()))
        if (chi_.modulus() % p == 0) out.push_back(p);
    return out;
}

nlohmann::json AbelianSystem::params() const {
    if (kronecker_d_) return {{"d", kronecker_d_}};
    return chi_.to_json();
}

std::shared_ptr<AbelianSystem> kronecker_system(std::int64_t d) {
    if (d == 0 || d == 1) fail(ErrorKind::invalid_input, "invalid-d: d must differ from 0 and 1");
    std::int64_t a = d < 0 ? -d : d;
    for (std::int64_t p = 2; p * p <= a; ++p)
        if (a % (p * p) == 0) fail(ErrorKind::invalid_input, "invalid-d: d must be square-free");
    std::int64_t disc = mod(d, 4) == 1 ? d : 4 * d;
    return std::make_shared<AbelianSystem>(DirichletCharacter::kronecker(disc), d);
}

std::shared_ptr<AbelianSystem> cyclic_system(const DirichletCharacter& chi) {
    if (!is_prime_small(chi.order()))
        fail(ErrorKind::invalid_input, "cyclic system needs a character of prime order, got " + std::to_string(chi.order()));
    return std::make_shared<AbelianSystem>(chi);
}

// ---------------------------------------------------------------------------
// L-functions

cd hurwitz_zeta(cd s, double a, const EulerMaclaurinOptions& opt) {
    if (!(a > 0.0)) fail(ErrorKind::domain, "Hurwitz zeta needs a > 0");
    if (s == cd(1.0, 0.0)) fail(ErrorKind::domain, "pole-at-1: zeta has a pole at s = 1");
    const int N = em_terms(s, opt);
    cd acc = 0.0;
    for (int n = 0; n < N; ++n) acc += std::exp(-s * std::log(n + a));
    const double x = N + a;
    acc += std::exp((1.0 - s) * std::log(x)) / (s - 1.0);
    acc += em_corrections(s, x, opt.bernoulli_terms);
    return acc;
}

cd riemann_zeta(cd s, const EulerMaclaurinOptions& opt) { return hurwitz_zeta(s, 1.0, opt); }

cd dirichlet_L(cd s, const DirichletCharacter& chi, const EulerMaclaurinOptions& opt) {
    const int m = chi.modulus();
    if (chi.is_principal()) {
        if (s == cd(1.0, 0.0)) fail(ErrorKind::domain, "pole-at-1: L(s, chi_0) has a pole at s = 1");
        cd acc = 0.0;
        for (int a = 1; a <= m; ++a)
            if (chi.class_of(a) >= 0) acc += hurwitz_zeta(s, static_cast<double>(a) / m, opt);
        return std::exp(-s * std::log(static_cast<double>(m))) * acc;
    }
    // sum_a chi(a) zeta(s, a/m); the integral terms are combined so the
    // removable singularity at s = 1 cancels analytically.
    const int N = em_terms(s, opt);
    const double Nd = N;
    const cd n_pow = std::exp((1.0 - s) * std::log(Nd));  // N^{1-s}
    cd acc = 0.0;
    for (int a = 1; a <= m; ++a) {
        cd c = chi.value(a);
        if (c == 0.0) continue;
        const double shift = static_cast<double>(a) / m;
        cd partial = 0.0;
        for (int n = 0; n < N; ++n) partial += std::exp(-s * std::log(n + shift));
        const double ell = std::log1p(shift / Nd);
        partial += -n_pow * ell * expm1_over((1.0 - s) * ell);
        partial += em_corrections(s, Nd + shift, opt.bernoulli_terms);
        acc += c * partial;
    }
    return std::exp(-s * std::log(static_cast<double>(m))) * acc;
}

cd gamma(cd z) {
    // Lanczos, g = 7, n = 9
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    z -= 1.0;
    cd x = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<double>(i));
    cd t = z + 7.5;
    return std::sqrt(kTwoPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

cd completed_xi(cd s) {
    return 0.5 * s * (s - 1.0) * std::exp(-0.5 * s * std::log(kPi)) * gamma(0.5 * s) * riemann_zeta(s);
}

cd dirichlet_L_reflected(cd s, const DirichletCharacter& chi) {
    if (!chi.is_primitive()) fail(ErrorKind::invalid_input, "reflection formula needs a primitive character");
    const double m = chi.modulus();
    const int a = chi.parity();
    cd eps = chi.modulus() == 1 ? cd(1.0) : chi.gauss_sum() / (std::pow(cd(0.0, 1.0), a) * std::sqrt(m));
    cd ratio = gamma((1.0 - s + static_cast<double>(a)) / 2.0) / gamma((s + static_cast<double>(a)) / 2.0);
    cd scale = std::exp((0.5 - s) * std::log(m / kPi));
    cd reflected = chi.modulus() == 1 ? riemann_zeta(1.0 - s) : dirichlet_L(1.0 - s, chi.conjugate());
    return eps * scale * ratio * reflected;
}

FactoredFunction g_factors(const AbelianSystem& sys) {
    const auto& chi = sys.character();
    const int q = chi.order();
    FactoredFunction fn;
    fn.factors.push_back({"zeta", [](cd s) { return riemann_zeta(s); }, q - 1, true});
    for (std::int64_t p : sys.ramified()) {
        const double lp = std::log(static_cast<double>(p));
        fn.factors.push_back({"(1-" + std::to_string(p) + "^-s)",
                              [lp](cd s) { return 1.0 - std::exp(-s * lp); }, q - 1, false});
    }
    for (int j = 1; j < q; ++j) {
        DirichletCharacter cj = chi.power(j);
        fn.factors.push_back({"L(s,chi^" + std::to_string(j) + ")", [cj](cd s) { return dirichlet_L(s, cj); }, -1, true});
    }
    return fn;
}

cd g_reflected(const AbelianSystem& sys, cd s) {
    const auto& chi = sys.character();
    const int q = chi.order();
    cd zeta = dirichlet_L_reflected(s, DirichletCharacter::principal(1));
    cd num = std::pow(zeta, q - 1);
    for (std::int64_t p : sys.ramified())
        num *= std::pow(1.0 - std::exp(-s * std::log(static_cast<double>(p))), q - 1);
    cd den = 1.0;
    for (int j = 1; j < q; ++j) den *= dirichlet_L_reflected(s, chi.power(j));
    return num / den;
}

GEvaluator g_closed_form(const AbelianSystem& sys, std::optional<SingularityCatalog> catalog) {
    auto fn = std::make_shared<FactoredFunction>(g_factors(sys));
    GEvaluator g;
    g.provenance = GProvenance::closed_form;
    g.description = "zeta(s)^{q-1} * ramified factors / prod L(s, chi^j)";
    g.value = [fn](cd s) { return fn->value(s); };
    g.log_value = [fn](cd s) { return fn->log_value(s); };
    g.log_valid_above = 1.05;
    g.catalog = std::move(catalog);
    return g;
}

// ---------------------------------------------------------------------------
// Zero search

namespace {

struct ArgTracker {
    const std::function<cd(cd)>& f;
    bool ok = true;

    double segment(cd a, cd b, cd fa, cd fb, int depth) {
        if (!ok) return 0.0;
        double d = std::arg(fb / fa);
        if (std::abs(d) <= 0.6) return d;
        if (depth > 40 || std::abs(b - a) < 1e-13) {
            ok = false;
            return 0.0;
        }
        cd mid = 0.5 * (a + b);
        cd fm = f(mid);
        if (!std::isfinite(std::abs(fm)) || std::abs(fm) < 1e-300) {
            ok = false;
            return 0.0;
        }
        return segment(a, mid, fa, fm, depth + 1) + segment(mid, b, fm, fb, depth + 1);
    }
};

}  // namespace

std::optional<long> rectangle_winding(const std::function<cd(cd)>& f, double re0, double re1, double im0,
                                      double im1) {
    const std::array<cd, 5> corners = {cd(re0, im0), cd(re1, im0), cd(re1, im1), cd(re0, im1), cd(re0, im0)};
    ArgTracker tracker{f};
    double total = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
        cd a = corners[e], b = corners[e + 1];
        const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(b - a) * 24.0)));
        cd prev_z = a;
        cd prev_f = f(a);
        if (!std::isfinite(std::abs(prev_f)) || std::abs(prev_f) < 1e-300) return std::nullopt;
        for (int k = 1; k <= steps; ++k) {
            cd z = a + (b - a) * (static_cast<double>(k) / steps);
            cd fz = f(z);
            if (!std::isfinite(std::abs(fz)) || std::abs(fz) < 1e-300) return std::nullopt;
            total += tracker.segment(prev_z, z, prev_f, fz, 0);
            if (!tracker.ok) return std::nullopt;
            prev_z = z;
            prev_f = fz;
        }
    }
    double turns = total / kTwoPi;
    long w = std::lround(turns);
    if (std::abs(turns - static_cast<double>(w)) > 0.05) return std::nullopt;
    return w;
}

namespace {

struct Box {
    double re0, re1, im0, im1;
    double size() const { return std::max(re1 - re0, im1 - im0); }
    bool contains(cd z, double margin) const {
        return z.real() >= re0 - margin && z.real() <= re1 + margin && z.imag() >= im0 - margin &&
               z.imag() <= im1 + margin;
    }
};

struct FoundRoot {
    cd location;
    int multiplicity;
};

class BoxScanner {
public:
    BoxScanner(const std::function<cd(cd)>& f, const ZeroSearchOptions& opt) : f_(f), opt_(opt) {}

    void process(const Box& box, long w) {
        if (w == 0) return;
        if (w < 0) fail(ErrorKind::unresolved_box, "negative winding for an entire factor");
        if (w == 1 && box.size() < 0.5) {
            if (auto z = newton(box, 1)) {
                roots_.push_back({*z, 1});
                return;
            }
        }
        if (w >= 2 && w <= opt_.max_multiplicity && box.size() < 1e-3) {
            if (auto z = newton(box, static_cast<int>(w))) {
                roots_.push_back({*z, static_cast<int>(w)});
                return;
            }
        }
        if (box.size() < opt_.min_box)
            fail(ErrorKind::unresolved_box, "box subdivision reached the minimum size without resolving");
        subdivide(box, w);
    }

    const std::vector<FoundRoot>& roots() const { return roots_; }

private:
    void subdivide(const Box& box, long w) {
        static constexpr std::array<double, 4> ratios = {0.4871, 0.5237, 0.4519, 0.5613};
        for (double r : ratios) {
            double rm = box.re0 + r * (box.re1 - box.re0);
            double im = box.im0 + r * (box.im1 - box.im0);
            std::array<Box, 4> kids = {Box{box.re0, rm, box.im0, im}, Box{rm, box.re1, box.im0, im},
                                       Box{box.re0, rm, im, box.im1}, Box{rm, box.re1, im, box.im1}};
            std::array<long, 4> ws{};
            bool ok = true;
            long sum = 0;
            for (std::size_t i = 0; i < 4 && ok; ++i) {
                auto wi = rectangle_winding(f_, kids[i].re0, kids[i].re1, kids[i].im0, kids[i].im1);
                if (!wi) {
                    ok = false;
                    break;
                }
                ws[i] = *wi;
                sum += *wi;
            }
            if (!ok || sum != w) continue;
            for (std::size_t i = 0; i < 4; ++i) process(kids[i], ws[i]);
            return;
        }
        fail(ErrorKind::unresolved_box, "could not subdivide a box consistently");
    }

    std::optional<cd> newton(const Box& box, int multiplicity) {
        cd z(0.5 * (box.re0 + box.re1), 0.5 * (box.im0 + box.im1));
        const double h = 1e-5;
        for (int it = 0; it < 80; ++it) {
            cd fz = f_(z);
            if (std::abs(fz) == 0.0) return box.contains(z, 1e-9) ? std::optional<cd>(z) : std::nullopt;
            cd df = (f_(z + h) - f_(z - h)) / (2.0 * h);
            if (std::abs(df) == 0.0) return std::nullopt;
            cd step = static_cast<double>(multiplicity) * fz / df;
            if (std::abs(step) > box.size()) step *= box.size() / std::abs(step);
            z -= step;
            if (!box.contains(z, 0.5 * box.size())) return std::nullopt;
            if (std::abs(step) < 0.01 * opt_.newton_tolerance) break;
        }
        if (!box.contains(z, 1e-12)) return std::nullopt;
        // Confirm convergence: a final step must be below tolerance.
        cd fz = f_(z);
        cd df = (f_(z + h) - f_(z - h)) / (2.0 * h);
        if (std::abs(df) > 0.0 && std::abs(static_cast<double>(multiplicity) * fz / df) > opt_.newton_tolerance)
            return std::nullopt;
        return z;
    }

    const std::function<cd(cd)>& f_;
    const ZeroSearchOptions& opt_;
    std::vector<FoundRoot> roots_;
};

}  // namespace

ZeroSearchResult find_zeros(const FactoredFunction& fn, double height, const ZeroSearchOptions& opt) {
    if (height > 100.0) fail(ErrorKind::invalid_input, "zero searches are limited to height <= 100");
    if (!(height > opt.im_lo)) fail(ErrorKind::invalid_input, "height must exceed the bottom of the search strip");
    ZeroSearchResult result;
    result.catalog.complete_up_to = height;
    std::vector<SingularPoint> raw;
    for (const auto& factor : fn.factors) {
        FactorTally tally{factor.label, factor.exponent, 0, 0};
        if (factor.zeros_in_strip) {
            BoxScanner scanner(factor.f, opt);
            // Horizontal cuts avoid round heights so edges rarely graze zeros.
            std::vector<double> cuts{opt.im_lo};
            for (double h = opt.im_lo + opt.initial_box_height * 0.9873; h < height; h += opt.initial_box_height)
                cuts.push_back(h);
            cuts.push_back(height);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                Box box{opt.re_lo, opt.re_hi, cuts[i], cuts[i + 1]};
                auto w = rectangle_winding(factor.f, box.re0, box.re1, box.im0, box.im1);
                if (!w) fail(ErrorKind::unresolved_box, "contour through a zero of " + factor.label);
                tally.winding_total += *w;
                scanner.process(box, *w);
            }
            for (const auto& r : scanner.roots()) {
                tally.refined_count += r.multiplicity;
                raw.push_back({r.location, r.multiplicity * factor.exponent});
            }
        }
        result.tallies.push_back(tally);
    }
    // Merge coincident points across factors.
    std::sort(raw.begin(), raw.end(), [](const SingularPoint& a, const SingularPoint& b) {
        return a.location.imag() < b.location.imag();
    });
    for (const auto& p : raw) {
        bool merged = false;
        for (auto& q : result.catalog.points) {
            if (std::abs(q.location - p.location) <= 1e-9 * std::abs(p.location)) {
                q.order += p.order;
                merged = true;
                break;
            }
        }
        if (!merged) result.catalog.points.push_back(p);
    }
    std::erase_if(result.catalog.points, [](const SingularPoint& p) { return p.order == 0; });
    result.catalog.sort();
    return result;
}

}  // namespace pzeta
