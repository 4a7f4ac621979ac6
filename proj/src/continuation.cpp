#include "partialzeta/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace pzeta {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int prime_group_order(const ZetaSystem& sys) {
    int q = sys.group_order();
    if (!is_prime(q)) fail(ErrorKind::invalid_input, "group order " + std::to_string(q) + " is not prime");
    return q;
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

cd int_power(cd base, long e) {
    cd result = 1.0;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalogs

void SingularityCatalog::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.order == 0) fail(ErrorKind::invalid_input, "catalog point with order 0");
        if (!(p.location.real() > 0.0 && p.location.real() < 1.0 && p.location.imag() > 0.0))
            fail(ErrorKind::invalid_input, "catalog point outside the strip 0<Re<1, Im>0");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(points[j].location - p.location) <= 1e-12 * std::max(1.0, std::abs(p.location)))
                fail(ErrorKind::invalid_input, "duplicate catalog point");
    }
}

void SingularityCatalog::sort() {
    std::sort(points.begin(), points.end(), [](const SingularPoint& a, const SingularPoint& b) {
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        return a.location.real() < b.location.real();
    });
}

SingularityCatalog read_catalog_csv(std::istream& in, double complete_up_to) {
    SingularityCatalog cat;
    cat.complete_up_to = complete_up_to;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("complete_up_to");
            if (pos != std::string::npos && complete_up_to <= 0.0) {
                auto colon = line.find_first_of(":=", pos);
                if (colon != std::string::npos) cat.complete_up_to = std::stod(line.substr(colon + 1));
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("re", 0) == 0) continue;
        }
        std::stringstream ss(line);
        std::string re, im, order;
        if (!std::getline(ss, re, ',') || !std::getline(ss, im, ',') || !std::getline(ss, order, ','))
            fail(ErrorKind::invalid_input, "malformed catalog row: " + line);
        try {
            cat.points.push_back({cd(std::stod(re), std::stod(im)), std::stoi(order)});
        } catch (const std::exception&) {
            fail(ErrorKind::invalid_input, "malformed catalog row: " + line);
        }
    }
    cat.sort();
    cat.validate();
    return cat;
}

void write_catalog_csv(std::ostream& out, const SingularityCatalog& cat) {
    char buf[128];
    out << "# complete_up_to: ";
    std::snprintf(buf, sizeof buf, "%.15g", cat.complete_up_to);
    out << buf << "\nre,im,order\n";
    for (const auto& p : cat.points) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g,%d\n", p.location.real(), p.location.imag(), p.order);
        out << buf;
    }
}

// ---------------------------------------------------------------------------
// Evaluators

cd FactoredFunction::value(cd s) const {
    cd acc = 1.0;
    for (const auto& f : factors) {
        cd v = f.f(s);
        if (f.exponent >= 0) {
            acc *= int_power(v, f.exponent);
        } else {
            acc /= int_power(v, -f.exponent);
        }
    }
    return acc;
}

cd FactoredFunction::log_value(cd s) const {
    cd acc = 0.0;
    for (const auto& f : factors) acc += static_cast<double>(f.exponent) * std::log(f.f(s));
    return acc;
}

const char* to_string(GProvenance p) {
    switch (p) {
        case GProvenance::closed_form: return "closed-form";
        case GProvenance::rational_in_u: return "rational-in-u";
        case GProvenance::external_catalog: return "external-catalog";
        case GProvenance::truncated_product: return "truncated-product";
    }
    return "unknown";
}

GEvaluator g_truncated(SystemPtr sys, double cutoff) {
    const int q = sys->group_order();
    auto primes = std::make_shared<const std::vector<PrimeDatum>>(sys->enumerate(cutoff));
    auto log_g = [primes, q](cd s) {
        if (s.real() <= 1.0) fail(ErrorKind::domain, "truncated g needs Re s > 1");
        return static_cast<double>(q) * log_euler_sum(*primes, s) - log_Z_sum(*primes, q, s);
    };
    GEvaluator g;
    g.provenance = GProvenance::truncated_product;
    g.description = "zeta_P^q / Z_P from truncated Euler products";
    g.log_value = log_g;
    g.value = [log_g](cd s) { return std::exp(log_g(s)); };
    g.log_valid_above = 1.0;
    return g;
}

GEvaluator g_external(SingularityCatalog cat, std::function<cd(cd)> value, std::function<cd(cd)> log_value) {
    GEvaluator g;
    g.provenance = GProvenance::external_catalog;
    g.description = "external catalog";
    g.value = std::move(value);
    if (log_value) {
        g.log_value = std::move(log_value);
    } else {
        auto v = g.value;
        g.log_value = [v](cd s) { return std::log(v(s)); };
    }
    g.catalog = std::move(cat);
    return g;
}

PartialZetaEvaluator make_partial_evaluator(SystemPtr sys, GEvaluator g, int depth, TruncationPolicy policy) {
    if (depth < 0) fail(ErrorKind::invalid_input, "depth must be nonnegative");
    PartialZetaEvaluator ev;
    ev.q = prime_group_order(*sys);
    ev.sys = std::move(sys);
    ev.g = std::move(g);
    ev.depth = depth;
    ev.policy = policy;
    return ev;
}

cd log_f_convergent(const PartialZetaEvaluator& ev, cd z) {
    if (z.real() <= 1.0) fail(ErrorKind::domain, "log f needs Re z > 1");
    const auto primes = ev.sys->enumerate(ev.policy.cutoff);
    if (z.real() >= ev.euler_floor || z.real() < ev.g.log_valid_above || !ev.g.log_value)
        return log_euler_sum(primes, z, ev.q);
    cd acc = 0.0;
    double weight = 1.0;
    const double q = ev.q;
    while (z.real() < ev.euler_floor) {
        acc += (weight / q) * ev.g.log_value(z);
        weight /= q;
        z *= q;
    }
    return acc + weight * log_euler_sum(primes, z, ev.q);
}

ContinuedValue continue_f_power_detail(const PartialZetaEvaluator& ev, cd s) {
    const int r = ev.depth;
    const long qr = ipow(ev.q, r);
    const double threshold = 1.0 / static_cast<double>(qr);
    if (s.real() <= threshold)
        fail(ErrorKind::domain, "continuation at depth " + std::to_string(r) + " needs Re s > " +
                                    std::to_string(threshold));
    if (ev.g.catalog) {
        cd z = s;
        for (int i = 0; i < r; ++i, z *= static_cast<double>(ev.q)) {
            for (const auto& p : ev.g.catalog->points) {
                if (std::abs(z - p.location) < ev.proximity_radius ||
                    std::abs(z - std::conj(p.location)) < ev.proximity_radius)
                    fail(ErrorKind::singularity_proximity, "g evaluated within the proximity radius of a singular point");
            }
        }
    }
    cd log_top = log_f_convergent(ev, s * static_cast<double>(qr));
    ContinuedValue out;
    out.value = std::exp(log_top);
    out.log_abs = log_top.real();
    out.arg = log_top.imag();
    cd z = s;
    for (int i = 0; i < r; ++i, z *= static_cast<double>(ev.q)) {
        cd gv = ev.g.value(z);
        if (!std::isfinite(gv.real()) || !std::isfinite(gv.imag()) || gv == 0.0)
            fail(ErrorKind::singularity_proximity, "g is singular at a required point");
        long e = ipow(ev.q, r - i - 1);
        out.value *= int_power(gv, e);
        out.log_abs += static_cast<double>(e) * std::log(std::abs(gv));
        out.arg += static_cast<double>(e) * std::arg(gv);
    }
    out.arg = wrap_angle(out.arg);
    return out;
}

cd continue_f_power(const PartialZetaEvaluator& ev, cd s) { return continue_f_power_detail(ev, s).value; }

// ---------------------------------------------------------------------------
// Functional equations

double feq_residual(const ZetaSystem& sys, cd s, double cutoff) {
    if (s.real() <= 1.0) fail(ErrorKind::domain, "functional-equation residual needs Re s > 1");
    const int q = prime_group_order(sys);
    const auto primes = sys.enumerate(cutoff);
    const double qd = q;
    cd lhs = qd * log_euler_sum(primes, s, q) - log_euler_sum(primes, qd * s, q);
    cd rhs = qd * log_euler_sum(primes, s) - log_Z_sum(primes, q, s);
    return std::abs(lhs - rhs);
}

std::pair<int, int> split_two_primes(int n) {
    for (int a = 2; a * a <= n; ++a) {
        if (n % a != 0) continue;
        int b = n / a;
        if (a != b && is_prime(a) && is_prime(b)) return {a, b};
        break;
    }
    fail(ErrorKind::invalid_input, "group order " + std::to_string(n) + " is not a product of two distinct primes");
}

namespace {

cd composite_rhs(const std::vector<PrimeDatum>& primes, int n, int q1, int q2, cd s) {
    return log_Z_sum(primes, n, s) + static_cast<double>(n) * log_euler_sum(primes, s) -
           static_cast<double>(q2) * log_Z_sum(primes, n, s, q1) -
           static_cast<double>(q1) * log_Z_sum(primes, n, s, q2);
}

}  // namespace

double composite_feq_residual(const ZetaSystem& sys, cd s, double cutoff) {
    if (s.real() <= 1.0) fail(ErrorKind::domain, "functional-equation residual needs Re s > 1");
    const int n = sys.group_order();
    auto [q1, q2] = split_two_primes(n);
    const auto primes = sys.enumerate(cutoff);
    auto S = [&](cd z) { return log_euler_sum(primes, z, n); };
    cd lhs = S(static_cast<double>(n) * s) + static_cast<double>(n) * S(s) -
             static_cast<double>(q2) * S(static_cast<double>(q1) * s) -
             static_cast<double>(q1) * S(static_cast<double>(q2) * s);
    return std::abs(lhs - composite_rhs(primes, n, q1, q2, s));
}

double composite_reduction_residual(const ZetaSystem& sys, cd s, double cutoff) {
    if (s.real() <= 1.0) fail(ErrorKind::domain, "functional-equation residual needs Re s > 1");
    const int n = sys.group_order();
    auto [q1, q2] = split_two_primes(n);
    const auto primes = sys.enumerate(cutoff);
    auto log_f = [&](cd z) {
        return static_cast<double>(q2) * log_euler_sum(primes, z, n) -
               log_euler_sum(primes, static_cast<double>(q2) * z, n);
    };
    cd lhs = static_cast<double>(q1) * log_f(s) - log_f(static_cast<double>(q1) * s);
    return std::abs(lhs - composite_rhs(primes, n, q1, q2, s));
}

// ---------------------------------------------------------------------------
// Singularity bookkeeping

std::vector<cd> omega_set(const SingularityCatalog& cat, int q, int k_max, double height) {
    std::vector<cd> out;
    for (const auto& p : cat.points) {
        cd z = p.location;
        for (int k = 0; k <= k_max; ++k, z /= static_cast<double>(q))
            if (z.imag() <= height) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](cd a, cd b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return out;
}

std::vector<MqClass> mq_classes(const SingularityCatalog& cat, int q) {
    constexpr double tol = 1e-9;
    SingularityCatalog sorted = cat;
    sorted.sort();
    const auto& pts = sorted.points;
    std::vector<bool> used(pts.size(), false);
    const double top = pts.empty() ? 0.0 : pts.back().location.imag();
    std::vector<MqClass> classes;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        MqClass c;
        c.representative = pts[i].location;
        c.members.push_back(pts[i]);
        c.weight = pts[i].order;
        double scale = 1.0;
        for (int k = 1;; ++k) {
            scale *= q;
            cd target = c.representative * scale;
            if (target.imag() > top * (1.0 + tol) || target.real() >= 1.0) break;
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (used[j]) continue;
                if (rel_close(pts[j].location.real(), target.real(), tol) &&
                    rel_close(pts[j].location.imag(), target.imag(), tol)) {
                    used[j] = true;
                    c.members.push_back(pts[j]);
                    c.weight += pts[j].order / scale;
                    break;
                }
            }
        }
        classes.push_back(std::move(c));
    }
    return classes;
}

std::vector<MqClass> lambda_q(const std::vector<MqClass>& classes) {
    std::vector<MqClass> out;
    for (const auto& c : classes)
        if (std::abs(c.weight) > 1e-12) out.push_back(c);
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent_with_natural_boundary: return "consistent-with-natural-boundary";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::gap_found: return "gap-found";
    }
    return "unknown";
}

BoundaryReport boundary_report(const SingularityCatalog& cat, int q, double height, const BoundaryOptions& opt) {
    if (q < 2) fail(ErrorKind::invalid_input, "q must be at least 2");
    if (opt.window_count < 1 || opt.delta <= 0.0 || opt.probe_periods < 1)
        fail(ErrorKind::invalid_input, "invalid boundary options");
    // a gap below an incomplete height would be an artifact of the catalog
    if (cat.complete_up_to < height) {
        std::ostringstream msg;
        msg << "catalog is complete only up to height " << cat.complete_up_to;
        fail(ErrorKind::invalid_input, msg.str());
    }
    auto classes = lambda_q(mq_classes(cat, q));
    BoundaryReport rep;
    std::vector<double> member_heights;
    for (const auto& c : classes) {
        if (c.representative.imag() <= 0.0 || c.representative.imag() > height) continue;
        rep.betas.push_back(c.representative.imag());
        for (const auto& m : c.members)
            if (m.location.imag() <= height) member_heights.push_back(m.location.imag());
    }
    if (rep.betas.size() < 10)
        fail(ErrorKind::insufficient_data,
             "boundary report needs at least 10 classes in Lambda_q, got " + std::to_string(rep.betas.size()));
    std::sort(rep.betas.begin(), rep.betas.end());

    // Growth trend of beta_j.
    const std::size_t J = rep.betas.size() - 1;
    rep.last_root = std::pow(rep.betas[J], 1.0 / static_cast<double>(J));
    rep.last_log_over_j = std::log(rep.betas[J]) / static_cast<double>(J);
    {
        std::size_t start = J / 2;
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t j = start; j <= J; ++j) {
            double x = static_cast<double>(j), y = std::log(rep.betas[j]);
            n += 1;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = n * sxx - sx * sx;
        rep.log_ratio_slope = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;
        rep.asymptotic_ratio = std::exp(rep.log_ratio_slope);
    }

    // Omega_q heights in the probe band; above height/q only level k = 0
    // exists, so the band sits below it.
    const double qd = q;
    rep.probe_upper = height / qd;
    rep.probe_lower = rep.probe_upper / std::pow(qd, opt.probe_periods);
    std::vector<double> omega;
    for (double h : member_heights) {
        for (double z = h; z > rep.probe_lower * 1e-3; z /= qd)
            if (z <= height) omega.push_back(z);
    }
    std::sort(omega.begin(), omega.end());
    for (double z : omega)
        if (z > rep.probe_lower && z <= rep.probe_upper) rep.omega_heights.push_back(z);

    auto count_in = [&](double lo, double hi) {
        return std::upper_bound(omega.begin(), omega.end(), hi) - std::upper_bound(omega.begin(), omega.end(), lo);
    };
    const double span = std::log(rep.probe_upper / rep.probe_lower);
    for (int i = 0; i < opt.window_count; ++i) {
        double lo = rep.probe_lower * std::exp(span * i / opt.window_count);
        double hi = lo * (1.0 + opt.delta);
        long c = static_cast<long>(count_in(lo, hi));
        rep.window_counts.push_back(static_cast<int>(c));
        bool below = !omega.empty() && omega.front() <= lo;
        bool above = !omega.empty() && omega.back() > hi;
        if (c == 0 && below && above) rep.empty_windows.push_back({lo, hi});
    }

    // Largest multiplicative gap between consecutive Omega_q heights that
    // touches the probe band.
    double best = 1.0;
    for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
        double a = omega[i], b = omega[i + 1];
        if (b <= rep.probe_lower || a > rep.probe_upper) continue;
        if (a > 0 && b / a > best) {
            best = b / a;
            rep.largest_gap = {a, b};
        }
    }

    const bool gap = !rep.empty_windows.empty() || best >= 1.0 + opt.delta;
    const bool trend_ok = rep.asymptotic_ratio <= 1.0 + opt.trend_tolerance;
    if (gap) {
        rep.verdict = Verdict::gap_found;
    } else if (trend_ok) {
        rep.verdict = Verdict::consistent_with_natural_boundary;
    } else {
        rep.verdict = Verdict::inconclusive;
    }
    return rep;
}

nlohmann::json BoundaryReport::to_json() const {
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& w : empty_windows) gaps.push_back({{"lower", w.lower}, {"upper", w.upper}});
    return {
        {"betas", betas},
        {"trend",
         {{"last_root", last_root},
          {"log_ratio_slope", log_ratio_slope},
          {"asymptotic_ratio", asymptotic_ratio},
          {"last_log_over_j", last_log_over_j}}},
        {"gaps", gaps},
        {"largest_gap", {{"lower", largest_gap.lower}, {"upper", largest_gap.upper}}},
        {"probe", {{"lower", probe_lower}, {"upper", probe_upper}, {"window_counts", window_counts}}},
        {"omega_q_heights", omega_heights},
        {"verdict", to_string(verdict)},
    };
}

CountingFunctions counting_functions(const SingularityCatalog& cat, int q, double height, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::invalid_input, "alpha must lie in (0, 1/2)");
    CountingFunctions out;
    for (const auto& p : cat.points) {
        const double re = p.location.real(), im = p.location.imag();
        if (!(im > 0.0 && im < height)) continue;
        if (p.order > 0 && std::abs(re - 0.5) <= 1e-6) ++out.zeros_on_critical_line;
        if (p.order < 0 && re > 0.0 && re < alpha) out.pole_order_left += -p.order;
    }
    for (const auto& c : lambda_q(mq_classes(cat, q)))
        if (c.representative.imag() > 0.0 && c.representative.imag() < height) ++out.omega_q;
    return out;
}

}  // namespace pzeta
