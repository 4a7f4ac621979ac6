#include "partialzeta/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pzeta {

cd log1p(cd z) {
    if (std::abs(z) < 1e-4) {
        // z - z^2/2 + z^3/3 - z^4/4
        return z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)));
    }
    return std::log(1.0 + z);
}

cd local_factor(const PrimeDatum& p, cd s) {
    cd x = std::exp(-s * std::log(p.norm));
    cd denom = 1.0 - x;
    if (std::abs(denom) < 1e-15)
        fail(ErrorKind::singular_local_factor, "local factor singular at norm " + std::to_string(p.norm));
    return 1.0 / denom;
}

cd log_local_factor(double norm, cd s, cd coefficient) {
    cd x = coefficient * std::exp(-s * std::log(norm));
    if (std::abs(1.0 - x) < 1e-15)
        fail(ErrorKind::singular_local_factor, "local factor singular at norm " + std::to_string(norm));
    return -log1p(-x);
}

int frobenius_order(int frob_class, int group_order) {
    int c = ((frob_class % group_order) + group_order) % group_order;
    return group_order / std::gcd(c, group_order);
}

std::map<int, std::vector<PrimeDatum>> partition_Pn(const ZetaSystem& sys, double cutoff) {
    std::map<int, std::vector<PrimeDatum>> buckets;
    for (const auto& p : sys.enumerate(cutoff)) buckets[p.frob_order].push_back(p);
    return buckets;
}

double rosser_schoenfeld_tail(double cutoff, double sigma) {
    // pi(t) <= 1.25506 t / log t for t > 1. Partial summation against
    // h(t) = t^-sigma / (1 - t^-sigma) gives the closed form below.
    if (cutoff < 2.0) return std::numeric_limits<double>::infinity();
    const double c = 1.0 / (1.0 - std::pow(cutoff, -sigma));
    return c * 1.25506 * sigma / std::log(cutoff) * std::pow(cutoff, 1.0 - sigma) / (sigma - 1.0);
}

double tail_for(const ZetaSystem& sys, cd s, const TruncationPolicy& pol, bool& certified) {
    const double sigma = s.real();
    if (sigma <= 1.0) {
        certified = false;
        return std::numeric_limits<double>::infinity();
    }
    if (pol.tail_mode == TailMode::pnt_heuristic) {
        certified = false;
        if (pol.cutoff < 2.0) return std::numeric_limits<double>::infinity();
        return std::pow(pol.cutoff, 1.0 - sigma) / ((sigma - 1.0) * std::log(pol.cutoff));
    }
    certified = true;
    return sys.tail_bound(pol.cutoff, sigma);
}

cd log_euler_sum(const std::vector<PrimeDatum>& primes, cd s, int order) {
    cd acc = 0.0;
    for (const auto& p : primes)
        if (order == 0 || p.frob_order == order) acc += log_local_factor(p.norm, s);
    return acc;
}

namespace {
TruncatedValue finish(cd log_sum, double tail, bool certified, std::size_t factors) {
    return {std::exp(log_sum), log_sum, tail, certified, factors};
}
}  // namespace

TruncatedValue truncated_zeta_Pn(const ZetaSystem& sys, int n, cd s, const TruncationPolicy& pol) {
    if (n < 1) fail(ErrorKind::invalid_input, "subset order must be positive");
    bool certified = true;
    double tail = tail_for(sys, s, pol, certified);
    cd acc = 0.0;
    std::size_t count = 0;
    if (sys.group_order() % n == 0) {
        for (const auto& p : sys.enumerate(pol.cutoff)) {
            if (p.frob_order != n) continue;
            acc += log_local_factor(p.norm, s);
            ++count;
        }
    }
    return finish(acc, tail, certified, count);
}

TruncatedValue truncated_zeta_P(const ZetaSystem& sys, cd s, const TruncationPolicy& pol) {
    bool certified = true;
    double tail = tail_for(sys, s, pol, certified);
    auto primes = sys.enumerate(pol.cutoff);
    return finish(log_euler_sum(primes, s), tail, certified, primes.size());
}

// ---------------------------------------------------------------------------

ExplicitSystem::ExplicitSystem(int group_order, std::vector<Entry> entries)
    : group_order_(group_order) {
    if (group_order < 1) fail(ErrorKind::invalid_input, "group order must be positive");
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.norm < b.norm; });
    std::int64_t id = 0;
    for (const auto& e : entries) {
        if (!(e.norm > 1.0)) fail(ErrorKind::invalid_input, "prime norms must exceed 1");
        int cls = ((e.frob_class % group_order) + group_order) % group_order;
        primes_.push_back({id++, e.norm, frobenius_order(cls, group_order), cls});
    }
}

std::vector<PrimeDatum> ExplicitSystem::enumerate(double cutoff) const {
    std::vector<PrimeDatum> out;
    for (const auto& p : primes_) {
        if (p.norm > cutoff) break;
        out.push_back(p);
    }
    return out;
}

double ExplicitSystem::tail_bound(double cutoff, double sigma) const {
    double tail = 0.0;
    for (const auto& p : primes_) {
        if (p.norm <= cutoff) continue;
        double x = std::pow(p.norm, -sigma);
        tail += x / (1.0 - x);
    }
    return tail;
}

nlohmann::json ExplicitSystem::params() const {
    nlohmann::json primes = nlohmann::json::array();
    for (const auto& p : primes_) primes.push_back({{"norm", p.norm}, {"frob_class", p.frob_class}});
    return {{"group_order", group_order_}, {"primes", primes}};
}

}  // namespace pzeta
