#include "partialzeta/group.hpp"

#include <cmath>

namespace pzeta {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CyclicGroup::CyclicGroup(int order) : order_(order) {
    if (order < 2) fail(ErrorKind::invalid_input, "cyclic group order must be at least 2");
}

std::vector<int> CyclicGroup::divisors() const {
    std::vector<int> out;
    for (int d = 1; d <= order_; ++d)
        if (order_ % d == 0) out.push_back(d);
    return out;
}

cd character_value(const Character& chi, long frob_class) {
    long e = (static_cast<long>(chi.index) * frob_class) % chi.order;
    if (e < 0) e += chi.order;
    if (e == 0) return 1.0;
    if (2 * e == chi.order) return -1.0;
    return std::polar(1.0, kTwoPi * static_cast<double>(e) / chi.order);
}

cd log_L_sum(const std::vector<PrimeDatum>& primes, const Character& chi, cd s) {
    cd acc = 0.0;
    for (const auto& p : primes) acc += log_local_factor(p.norm, s, character_value(chi, p.frob_class));
    return acc;
}

TruncatedValue truncated_L(const ZetaSystem& sys, const Character& chi, cd s, const TruncationPolicy& pol) {
    if (chi.order != sys.group_order())
        fail(ErrorKind::invalid_input, "character order does not match the system's group");
    bool certified = true;
    double tail = tail_for(sys, s, pol, certified);
    auto primes = sys.enumerate(pol.cutoff);
    cd log_sum = log_L_sum(primes, chi, s);
    return {std::exp(log_sum), log_sum, tail, certified, primes.size()};
}

cd log_Z_sum(const std::vector<PrimeDatum>& primes, int group_order, cd s, int subgroup_order) {
    cd acc = 0.0;
    for (int j = 0; j < group_order; ++j) {
        if (subgroup_order > 0 && (static_cast<long>(j) * subgroup_order) % group_order != 0) continue;
        acc += log_L_sum(primes, Character{group_order, j}, s);
    }
    return acc;
}

TruncatedValue truncated_Z(const ZetaSystem& sys, cd s, const TruncationPolicy& pol) {
    return truncated_Z_subgroup(sys, sys.group_order(), s, pol);
}

TruncatedValue truncated_Z_subgroup(const ZetaSystem& sys, int subgroup_order, cd s,
                                    const TruncationPolicy& pol) {
    const int m = sys.group_order();
    if (subgroup_order < 1 || m % subgroup_order != 0)
        fail(ErrorKind::invalid_input, "subgroup order must divide the group order");
    bool certified = true;
    double tail = tail_for(sys, s, pol, certified);
    auto primes = sys.enumerate(pol.cutoff);
    cd log_sum = log_Z_sum(primes, m, s, subgroup_order);
    // Each character contributes at most one full-P tail.
    return {std::exp(log_sum), log_sum, tail * subgroup_order, certified, primes.size()};
}

double zp_factorization_residual(const ZetaSystem& sys, cd s, double cutoff) {
    if (s.real() <= 1.0) fail(ErrorKind::domain, "factorization residual needs Re s > 1");
    const auto primes = sys.enumerate(cutoff);
    const int m = sys.group_order();
    cd lhs = log_Z_sum(primes, m, s);
    cd rhs = 0.0;
    for (int n = 1; n <= m; ++n) {
        if (m % n != 0) continue;
        rhs += static_cast<double>(m / n) * log_euler_sum(primes, static_cast<double>(n) * s, n);
    }
    return std::abs(lhs - rhs);
}

}  // namespace pzeta
