#pragma once

// Characters of a finite cyclic group and the L-functions they twist.

#include "partialzeta/core.hpp"

namespace pzeta {

class CyclicGroup {
public:
    explicit CyclicGroup(int order);
    int order() const { return order_; }
    /// Divisors of the order, ascending.
    std::vector<int> divisors() const;

private:
    int order_;
};

/// chi_j(k) = exp(2 pi i j k / order); index 0 is the trivial character.
struct Character {
    int order = 1;
    int index = 0;

    bool is_trivial() const { return index % order == 0; }
    Character conjugate() const { return {order, (order - index) % order}; }
};

cd character_value(const Character& chi, long frob_class);

/// log of prod_p (1 - chi(frob_class) N(p)^-s)^-1 over a fixed prime list.
cd log_L_sum(const std::vector<PrimeDatum>& primes, const Character& chi, cd s);

TruncatedValue truncated_L(const ZetaSystem& sys, const Character& chi, cd s, const TruncationPolicy& pol);

/// Z_P(s): the product of truncated_L over all characters of G.
TruncatedValue truncated_Z(const ZetaSystem& sys, cd s, const TruncationPolicy& pol);

/// Z_P^(H)(s) for the subgroup H of order `subgroup_order`, realized through
/// the characters of G whose order divides |H| (the dual of G/H' with
/// |H'| = |G|/|H|).
TruncatedValue truncated_Z_subgroup(const ZetaSystem& sys, int subgroup_order, cd s,
                                    const TruncationPolicy& pol);

cd log_Z_sum(const std::vector<PrimeDatum>& primes, int group_order, cd s, int subgroup_order = 0);

/// |log Z_P(s) - sum_{n | #G} (#G/n) log zeta_{P_n}(ns)| over one prime set.
double zp_factorization_residual(const ZetaSystem& sys, cd s, double cutoff);

}  // namespace pzeta
