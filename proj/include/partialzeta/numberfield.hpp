#pragma once

// Abelian zeta systems over Q: Dirichlet characters, their L-functions with
// analytic continuation, and zero catalogs in the critical strip.

#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "partialzeta/continuation.hpp"

namespace pzeta {

inline constexpr std::int64_t kSieveCap = 10'000'000;

/// Primes <= limit by a cached Eratosthenes sieve. Refuses limits beyond
/// kSieveCap.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Kronecker symbol (a / n).
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// A Dirichlet character stored by discrete logs: chi(a) = exp(2 pi i k/order)
/// with k = class_of(a), or 0 when gcd(a, modulus) > 1.
class DirichletCharacter {
public:
    DirichletCharacter() = default;

    static DirichletCharacter principal(int modulus);
    /// chi_D(n) = (D / n) for a fundamental discriminant D.
    static DirichletCharacter kronecker(std::int64_t discriminant);
    /// From values on generators of (Z/m)^*: chi(g) = exp(2 pi i e/order).
    static DirichletCharacter from_generators(int modulus, int order,
                                              const std::vector<std::pair<int, int>>& generator_exponents);

    int modulus() const { return modulus_; }
    /// Order of the character as an element of the dual group.
    int order() const { return order_; }
    /// Discrete log in Z/order, or -1 for residues sharing a factor with the modulus.
    int class_of(std::int64_t n) const;
    cd value(std::int64_t n) const;
    bool is_principal() const;
    /// 0 if chi(-1) = 1, 1 if chi(-1) = -1.
    int parity() const;
    int conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }
    DirichletCharacter power(int j) const;
    DirichletCharacter conjugate() const { return power(-1); }
    cd gauss_sum() const;

    /// A generating set of (Z/m)^* with the discrete log of chi on each.
    std::vector<std::pair<int, int>> generator_values() const;
    /// {modulus, order, generator_values}
    nlohmann::json to_json() const;
    static DirichletCharacter from_json(const nlohmann::json& j);

private:
    void reduce_order();

    int modulus_ = 1;
    int order_ = 1;
    std::vector<int> log_table_;
};

/// Zeta system of the cyclic extension cut out by a character of prime
/// order q: frob_class(p) = discrete log of chi(p), ramified primes excluded.
class AbelianSystem final : public ZetaSystem {
public:
    AbelianSystem(DirichletCharacter chi, std::int64_t kronecker_d = 0);

    std::vector<PrimeDatum> enumerate(double cutoff) const override;
    int group_order() const override { return chi_.order(); }
    double tail_bound(double cutoff, double sigma) const override;
    std::string backend() const override { return kronecker_d_ ? "quadratic" : "cyclic"; }
    nlohmann::json params() const override;

    const DirichletCharacter& character() const { return chi_; }
    /// Primes p with chi(p) = 0, kept so zeta_k can be reconstituted.
    std::vector<std::int64_t> ramified() const;
    std::int64_t kronecker_d() const { return kronecker_d_; }

private:
    DirichletCharacter chi_;
    std::int64_t kronecker_d_;
};

std::shared_ptr<AbelianSystem> kronecker_system(std::int64_t d);
std::shared_ptr<AbelianSystem> cyclic_system(const DirichletCharacter& chi);

struct EulerMaclaurinOptions {
    int min_terms = 50;
    int bernoulli_terms = 10;
};

/// Hurwitz zeta(s, a) for a > 0, s != 1.
cd hurwitz_zeta(cd s, double a, const EulerMaclaurinOptions& opt = {});
cd riemann_zeta(cd s, const EulerMaclaurinOptions& opt = {});
/// L(s, chi) through the Hurwitz decomposition; entire for non-principal chi.
cd dirichlet_L(cd s, const DirichletCharacter& chi, const EulerMaclaurinOptions& opt = {});
/// L(s, chi) from L(1-s, conj chi) via the functional equation; chi primitive.
cd dirichlet_L_reflected(cd s, const DirichletCharacter& chi);

cd gamma(cd z);
/// xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s)
cd completed_xi(cd s);

/// g = zeta_P^q / Z_P = zeta(s)^{q-1} prod_{p ramified}(1-p^-s)^{q-1} / prod_{j=1}^{q-1} L(s, chi^j)
FactoredFunction g_factors(const AbelianSystem& sys);
/// The same quantity via the reflected L-values (second evaluation path).
cd g_reflected(const AbelianSystem& sys, cd s);
GEvaluator g_closed_form(const AbelianSystem& sys, std::optional<SingularityCatalog> catalog = std::nullopt);

struct ZeroSearchOptions {
    double re_lo = 0.0;
    double re_hi = 1.0;
    double im_lo = 1e-3;
    double initial_box_height = 2.0;
    double newton_tolerance = 1e-10;
    double min_box = 1e-8;
    int max_multiplicity = 3;
};

struct FactorTally {
    std::string label;
    int exponent = 0;
    long winding_total = 0;
    long refined_count = 0;  // refined zeros counted with multiplicity
};

struct ZeroSearchResult {
    SingularityCatalog catalog;
    std::vector<FactorTally> tallies;
};

/// Zeros and poles of prod f_i^{e_i} in {0 < Re s < 1, 0 < Im s < height}:
/// argument-principle box scans per factor, Newton refinement, orders from
/// winding numbers times exponents.
ZeroSearchResult find_zeros(const FactoredFunction& fn, double height, const ZeroSearchOptions& opt = {});

/// Winding number of f around the rectangle [re0, re1] x [im0, im1]; empty
/// if the contour passes too close to a zero.
std::optional<long> rectangle_winding(const std::function<cd(cd)>& f, double re0, double re1, double im0,
                                      double im1);

}  // namespace pzeta
