#pragma once

// Functional equations for zeta_{P_q}, the recursive continuation of
// f(s)^{q^r} into Re s > 1/q^r, and singularity bookkeeping for the
// natural-boundary criterion.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "partialzeta/core.hpp"
#include "partialzeta/group.hpp"

namespace pzeta {

struct SingularPoint {
    cd location;
    int order = 0;  // negative for poles
};

struct SingularityCatalog {
    std::vector<SingularPoint> points;
    double complete_up_to = 0.0;

    /// Points pairwise distinct, inside 0 < Re < 1, Im > 0, nonzero orders.
    void validate() const;
    void sort();
};

SingularityCatalog read_catalog_csv(std::istream& in, double complete_up_to);
void write_catalog_csv(std::ostream& out, const SingularityCatalog& cat);

/// A meromorphic function given as prod_i f_i(s)^{e_i}. Keeping the factors
/// separate lets zero searches run on each entire factor and lets log g be
/// formed from per-factor principal logs.
struct FactoredFunction {
    struct Factor {
        std::string label;
        std::function<cd(cd)> f;
        int exponent = 1;
        /// False when the factor has no zeros in the open strip 0 < Re s < 1.
        bool zeros_in_strip = true;
    };
    std::vector<Factor> factors;

    cd value(cd s) const;
    /// Sum of exponent * principal log of each factor.
    cd log_value(cd s) const;
};

enum class GProvenance { closed_form, rational_in_u, external_catalog, truncated_product };

const char* to_string(GProvenance p);

/// g(s) = zeta_P(s)^q / Z_P(s) on its meromorphic domain.
struct GEvaluator {
    GProvenance provenance = GProvenance::closed_form;
    std::string description;
    std::function<cd(cd)> value;
    /// The true (Euler-product) log of g; valid for Re s >= log_valid_above.
    std::function<cd(cd)> log_value;
    double log_valid_above = 1.05;
    std::optional<SingularityCatalog> catalog;
};

/// g from truncated Euler products of the system itself (valid for Re s > 1).
GEvaluator g_truncated(SystemPtr sys, double cutoff);

/// g from an imported singularity catalog plus an evaluation callback.
GEvaluator g_external(SingularityCatalog cat, std::function<cd(cd)> value,
                      std::function<cd(cd)> log_value = {});

/// Evaluator for f(s)^{q^r} built from f(s)^q / f(qs) = g(s).
struct PartialZetaEvaluator {
    SystemPtr sys;
    int q = 2;
    GEvaluator g;
    int depth = 1;
    TruncationPolicy policy;
    /// f(q^r s) comes straight from the truncated Euler product once
    /// Re(q^r s) >= euler_floor; below it the convergent series
    /// log f(z) = sum_i q^{-i-1} log g(q^i z) carries it up to the floor.
    double euler_floor = 3.0;
    double proximity_radius = 1e-6;
};

PartialZetaEvaluator make_partial_evaluator(SystemPtr sys, GEvaluator g, int depth,
                                            TruncationPolicy policy = {});

struct ContinuedValue {
    cd value;
    /// log|value| and arg(value) in (-pi, pi], usable where value overflows.
    double log_abs = 0.0;
    double arg = 0.0;
};

/// log f(z) for Re z > 1 (see PartialZetaEvaluator::euler_floor).
cd log_f_convergent(const PartialZetaEvaluator& ev, cd z);

ContinuedValue continue_f_power_detail(const PartialZetaEvaluator& ev, cd s);
cd continue_f_power(const PartialZetaEvaluator& ev, cd s);

/// |log[f(s)^q / f(qs)] - log[zeta_P(s)^q / Z_P(s)]| over one prime set,
/// where f = zeta_{P_q} and q = #G (prime).
double feq_residual(const ZetaSystem& sys, cd s, double cutoff);

/// Residual of the composite-order equation for #G = q1 q2.
double composite_feq_residual(const ZetaSystem& sys, cd s, double cutoff);

/// |log f(s)^{q1} / f(q1 s) - log g(s)| with f(s) = zeta_{P_{q1q2}}(s)^{q2} / zeta_{P_{q1q2}}(q2 s)
/// and g the right-hand side of the composite equation.
double composite_reduction_residual(const ZetaSystem& sys, cd s, double cutoff);

/// The two distinct primes with q1 * q2 = n, q1 < q2; throws otherwise.
std::pair<int, int> split_two_primes(int n);

std::vector<cd> omega_set(const SingularityCatalog& cat, int q, int k_max, double height);

struct MqClass {
    cd representative;
    double weight = 0.0;
    std::vector<SingularPoint> members;
};

std::vector<MqClass> mq_classes(const SingularityCatalog& cat, int q);
std::vector<MqClass> lambda_q(const std::vector<MqClass>& classes);

struct BoundaryOptions {
    int window_count = 64;
    double delta = 0.1;
    /// Asymptotic consecutive-height ratio accepted as tending to 1.
    double trend_tolerance = 0.25;
    /// Number of multiplicative periods below height/q probed for gaps.
    int probe_periods = 1;
};

enum class Verdict { consistent_with_natural_boundary, inconclusive, gap_found };
const char* to_string(Verdict v);

struct GapWindow {
    double lower = 0.0;
    double upper = 0.0;
};

struct BoundaryReport {
    std::vector<double> betas;
    double last_root = 0.0;        // beta_J^{1/J}
    double log_ratio_slope = 0.0;  // LSQ slope of log beta_j vs j, last half
    double asymptotic_ratio = 0.0; // exp(log_ratio_slope)
    double last_log_over_j = 0.0;  // log(beta_J)/J
    std::vector<double> omega_heights;
    double probe_lower = 0.0;
    double probe_upper = 0.0;
    std::vector<int> window_counts;
    std::vector<GapWindow> empty_windows;
    GapWindow largest_gap;
    Verdict verdict = Verdict::inconclusive;

    nlohmann::json to_json() const;
};

BoundaryReport boundary_report(const SingularityCatalog& cat, int q, double height,
                               const BoundaryOptions& opt = {});

struct CountingFunctions {
    long zeros_on_critical_line = 0;  // I(T)
    long pole_order_left = 0;         // J_alpha(T)
    long omega_q = 0;                 // Omega_q(T)
};

CountingFunctions counting_functions(const SingularityCatalog& cat, int q, double height, double alpha);

}  // namespace pzeta
