#pragma once

// Prime data, zeta systems and truncated Euler products over Frobenius-order
// subsets.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "partialzeta/errors.hpp"

namespace pzeta {

using cd = std::complex<double>;

struct PrimeDatum {
    std::int64_t id = 0;
    double norm = 0.0;
    int frob_order = 1;
    int frob_class = 0;
};

/// A countable set of primes with norms and Frobenius classes in a cyclic
/// group, normalized so that the abscissa of convergence is 1.
///
/// Implementations must be safe to call concurrently; enumeration caches are
/// synchronized internally.
class ZetaSystem {
public:
    virtual ~ZetaSystem() = default;

    /// All primes with norm <= cutoff, sorted by (norm, id). Growing the
    /// cutoff only appends.
    virtual std::vector<PrimeDatum> enumerate(double cutoff) const = 0;
    virtual int group_order() const = 0;
    /// Bound on sum_{norm > cutoff} |log (1 - norm^-s)^-1| for Re s = sigma > 1.
    virtual double tail_bound(double cutoff, double sigma) const = 0;
    /// "quadratic", "cyclic", "graph" or "catalog"
    virtual std::string backend() const = 0;
    virtual nlohmann::json params() const = 0;

    nlohmann::json to_json() const { return {{"backend", backend()}, {"params", params()}}; }
};

using SystemPtr = std::shared_ptr<const ZetaSystem>;

/// A finite, explicitly listed prime set (backend "catalog"). Used for
/// synthetic systems and imported data.
class ExplicitSystem final : public ZetaSystem {
public:
    struct Entry {
        double norm;
        int frob_class;
    };

    ExplicitSystem(int group_order, std::vector<Entry> entries);

    std::vector<PrimeDatum> enumerate(double cutoff) const override;
    int group_order() const override { return group_order_; }
    double tail_bound(double cutoff, double sigma) const override;
    std::string backend() const override { return "catalog"; }
    nlohmann::json params() const override;

private:
    int group_order_;
    std::vector<PrimeDatum> primes_;
};

enum class TailMode { geometric_bound, pnt_heuristic };

struct TruncationPolicy {
    double cutoff = 1e4;
    TailMode tail_mode = TailMode::geometric_bound;
};

/// Truncated product together with its log (accumulated factor by factor)
/// and a bound on |log(true / value)|.
struct TruncatedValue {
    cd value;
    cd log_value;
    double tail = 0.0;
    bool certified = true;
    std::size_t factors = 0;
};

/// (1 - norm^-s)^-1
cd local_factor(const PrimeDatum& p, cd s);

/// log(1 + z), accurate for small |z|.
cd log1p(cd z);

/// -log(1 - c * norm^-s), the log of one Euler factor with coefficient c.
cd log_local_factor(double norm, cd s, cd coefficient = 1.0);

int frobenius_order(int frob_class, int group_order);

std::map<int, std::vector<PrimeDatum>> partition_Pn(const ZetaSystem& sys, double cutoff);

double tail_for(const ZetaSystem& sys, cd s, const TruncationPolicy& pol, bool& certified);

/// prod over enumerated p with frob_order == n of the local factor.
TruncatedValue truncated_zeta_Pn(const ZetaSystem& sys, int n, cd s, const TruncationPolicy& pol);
/// prod over all enumerated p.
TruncatedValue truncated_zeta_P(const ZetaSystem& sys, cd s, const TruncationPolicy& pol);

/// Log-sum of local factors over a fixed prime list. Order selects P_n;
/// order 0 takes every prime.
cd log_euler_sum(const std::vector<PrimeDatum>& primes, cd s, int order = 0);

double rosser_schoenfeld_tail(double cutoff, double sigma);

}  // namespace pzeta
