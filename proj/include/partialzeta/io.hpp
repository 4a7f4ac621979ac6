#pragma once

// JSON and CSV forms of systems, series and results.

#include <iosfwd>
#include <string>

#include "partialzeta/graph.hpp"
#include "partialzeta/numberfield.hpp"

namespace pzeta {

inline constexpr const char* kVersion = "0.1.0";

/// Round to 15 significant digits so serialized output is reproducible.
double round15(double x);
std::string fmt15(double x);
/// Finite values as rounded numbers; inf and nan as strings.
nlohmann::json json_number(double x);
nlohmann::json json_complex(cd z);

/// "2", "1.5+3i", "0.5-2i", "-4i"
cd parse_complex(const std::string& text);

/// {"coefficients": [{"num", "den"}...], "precision": n | null}
nlohmann::json series_to_json(const ExactSeries& s);
ExactSeries series_from_json(const nlohmann::json& j);
/// Coefficient list; each entry is the power-basis vector of rationals.
nlohmann::json cyclotomic_to_json(const CyclotomicPolynomial& p);

/// Rebuild a system from {"backend", "params"} as written by ZetaSystem::to_json.
/// Quadratic params accept {d} or {kronecker_d}; cyclic params are a
/// character spec {modulus, order, generator_values}.
SystemPtr system_from_json(const nlohmann::json& j);
VoltageGraph voltage_graph_from_json(const nlohmann::json& params);

/// id,norm,frob_class,frob_order rows.
void write_primes_csv(std::ostream& out, const std::vector<PrimeDatum>& primes);

nlohmann::json catalog_to_json(const SingularityCatalog& cat);

}  // namespace pzeta
