#pragma once

#include <string>

#include "json.hpp"

#include "densfluct/bounds.hpp"
#include "densfluct/distribution.hpp"
#include "densfluct/exact_lattice.hpp"
#include "densfluct/magnus.hpp"
#include "densfluct/nonequil_observables.hpp"

namespace densfluct {

using Json = nlohmann::json;

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// {type: "arcsine", center, width} or {type: "empirical", points: [{value, weight}]}
Json to_json(const EnergyDistribution& d);
// {n_sites, amplitudes: [[re, im], ...]}
Json to_json(const lattice::QuantumState& s);
// {n_sites, decomposition, rows, cols, entries: row-major [[re, im], ...]}
Json to_json(const lattice::MatrixOperator& op);
Json to_json(const lattice::CorrelatorReport& r);
Json to_json(const bounds::BoundReport& r);
Json to_json(const magnus::VarianceSeries& s);
Json to_json(const nonequil::CollapseFit& f);

EnergyDistribution distribution_from_json(const Json& j);
lattice::QuantumState state_from_json(const Json& j);

}  // namespace densfluct
