#pragma once

#include <string>

#include "json.hpp"

#include "rsc/cohomology.hpp"
#include "rsc/complex.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/parametrisation.hpp"
#include "rsc/process.hpp"

namespace rsc {

using Json = nlohmann::json;

Json to_json(const Simplex& s);
Json to_json(const Complex& c);  // {"n", "d", "facets"}
Json to_json(const CohomologySummary& s);
Json to_json(const ObstructionCopy& m);
Json to_json(const Cochain& f);
Json to_json(const CriticalityReport& r);
Json to_json(const HittingReport& r);
Json to_json(const TraversalWitness& w);

// Rebuilds the complex as the closure of the listed facets. Throws InvalidInput.
Complex complex_from_json(const Json& j);
Complex parse_complex(const std::string& text);
std::string dump_complex(const Complex& c);

}  // namespace rsc
