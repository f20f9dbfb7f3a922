#pragma once

#include <string>

#include "ikep/generator.hpp"
#include "ikep/model.hpp"
#include "ikep/simharness.hpp"

namespace ikep {

/// Instance wire format (round-trips losslessly, "inf" encodes unbounded):
/// {
///   "n": 2,
///   "vertices": [{"id": 0, "country": 0}, ...],
///   "arcs": [[0,1], ...],
///   "gamma": {"icl": 3, "ncl": [2,2], "iss": [1,2], "isn": [1,1]}
/// }
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

/// Standalone parameter set; carries its own "n".
std::string gamma_to_json(const GammaParams& g);
GammaParams gamma_from_json(const std::string& text);

/// {"country_sizes":[5,5,5], "arc_probability_national":0.2,
///  "arc_probability_international":0.1, "gamma":{...}, "seed":42}
/// or "ratio":{"parts":[3,2,1],"total":300} in place of country_sizes.
std::string gen_config_to_json(const GenConfig& cfg);
GenConfig gen_config_from_json(const std::string& text);

/// {"corpus":[<gen config>|{"file":"inst.json"}...], "mechanisms":[...],
///  "order_runs_per_instance":5, "sweep":[{"tag":"...","gamma":{...}}],
///  "seed":0, "workers":0}; file paths resolve relative to the process cwd.
ExperimentConfig experiment_config_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ikep
