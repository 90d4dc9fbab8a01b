#pragma once

#include "sldyn/corresp.hpp"
#include "sldyn/morse.hpp"
#include "sldyn/params.hpp"
#include "sldyn/stg.hpp"

#include <string>
#include <vector>

namespace sldyn {

// Parameter files: {"gamma": {node: "p/q", ...},
//                   "edges": {"src->tgt": {"l": ..., "u": ..., "theta": ...}
//                             | {..., "theta_minus": ..., "theta_plus": ...}}}
// Rationals are strings ("p", "p/q", or decimal); never floats.
RawParams raw_params_from_json(const std::string& text);
std::string raw_params_to_json(const RawParams& raw);

std::string violations_to_json(const std::vector<Violation>& violations);

std::string signature_to_json(const Network& net, Model model,
                              const std::vector<std::vector<int>>& orders,
                              const std::vector<int>& targets);

std::string stg_to_dot(const TransitionGraph& g);
std::string stg_to_json(const TransitionGraph& g, const Network& net);

std::string morse_to_dot(const MorseGraph& mg, const Network& net);
std::string morse_to_json(const MorseGraph& mg, const Network& net, Model model);

std::string report_to_json(const CorrespondenceReport& report);

std::string path_result_to_json(bool exists, const std::vector<std::vector<int>>& path);

}  // namespace sldyn
