#pragma once

#include <string>
#include <vector>

#include "besovmm/embed.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/rispace.hpp"
#include "besovmm/smoothness.hpp"

namespace besovmm {

/// {"family": "lorentz_zygmund", "p": 1.5, "r": 2, "beta": 0.5, "convexify": 1}.
/// Exponents may be the string "inf". Weights are power-log presets
/// {"coef", "power", "log_power", "loglog_power"} under "w" (Lambda) or "phi"
/// (Marcinkiewicz); Orlicz takes "Phi": {"kind": "power"|"power_log", "p", "b"}.
RISpaceSpec spec_from_json(const std::string& text);
/// A single spec object or an array of them.
std::vector<RISpaceSpec> spec_list_from_json(const std::string& text);
std::string spec_to_json(const RISpaceSpec& spec);

std::string step_to_json(const StepDecreasing& f);
StepDecreasing step_from_json(const std::string& text);

std::string modulus_profile_to_json(const ModulusProfile& profile);
std::string k_bounds_to_json(const std::vector<KBounds>& rows);
std::string report_to_json(const EmbeddingReport& report);
/// label,lhs,rhs,ratio
std::string report_to_csv(const EmbeddingReport& report);

/// %.17g, with inf/-inf/nan spelled out.
std::string format_number(double v);
/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace besovmm
