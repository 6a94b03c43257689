#pragma once

#include <optional>
#include <string>
#include <vector>

#include "actch/bc_region.hpp"
#include "actch/cdc_solver.hpp"
#include "actch/channel_model.hpp"
#include "actch/gaussian.hpp"
#include "actch/probing.hpp"

namespace actch {

// JSON configs, one schema per spec kind (see configs/). Kernels are nested
// arrays over their conditioning tuple, innermost array a pmf over the
// output. Rows off by more than 1e-6 are rejected with the field path; rows
// between 1e-9 and 1e-6 are renormalized with a warning.

enum class SpecKind { Ptp, Bc, Probing, Gauss };

struct ParsedConfig {
    SpecKind kind = SpecKind::Ptp;
    std::optional<PtpActionSpec> ptp;
    std::optional<BcActionSpec> bc;
    std::optional<ProbingSpec> probing;
    std::optional<GaussPowers> gauss;
    std::string digest;  // stable under key reordering
    std::vector<std::string> warnings;
};

ParsedConfig parse_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

/// Decision-variable files for the verify subcommand.
enum class VarsKind { Ptp, Bc };

struct ParsedVars {
    VarsKind kind = VarsKind::Ptp;
    std::optional<CdcDecisionVars> ptp;
    std::optional<BcDecisionVars> bc;
};

ParsedVars parse_vars(const std::string& path);

}  // namespace actch
