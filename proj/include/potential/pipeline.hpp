#pragma once

#include "potential/io.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace potential {

/// Resolutions after applying cfg.refine (coarea and identity levels doubled, orders times 1.5 per step).
RunConfig effective_config(const RunConfig& cfg);

HarmonicSolution run_solve(const RunConfig& cfg);

/// Criteria battery plus symmetry certificate. Per-criterion failures are recorded in the
/// document and do not stop the run.
Json run_check(const RunConfig& cfg, const HarmonicSolution& sol);

/// Weighted identities, Bochner and quasi-Einstein samples, and the truncated volume witness.
Json run_identities(const RunConfig& cfg, const HarmonicSolution& sol);

Json run_capacity(const RunConfig& cfg, const HarmonicSolution& sol);
Json run_decay(const RunConfig& cfg, const HarmonicSolution& sol);

/// All of the above in one document.
Json run_report(const RunConfig& cfg, const HarmonicSolution& sol);

/// Fixed-width table of a check document, one row per criterion entry.
std::string summary_table(const Json& check);

/// weight,f,levelIntegral rows of the volume term of each identity.
void write_identity_levels_csv(const Json& identities, std::ostream& out);
/// weight,side,f,b3,bh,firstIntegral rows of the boundary terms of each identity.
void write_identity_boundary_csv(const Json& identities, std::ostream& out);

/// Name of the error class, for embedding failures in reports.
std::string error_type(const std::exception& e);

}  // namespace potential
