#ifndef DIMER_RUNNER_HPP
#define DIMER_RUNNER_HPP

#include "dimer/config.hpp"

namespace dimer::runner {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kManifestSchema = "1.0.0";

/// Run one job: computes the subcommand's outputs and writes CSV files plus
/// manifest.json into job.out_dir. Returns the process exit code
/// (0 ok, 1 compute error, 2 config error), printing diagnostics to stderr.
int execute(const dimer::config::JobConfig& job);

}  // namespace dimer::runner

#endif
