#pragma once

#include "multistable/config.hpp"

namespace multistable {

/// Entry point of the `multistable` command. Returns the process exit code:
/// 0 success, 2 invalid arguments or domain violation, 3 resource cap,
/// 4 numerical failure (and 1 for a verification suite that does not pass).
int run_cli(int argc, char** argv);

/// Commands on a merged configuration (JSON keys mirror the long flags with
/// '-' replaced by '_'). Each returns an exit code and may throw Error.
int cmd_sample_path(const Json& config);
int cmd_cf(const Json& config);
int cmd_verify(const Json& config);
int cmd_norm(const Json& config);
int cmd_localize(const Json& config);

}  // namespace multistable
