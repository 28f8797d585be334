#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace consensus::cli {

  // Exit statuses of the `consensus` tool.
  enum ExitCode : int {
    kConsensus     = 0,  // also: success for reduce / simulate / verify ok
    kNotConsensus  = 1,  // also: witness rejected, no scrambling index
    kInputError    = 2,
    kResourceLimit = 3
  };

  // args excludes the program name.
  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err);

}  // namespace consensus::cli
