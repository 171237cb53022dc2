#pragma once

#include <ostream>

#include "run_config.hpp"

namespace ghr::cli {

// Each command writes its CSV to `csv`, a short summary to `log`, and returns
// 0 when every check passes or 1 otherwise.
int run_verify(const RunConfig& config, std::ostream& csv, std::ostream& log);
int run_table(const RunConfig& config, std::ostream& csv, std::ostream& log);
int run_taylor(const RunConfig& config, std::ostream& csv, std::ostream& log);
int run_mvt(const RunConfig& config, std::ostream& csv, std::ostream& log);
int run_descend(const RunConfig& config, std::ostream& csv, std::ostream& log);
int run_filter(const RunConfig& config, std::ostream& csv, std::ostream& log);

}  // namespace ghr::cli
