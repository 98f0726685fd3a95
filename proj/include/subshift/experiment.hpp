#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "subshift/config.hpp"
#include "subshift/report.hpp"
#include "subshift/word.hpp"

namespace subshift {

Word generate_sample(const GeneratorSpec& spec);

// Runs the named experiment. Stage timings go to `log` (one line per stage)
// and into the report only when cfg.timings is set.
ReportEnvelope run(const ExperimentConfig& cfg, std::ostream* log = nullptr);
// Same, on a sample that is already in memory.
ReportEnvelope run(const ExperimentConfig& cfg, const Word& sample, std::ostream* log = nullptr);

// Writes <out_dir>/<experiment>.csv and/or .json; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ReportEnvelope& report, const ExperimentConfig& cfg);

}  // namespace subshift
