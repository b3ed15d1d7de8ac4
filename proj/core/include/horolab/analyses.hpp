#pragma once

#include "horolab/descriptor.hpp"
#include "horolab/report.hpp"

namespace horolab {

/// Dispatches a parsed run configuration to the named analysis and returns
/// the report. Identical configs (including seed) produce identical reports.
Report run_analysis(const RunConfig& config);

}  // namespace horolab
