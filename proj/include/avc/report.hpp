#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "avc/scenario.hpp"
#include "avc/spectral.hpp"

namespace avc {

/// Aligned human-readable rendering of the design figures and guideline
/// verdicts.
void print_design_report(std::ostream& out, const FftDesign& d, const GuidelineReport& r);

/// `field,value,unit` rows for the same content.
void print_design_csv(std::ostream& out, const FftDesign& d, const GuidelineReport& r);

/// Static SVG line chart of S and A against time.
std::string render_trace_svg(const std::vector<TraceRecord>& trace);

} // namespace avc
