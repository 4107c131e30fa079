#pragma once

#include <iosfwd>
#include <string>

#include "perclab/config.hpp"
#include "perclab/experiments.hpp"

namespace perclab {

// cdf-overlay: s1 against mc and fredholm (either may be missing, not both).
// convergence-ladder: rung against error columns, log-scaled errors.
// kernel-slice: y against value.
enum class PlotKind { CdfOverlay, ConvergenceLadder, KernelSlice };

PlotKind parse_plot_kind(const std::string& name);

// Throws ConfigError when the table lacks the columns the plot kind needs.
void write_svg(const Table& t, PlotKind kind, std::ostream& os);

}  // namespace perclab
