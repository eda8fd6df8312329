#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pjacobi/connectivity.hpp"
#include "pjacobi/spectral.hpp"

namespace pjacobi::plot {

/// One open or closed polyline in data coordinates.
using Polyline = std::vector<std::pair<double, double>>;

/// Marching-squares contour of the field at the given level. Saddle cells are
/// resolved by the cell-average rule. Segments are chained into polylines.
std::vector<Polyline> contour_lines(const PseudoField& field, double level);

struct PlotOptions {
    int width = 720;
    int height = 720;
    std::string title;
    bool timestamp = true;  // emitted as an SVG comment only
};

/// Scatter plot of a spectrum sample.
std::string spectrum_svg(const SpectrumSample& sample, const PlotOptions& opts);

/// Contour plot of the field at one or more levels, with an optional
/// spectrum overlay.
std::string contour_svg(const PseudoField& field, const std::vector<double>& levels,
                        const SpectrumSample* overlay, const PlotOptions& opts);

/// Component map: in-set nodes colored by label.
std::string region_svg(const RegionReport& report, const PlotOptions& opts);

}  // namespace pjacobi::plot
