#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pjacobi/spectral.hpp"

namespace pjacobi {

enum class Verdict { Connected, Disconnected, Indeterminate };

std::string to_string(Verdict v);

/// Connected-component labeling of an epsilon-sublevel set, with the margin
/// diagnostics that make a grid verdict defensible.
struct RegionReport {
    double epsilon = 0.0;
    int component_count = 0;
    // 0 = outside; components numbered 1.. in row-major first-visit order.
    std::vector<int> labels;  // labels[iy * nx + ix]
    GridSpec grid;
    std::vector<long long> component_sizes;  // node counts, index = label - 1
    // For multi-component reports: the saddle margin, i.e. the smallest amount
    // epsilon would have to grow before two components merge on the grid.
    // For single-component / empty reports: min |Psi - epsilon| over nodes
    // adjacent to the set boundary.
    double boundary_margin = 0.0;
    Verdict verdict = Verdict::Indeterminate;
    int refinement_level = 0;
    bool empty_sublevel = false;   // epsilon below min Psi: vacuous case
    bool touches_frame = false;    // set may continue off-grid
    // Slack added to epsilon before thresholding (decide_connectedness only):
    // node capture radius + theta resolution term. Zero for label_components.
    double dilation = 0.0;
    // Smallest node-count separation between any two components (8-step metric);
    // 0 when fewer than two components.
    int min_gap_nodes = 0;
};

/// Strict labeling: nodes with Psi <= epsilon, 8-connectivity flood fill,
/// labels assigned in row-major first-visit order. epsilon must be > 0.
RegionReport label_components(const PseudoField& field, double epsilon);

struct ConnectivityOptions {
    int theta_count = 256;
    int nx = 400;
    int ny = 400;
    std::optional<GridSpec> grid;  // auto-padded spectrum box when absent
    int max_refinements = 3;
    int threads = 0;
};

/// Grid decision procedure for path-connectedness of {z : Psi(z) <= epsilon}.
///
/// Nodes are included when Psi <= epsilon + dilation, where dilation is the
/// cell capture radius plus the theta-resolution term; a thin sublevel set is
/// otherwise invisible between nodes. When components are separated by fewer
/// than 3 nodes or by a saddle margin under 10 grid spacings, the spacing is
/// halved around the set boundary (Lipschitz screening keeps this local) and
/// the decision is retried, up to max_refinements rounds.
RegionReport decide_connectedness(const PeriodicJacobiOperator& op, double epsilon,
                                  const ConnectivityOptions& opts = {});

/// Same decision on a precomputed field (no refinement possible).
RegionReport decide_on_field(const PseudoField& field, double epsilon,
                             double dilation);

/// Default grid: bounding box of the sampled spectrum padded by
/// 2 epsilon + dilation slack + 2% of the box diagonal per side.
GridSpec auto_grid(const PeriodicJacobiOperator& op, double epsilon,
                   int theta_count, int nx, int ny);

}  // namespace pjacobi
