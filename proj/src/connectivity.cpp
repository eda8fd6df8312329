#include "pjacobi/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pjacobi/linalg.hpp"

namespace pjacobi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMinGapNodes = 3;
constexpr double kMarginSpacings = 10.0;

struct Offset {
    int dx, dy;
};
constexpr Offset kNeighbors8[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                  {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

struct LabelResult {
    std::vector<int> labels;
    std::vector<long long> sizes;
    int count = 0;
    bool touches_frame = false;
};

// Row-major first-visit flood fill over `inside` with 8-connectivity.
LabelResult flood_fill(const std::vector<char>& inside, int nx, int ny) {
    LabelResult res;
    res.labels.assign(inside.size(), 0);
    std::vector<size_t> stack;
    for (size_t start = 0; start < inside.size(); ++start) {
        if (!inside[start] || res.labels[start] != 0) continue;
        const int label = ++res.count;
        long long size = 0;
        stack.push_back(start);
        res.labels[start] = label;
        while (!stack.empty()) {
            const size_t i = stack.back();
            stack.pop_back();
            ++size;
            const int ix = static_cast<int>(i % nx);
            const int iy = static_cast<int>(i / nx);
            if (ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1)
                res.touches_frame = true;
            for (const auto& [dx, dy] : kNeighbors8) {
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
                const size_t j = size_t(jy) * nx + jx;
                if (inside[j] && res.labels[j] == 0) {
                    res.labels[j] = label;
                    stack.push_back(j);
                }
            }
        }
        res.sizes.push_back(size);
    }
    return res;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    int unite(int i, int j) {
        i = find(i);
        j = find(j);
        if (i != j) parent[j] = i;
        return i;
    }
};

// Saddle margin: process nodes by ascending Psi and detect the first merge of
// basins seeded by distinct components. That Psi value minus the threshold is
// the smallest amount the threshold must grow before two components connect
// on this grid.
double saddle_margin(const PseudoField& field, const LabelResult& lab,
                     double threshold) {
    const int nx = field.grid.nx, ny = field.grid.ny;
    const size_t n = field.psi.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&field](int i, int j) {
        return field.psi[i] < field.psi[j];
    });

    UnionFind uf(n);
    std::vector<int> comp_of_root(n, 0);  // 0 = unseeded
    std::vector<char> active(n, 0);
    for (int idx : order) {
        active[idx] = 1;
        int root = uf.find(idx);
        if (lab.labels[idx] != 0) {
            comp_of_root[root] = lab.labels[idx];
        }
        const int ix = idx % nx, iy = idx / nx;
        for (const auto& [dx, dy] : kNeighbors8) {
            const int jx = ix + dx, jy = iy + dy;
            if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
            const int j = jy * nx + jx;
            if (!active[j]) continue;
            const int rj = uf.find(j);
            root = uf.find(root);
            if (rj == root) continue;
            const int ca = comp_of_root[root], cb = comp_of_root[rj];
            if (ca != 0 && cb != 0 && ca != cb)
                return field.psi[idx] - threshold;
            const int merged = uf.unite(root, rj);
            comp_of_root[merged] = (ca != 0) ? ca : cb;
            root = merged;
        }
    }
    return std::numeric_limits<double>::infinity();
}

// Smallest outside-node count separating two distinct components, measured
// along 8-connected paths (multi-source BFS from all labeled nodes).
int min_gap_nodes(const LabelResult& lab, int nx, int ny) {
    const size_t n = lab.labels.size();
    std::vector<int> dist(n, -1), src(n, 0);
    std::deque<int> queue;
    for (size_t i = 0; i < n; ++i) {
        if (lab.labels[i] != 0) {
            dist[i] = 0;
            src[i] = lab.labels[i];
            queue.push_back(static_cast<int>(i));
        }
    }
    int best = std::numeric_limits<int>::max();
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        if (dist[i] * 2 >= best) continue;
        const int ix = i % nx, iy = i / nx;
        for (const auto& [dx, dy] : kNeighbors8) {
            const int jx = ix + dx, jy = iy + dy;
            if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
            const int j = jy * nx + jx;
            if (dist[j] < 0) {
                dist[j] = dist[i] + 1;
                src[j] = src[i];
                queue.push_back(j);
            } else if (src[j] != src[i]) {
                best = std::min(best, dist[i] + dist[j]);
            }
        }
    }
    return best == std::numeric_limits<int>::max() ? 0 : best;
}

// Margin for reports with at most one component: how far the field stays from
// the operative threshold across the set boundary.
double boundary_band_margin(const PseudoField& field, const LabelResult& lab,
                            double threshold) {
    const int nx = field.grid.nx, ny = field.grid.ny;
    double margin = std::numeric_limits<double>::infinity();
    if (lab.count == 0) {
        for (double v : field.psi) margin = std::min(margin, std::abs(v - threshold));
        return margin;
    }
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const size_t i = size_t(iy) * nx + ix;
            if (lab.labels[i] != 0) continue;
            bool adjacent = false;
            for (const auto& [dx, dy] : kNeighbors8) {
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
                if (lab.labels[size_t(jy) * nx + jx] != 0) {
                    adjacent = true;
                    break;
                }
            }
            if (adjacent) margin = std::min(margin, std::abs(field.psi[i] - threshold));
        }
    }
    return std::isfinite(margin) ? margin : 0.0;
}

RegionReport build_report(const PseudoField& field, double epsilon, double dilation) {
    const double threshold = epsilon + dilation;
    const int nx = field.grid.nx, ny = field.grid.ny;
    std::vector<char> inside(field.psi.size());
    for (size_t i = 0; i < field.psi.size(); ++i)
        inside[i] = field.psi[i] <= threshold ? 1 : 0;

    LabelResult lab = flood_fill(inside, nx, ny);

    RegionReport report;
    report.epsilon = epsilon;
    report.dilation = dilation;
    report.grid = field.grid;
    report.component_count = lab.count;
    report.component_sizes = lab.sizes;
    report.labels = std::move(lab.labels);
    report.touches_frame = lab.touches_frame;
    report.empty_sublevel = (lab.count == 0);

    LabelResult view;
    view.labels = report.labels;  // min_gap/saddle read labels only
    view.count = lab.count;
    if (lab.count >= 2) {
        report.boundary_margin = saddle_margin(field, view, threshold);
        report.min_gap_nodes = min_gap_nodes(view, nx, ny);
    } else {
        report.boundary_margin = boundary_band_margin(field, view, threshold);
        report.min_gap_nodes = 0;
    }

    const double spacing = std::max(field.grid.hx(), field.grid.hy());
    if (report.touches_frame && lab.count > 0) {
        report.verdict = Verdict::Indeterminate;
    } else if (lab.count == 0) {
        report.verdict = Verdict::Disconnected;  // vacuous; flagged
    } else if (lab.count == 1) {
        report.verdict = Verdict::Connected;
    } else if (report.min_gap_nodes < kMinGapNodes ||
               report.boundary_margin < kMarginSpacings * spacing) {
        report.verdict = Verdict::Indeterminate;
    } else {
        report.verdict = Verdict::Disconnected;
    }
    return report;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Connected: return "connected";
        case Verdict::Disconnected: return "disconnected";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

RegionReport label_components(const PseudoField& field, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("label_components: epsilon must be > 0");
    if (field.psi.empty())
        throw std::invalid_argument("label_components: empty field");
    return build_report(field, epsilon, 0.0);
}

RegionReport decide_on_field(const PseudoField& field, double epsilon,
                             double dilation) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("decide_on_field: epsilon must be > 0");
    return build_report(field, epsilon, dilation);
}

GridSpec auto_grid(const PeriodicJacobiOperator& op, double epsilon,
                   int theta_count, int nx, int ny) {
    const auto sample = sample_spectrum(op, theta_count);
    GridSpec box = sample.bounding_box();
    // Symmetrize about the real axis: the spectrum of a real operator is
    // conjugation-symmetric, and a symmetric grid halves the field cost.
    const double im_extent = std::max(std::abs(box.im_min), std::abs(box.im_max));
    box.im_min = -im_extent;
    box.im_max = im_extent;

    const double slack = (kPi / theta_count) * theta_lipschitz(op);
    const double width = box.re_max - box.re_min;
    const double height = box.im_max - box.im_min;
    const double diag = std::max(std::hypot(width, height), 1e-6);
    // 2 epsilon keeps the sublevel set inside; the extra terms keep the
    // rasterized (dilated) set off the frame.
    const double pad = 2.0 * epsilon + slack + 0.03 * diag;
    GridSpec grid;
    grid.re_min = box.re_min - pad;
    grid.re_max = box.re_max + pad;
    grid.im_min = box.im_min - pad;
    grid.im_max = box.im_max + pad;
    grid.nx = nx;
    grid.ny = ny;
    return grid;
}

namespace {

// Halve the spacing, evaluating Psi only where the coarse field cannot
// certify a node's side of the threshold through the Lipschitz bound.
PseudoField refine_field(const PseudoField& coarse, const PeriodicJacobiOperator& op,
                         double next_threshold, int threads) {
    GridSpec fine_grid = coarse.grid;
    fine_grid.nx = 2 * coarse.grid.nx - 1;
    fine_grid.ny = 2 * coarse.grid.ny - 1;

    PseudoField fine;
    fine.grid = fine_grid;
    fine.theta_count = coarse.theta_count;
    fine.psi.assign(size_t(fine_grid.nx) * fine_grid.ny, 0.0);

    const auto thetas = theta_grid(coarse.theta_count);
    std::vector<Matrix> symbols;
    symbols.reserve(thetas.size());
    for (double t : thetas) symbols.push_back(build_symbol(op, t).entries);

    struct Pending {
        size_t index;
        Complex z;
    };
    std::vector<Pending> pending;

    for (int iy = 0; iy < fine_grid.ny; ++iy) {
        for (int ix = 0; ix < fine_grid.nx; ++ix) {
            const size_t i = size_t(iy) * fine_grid.nx + ix;
            if (ix % 2 == 0 && iy % 2 == 0) {
                fine.psi[i] = coarse.at(ix / 2, iy / 2);
                continue;
            }
            const Complex z = fine_grid.node(ix, iy);
            double lower = -std::numeric_limits<double>::infinity();
            double upper = std::numeric_limits<double>::infinity();
            for (int cy = iy / 2; cy <= iy / 2 + 1; ++cy) {
                for (int cx = ix / 2; cx <= ix / 2 + 1; ++cx) {
                    if (cx >= coarse.grid.nx || cy >= coarse.grid.ny) continue;
                    const double v = coarse.at(cx, cy);
                    const double dist = std::abs(coarse.grid.node(cx, cy) - z);
                    lower = std::max(lower, v - dist);
                    upper = std::min(upper, v + dist);
                }
            }
            if (lower > next_threshold) {
                fine.psi[i] = lower;  // certified outside
            } else if (upper <= next_threshold) {
                fine.psi[i] = upper;  // certified inside
            } else {
                pending.push_back({i, z});
            }
        }
    }

    const int nthreads = std::max(1, threads);
    const int chunk = 256;
    const int nchunks = static_cast<int>((pending.size() + chunk - 1) / chunk);
    std::vector<std::thread> dummy;  // run via the same pattern as compute_field
    std::atomic<int> next{0};
    auto work = [&](int) {
        Eigen::SelfAdjointEigenSolver<Matrix> es;  // kept warm per worker
        Matrix shifted(op.p(), op.p());
        for (int c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) {
            const size_t lo = size_t(c) * chunk;
            const size_t hi = std::min(pending.size(), lo + chunk);
            for (size_t q = lo; q < hi; ++q) {
                double best = std::numeric_limits<double>::infinity();
                for (const Matrix& sym : symbols) {
                    shifted = -sym;
                    shifted.diagonal().array() += pending[q].z;
                    best = std::min(best, sigma_min(shifted));
                }
                fine.psi[pending[q].index] = best;
            }
        }
    };
    if (nthreads <= 1 || nchunks <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return fine;
}

}  // namespace

RegionReport decide_connectedness(const PeriodicJacobiOperator& op, double epsilon,
                                  const ConnectivityOptions& opts) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("decide_connectedness: epsilon must be > 0");

    const GridSpec grid = opts.grid ? *opts.grid
                                    : auto_grid(op, epsilon, opts.theta_count,
                                                opts.nx, opts.ny);
    const double theta_slack = (kPi / opts.theta_count) * theta_lipschitz(op);

    PseudoField field = compute_field(op, grid, opts.theta_count, opts.threads);
    RegionReport report;
    for (int round = 0;; ++round) {
        const double dilation = field.grid.capture_radius() + theta_slack;
        report = build_report(field, epsilon, dilation);
        report.refinement_level = round;

        const double spacing = std::max(field.grid.hx(), field.grid.hy());
        const bool ambiguous =
            report.component_count > 1 &&
            (report.min_gap_nodes < kMinGapNodes ||
             report.boundary_margin < kMarginSpacings * spacing);
        if (!ambiguous || round >= opts.max_refinements) break;

        const GridSpec next_grid{field.grid.re_min, field.grid.re_max,
                                 field.grid.im_min, field.grid.im_max,
                                 2 * field.grid.nx - 1, 2 * field.grid.ny - 1};
        const double next_dilation =
            GridSpec{next_grid}.capture_radius() + theta_slack;
        field = refine_field(field, op, epsilon + next_dilation, opts.threads);
    }
    return report;
}

}  // namespace pjacobi
