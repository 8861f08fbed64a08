#pragma once

#include <vector>

#include "tlap/maps.hpp"
#include "tlap/operators.hpp"

namespace tlap {

/// Maximal connected set of interior lattice cells sharing one numerical
/// gradient rank (flood fill over the 2n-neighbor adjacency; for n = 2
/// this is 4-connectivity, which never merges across a one-cell seam).
struct RankComponent {
    int label = 0;
    int rank = 0;
    std::vector<std::vector<int>> cells;                 // lattice multi-indices
    std::vector<std::pair<Vec, Vec>> sample_points;      // (domain point, image point)
};

/// Least-squares affine subspace through a point cloud: base is the
/// centroid, basis the top principal directions of the centered cloud.
struct AffineFit {
    Vec base;
    std::vector<Vec> basis;  // orthonormal, `dim` entries
    int dim = 0;
    double rms = 0.0;
    double max_dev = 0.0;
};

std::vector<RankComponent> rank_segmentation(const MapSource& source,
                                             const BoxDomain& domain,
                                             const RankPolicy& policy);

AffineFit fit_affine(const std::vector<Vec>& points, int dim);

struct ComponentVerdict {
    RankComponent component;
    AffineFit fit;
    double diameter = 0.0;  // image diameter
    bool flat = false;
    /// Components smaller than 4 cells are reported but excluded from the
    /// overall verdict (too few image points for a stable fit).
    bool counted = true;
    /// rank == N: every affine test is vacuous, flagged rather than fitted.
    bool codim0 = false;
};

struct FlatnessReport {
    std::vector<ComponentVerdict> components;
    double tol = 0.0;
    bool all_flat = false;  // over counted components
};

/// Fits a line/plane per rank component and verdicts flat when the maximal
/// orthogonal deviation stays below tol * (1 + image diameter); rank-0
/// components are flat when their image diameter is below tol.
FlatnessReport flatness_report(const MapSource& source, const BoxDomain& domain,
                               const RankPolicy& policy, double tol);

/// Largest principal angle between two equal-dimensional fitted subspaces
/// (accurate near 0; used for "single common plane" checks).
double subspace_angle(const AffineFit& a, const AffineFit& b);

/// Angle between two fitted lines in [0, pi/2] (accurate near pi/2).
double line_angle(const AffineFit& a, const AffineFit& b);

}  // namespace tlap
