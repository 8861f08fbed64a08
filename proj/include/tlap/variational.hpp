#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlap/maps.hpp"
#include "tlap/operators.hpp"

namespace tlap {

/// Compactly contained quadrature box with tensor-product trapezoid
/// weights (one weight per lattice point; they sum to the box volume).
struct Subdomain {
    BoxDomain box;
    std::vector<double> weights;

    static Subdomain make(const BoxDomain& box, const MapSource& source);
};

enum class BumpKind { sine_product, offset_sine, zero };

const char* to_string(BumpKind b);

/// Lattice vector field normal to the image of the source:
/// nu(x) = phi(x) * perp(Du(x)) * w, rescaled to max |nu| = 1, with D nu
/// taken by central differences of the constructed lattice values (one
/// ghost layer outside the box supplies the boundary stencils).
struct NormalField {
    BoxDomain lattice;
    int N = 0;
    std::vector<Vec> values;
    std::vector<Mat> grads;
    bool boundary_zero = false;
    double normality_defect = 0.0;  // max |par nu| / (1 + |nu|)
    Vec w;
    std::string bump_desc;
};

/// Throws DegenerateError when w is tangent to the image everywhere
/// (perp * w vanishes on the whole lattice); callers retry with a new w.
NormalField make_normal_field(const MapSource& source, const Subdomain& sub,
                              BumpKind bump, const RankPolicy& policy,
                              bool boundary_zero, const Vec& w);

/// Seeded variant: draws w uniformly on the sphere of R^N, redrawing a few
/// times on a degenerate direction before giving up.
NormalField make_normal_field(const MapSource& source, const Subdomain& sub,
                              BumpKind bump, const RankPolicy& policy,
                              bool boundary_zero, std::uint64_t seed);

/// L^p norm of |Du + epsilon Dnu| over the subdomain: the weighted p-sum
/// to the power 1/p for finite p, the lattice maximum for p = infinity.
/// Pass field = nullptr for the unperturbed energy.
double energy(const MapSource& source, const NormalField* field, double epsilon,
              double p, const Subdomain& sub);

struct TrialResult {
    std::uint64_t seed = 0;
    Vec w;
    std::string bump;
    bool boundary_zero = false;
    std::vector<std::pair<double, double>> energies;  // (epsilon, energy)
    double min_margin = 0.0;     // min over epsilon of energy - base
    double stationarity = 0.0;   // centered difference at the smallest epsilon
};

struct VariationalReport {
    double p = 2.0;  // may be infinity
    std::string verdict;  // minimal | violated | non-solution-input
    double base_energy = 0.0;
    double gate_residual = 0.0;  // max normalized tangential residual on sub
    double fd_slack_h2 = 0.0;    // documented O(h^2) slack of the lattice D nu
    std::vector<TrialResult> trials;
    double stationarity_derivative = 0.0;  // max |stationarity| over trials
    std::uint64_t seed = 0;
    int requested_trials = 0;
};

/// Samples seeded normal perturbations and checks the perturbed energies
/// never drop below base - 1e-12 (1 + base). The source must satisfy the
/// tangential-Laplacian system on the subdomain (normalized residual
/// <= 1e-8), otherwise the report is labeled non-solution-input. For
/// finite p the fields vanish on the boundary; for p = infinity each
/// trial is run both with and without boundary vanishing.
VariationalReport minimality_check(const MapSource& source, const Subdomain& sub,
                                   double p, int trials,
                                   const std::vector<double>& eps_grid,
                                   const RankPolicy& policy, std::uint64_t seed = 1);

}  // namespace tlap
