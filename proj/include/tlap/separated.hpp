#pragma once

#include <utility>
#include <vector>

#include "tlap/maps.hpp"
#include "tlap/operators.hpp"

namespace tlap {

/// Additively separated map u(x,y) = f(x) + g(y) with C^2 curve factors
/// on open intervals.
struct SeparatedMap {
    Curve f;
    Curve g;
    double x_lo = -2.0, x_hi = 2.0;
    double y_lo = -2.0, y_hi = 2.0;
    int N = 0;

    void validate() const;
    bool interior(double x, double y) const;
    Vec value(double x, double y) const;
};

/// The k-family split f = (-sin(cx), cos(cx))/c, g = (sin(cy), -cos(cy))/c;
/// optionally lifted isometrically into R^3.
SeparatedMap kf_split(double c = 1.0, bool embed = false);
/// Affine curves along e1 and e2 in R^3 (a trivially flat solution).
SeparatedMap affine3_split();
/// f = (x^2,0,0), g = (0,y^3,y): separated but not a solution; used as the
/// negative control for the span conclusion.
SeparatedMap nonsolution_split();

/// The same map as a MapSource over `box`, for cross-module checks.
MapPtr to_map_source(const SeparatedMap& map, const BoxDomain& box);

/// Coefficients of f'' + g'' = a f' + b g' at a point, solved in least
/// squares over R^N (exact for N = 2), cross-checked against the
/// annihilator-quotient route where each quotient of parallel vectors is
/// read as <num, den> / <den, den>.
struct SeparatedCoeffs {
    double a = 0.0;
    double b = 0.0;
    double conditioning = 0.0;  // smallest singular value of [f' | g']
    double residual = 0.0;      // |f'' + g'' - a f' - b g'|
    double a_quotient = 0.0;
    double b_quotient = 0.0;
};

SeparatedCoeffs separated_coeffs(const SeparatedMap& map, double x, double y,
                                 const RankPolicy& policy);

struct BasePoint {
    double x0 = 0.0;
    double y0 = 0.0;
};

/// The ten nested integrating-factor integrals of the separated-form
/// analysis, evaluated relative to a base point by composite trapezoid
/// rules on shared m-node grids per axis (inner cumulative integrals of
/// the coefficients are cached, so the triple-nested factors cost O(m^2)).
/// Signs obey: sign(A) = sign(x - x0), sign(F) = sign(y - y0), C > 0,
/// H > 0, and I < 0 whenever (x - x0)(y - y0) < 0.
struct IntegralFactors {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0;
    double F = 0.0, G = 0.0, H = 0.0, I = 0.0, J = 0.0;
    int m = 0;
};

IntegralFactors integral_factors(const SeparatedMap& map, const BasePoint& base,
                                 double x, double y, int m);

/// Residuals of the two integral identities tying f', g' to their base
/// values. r27 requires (x - x0)(y - y0) < 0; outside that sign region it
/// is omitted while r24 is still computed.
struct IdentityResiduals {
    double r24 = 0.0;
    bool r27_valid = false;
    double r27 = 0.0;
};

IdentityResiduals identity_residual(const SeparatedMap& map, const BasePoint& base,
                                    double x, double y, int m);

struct SpanSample {
    double x = 0.0, y = 0.0;
    double dist_fprime = 0.0;
    double dist_gprime = 0.0;
    double dist_u = 0.0;
};

struct SpanCheckReport {
    bool degenerate_span = false;  // span{f'(x0), g'(y0)} has dimension < 2
    int span_dim = 0;
    double tol = 0.0;
    int m = 0;
    double max_dist_fprime = 0.0;
    double max_dist_gprime = 0.0;
    double max_dist_u = 0.0;
    double diameter = 0.0;  // image diameter over the samples
    bool pass = false;
    std::vector<SpanSample> samples;
};

/// Distance of f'(x), g'(y) to span{f'(x0), g'(y0)} over the samples, plus
/// the inclusion u(x,y) in u(x0,y0) + span within tol * (1 + diameter).
SpanCheckReport span_check(const SeparatedMap& map, const BasePoint& base,
                           const std::vector<std::pair<double, double>>& samples,
                           int m, double tol);

}  // namespace tlap
