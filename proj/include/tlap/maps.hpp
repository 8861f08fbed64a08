#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tlap/core.hpp"
#include "tlap/linalg.hpp"

namespace tlap {

/// Axis-aligned box with a per-axis lattice resolution. Lattice points are
/// lower + k * spacing; flat storage is row-major with the last axis fastest.
struct BoxDomain {
    Vec lower;
    Vec upper;
    std::vector<int> resolution;

    int dim() const { return static_cast<int>(lower.size()); }
    void validate() const;
    bool contains(const Vec& x) const;
    double spacing(int axis) const;
    Vec spacings() const;
    Vec point(const std::vector<int>& idx) const;
    std::size_t total() const;
    std::size_t flat_index(const std::vector<int>& idx) const;
    double volume() const;
};

/// Row-major iteration over all multi-indices below `resolution`.
template <class F>
void for_each_index(const std::vector<int>& resolution, F&& f) {
    std::vector<int> idx(resolution.size(), 0);
    if (resolution.empty()) return;
    while (true) {
        f(idx);
        int ax = static_cast<int>(resolution.size()) - 1;
        while (ax >= 0) {
            if (++idx[ax] < resolution[ax]) break;
            idx[ax] = 0;
            --ax;
        }
        if (ax < 0) return;
    }
}

/// Second-order jet of a map at a point: value, gradient (N x n) and the
/// Hessian stored as one n x n block per component.
struct Jet2 {
    Vec point;
    Vec value;
    Mat grad;
    std::vector<Mat> hess;

    int n() const { return grad.cols(); }
    int N() const { return grad.rows(); }
    double hess_sym_defect() const;
    double hess_frobenius() const;
    void validate() const;
};

/// An evaluatable map over a box domain. Analytic gallery entries return
/// closed-form jets; grid-backed sources differentiate by central
/// differences at lattice points.
class MapSource {
public:
    virtual ~MapSource() = default;

    virtual std::pair<int, int> dims() const = 0;  // (n, N)
    virtual const BoxDomain& domain() const = 0;
    virtual std::string name() const = 0;
    /// Human-readable description of the excluded singular set, if any.
    virtual std::string singular_set() const { return ""; }

    Jet2 eval_jet(const Vec& x) const;

protected:
    virtual Jet2 jet_at(const Vec& x) const = 0;
};

using MapPtr = std::shared_ptr<const MapSource>;

Jet2 eval_jet(const MapSource& source, const Vec& x);

struct GridMap {
    BoxDomain domain;
    int N = 0;
    std::vector<Vec> samples;  // one value vector per lattice point
    Vec spacing;

    const Vec& at(const std::vector<int>& idx) const {
        return samples[domain.flat_index(idx)];
    }
};

/// Second-order central-difference jet at a strictly interior lattice index.
/// Cross second derivatives are the average of the two difference orders,
/// so the stored Hessian is symmetric by construction.
Jet2 fd_jet(const GridMap& grid, const std::vector<int>& index);

/// CSV loader. Header `x1,...,xn,u1,...,uN`; one row per lattice point in
/// any order; rejects incomplete or non-uniform lattices with row-numbered
/// diagnostics.
GridMap load_grid(const std::string& path);

/// Sample an analytic source onto the lattice of `box` (values only).
GridMap sample_grid(const MapSource& source, const BoxDomain& box);

/// Wrap a grid as a MapSource; evaluation snaps to interior lattice points.
MapPtr grid_source(GridMap grid);

// ---------------------------------------------------------------------------
// Curves: C^2 maps R -> R^N used by the separated-form machinery and the
// separated_pair gallery entry.

struct Curve {
    int N = 0;
    std::string desc;
    std::function<Vec(double)> value;
    std::function<Vec(double)> deriv;
    std::function<Vec(double)> deriv2;
};

Curve affine_curve(const Vec& base, const Vec& dir);
/// x-half of the k-family: t -> (-sin(ct), cos(ct)) / c.
Curve kf_curve(double c);
/// y-half of the k-family: t -> (sin(ct), -cos(ct)) / c.
Curve kg_curve(double c);
/// Polynomial curve sum_k coeffs[k] t^k with vector coefficients.
Curve poly_curve(const std::vector<Vec>& coeffs, const std::string& desc);
Curve embed3_curve(const Curve& inner);

/// Fixed isometric embedding R^2 -> R^3 with columns (1,0,0) and
/// (0, 1/sqrt2, 1/sqrt2).
Mat embed3_matrix();
/// Unit normal of the embedded plane.
Vec embed3_plane_normal();

// ---------------------------------------------------------------------------
// nu_of_f building blocks.

/// Unit-speed piecewise-affine curve nu : R -> R^N, anchored at nu(0) = base.
/// Directions are normalized on validate(); the curve is affine between
/// consecutive breakpoints and twice differentiable off them.
struct PolyLine {
    Vec base;
    std::vector<double> breakpoints;   // strictly increasing
    std::vector<Vec> directions;       // breakpoints.size() + 1 entries

    int N() const { return static_cast<int>(base.size()); }
    void validate();
    Vec value(double t) const;
    /// Right-continuous segment direction at t.
    const Vec& direction(double t) const;
    bool on_breakpoint(double t) const;
};

struct ScalarFactor {
    enum class Kind { harmonic, linear };
    Kind kind = Kind::harmonic;
    double alpha = 1.0;  // linear factor alpha*x + beta*y
    double beta = 0.0;
};

// ---------------------------------------------------------------------------
// Gallery.

using ParamMap = std::map<std::string, std::string>;

struct GalleryEntry {
    std::string id;
    std::string summary;
    std::string params_doc;
};

/// The static catalogue (7 entries) with parameter documentation.
const std::vector<GalleryEntry>& gallery_catalogue();

/// Construct a gallery entry by id. Throws InvalidInput for unknown ids or
/// parameters outside their documented ranges.
MapPtr gallery(const std::string& id, const ParamMap& params = {});

MapPtr make_example2();
MapPtr make_aronsson();
MapPtr make_k_family(double c = 1.0);
/// General C^1 profile K: the value integral is evaluated by adaptive
/// Simpson (tol 1e-12); gradient and Hessian are closed forms in K, K'.
MapPtr make_k_family_custom(std::function<double(double)> K,
                            std::function<double(double)> Kprime,
                            BoxDomain box, const std::string& desc);
MapPtr make_harmonic_pair();
MapPtr make_paraboloid();
MapPtr make_embed3(MapPtr inner);
MapPtr make_nu_of_f(const ScalarFactor& f, PolyLine nu);
MapPtr make_separated_source(Curve f, Curve g, BoxDomain box, const std::string& name);

}  // namespace tlap
