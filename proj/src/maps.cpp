#include "tlap/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tlap {

namespace {

double sgn(double x) { return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

constexpr double kPi = 3.14159265358979323846;

Jet2 make_jet(Vec point, Vec value, Mat grad, std::vector<Mat> hess) {
    Jet2 j{std::move(point), std::move(value), std::move(grad), std::move(hess)};
    j.validate();
    return j;
}

double simpson_rule(const std::function<double(double)>& f, double a, double m,
                    double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(f, a, lm, m, fa, flm, fm);
    const double right = simpson_rule(f, m, rm, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson_rule(f, a, 0.5 * (a + b), b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

// ---------------------------------------------------------------------------
// BoxDomain

void BoxDomain::validate() const {
    const std::size_t n = lower.size();
    if (n == 0 || upper.size() != n || resolution.size() != n)
        throw InvalidInput("BoxDomain: lower/upper/resolution sizes disagree");
    require_finite(lower, "BoxDomain lower");
    require_finite(upper, "BoxDomain upper");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lower[i] < upper[i]))
            throw InvalidInput("BoxDomain: lower must be < upper on axis " + std::to_string(i));
        if (resolution[i] < 3)
            throw InvalidInput("BoxDomain: resolution must be >= 3 on axis " + std::to_string(i));
    }
}

bool BoxDomain::contains(const Vec& x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double tol = 1e-12 * (1.0 + std::abs(upper[i] - lower[i]));
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
    }
    return true;
}

double BoxDomain::spacing(int axis) const {
    return (upper[axis] - lower[axis]) / (resolution[axis] - 1);
}

Vec BoxDomain::spacings() const {
    Vec h(lower.size());
    for (int i = 0; i < dim(); ++i) h[i] = spacing(i);
    return h;
}

Vec BoxDomain::point(const std::vector<int>& idx) const {
    Vec x(lower.size());
    for (int i = 0; i < dim(); ++i) x[i] = lower[i] + idx[i] * spacing(i);
    return x;
}

std::size_t BoxDomain::total() const {
    std::size_t t = 1;
    for (int r : resolution) t *= static_cast<std::size_t>(r);
    return t;
}

std::size_t BoxDomain::flat_index(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        f = f * static_cast<std::size_t>(resolution[i]) + static_cast<std::size_t>(idx[i]);
    return f;
}

double BoxDomain::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
    return v;
}

// ---------------------------------------------------------------------------
// Jet2

double Jet2::hess_sym_defect() const {
    double d = 0.0;
    for (const Mat& h : hess)
        for (int i = 0; i < h.rows(); ++i)
            for (int j = i + 1; j < h.cols(); ++j)
                d = std::max(d, std::abs(h(i, j) - h(j, i)));
    return d;
}

double Jet2::hess_frobenius() const {
    double s = 0.0;
    for (const Mat& h : hess) {
        const double f = h.frobenius();
        s += f * f;
    }
    return std::sqrt(s);
}

void Jet2::validate() const {
    const int nn = n(), NN = N();
    if (static_cast<int>(value.size()) != NN)
        throw InvalidInput("Jet2: value size does not match gradient rows");
    if (static_cast<int>(hess.size()) != NN)
        throw InvalidInput("Jet2: one Hessian block per component required");
    for (const Mat& h : hess)
        if (h.rows() != nn || h.cols() != nn)
            throw InvalidInput("Jet2: Hessian block shape mismatch");
    require_finite(point, "Jet2 point");
    require_finite(value, "Jet2 value");
    require_finite(grad, "Jet2 grad");
    for (const Mat& h : hess) require_finite(h, "Jet2 hess");
}

// ---------------------------------------------------------------------------
// MapSource

Jet2 MapSource::eval_jet(const Vec& x) const {
    require_finite(x, "eval_jet point");
    if (static_cast<int>(x.size()) != dims().first)
        throw InvalidInput("eval_jet: point dimension mismatch for " + name());
    if (!domain().contains(x))
        throw DomainError("eval_jet: point outside the domain of " + name());
    return jet_at(x);
}

Jet2 eval_jet(const MapSource& source, const Vec& x) { return source.eval_jet(x); }

// ---------------------------------------------------------------------------
// Finite differences

Jet2 fd_jet(const GridMap& grid, const std::vector<int>& index) {
    const BoxDomain& dom = grid.domain;
    const int n = dom.dim();
    if (static_cast<int>(index.size()) != n)
        throw InvalidInput("fd_jet: index dimension mismatch");
    for (int i = 0; i < n; ++i)
        if (index[i] < 1 || index[i] > dom.resolution[i] - 2)
            throw InvalidInput("fd_jet: index on axis " + std::to_string(i) +
                               " is out of the interior stencil range");

    const int N = grid.N;
    auto shifted = [&](int axis, int d, int axis2 = -1, int d2 = 0) {
        std::vector<int> idx = index;
        idx[axis] += d;
        if (axis2 >= 0) idx[axis2] += d2;
        return grid.at(idx);
    };

    Mat grad(N, n);
    std::vector<Mat> hess(N, Mat(n, n));
    const Vec& u0 = grid.at(index);
    for (int i = 0; i < n; ++i) {
        const double h = grid.spacing[i];
        const Vec& up = shifted(i, +1);
        const Vec& um = shifted(i, -1);
        for (int a = 0; a < N; ++a) {
            grad(a, i) = (up[a] - um[a]) / (2.0 * h);
            hess[a](i, i) = (up[a] - 2.0 * u0[a] + um[a]) / (h * h);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double denom = 4.0 * grid.spacing[i] * grid.spacing[j];
            const Vec& pp = shifted(i, +1, j, +1);
            const Vec& pm = shifted(i, +1, j, -1);
            const Vec& mp = shifted(i, -1, j, +1);
            const Vec& mm = shifted(i, -1, j, -1);
            for (int a = 0; a < N; ++a) {
                // the two difference orders agree analytically; averaging
                // them makes the stored block symmetric to the last bit
                const double est1 = ((pp[a] - pm[a]) - (mp[a] - mm[a])) / denom;
                const double est2 = ((pp[a] - mp[a]) - (pm[a] - mm[a])) / denom;
                const double cross = 0.5 * (est1 + est2);
                hess[a](i, j) = cross;
                hess[a](j, i) = cross;
            }
        }
    }
    return make_jet(dom.point(index), u0, std::move(grad), std::move(hess));
}

// ---------------------------------------------------------------------------
// CSV loading

namespace {

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, int lineno) {
    const char* s = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw InvalidInput("load_grid: line " + std::to_string(lineno) +
                           ": non-numeric cell '" + cell + "'");
    if (!std::isfinite(v))
        throw InvalidInput("load_grid: line " + std::to_string(lineno) +
                           ": non-finite cell '" + cell + "'");
    return v;
}

}  // namespace

GridMap load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("load_grid: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("load_grid: empty file");
    const std::vector<std::string> header = split_csv_line(line);
    std::size_t n = 0;
    while (n < header.size() && header[n] == "x" + std::to_string(n + 1)) ++n;
    std::size_t N = 0;
    while (n + N < header.size() && header[n + N] == "u" + std::to_string(N + 1)) ++N;
    if (n == 0 || N == 0 || n + N != header.size())
        throw InvalidInput("load_grid: header must read x1,...,xn,u1,...,uN (got '" + line + "')");

    std::vector<Vec> coords, values;
    std::vector<int> linenos;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != n + N)
            throw InvalidInput("load_grid: line " + std::to_string(lineno) + ": expected " +
                               std::to_string(n + N) + " cells, got " +
                               std::to_string(cells.size()));
        Vec c(n), v(N);
        for (std::size_t i = 0; i < n; ++i) c[i] = parse_cell(cells[i], lineno);
        for (std::size_t i = 0; i < N; ++i) v[i] = parse_cell(cells[n + i], lineno);
        coords.push_back(std::move(c));
        values.push_back(std::move(v));
        linenos.push_back(lineno);
    }
    if (coords.empty()) throw InvalidInput("load_grid: no data rows");

    // distinct per-axis coordinates, checked for uniform spacing
    std::vector<std::vector<double>> axes(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Vec& c : coords) axes[i].push_back(c[i]);
        std::sort(axes[i].begin(), axes[i].end());
        axes[i].erase(std::unique(axes[i].begin(), axes[i].end()), axes[i].end());
        if (axes[i].size() < 3)
            throw InvalidInput("load_grid: axis " + std::to_string(i + 1) + " has " +
                               std::to_string(axes[i].size()) +
                               " distinct coordinates; at least 3 required");
        const double range = axes[i].back() - axes[i].front();
        const double h = range / static_cast<double>(axes[i].size() - 1);
        for (std::size_t k = 0; k < axes[i].size(); ++k)
            if (std::abs(axes[i][k] - (axes[i].front() + static_cast<double>(k) * h)) >
                1e-9 * range)
                throw InvalidInput("load_grid: irregular lattice on axis " +
                                   std::to_string(i + 1) + " near coordinate " +
                                   std::to_string(axes[i][k]));
    }

    BoxDomain dom;
    for (std::size_t i = 0; i < n; ++i) {
        dom.lower.push_back(axes[i].front());
        dom.upper.push_back(axes[i].back());
        dom.resolution.push_back(static_cast<int>(axes[i].size()));
    }
    dom.validate();

    GridMap grid;
    grid.domain = dom;
    grid.N = static_cast<int>(N);
    grid.spacing = dom.spacings();
    grid.samples.assign(dom.total(), Vec());

    for (std::size_t r = 0; r < coords.size(); ++r) {
        std::vector<int> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto it = std::lower_bound(axes[i].begin(), axes[i].end(), coords[r][i]);
            idx[i] = static_cast<int>(it - axes[i].begin());
        }
        const std::size_t flat = dom.flat_index(idx);
        if (!grid.samples[flat].empty())
            throw InvalidInput("load_grid: line " + std::to_string(linenos[r]) +
                               ": duplicate lattice point");
        grid.samples[flat] = values[r];
    }

    std::string missing;
    for_each_index(dom.resolution, [&](const std::vector<int>& idx) {
        if (!missing.empty()) return;
        if (grid.samples[dom.flat_index(idx)].empty()) {
            const Vec p = dom.point(idx);
            std::ostringstream os;
            os << "load_grid: incomplete lattice; missing point (";
            for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
            os << ")";
            missing = os.str();
        }
    });
    if (!missing.empty()) throw InvalidInput(missing);
    return grid;
}

GridMap sample_grid(const MapSource& source, const BoxDomain& box) {
    box.validate();
    GridMap grid;
    grid.domain = box;
    grid.N = source.dims().second;
    grid.spacing = box.spacings();
    grid.samples.assign(box.total(), Vec());
    for_each_index(box.resolution, [&](const std::vector<int>& idx) {
        grid.samples[box.flat_index(idx)] = source.eval_jet(box.point(idx)).value;
    });
    return grid;
}

namespace {

class GridSource final : public MapSource {
public:
    explicit GridSource(GridMap grid) : grid_(std::move(grid)) {}

    std::pair<int, int> dims() const override { return {grid_.domain.dim(), grid_.N}; }
    const BoxDomain& domain() const override { return grid_.domain; }
    std::string name() const override { return "grid"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        std::vector<int> idx(x.size());
        for (int i = 0; i < grid_.domain.dim(); ++i) {
            const double h = grid_.spacing[i];
            const double k = (x[i] - grid_.domain.lower[i]) / h;
            const int ki = static_cast<int>(std::lround(k));
            if (std::abs(k - ki) > 1e-9)
                throw DomainError("grid source: evaluation point is not a lattice point");
            idx[i] = ki;
        }
        return fd_jet(grid_, idx);
    }

private:
    GridMap grid_;
};

}  // namespace

MapPtr grid_source(GridMap grid) {
    grid.domain.validate();
    return std::make_shared<GridSource>(std::move(grid));
}

// ---------------------------------------------------------------------------
// Curves

Curve affine_curve(const Vec& base, const Vec& dir) {
    if (base.size() != dir.size() || base.empty())
        throw InvalidInput("affine_curve: base/dir size mismatch");
    Curve c;
    c.N = static_cast<int>(base.size());
    c.desc = "affine";
    c.value = [base, dir](double t) {
        Vec v(base);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * dir[i];
        return v;
    };
    c.deriv = [dir](double) { return dir; };
    c.deriv2 = [z = Vec(base.size(), 0.0)](double) { return z; };
    return c;
}

Curve kf_curve(double c) {
    if (!(c > 0.0)) throw InvalidInput("kf_curve: c must be positive");
    Curve f;
    f.N = 2;
    f.desc = "kf(c=" + std::to_string(c) + ")";
    f.value = [c](double t) { return Vec{-std::sin(c * t) / c, std::cos(c * t) / c}; };
    f.deriv = [c](double t) { return Vec{-std::cos(c * t), -std::sin(c * t)}; };
    f.deriv2 = [c](double t) { return Vec{c * std::sin(c * t), -c * std::cos(c * t)}; };
    return f;
}

Curve kg_curve(double c) {
    if (!(c > 0.0)) throw InvalidInput("kg_curve: c must be positive");
    Curve g;
    g.N = 2;
    g.desc = "kg(c=" + std::to_string(c) + ")";
    g.value = [c](double t) { return Vec{std::sin(c * t) / c, -std::cos(c * t) / c}; };
    g.deriv = [c](double t) { return Vec{std::cos(c * t), std::sin(c * t)}; };
    g.deriv2 = [c](double t) { return Vec{-c * std::sin(c * t), c * std::cos(c * t)}; };
    return g;
}

Curve poly_curve(const std::vector<Vec>& coeffs, const std::string& desc) {
    if (coeffs.empty()) throw InvalidInput("poly_curve: no coefficients");
    const std::size_t N = coeffs.front().size();
    for (const Vec& c : coeffs)
        if (c.size() != N) throw InvalidInput("poly_curve: coefficient size mismatch");
    Curve c;
    c.N = static_cast<int>(N);
    c.desc = desc;
    c.value = [coeffs, N](double t) {
        Vec v(N, 0.0);
        double p = 1.0;
        for (const Vec& ck : coeffs) {
            for (std::size_t i = 0; i < N; ++i) v[i] += ck[i] * p;
            p *= t;
        }
        return v;
    };
    c.deriv = [coeffs, N](double t) {
        Vec v(N, 0.0);
        double p = 1.0;
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            for (std::size_t i = 0; i < N; ++i) v[i] += static_cast<double>(k) * coeffs[k][i] * p;
            p *= t;
        }
        return v;
    };
    c.deriv2 = [coeffs, N](double t) {
        Vec v(N, 0.0);
        double p = 1.0;
        for (std::size_t k = 2; k < coeffs.size(); ++k) {
            for (std::size_t i = 0; i < N; ++i)
                v[i] += static_cast<double>(k) * static_cast<double>(k - 1) * coeffs[k][i] * p;
            p *= t;
        }
        return v;
    };
    return c;
}

Mat embed3_matrix() {
    Mat q(3, 2);
    const double r = 1.0 / std::sqrt(2.0);
    q(0, 0) = 1.0;
    q(1, 1) = r;
    q(2, 1) = r;
    return q;
}

Vec embed3_plane_normal() {
    const double r = 1.0 / std::sqrt(2.0);
    return {0.0, -r, r};
}

Curve embed3_curve(const Curve& inner) {
    if (inner.N != 2) throw InvalidInput("embed3_curve: inner curve must have N = 2");
    const Mat q = embed3_matrix();
    Curve c;
    c.N = 3;
    c.desc = "embed3(" + inner.desc + ")";
    auto lift = [q](const Vec& v) { return q * v; };
    c.value = [lift, f = inner.value](double t) { return lift(f(t)); };
    c.deriv = [lift, f = inner.deriv](double t) { return lift(f(t)); };
    c.deriv2 = [lift, f = inner.deriv2](double t) { return lift(f(t)); };
    return c;
}

// ---------------------------------------------------------------------------
// PolyLine

void PolyLine::validate() {
    if (base.empty()) throw InvalidInput("PolyLine: empty base point");
    if (directions.size() != breakpoints.size() + 1)
        throw InvalidInput("PolyLine: need breakpoints.size()+1 directions");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (!(breakpoints[k - 1] < breakpoints[k]))
            throw InvalidInput("PolyLine: breakpoints must be strictly increasing");
    for (Vec& d : directions) {
        if (d.size() != base.size())
            throw InvalidInput("PolyLine: direction dimension mismatch");
        const double nn = norm(d);
        if (!(nn > 0.0)) throw InvalidInput("PolyLine: zero direction");
        for (double& x : d) x /= nn;  // unit speed
    }
}

namespace {
int polyline_segment(const std::vector<double>& breaks, double t) {
    // right-continuous: the segment starting at the last breakpoint <= t
    return static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), t) -
                            breaks.begin());
}
}  // namespace

Vec PolyLine::value(double t) const {
    Vec v = base;
    const int K = static_cast<int>(breakpoints.size());
    double s = 0.0;
    int k = polyline_segment(breakpoints, 0.0);
    if (t >= 0.0) {
        while (true) {
            const double stop = (k < K) ? std::min(breakpoints[k], t) : t;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += directions[k][i] * (stop - s);
            s = stop;
            if (s >= t) break;
            ++k;
        }
    } else {
        while (true) {
            const double stop = (k > 0) ? std::max(breakpoints[k - 1], t) : t;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += directions[k][i] * (stop - s);
            s = stop;
            if (s <= t) break;
            --k;
        }
    }
    return v;
}

const Vec& PolyLine::direction(double t) const {
    return directions[polyline_segment(breakpoints, t)];
}

bool PolyLine::on_breakpoint(double t) const {
    return std::binary_search(breakpoints.begin(), breakpoints.end(), t);
}

// ---------------------------------------------------------------------------
// Analytic sources

namespace {

BoxDomain square_box(double lo, double hi, int res = 41) {
    return BoxDomain{{lo, lo}, {hi, hi}, {res, res}};
}

class Example2Source final : public MapSource {
public:
    Example2Source() : box_(square_box(-1.0, 1.0)) {}
    std::pair<int, int> dims() const override { return {2, 2}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "example2"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        const double s = sgn(x[0]);
        const double x2 = x[0] * x[0], x3 = x2 * x[0], x4 = x3 * x[0];
        Mat grad(2, 2);
        grad(0, 0) = 4.0 * s * x3;
        grad(1, 0) = 4.0 * x3;
        std::vector<Mat> hess(2, Mat(2, 2));
        hess[0](0, 0) = 12.0 * s * x2;
        hess[1](0, 0) = 12.0 * x2;
        return make_jet(x, {s * x4, x4}, std::move(grad), std::move(hess));
    }

private:
    BoxDomain box_;
};

class AronssonSource final : public MapSource {
public:
    AronssonSource() : box_(square_box(-1.0, 1.0)) {}
    std::pair<int, int> dims() const override { return {2, 1}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "aronsson"; }
    std::string singular_set() const override { return "{x=0} u {y=0}"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        if (x[0] == 0.0 || x[1] == 0.0)
            throw SingularPointError("aronsson: non-C^2 on the singular set {x=0} u {y=0}");
        auto d1 = [](double t) { return (4.0 / 3.0) * sgn(t) * std::cbrt(std::abs(t)); };
        auto d2 = [](double t) {
            const double c = std::cbrt(std::abs(t));
            return (4.0 / 9.0) / (c * c);
        };
        Mat grad(1, 2);
        grad(0, 0) = d1(x[0]);
        grad(0, 1) = -d1(x[1]);
        std::vector<Mat> hess(1, Mat(2, 2));
        hess[0](0, 0) = d2(x[0]);
        hess[0](1, 1) = -d2(x[1]);
        const double v = std::pow(std::abs(x[0]), 4.0 / 3.0) -
                         std::pow(std::abs(x[1]), 4.0 / 3.0);
        return make_jet(x, {v}, std::move(grad), std::move(hess));
    }

private:
    BoxDomain box_;
};

class KFamilySource final : public MapSource {
public:
    explicit KFamilySource(double c) : c_(c), box_(square_box(-0.3, 0.3)) {
        if (!(c > 0.0)) throw InvalidInput("k_family: c must be positive");
    }
    std::pair<int, int> dims() const override { return {2, 2}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "k_family"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        if (!(std::abs(x[0] - x[1]) < kPi / (4.0 * c_)))
            throw DomainError("k_family: point off the strip |x-y| < pi/(4c)");
        const double cx = c_ * x[0], cy = c_ * x[1];
        Mat grad(2, 2);
        grad(0, 0) = -std::cos(cx);
        grad(1, 0) = -std::sin(cx);
        grad(0, 1) = std::cos(cy);
        grad(1, 1) = std::sin(cy);
        std::vector<Mat> hess(2, Mat(2, 2));
        hess[0](0, 0) = c_ * std::sin(cx);
        hess[0](1, 1) = -c_ * std::sin(cy);
        hess[1](0, 0) = -c_ * std::cos(cx);
        hess[1](1, 1) = c_ * std::cos(cy);
        return make_jet(x,
                        {(std::sin(cy) - std::sin(cx)) / c_,
                         (std::cos(cx) - std::cos(cy)) / c_},
                        std::move(grad), std::move(hess));
    }

private:
    double c_;
    BoxDomain box_;
};

class KFamilyCustomSource final : public MapSource {
public:
    KFamilyCustomSource(std::function<double(double)> K, std::function<double(double)> Kp,
                        BoxDomain box, std::string desc)
        : K_(std::move(K)), Kp_(std::move(Kp)), box_(std::move(box)), desc_(std::move(desc)) {
        box_.validate();
    }
    std::pair<int, int> dims() const override { return {2, 2}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return desc_; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        const double kx = K_(x[0]), ky = K_(x[1]);
        Mat grad(2, 2);
        grad(0, 0) = -std::cos(kx);
        grad(1, 0) = -std::sin(kx);
        grad(0, 1) = std::cos(ky);
        grad(1, 1) = std::sin(ky);
        std::vector<Mat> hess(2, Mat(2, 2));
        hess[0](0, 0) = Kp_(x[0]) * std::sin(kx);
        hess[0](1, 1) = -Kp_(x[1]) * std::sin(ky);
        hess[1](0, 0) = -Kp_(x[0]) * std::cos(kx);
        hess[1](1, 1) = Kp_(x[1]) * std::cos(ky);
        const double u1 =
            adaptive_simpson([this](double t) { return std::cos(K_(t)); }, x[0], x[1], 1e-12);
        const double u2 =
            adaptive_simpson([this](double t) { return std::sin(K_(t)); }, x[0], x[1], 1e-12);
        return make_jet(x, {u1, u2}, std::move(grad), std::move(hess));
    }

private:
    std::function<double(double)> K_, Kp_;
    BoxDomain box_;
    std::string desc_;
};

class HarmonicPairSource final : public MapSource {
public:
    HarmonicPairSource() : box_(square_box(-1.0, 1.0)) {}
    std::pair<int, int> dims() const override { return {2, 2}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "harmonic"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        Mat grad(2, 2);
        grad(0, 0) = 2.0 * x[0];
        grad(0, 1) = -2.0 * x[1];
        grad(1, 0) = 2.0 * x[1];
        grad(1, 1) = 2.0 * x[0];
        std::vector<Mat> hess(2, Mat(2, 2));
        hess[0](0, 0) = 2.0;
        hess[0](1, 1) = -2.0;
        hess[1](0, 1) = 2.0;
        hess[1](1, 0) = 2.0;
        return make_jet(x, {x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]},
                        std::move(grad), std::move(hess));
    }

private:
    BoxDomain box_;
};

class ParaboloidSource final : public MapSource {
public:
    ParaboloidSource() : box_(square_box(-1.0, 1.0)) {}
    std::pair<int, int> dims() const override { return {2, 3}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "paraboloid"; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        Mat grad(3, 2);
        grad(0, 0) = 1.0;
        grad(1, 1) = 1.0;
        grad(2, 0) = 2.0 * x[0];
        grad(2, 1) = 2.0 * x[1];
        std::vector<Mat> hess(3, Mat(2, 2));
        hess[2](0, 0) = 2.0;
        hess[2](1, 1) = 2.0;
        return make_jet(x, {x[0], x[1], x[0] * x[0] + x[1] * x[1]},
                        std::move(grad), std::move(hess));
    }

private:
    BoxDomain box_;
};

class Embed3Source final : public MapSource {
public:
    explicit Embed3Source(MapPtr inner) : inner_(std::move(inner)), q_(embed3_matrix()) {
        if (!inner_ || inner_->dims().second != 2)
            throw InvalidInput("embed3: inner entry must have N = 2");
    }
    std::pair<int, int> dims() const override { return {inner_->dims().first, 3}; }
    const BoxDomain& domain() const override { return inner_->domain(); }
    std::string name() const override { return "embed3:" + inner_->name(); }
    std::string singular_set() const override { return inner_->singular_set(); }

protected:
    Jet2 jet_at(const Vec& x) const override {
        const Jet2 j = inner_->eval_jet(x);
        std::vector<Mat> hess(3, Mat(j.n(), j.n()));
        for (int a = 0; a < 3; ++a)
            hess[a] = j.hess[0].scaled(q_(a, 0)) + j.hess[1].scaled(q_(a, 1));
        return make_jet(x, q_ * j.value, q_ * j.grad, std::move(hess));
    }

private:
    MapPtr inner_;
    Mat q_;
};

class NuOfFSource final : public MapSource {
public:
    NuOfFSource(const ScalarFactor& f, PolyLine nu)
        : f_(f), nu_(std::move(nu)), box_(square_box(-1.0, 1.0)) {
        nu_.validate();
        if (f_.kind == ScalarFactor::Kind::linear && f_.alpha == 0.0 && f_.beta == 0.0)
            throw InvalidInput("nu_of_f: linear factor needs (alpha, beta) != 0");
    }
    std::pair<int, int> dims() const override { return {2, nu_.N()}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return "nu_of_f"; }
    std::string singular_set() const override {
        return nu_.breakpoints.empty() ? "" : "preimages of the polyline breakpoints";
    }

protected:
    Jet2 jet_at(const Vec& x) const override {
        double fv;
        Vec df(2);
        Mat d2f(2, 2);
        if (f_.kind == ScalarFactor::Kind::harmonic) {
            fv = x[0] * x[0] - x[1] * x[1];
            df = {2.0 * x[0], -2.0 * x[1]};
            d2f(0, 0) = 2.0;
            d2f(1, 1) = -2.0;
        } else {
            fv = f_.alpha * x[0] + f_.beta * x[1];
            df = {f_.alpha, f_.beta};
        }
        if (nu_.on_breakpoint(fv))
            throw SingularPointError("nu_of_f: point maps onto a polyline breakpoint");
        const Vec& dir = nu_.direction(fv);
        const int N = nu_.N();
        std::vector<Mat> hess(N, Mat(2, 2));
        for (int a = 0; a < N; ++a) hess[a] = d2f.scaled(dir[a]);
        return make_jet(x, nu_.value(fv), outer(dir, df), std::move(hess));
    }

private:
    ScalarFactor f_;
    PolyLine nu_;
    BoxDomain box_;
};

class SeparatedSource final : public MapSource {
public:
    SeparatedSource(Curve f, Curve g, BoxDomain box, std::string name)
        : f_(std::move(f)), g_(std::move(g)), box_(std::move(box)), name_(std::move(name)) {
        if (f_.N != g_.N || f_.N < 2)
            throw InvalidInput("separated source: curves must share N >= 2");
        box_.validate();
    }
    std::pair<int, int> dims() const override { return {2, f_.N}; }
    const BoxDomain& domain() const override { return box_; }
    std::string name() const override { return name_; }

protected:
    Jet2 jet_at(const Vec& x) const override {
        const Vec fv = f_.value(x[0]), gv = g_.value(x[1]);
        const Vec fd = f_.deriv(x[0]), gd = g_.deriv(x[1]);
        const Vec fdd = f_.deriv2(x[0]), gdd = g_.deriv2(x[1]);
        const int N = f_.N;
        Mat grad(N, 2);
        std::vector<Mat> hess(N, Mat(2, 2));
        Vec value(N);
        for (int a = 0; a < N; ++a) {
            value[a] = fv[a] + gv[a];
            grad(a, 0) = fd[a];
            grad(a, 1) = gd[a];
            hess[a](0, 0) = fdd[a];
            hess[a](1, 1) = gdd[a];
        }
        return make_jet(x, std::move(value), std::move(grad), std::move(hess));
    }

private:
    Curve f_, g_;
    BoxDomain box_;
    std::string name_;
};

}  // namespace

MapPtr make_example2() { return std::make_shared<Example2Source>(); }
MapPtr make_aronsson() { return std::make_shared<AronssonSource>(); }
MapPtr make_k_family(double c) { return std::make_shared<KFamilySource>(c); }
MapPtr make_k_family_custom(std::function<double(double)> K,
                            std::function<double(double)> Kprime, BoxDomain box,
                            const std::string& desc) {
    return std::make_shared<KFamilyCustomSource>(std::move(K), std::move(Kprime),
                                                 std::move(box), desc);
}
MapPtr make_harmonic_pair() { return std::make_shared<HarmonicPairSource>(); }
MapPtr make_paraboloid() { return std::make_shared<ParaboloidSource>(); }
MapPtr make_embed3(MapPtr inner) { return std::make_shared<Embed3Source>(std::move(inner)); }
MapPtr make_nu_of_f(const ScalarFactor& f, PolyLine nu) {
    return std::make_shared<NuOfFSource>(f, std::move(nu));
}
MapPtr make_separated_source(Curve f, Curve g, BoxDomain box, const std::string& name) {
    return std::make_shared<SeparatedSource>(std::move(f), std::move(g), std::move(box), name);
}

// ---------------------------------------------------------------------------
// Gallery dispatch

namespace {

double param_double(const ParamMap& p, const std::string& key, double def) {
    const auto it = p.find(key);
    if (it == p.end()) return def;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("gallery: parameter '" + key + "' is not a number: '" +
                           it->second + "'");
    }
}

std::string param_str(const ParamMap& p, const std::string& key, const std::string& def) {
    const auto it = p.find(key);
    return it == p.end() ? def : it->second;
}

Vec parse_vec(const std::string& s, const std::string& key) {
    Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw InvalidInput("gallery: parameter '" + key + "' has non-numeric entry '" +
                               tok + "'");
        }
    }
    if (v.empty()) throw InvalidInput("gallery: parameter '" + key + "' is empty");
    return v;
}

void reject_unknown(const ParamMap& p, std::initializer_list<const char*> allowed,
                    const std::string& id) {
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) ok = true;
        if (!ok) throw InvalidInput("gallery: unknown parameter '" + k + "' for entry '" +
                                    id + "'");
    }
}

MapPtr build_nu_of_f(const ParamMap& params) {
    reject_unknown(params, {"f", "alpha", "beta", "dir", "base", "breaks", "dirs"}, "nu_of_f");
    ScalarFactor f;
    const std::string fk = param_str(params, "f", "harmonic");
    if (fk == "harmonic")
        f.kind = ScalarFactor::Kind::harmonic;
    else if (fk == "linear")
        f.kind = ScalarFactor::Kind::linear;
    else
        throw InvalidInput("gallery: nu_of_f factor must be 'harmonic' or 'linear'");
    f.alpha = param_double(params, "alpha", 1.0);
    f.beta = param_double(params, "beta", 0.0);

    PolyLine nu;
    if (params.count("breaks") || params.count("dirs")) {
        nu.breakpoints = parse_vec(param_str(params, "breaks", ""), "breaks");
        std::stringstream ss(param_str(params, "dirs", ""));
        std::string tok;
        while (std::getline(ss, tok, ';')) nu.directions.push_back(parse_vec(tok, "dirs"));
        if (nu.directions.empty())
            throw InvalidInput("gallery: nu_of_f with breaks needs 'dirs'");
        nu.base = params.count("base")
                      ? parse_vec(param_str(params, "base", ""), "base")
                      : Vec(nu.directions.front().size(), 0.0);
    } else {
        const Vec dir = params.count("dir") ? parse_vec(param_str(params, "dir", ""), "dir")
                                            : Vec{1.0, 1.0};
        nu.directions = {dir};
        nu.base = params.count("base") ? parse_vec(param_str(params, "base", ""), "base")
                                       : Vec(dir.size(), 0.0);
    }
    return make_nu_of_f(f, std::move(nu));
}

MapPtr build_separated_pair(const ParamMap& params) {
    reject_unknown(params, {"split", "c", "embed"}, "separated_pair");
    const std::string split = param_str(params, "split", "kf");
    const bool embed = param_double(params, "embed", 0.0) != 0.0;
    Curve f, g;
    BoxDomain box;
    if (split == "kf") {
        const double c = param_double(params, "c", 1.0);
        f = kf_curve(c);
        g = kg_curve(c);
        box = square_box(-0.3, 0.3);
    } else if (split == "affine3") {
        f = affine_curve({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
        g = affine_curve({0.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
        box = square_box(-1.0, 1.0);
    } else if (split == "nonsol") {
        f = poly_curve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, "t^2 e1");
        g = poly_curve({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}, {0, 1, 0}}, "t^3 e2 + t e3");
        box = square_box(-1.0, 1.0);
    } else {
        throw InvalidInput("gallery: separated_pair split must be kf, affine3 or nonsol");
    }
    if (embed) {
        if (f.N != 2) throw InvalidInput("gallery: embed=1 needs an N=2 split");
        f = embed3_curve(f);
        g = embed3_curve(g);
    }
    return make_separated_source(std::move(f), std::move(g), box,
                                 "separated_pair:" + split + (embed ? ":embed3" : ""));
}

}  // namespace

const std::vector<GalleryEntry>& gallery_catalogue() {
    static const std::vector<GalleryEntry> entries = {
        {"example2",
         "piecewise-quartic rank-one solution u(x,y) = (sgn(x) x^4, x^4) on [-1,1]^2",
         "none"},
        {"aronsson",
         "scalar map |x|^{4/3} - |y|^{4/3}; second derivatives blow up on the "
         "coordinate axes (excluded)",
         "none"},
        {"k_family",
         "u(x,y) = int_x^y (cos(ct), sin(ct)) dt on the strip |x-y| < pi/(4c); the "
         "gradient rank drops to 1 on the diagonal x = y (degenerate, not excluded)",
         "c > 0 (default 1)"},
        {"embed3",
         "post-composition of an N=2 entry with the fixed isometry R^2 -> R^3, columns "
         "(1,0,0) and (0,1/sqrt2,1/sqrt2)",
         "inner in {k_family, harmonic, example2, nu_of_f} (default k_family), plus the "
         "inner entry's parameters; 'harmonic' is the pair (x^2 - y^2, 2xy) and can also "
         "be constructed directly by id"},
        {"nu_of_f",
         "composition nu(f(x,y)) of a unit-speed polyline nu with a scalar factor f",
         "f in {harmonic, linear} (default harmonic); alpha, beta for the linear factor "
         "(default 1, 0); dir = comma list for an affine nu (default 1,1; normalized); "
         "breaks + dirs (semicolon-separated vectors) for a piecewise nu; base point"},
        {"paraboloid",
         "(x, y, x^2 + y^2): a non-solution used as a negative control",
         "none"},
        {"separated_pair",
         "u(x,y) = f(x) + g(y) assembled from named curve splits",
         "split in {kf, affine3, nonsol} (default kf); c > 0 for kf (default 1); "
         "embed in {0,1} (default 0) lifts an N=2 split to R^3"},
    };
    return entries;
}

MapPtr gallery(const std::string& id, const ParamMap& params) {
    if (id == "example2") {
        reject_unknown(params, {}, id);
        return make_example2();
    }
    if (id == "aronsson") {
        reject_unknown(params, {}, id);
        return make_aronsson();
    }
    if (id == "k_family") {
        reject_unknown(params, {"c"}, id);
        return make_k_family(param_double(params, "c", 1.0));
    }
    if (id == "harmonic") {
        reject_unknown(params, {}, id);
        return make_harmonic_pair();
    }
    if (id == "paraboloid") {
        reject_unknown(params, {}, id);
        return make_paraboloid();
    }
    if (id == "embed3") {
        ParamMap rest = params;
        const std::string inner = param_str(params, "inner", "k_family");
        rest.erase("inner");
        return make_embed3(gallery(inner, rest));
    }
    if (id == "nu_of_f") return build_nu_of_f(params);
    if (id == "separated_pair") return build_separated_pair(params);
    throw InvalidInput("gallery: unknown entry '" + id + "'");
}

}  // namespace tlap
