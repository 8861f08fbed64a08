#include "tlap/separated.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlap {

void SeparatedMap::validate() const {
    if (N < 2 || f.N != N || g.N != N)
        throw InvalidInput("SeparatedMap: curve dimensions must agree and N >= 2");
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw InvalidInput("SeparatedMap: empty interval");
}

bool SeparatedMap::interior(double x, double y) const {
    return x > x_lo && x < x_hi && y > y_lo && y < y_hi;
}

Vec SeparatedMap::value(double x, double y) const {
    return vadd(f.value(x), g.value(y));
}

SeparatedMap kf_split(double c, bool embed) {
    SeparatedMap m;
    m.f = kf_curve(c);
    m.g = kg_curve(c);
    if (embed) {
        m.f = embed3_curve(m.f);
        m.g = embed3_curve(m.g);
    }
    m.N = m.f.N;
    m.validate();
    return m;
}

SeparatedMap affine3_split() {
    SeparatedMap m;
    m.f = affine_curve({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    m.g = affine_curve({0.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
    m.N = 3;
    m.validate();
    return m;
}

SeparatedMap nonsolution_split() {
    SeparatedMap m;
    m.f = poly_curve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, "t^2 e1");
    m.g = poly_curve({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}, {0, 1, 0}}, "t^3 e2 + t e3");
    m.N = 3;
    m.validate();
    return m;
}

MapPtr to_map_source(const SeparatedMap& map, const BoxDomain& box) {
    map.validate();
    return make_separated_source(map.f, map.g, box, "separated");
}

SeparatedCoeffs separated_coeffs(const SeparatedMap& map, double x, double y,
                                 const RankPolicy& policy) {
    map.validate();
    if (!map.interior(x, y))
        throw DomainError("separated_coeffs: point outside the open rectangle");

    const Vec fp = map.f.deriv(x), gp = map.g.deriv(y);
    const Vec rhs = vadd(map.f.deriv2(x), map.g.deriv2(y));
    const int N = map.N;

    Mat M(N, 2);
    for (int i = 0; i < N; ++i) {
        M(i, 0) = fp[i];
        M(i, 1) = gp[i];
    }
    const SvdResult svd = svd_small(M);
    const double thr = policy.threshold(svd.sigma.front());
    if (!(svd.sigma[1] > thr)) {
        std::ostringstream os;
        os << "separated_coeffs: [f'|g'] is rank-deficient at (" << x << "," << y << ")";
        throw DegenerateError(os.str());
    }

    SeparatedCoeffs out;
    out.conditioning = svd.sigma[1];
    const Vec sol = gram_solve(M, M.transpose() * rhs, policy.abs_tol);
    out.a = sol[0];
    out.b = sol[1];
    out.residual = norm(vsub(rhs, M * sol));

    // annihilator-quotient route: applying |g'|^2 I - g' (x) g' kills the
    // b-term, leaving parallel vectors whose ratio is a
    auto quotient = [&](const Vec& kill, const Vec& keep) {
        const double k2 = dot(kill, kill);
        Vec num = vsub(vscale(k2, rhs), vscale(dot(kill, rhs), kill));
        Vec den = vsub(vscale(k2, keep), vscale(dot(kill, keep), kill));
        return dot(num, den) / dot(den, den);
    };
    out.a_quotient = quotient(gp, fp);
    out.b_quotient = quotient(fp, gp);
    return out;
}

namespace {

// cumulative trapezoid along a sampled axis with signed step h
std::vector<double> cumtrap(const std::vector<double>& v, double h) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t k = 1; k < v.size(); ++k)
        out[k] = out[k - 1] + 0.5 * h * (v[k - 1] + v[k]);
    return out;
}

double trap_end(const std::vector<double>& v, double h) {
    double s = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) s += 0.5 * h * (v[k - 1] + v[k]);
    return s;
}

}  // namespace

IntegralFactors integral_factors(const SeparatedMap& map, const BasePoint& base,
                                 double x, double y, int m) {
    map.validate();
    if (m < 8) throw InvalidInput("integral_factors: m must be >= 8");
    if (!map.interior(base.x0, base.y0))
        throw DomainError("integral_factors: base point outside the open rectangle");
    if (!map.interior(x, y))
        throw DomainError("integral_factors: query point outside the open rectangle");
    // queries too close to the base make the 1/A, 1/F integrands
    // unresolvable on an m-node grid
    const double min_dx = 10.0 / m * (map.x_hi - map.x_lo);
    const double min_dy = 10.0 / m * (map.y_hi - map.y_lo);
    if (std::abs(x - base.x0) < min_dx)
        throw InvalidInput("integral_factors: |x - x0| too close to the base for this m");
    if (std::abs(y - base.y0) < min_dy)
        throw InvalidInput("integral_factors: |y - y0| too close to the base for this m");

    const int nodes = m + 1;
    const double hx = (x - base.x0) / m;
    const double hy = (y - base.y0) / m;
    std::vector<double> xs(nodes), ys(nodes);
    for (int i = 0; i < nodes; ++i) xs[i] = base.x0 + i * hx;
    for (int j = 0; j < nodes; ++j) ys[j] = base.y0 + j * hy;

    const RankPolicy policy;  // analytic coefficients along the paths
    std::vector<std::vector<double>> a(nodes, std::vector<double>(nodes));
    std::vector<std::vector<double>> b(nodes, std::vector<double>(nodes));
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            try {
                const SeparatedCoeffs c = separated_coeffs(map, xs[i], ys[j], policy);
                a[i][j] = c.a;
                b[i][j] = c.b;
            } catch (const DegenerateError&) {
                std::ostringstream os;
                os << "integral_factors: degenerate coefficients on the integration path "
                   << "at node (" << xs[i] << "," << ys[j] << ")";
                throw DegenerateError(os.str());
            }
        }
    }

    IntegralFactors out;
    out.m = m;

    // x-direction tables: for each fixed y_j, the integrating factor
    // exp(-int a) and the running integrals defining A and B
    std::vector<double> A_of_y(nodes), B_of_y(nodes), ea_end(nodes);
    {
        std::vector<double> col(nodes), e(nodes);
        for (int j = 0; j < nodes; ++j) {
            for (int i = 0; i < nodes; ++i) col[i] = a[i][j];
            const std::vector<double> cum_a = cumtrap(col, hx);
            for (int i = 0; i < nodes; ++i) e[i] = std::exp(-cum_a[i]);
            A_of_y[j] = trap_end(e, hx);
            for (int i = 0; i < nodes; ++i) col[i] = b[i][j] * e[i];
            B_of_y[j] = trap_end(col, hx);
            ea_end[j] = e[nodes - 1];  // exp(-int_{x0}^{x} a(., y_j))
        }
    }
    out.A = A_of_y[nodes - 1];
    out.B = B_of_y[nodes - 1];

    {
        std::vector<double> ratio(nodes);
        for (int j = 0; j < nodes; ++j) ratio[j] = B_of_y[j] / A_of_y[j];
        const std::vector<double> cum_r = cumtrap(ratio, hy);
        out.C = std::exp(-cum_r[nodes - 1]);
        std::vector<double> di(nodes), ei(nodes);
        for (int j = 0; j < nodes; ++j) {
            const double damp = std::exp(-cum_r[j]);
            di[j] = ea_end[j] / A_of_y[j] * damp;
            ei[j] = 1.0 / A_of_y[j] * damp;
        }
        out.D = trap_end(di, hy);
        out.E = trap_end(ei, hy);
    }

    // the mirrored tables along y
    std::vector<double> F_of_x(nodes), G_of_x(nodes), eb_end(nodes);
    {
        std::vector<double> row(nodes), e(nodes);
        for (int i = 0; i < nodes; ++i) {
            const std::vector<double> cum_b = cumtrap(b[i], hy);
            for (int j = 0; j < nodes; ++j) e[j] = std::exp(-cum_b[j]);
            F_of_x[i] = trap_end(e, hy);
            for (int j = 0; j < nodes; ++j) row[j] = a[i][j] * e[j];
            G_of_x[i] = trap_end(row, hy);
            eb_end[i] = e[nodes - 1];
        }
    }
    out.F = F_of_x[nodes - 1];
    out.G = G_of_x[nodes - 1];

    {
        std::vector<double> ratio(nodes);
        for (int i = 0; i < nodes; ++i) ratio[i] = G_of_x[i] / F_of_x[i];
        const std::vector<double> cum_r = cumtrap(ratio, hx);
        out.H = std::exp(-cum_r[nodes - 1]);
        std::vector<double> ii(nodes), ji(nodes);
        for (int i = 0; i < nodes; ++i) {
            const double damp = std::exp(-cum_r[i]);
            ii[i] = eb_end[i] / F_of_x[i] * damp;
            ji[i] = 1.0 / F_of_x[i] * damp;
        }
        out.I = trap_end(ii, hx);
        out.J = trap_end(ji, hx);
    }

    // positivity of the integrands forces these signs; a violation means
    // the quadrature broke down
    auto sign_ok = [](double v, double ref) { return ref > 0.0 ? v > 0.0 : v < 0.0; };
    if (!sign_ok(out.A, x - base.x0) || !sign_ok(out.F, y - base.y0) || !(out.C > 0.0) ||
        !(out.H > 0.0) ||
        ((x - base.x0) * (y - base.y0) < 0.0 && !(out.I < 0.0)))
        throw Error("integral_factors: sign invariant violated; quadrature breakdown");
    return out;
}

IdentityResiduals identity_residual(const SeparatedMap& map, const BasePoint& base,
                                    double x, double y, int m) {
    const IntegralFactors fa = integral_factors(map, base, x, y, m);
    const Vec fpx = map.f.deriv(x), fp0 = map.f.deriv(base.x0);
    const Vec gpy = map.g.deriv(y), gp0 = map.g.deriv(base.y0);

    IdentityResiduals out;
    Vec r(map.N, 0.0);
    for (int i = 0; i < map.N; ++i)
        r[i] = gpy[i] * fa.C + fpx[i] * fa.D - gp0[i] - fp0[i] * fa.E;
    out.r24 = norm(r);

    if ((x - base.x0) * (y - base.y0) < 0.0) {
        out.r27_valid = true;
        const double ih = fa.D * fa.I / fa.H;
        const double dh = fa.D / fa.H;
        const double jh = fa.D * fa.J / fa.H;
        for (int i = 0; i < map.N; ++i)
            r[i] = (fa.C - ih) * gpy[i] - (fa.E - dh) * fp0[i] - (1.0 - jh) * gp0[i];
        out.r27 = norm(r);
    }
    return out;
}

SpanCheckReport span_check(const SeparatedMap& map, const BasePoint& base,
                           const std::vector<std::pair<double, double>>& samples,
                           int m, double tol) {
    map.validate();
    if (!(tol > 0.0)) throw InvalidInput("span_check: tol must be positive");
    if (!map.interior(base.x0, base.y0))
        throw DomainError("span_check: base point outside the open rectangle");

    SpanCheckReport report;
    report.tol = tol;
    report.m = m;

    // orthonormal basis of span{f'(x0), g'(y0)}
    std::vector<Vec> basis;
    const Vec s1 = map.f.deriv(base.x0);
    const Vec s2 = map.g.deriv(base.y0);
    for (const Vec& s : {s1, s2}) {
        Vec v = s;
        for (const Vec& b : basis) {
            const double c = dot(v, b);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
        }
        const double nn = norm(v);
        if (nn > 1e-12 * (1.0 + norm(s))) basis.push_back(vscale(1.0 / nn, v));
    }
    report.span_dim = static_cast<int>(basis.size());
    report.degenerate_span = report.span_dim < 2;

    auto dist_to_span = [&](const Vec& v) {
        Vec d = v;
        for (const Vec& b : basis) {
            const double c = dot(d, b);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c * b[i];
        }
        return norm(d);
    };

    const Vec u0 = map.value(base.x0, base.y0);
    std::vector<Vec> images;
    for (const auto& [x, y] : samples) {
        if (!map.interior(x, y))
            throw DomainError("span_check: sample point outside the open rectangle");
        SpanSample s;
        s.x = x;
        s.y = y;
        s.dist_fprime = dist_to_span(map.f.deriv(x));
        s.dist_gprime = dist_to_span(map.g.deriv(y));
        const Vec u = map.value(x, y);
        s.dist_u = dist_to_span(vsub(u, u0));
        images.push_back(u);
        report.max_dist_fprime = std::max(report.max_dist_fprime, s.dist_fprime);
        report.max_dist_gprime = std::max(report.max_dist_gprime, s.dist_gprime);
        report.max_dist_u = std::max(report.max_dist_u, s.dist_u);
        report.samples.push_back(s);
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            report.diameter = std::max(report.diameter, norm(vsub(images[i], images[j])));

    report.pass = std::max(report.max_dist_fprime, report.max_dist_gprime) <= tol &&
                  report.max_dist_u <= tol * (1.0 + report.diameter);
    return report;
}

}  // namespace tlap
