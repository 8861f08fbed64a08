#include "tlap/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace tlap {

std::vector<RankComponent> rank_segmentation(const MapSource& source,
                                             const BoxDomain& domain,
                                             const RankPolicy& policy) {
    domain.validate();
    const int n = domain.dim();
    if (n != source.dims().first)
        throw InvalidInput("rank_segmentation: domain dimension mismatch");
    if (!source.domain().contains(domain.lower) || !source.domain().contains(domain.upper))
        throw InvalidInput("rank_segmentation: domain not inside the source domain");

    // interior lattice: one cell in from every face
    std::vector<int> inner_res(n);
    for (int i = 0; i < n; ++i) {
        inner_res[i] = domain.resolution[i] - 2;
        if (inner_res[i] < 1) throw InvalidInput("rank_segmentation: empty interior lattice");
    }

    std::size_t total = 1;
    for (int r : inner_res) total *= static_cast<std::size_t>(r);
    std::vector<int> rank_of(total);
    std::vector<Vec> points(total), images(total);

    auto inner_flat = [&](const std::vector<int>& idx) {
        std::size_t f = 0;
        for (int i = 0; i < n; ++i)
            f = f * static_cast<std::size_t>(inner_res[i]) + static_cast<std::size_t>(idx[i]);
        return f;
    };

    for_each_index(inner_res, [&](const std::vector<int>& idx) {
        std::vector<int> full = idx;
        for (int i = 0; i < n; ++i) ++full[i];
        const Vec x = domain.point(full);
        const Jet2 jet = source.eval_jet(x);
        const std::size_t f = inner_flat(idx);
        rank_of[f] = numerical_rank(jet.grad, policy);
        points[f] = x;
        images[f] = jet.value;
    });

    std::vector<int> label(total, -1);
    std::vector<RankComponent> comps;
    for_each_index(inner_res, [&](const std::vector<int>& seed) {
        const std::size_t fs = inner_flat(seed);
        if (label[fs] >= 0) return;
        RankComponent comp;
        comp.label = static_cast<int>(comps.size());
        comp.rank = rank_of[fs];
        std::deque<std::vector<int>> queue{seed};
        label[fs] = comp.label;
        while (!queue.empty()) {
            const std::vector<int> cur = queue.front();
            queue.pop_front();
            const std::size_t fc = inner_flat(cur);
            comp.cells.push_back(cur);
            comp.sample_points.emplace_back(points[fc], images[fc]);
            for (int ax = 0; ax < n; ++ax) {
                for (int d = -1; d <= 1; d += 2) {
                    std::vector<int> nb = cur;
                    nb[ax] += d;
                    if (nb[ax] < 0 || nb[ax] >= inner_res[ax]) continue;
                    const std::size_t fn = inner_flat(nb);
                    if (label[fn] >= 0 || rank_of[fn] != comp.rank) continue;
                    label[fn] = comp.label;
                    queue.push_back(nb);
                }
            }
        }
        comps.push_back(std::move(comp));
    });
    return comps;
}

AffineFit fit_affine(const std::vector<Vec>& points, int dim) {
    if (points.empty()) throw InvalidInput("fit_affine: no points");
    const int N = static_cast<int>(points.front().size());
    if (dim < 0 || dim >= N) throw InvalidInput("fit_affine: need 0 <= dim < N");
    if (static_cast<int>(points.size()) < dim + 1)
        throw InvalidInput("fit_affine: need at least dim+1 points");

    AffineFit fit;
    fit.dim = dim;
    fit.base.assign(N, 0.0);
    for (const Vec& p : points)
        for (int i = 0; i < N; ++i) fit.base[i] += p[i];
    for (int i = 0; i < N; ++i) fit.base[i] /= static_cast<double>(points.size());

    if (dim > 0) {
        // principal directions from the scatter matrix of the centered cloud
        Mat scatter(N, N);
        for (const Vec& p : points) {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    scatter(i, j) += (p[i] - fit.base[i]) * (p[j] - fit.base[j]);
        }
        const SvdResult svd = svd_small(scatter);
        for (int k = 0; k < dim; ++k) {
            Vec b(N);
            for (int i = 0; i < N; ++i) b[i] = svd.U(i, k);
            fit.basis.push_back(std::move(b));
        }
    }

    double sum2 = 0.0;
    for (const Vec& p : points) {
        Vec d = vsub(p, fit.base);
        for (const Vec& b : fit.basis) {
            const double c = dot(d, b);
            for (int i = 0; i < N; ++i) d[i] -= c * b[i];
        }
        const double dist = norm(d);
        sum2 += dist * dist;
        fit.max_dev = std::max(fit.max_dev, dist);
    }
    fit.rms = std::sqrt(sum2 / static_cast<double>(points.size()));
    return fit;
}

namespace {

double image_diameter(const std::vector<std::pair<Vec, Vec>>& pts) {
    // exact pairwise diameter; component sizes are desk scale
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            d = std::max(d, norm(vsub(pts[i].second, pts[j].second)));
    return d;
}

}  // namespace

FlatnessReport flatness_report(const MapSource& source, const BoxDomain& domain,
                               const RankPolicy& policy, double tol) {
    if (!(tol > 0.0)) throw InvalidInput("flatness_report: tol must be positive");
    FlatnessReport report;
    report.tol = tol;
    report.all_flat = true;
    const int N = source.dims().second;

    for (RankComponent& comp : rank_segmentation(source, domain, policy)) {
        ComponentVerdict v;
        v.diameter = image_diameter(comp.sample_points);
        v.counted = comp.cells.size() >= 4;

        std::vector<Vec> image;
        image.reserve(comp.sample_points.size());
        for (const auto& sp : comp.sample_points) image.push_back(sp.second);

        if (comp.rank >= N) {
            // zero codimension: nothing to fit against
            v.codim0 = true;
            v.flat = true;
            v.fit = fit_affine(image, 0);
        } else if (comp.rank == 0) {
            // constant-on-component claim: verdict by image diameter
            v.fit = fit_affine(image, 0);
            v.flat = v.diameter <= tol;
        } else {
            const bool single_point = v.diameter <= 1e-13 * (1.0 + norm(image.front()));
            int dim = single_point ? 0 : comp.rank;
            dim = std::min<int>(dim, static_cast<int>(image.size()) - 1);
            v.fit = fit_affine(image, dim);
            v.flat = v.fit.max_dev <= tol * (1.0 + v.diameter);
        }
        if (v.counted && !v.flat) report.all_flat = false;
        v.component = std::move(comp);
        report.components.push_back(std::move(v));
    }
    return report;
}

double subspace_angle(const AffineFit& a, const AffineFit& b) {
    if (a.dim != b.dim) throw InvalidInput("subspace_angle: dimensions differ");
    if (a.dim == 0) return 0.0;
    const int N = static_cast<int>(a.base.size());
    auto proj = [N](const AffineFit& f) {
        Mat p(N, N);
        for (const Vec& v : f.basis) p = p + outer(v, v);
        return p;
    };
    const SvdResult svd = svd_small(proj(a) - proj(b));
    const double s = std::min(1.0, svd.sigma.front());
    return std::asin(s);
}

double line_angle(const AffineFit& a, const AffineFit& b) {
    if (a.dim != 1 || b.dim != 1) throw InvalidInput("line_angle: needs dim-1 fits");
    const double c = std::min(1.0, std::abs(dot(a.basis[0], b.basis[0])));
    return std::acos(c);
}

}  // namespace tlap
