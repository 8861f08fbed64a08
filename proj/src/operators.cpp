#include "tlap/operators.hpp"

#include <cmath>
#include <limits>

namespace tlap {

Vec laplacian(const Jet2& jet) {
    jet.validate();
    Vec lap(jet.N(), 0.0);
    for (int a = 0; a < jet.N(); ++a)
        for (int i = 0; i < jet.n(); ++i) lap[a] += jet.hess[a](i, i);
    return lap;
}

Vec tangential_residual(const Jet2& jet, const RankPolicy& policy) {
    return projections(jet.grad, policy).perp * laplacian(jet);
}

Vec tension_field(const Jet2& jet, const RankPolicy& policy) {
    return projections(jet.grad, policy).par * laplacian(jet);
}

Vec du_du_d2u(const Jet2& jet) {
    jet.validate();
    const int n = jet.n(), N = jet.N();
    // s_i = sum_{b,j} Du_bj D^2_ij u_b, then Du * s.
    Vec s(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < N; ++b)
            for (int j = 0; j < n; ++j) s[i] += jet.grad(b, j) * jet.hess[b](i, j);
    return jet.grad * s;
}

Vec p_laplace_residual(const Jet2& jet, double p) {
    if (!(p >= 2.0) || !std::isfinite(p))
        throw InvalidInput("p_laplace_residual: requires finite p >= 2");
    if (p == 2.0) return laplacian(jet);
    const double g2 = jet.grad.frobenius() * jet.grad.frobenius();
    const Vec lap = laplacian(jet);
    Vec r = du_du_d2u(jet);
    const double c = g2 / (p - 2.0);
    for (int a = 0; a < jet.N(); ++a) r[a] += c * lap[a];
    return r;
}

Vec inf_laplace_residual(const Jet2& jet, const RankPolicy& policy) {
    const double g2 = jet.grad.frobenius() * jet.grad.frobenius();
    const Vec normal = projections(jet.grad, policy).perp * laplacian(jet);
    Vec r = du_du_d2u(jet);
    for (int a = 0; a < jet.N(); ++a) r[a] += g2 * normal[a];
    return r;
}

std::pair<Vec, Vec> decomposition_pair(const Jet2& jet, double p, const RankPolicy& policy) {
    if (!(p >= 2.0)) throw InvalidInput("decomposition_pair: requires p >= 2 (or infinity)");
    const double g2 = jet.grad.frobenius() * jet.grad.frobenius();
    const ProjectionPair proj = projections(jet.grad, policy);
    const Vec lap = laplacian(jet);

    Vec second = proj.perp * lap;
    for (int a = 0; a < jet.N(); ++a) second[a] *= g2;

    Vec first = du_du_d2u(jet);
    if (std::isfinite(p)) {
        const Vec tang = proj.par * lap;
        const double c = g2 / (p - 2.0);
        for (int a = 0; a < jet.N(); ++a) first[a] += c * tang[a];
    }
    return {std::move(first), std::move(second)};
}

double residual_scale(const Jet2& jet) {
    const double g = jet.grad.frobenius();
    return (1.0 + g * g) * (1.0 + jet.hess_frobenius());
}

double normalized_norm(const Vec& residual, const Jet2& jet) {
    return norm(residual) / residual_scale(jet);
}

const char* to_string(AField::Branch b) {
    switch (b) {
        case AField::Branch::rank2: return "rank2";
        case AField::Branch::rank1: return "rank1";
        default: return "rank0";
    }
}

namespace {

Vec a_field_rank1_value(const Jet2& jet, const Vec& lap) {
    // A = Lap(u)^T (Du Du^T / |Du Du^T|^2) Du
    const Mat M = jet.grad * jet.grad.transpose();  // N x N
    const double m2 = M.frobenius() * M.frobenius();
    const int N = jet.N(), n = jet.n();
    Vec a(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int al = 0; al < N; ++al)
            for (int be = 0; be < N; ++be) s += lap[al] * M(al, be) * jet.grad(be, j);
        a[j] = s / m2;
    }
    return a;
}

double a_defect(const Jet2& jet, const Vec& lap, const Vec& a) {
    return norm(vsub(lap, jet.grad * a));
}

}  // namespace

AField a_field(const Jet2& jet, const RankPolicy& policy) {
    jet.validate();
    if (jet.n() != 2) throw InvalidInput("a_field: implemented for n = 2 only");
    const Vec lap = laplacian(jet);
    const SvdResult svd = svd_small(jet.grad);
    const double thr = policy.threshold(svd.sigma.front());
    int rank = 0;
    for (double s : svd.sigma)
        if (s > thr) ++rank;

    AField out;
    const double sigma2 = svd.sigma.size() > 1 ? svd.sigma[1] : 0.0;
    out.near_threshold = thr > 0.0 && sigma2 >= 0.1 * thr && sigma2 <= 10.0 * thr;

    auto rank1_result = [&](bool fallback) {
        out.branch = AField::Branch::rank1;
        out.value = a_field_rank1_value(jet, lap);
        out.defect = a_defect(jet, lap, out.value);
        out.defect_rank1 = out.defect;
        out.gram_fallback = fallback;
    };

    if (rank == 2) {
        try {
            out.value = gram_solve(jet.grad, jet.grad.transpose() * lap, policy.abs_tol);
            out.branch = AField::Branch::rank2;
            out.defect = a_defect(jet, lap, out.value);
            out.defect_rank2 = out.defect;
            if (out.near_threshold)
                out.defect_rank1 = a_defect(jet, lap, a_field_rank1_value(jet, lap));
        } catch (const SingularGramError&) {
            // tolerance race between the rank count and the Gram determinant
            rank1_result(true);
        }
    } else if (rank == 1) {
        rank1_result(false);
        if (out.near_threshold) {
            try {
                const Vec cand = gram_solve(jet.grad, jet.grad.transpose() * lap, policy.abs_tol);
                out.defect_rank2 = a_defect(jet, lap, cand);
            } catch (const SingularGramError&) {
            }
        }
    } else {
        out.branch = AField::Branch::rank0;
        out.value = Vec(2, 0.0);
        out.defect = norm(lap);
    }
    return out;
}

RankOneFactor rank_one_factor(const Jet2& jet, const RankPolicy& policy) {
    jet.validate();
    const SvdResult svd = svd_small(jet.grad);
    const double thr = policy.threshold(svd.sigma.front());
    int rank = 0;
    for (double s : svd.sigma)
        if (s > thr) ++rank;
    if (rank != 1)
        throw RankMismatchError("rank_one_factor: gradient has numerical rank " +
                                std::to_string(rank) + ", expected 1");

    RankOneFactor f;
    f.xi.resize(jet.N());
    f.a.resize(jet.n());
    for (int i = 0; i < jet.N(); ++i) f.xi[i] = svd.sigma[0] * svd.U(i, 0);
    for (int j = 0; j < jet.n(); ++j) f.a[j] = svd.V(j, 0);
    // sign convention: first non-negligible entry of a is positive
    double lead = 0.0;
    for (double v : f.a)
        if (std::abs(v) > 1e-12) {
            lead = v;
            break;
        }
    if (lead < 0.0) {
        for (double& v : f.xi) v = -v;
        for (double& v : f.a) v = -v;
    }
    return f;
}

}  // namespace tlap
