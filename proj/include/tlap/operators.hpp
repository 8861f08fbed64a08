#pragma once

#include <utility>

#include "tlap/linalg.hpp"
#include "tlap/maps.hpp"

namespace tlap {

/// Trace of the Hessian over the spatial indices, one entry per component.
Vec laplacian(const Jet2& jet);

/// Normal part of the Laplacian: perp(Du) * Lap(u). Zero exactly when the
/// Laplacian is tangent to the image.
Vec tangential_residual(const Jet2& jet, const RankPolicy& policy);

/// Tangential part of the Laplacian (the tension field); together with
/// tangential_residual it reconstitutes laplacian(jet).
Vec tension_field(const Jet2& jet, const RankPolicy& policy);

/// Contraction (Du (x) Du) : D^2 u, the leading term of the expanded
/// p-Laplacian and of the infinity-Laplacian.
Vec du_du_d2u(const Jet2& jet);

/// Expanded p-Laplacian residual Du(x)Du:D^2u + (|Du|^2/(p-2)) Lap(u) for
/// finite p > 2; p == 2 dispatches to the plain Laplacian (the expanded
/// form is singular there while the divergence form reduces to Lap(u)).
Vec p_laplace_residual(const Jet2& jet, double p);

/// Infinity-Laplacian residual Du(x)Du:D^2u + |Du|^2 perp(Du) Lap(u).
Vec inf_laplace_residual(const Jet2& jet, const RankPolicy& policy);

/// The two mutually orthogonal systems the p-Laplacian splits into; pass
/// p = infinity for the limit pair whose sum is the infinity-Laplacian.
std::pair<Vec, Vec> decomposition_pair(const Jet2& jet, double p, const RankPolicy& policy);

/// Normalization used for scale-free residual reporting.
double residual_scale(const Jet2& jet);
double normalized_norm(const Vec& residual, const Jet2& jet);

/// Coefficient vector representing Lap(u) = Du * A at a point (n = 2),
/// chosen by gradient rank: Gram solve at rank 2, the Du Du^T quotient at
/// rank 1, zero at rank 0.
struct AField {
    enum class Branch { rank2, rank1, rank0 };

    Vec value;  // R^2
    Branch branch = Branch::rank0;
    double defect = 0.0;  // |Lap(u) - Du * value|
    /// Set when the rank-2 Gram solve lost to roundoff and the rank-1
    /// branch was used instead.
    bool gram_fallback = false;
    /// sigma_2 within a factor 10 of the rank threshold; both candidate
    /// defects are then reported (the coefficient field is genuinely
    /// discontinuous across rank drops, so ambiguity is surfaced).
    bool near_threshold = false;
    double defect_rank2 = -1.0;  // -1 when not computed
    double defect_rank1 = -1.0;
};

const char* to_string(AField::Branch b);

AField a_field(const Jet2& jet, const RankPolicy& policy);

/// Rank-one factorization Du = xi (x) a with |a| = 1 (xi carries the
/// magnitude); the first non-negligible entry of a is made positive.
struct RankOneFactor {
    Vec xi;  // R^N
    Vec a;   // R^n, unit
    bool sigma_absorbed = true;
};

RankOneFactor rank_one_factor(const Jet2& jet, const RankPolicy& policy);

}  // namespace tlap
