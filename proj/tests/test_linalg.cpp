#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "tlap/linalg.hpp"

using namespace tlap;

namespace {

Mat random_mat(Rng& rng, int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

double max_offdiag_identity(const Mat& m) {
    double d = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            d = std::max(d, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
    return d;
}

// independent 2x2 solve by Gaussian elimination with partial pivoting
Vec solve2_gauss(double a, double b, double c, double d, Vec rhs) {
    if (std::abs(c) > std::abs(a)) {
        std::swap(a, c);
        std::swap(b, d);
        std::swap(rhs[0], rhs[1]);
    }
    const double f = c / a;
    d -= f * b;
    rhs[1] -= f * rhs[0];
    const double y = rhs[1] / d;
    return {(rhs[0] - b * y) / a, y};
}

}  // namespace

TEST_CASE("svd of a unit column") {
    Mat x(2, 1);
    x(0, 0) = 1.0;
    const SvdResult s = svd_small(x);
    CHECK(s.sigma.size() == 1);
    CHECK(s.sigma[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(std::abs(s.U(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(s.U(1, 0)) < 1e-14);
}

TEST_CASE("svd of the zero matrix keeps orthonormal factors") {
    const Mat x(2, 2);
    const SvdResult s = svd_small(x);
    CHECK(s.sigma[0] == 0.0);
    CHECK(s.sigma[1] == 0.0);
    CHECK(max_offdiag_identity(s.U.transpose() * s.U) < 1e-12);
    CHECK(max_offdiag_identity(s.V.transpose() * s.V) < 1e-12);
}

TEST_CASE("svd of a rectangular diagonal sorts singular values") {
    Mat x(3, 2);
    x(0, 0) = 3.0;
    x(1, 1) = 4.0;
    const SvdResult s = svd_small(x);
    CHECK(s.sigma[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(s.sigma[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("svd rejects non-finite input naming the entry") {
    Mat x(2, 2);
    x(1, 0) = std::nan("");
    CHECK_THROWS_WITH_AS(svd_small(x), "svd_small: non-finite entry at (1,0)", InvalidInput);
}

TEST_CASE("svd reconstruction and orthonormality over random shapes") {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const int rows = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
        const int cols = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Mat x = random_mat(rng, rows, cols);
        const SvdResult s = svd_small(x);
        const int k = std::min(rows, cols);
        for (int j = 0; j + 1 < k; ++j) CHECK(s.sigma[j] >= s.sigma[j + 1]);
        CHECK(s.sigma.back() >= 0.0);
        CHECK(max_offdiag_identity(s.U.transpose() * s.U) < 1e-12);
        CHECK(max_offdiag_identity(s.V.transpose() * s.V) < 1e-12);
        Mat usv(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double acc = 0.0;
                for (int t = 0; t < k; ++t) acc += s.U(i, t) * s.sigma[t] * s.V(j, t);
                usv(i, j) = acc;
            }
        CHECK(Mat::max_abs_diff(usv, x) <= 1e-12 * std::max(1.0, s.sigma[0]));
    }
}

TEST_CASE("numerical rank basics") {
    const RankPolicy policy{1e-10, 0.0};
    CHECK(numerical_rank(Mat(2, 2), policy) == 0);

    Mat prop(2, 2);  // proportional rows
    prop(0, 0) = 1.0;
    prop(0, 1) = 2.0;
    prop(1, 0) = 2.0;
    prop(1, 1) = 4.0;
    CHECK(numerical_rank(prop, policy) == 1);

    Mat tiny(2, 2);  // sigma = {1, 1e-14} exactly (diagonal)
    tiny(0, 0) = 1.0;
    tiny(1, 1) = 1e-14;
    CHECK(numerical_rank(tiny, policy) == 1);
    CHECK(numerical_rank(tiny, RankPolicy{1e-15, 0.0}) == 2);
}

TEST_CASE("numerical rank is scale invariant with abs_tol = 0") {
    Rng rng(7);
    const RankPolicy policy{1e-9, 0.0};
    for (int trial = 0; trial < 100; ++trial) {
        const Mat x = random_mat(rng, 3, 2);
        const int r = numerical_rank(x, policy);
        for (double c : {3.0, -0.125, 1e6, 1e-6})
            CHECK(numerical_rank(x.scaled(c), policy) == r);
    }
}

TEST_CASE("projections of the zero map give perp = I") {
    const ProjectionPair p = projections(Mat(2, 1), RankPolicy{});
    CHECK(p.rank == 0);
    CHECK(max_offdiag_identity(p.perp) < 1e-14);
    CHECK(p.par.frobenius() < 1e-14);
}

TEST_CASE("projections of a coordinate column") {
    Mat x(2, 1);
    x(0, 0) = 1.0;
    const ProjectionPair p = projections(x, RankPolicy{});
    CHECK(p.rank == 1);
    CHECK(std::abs(p.par(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(p.par(1, 1)) < 1e-14);
    CHECK(std::abs(p.perp(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(p.perp(0, 0)) < 1e-14);
}

TEST_CASE("projections of the canonical embedding") {
    Mat x(3, 2);
    x(0, 0) = 1.0;
    x(1, 1) = 1.0;
    const ProjectionPair p = projections(x, RankPolicy{});
    CHECK(p.rank == 2);
    Mat expect(3, 3);
    expect(2, 2) = 1.0;
    CHECK(Mat::max_abs_diff(p.perp, expect) < 1e-13);
}

TEST_CASE("projection pair invariants over random matrices") {
    Rng rng(2024);
    const RankPolicy policy{};
    for (int trial = 0; trial < 400; ++trial) {
        const int rows = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
        const int cols = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Mat x = random_mat(rng, rows, cols);
        const ProjectionPair p = projections(x, policy);

        CHECK(max_offdiag_identity(p.par + p.perp) <= 1e-12);
        CHECK(Mat::max_abs_diff(p.par * p.par, p.par) <= 1e-12);
        CHECK(Mat::max_abs_diff(p.perp * p.perp, p.perp) <= 1e-12);
        CHECK((p.par * p.perp).frobenius() <= 1e-12);
        CHECK(Mat::max_abs_diff(p.par, p.par.transpose()) <= 1e-12);
        CHECK(Mat::max_abs_diff(p.perp, p.perp.transpose()) <= 1e-12);
        double tr = 0.0;
        for (int i = 0; i < rows; ++i) tr += p.par(i, i);
        CHECK(std::llround(tr) == p.rank);
        CHECK(std::abs(tr - p.rank) <= 1e-12);

        // par X = X when every singular value clears the threshold
        const double thr = policy.threshold(p.singular_values.front());
        if (p.rank == std::min(rows, cols) && p.singular_values.back() > thr)
            CHECK(Mat::max_abs_diff(p.par * x, x) <= 1e-11 * std::max(1.0, p.singular_values.front()));
        CHECK((p.perp * x).frobenius() <= std::max(thr * std::sqrt(double(cols)), 1e-12));
    }
}

TEST_CASE("gram solve on easy Gram matrices") {
    Mat embed(3, 2);  // Gram = I
    embed(0, 0) = 1.0;
    embed(1, 1) = 1.0;
    const Vec r1 = gram_solve(embed, {5.0, 7.0});
    CHECK(r1[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(r1[1] == doctest::Approx(7.0).epsilon(1e-14));

    Mat diag(3, 2);  // Gram = diag(4, 1)
    diag(0, 0) = 2.0;
    diag(1, 1) = 1.0;
    const Vec r2 = gram_solve(diag, {4.0, 1.0});
    CHECK(r2[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2[1] == doctest::Approx(1.0).epsilon(1e-14));

    Mat skew(2, 2);  // Gram = [[2,1],[1,1]]
    skew(0, 0) = 1.0;
    skew(1, 0) = 1.0;
    skew(1, 1) = 1.0;
    const Vec r3 = gram_solve(skew, {1.0, 0.0});
    CHECK(r3[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r3[1] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("gram solve rejects a singular Gram matrix") {
    Mat rank1(3, 2);
    rank1(0, 0) = 1.0;
    rank1(0, 1) = 2.0;  // second column proportional to the first
    CHECK_THROWS_AS(gram_solve(rank1, {1.0, 1.0}), SingularGramError);
}

TEST_CASE("gram solve agrees with a Gaussian-elimination oracle") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Mat du = random_mat(rng, rows, 2);
        if (numerical_rank(du, RankPolicy{1e-6, 0.0}) < 2) continue;
        const Vec rhs{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const Vec got = gram_solve(du, rhs);

        double g00 = 0, g01 = 0, g11 = 0;
        for (int i = 0; i < rows; ++i) {
            g00 += du(i, 0) * du(i, 0);
            g01 += du(i, 0) * du(i, 1);
            g11 += du(i, 1) * du(i, 1);
        }
        const Vec want = solve2_gauss(g00, g01, g01, g11, rhs);
        const double scale = std::max(1.0, std::max(std::abs(want[0]), std::abs(want[1])));
        CHECK(std::abs(got[0] - want[0]) <= 1e-10 * scale);
        CHECK(std::abs(got[1] - want[1]) <= 1e-10 * scale);
    }
}
