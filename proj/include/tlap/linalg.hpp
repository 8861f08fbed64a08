#pragma once

#include <vector>

#include "tlap/core.hpp"

namespace tlap {

/// Small dense real matrix, row-major. Sized for gradients (N x n with
/// min(N,n) <= 4); nothing here is tuned for large dimensions.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0);

    static Mat identity(int n);
    /// rows x 1 column matrix from a vector.
    static Mat column(const Vec& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

    Mat transpose() const;
    double frobenius() const;
    bool finite() const;

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat scaled(double c) const;

    /// max |a_ij - b_ij|
    static double max_abs_diff(const Mat& a, const Mat& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// a b^T for a in R^m, b in R^k.
Mat outer(const Vec& a, const Vec& b);
/// Throws InvalidInput naming the first non-finite entry.
void require_finite(const Mat& X, const std::string& what);

/// Numerical-rank policy: singular values strictly above
/// rel_tol * sigma_max + abs_tol count toward the rank. Ties at the
/// threshold count as below (conservative rank).
struct RankPolicy {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;

    double threshold(double sigma_max) const { return rel_tol * sigma_max + abs_tol; }

    /// Default for exact (analytic) jets.
    static RankPolicy analytic() { return RankPolicy{}; }
    /// Guidance for finite-difference jets on spacing h, where O(h^2)
    /// stencil error dominates machine noise.
    static RankPolicy for_grid_spacing(double h) { return RankPolicy{1e-4 * h, 1e-12}; }
};

struct SvdResult {
    Mat U;                  // rows x k, orthonormal columns, k = min(rows, cols)
    std::vector<double> sigma;  // nonincreasing, nonnegative
    Mat V;                  // cols x k, orthonormal columns
};

/// Thin SVD of a small matrix by one-sided Jacobi rotations with a fixed
/// sweep order (deterministic; no external dependency). Columns tied to
/// zero singular values are completed to an orthonormal set.
SvdResult svd_small(const Mat& X);

/// Count of singular values strictly above the policy threshold.
int numerical_rank(const Mat& X, const RankPolicy& policy);

/// The pair of orthogonal projections of R^N determined by the range of X:
/// par projects onto range(X), perp onto its orthogonal complement.
struct ProjectionPair {
    Mat par;    // N x N
    Mat perp;   // N x N, perp = I - par
    int rank = 0;
    std::vector<double> singular_values;
};

ProjectionPair projections(const Mat& X, const RankPolicy& policy);

/// Solve (Du^T Du) x = rhs for n = 2 via the cofactor form of the 2x2
/// inverse. Throws SingularGramError when det(Du^T Du) <= abs_tol^2;
/// callers fall back to the lower-rank branches.
Vec gram_solve(const Mat& Du, const Vec& rhs, double abs_tol = 1e-12);

}  // namespace tlap
