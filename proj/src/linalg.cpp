#include "tlap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tlap {

Mat::Mat(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw InvalidInput("Mat: rows and cols must be >= 1");
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::column(const Vec& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Mat::frobenius() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

bool Mat::finite() const {
    for (double x : a_)
        if (!std::isfinite(x)) return false;
    return true;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("Mat+: shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("Mat-: shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw InvalidInput("Mat*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    if (cols_ != static_cast<int>(v.size())) throw InvalidInput("Mat*vec: shape mismatch");
    Vec r(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Mat Mat::scaled(double c) const {
    Mat r = *this;
    for (double& x : r.a_) x *= c;
    return r;
}

double Mat::max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

Mat outer(const Vec& a, const Vec& b) {
    Mat m(static_cast<int>(a.size()), static_cast<int>(b.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

void require_finite(const Mat& X, const std::string& what) {
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j)
            if (!std::isfinite(X(i, j)))
                throw InvalidInput(what + ": non-finite entry at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
}

namespace {

// One-sided Jacobi on a tall-or-square matrix W (rows >= cols): rotate
// column pairs in a fixed (p,q) order until all pairs are orthogonal,
// then read singular values off the column norms.
struct JacobiResult {
    Mat W;  // rotated copy; columns are sigma_j * u_j in arbitrary order
    Mat V;  // accumulated right rotations
};

JacobiResult one_sided_jacobi(Mat W) {
    const int k = W.cols();
    Mat V = Mat::identity(k);
    const int max_sweeps = 60;
    const double tol = 1e-15;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (int p = 0; p < k; ++p) {
            for (int q = p + 1; q < k; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < W.rows(); ++i) {
                    app += W(i, p) * W(i, p);
                    aqq += W(i, q) * W(i, q);
                    apq += W(i, p) * W(i, q);
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                converged = false;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < W.rows(); ++i) {
                    const double wp = W(i, p), wq = W(i, q);
                    W(i, p) = c * wp - s * wq;
                    W(i, q) = s * wp + c * wq;
                }
                for (int i = 0; i < k; ++i) {
                    const double vp = V(i, p), vq = V(i, q);
                    V(i, p) = c * vp - s * vq;
                    V(i, q) = s * vp + c * vq;
                }
            }
        }
        if (converged) break;
    }
    return {std::move(W), std::move(V)};
}

// Replace zero columns of U with an orthonormal completion drawn from the
// standard basis (deterministic scan).
void complete_orthonormal(Mat& U, const std::vector<double>& sigma) {
    const int m = U.rows(), k = U.cols();
    for (int j = 0; j < k; ++j) {
        if (sigma[j] > 0.0) continue;
        for (int e = 0; e < m; ++e) {
            Vec cand(m, 0.0);
            cand[e] = 1.0;
            // two passes of Gram-Schmidt against the nonzero/filled columns
            for (int pass = 0; pass < 2; ++pass) {
                for (int c = 0; c < k; ++c) {
                    if (c == j || (sigma[c] <= 0.0 && c > j)) continue;
                    double d = 0.0;
                    for (int i = 0; i < m; ++i) d += cand[i] * U(i, c);
                    for (int i = 0; i < m; ++i) cand[i] -= d * U(i, c);
                }
            }
            const double nn = norm(cand);
            if (nn > 0.5) {
                for (int i = 0; i < m; ++i) U(i, j) = cand[i] / nn;
                break;
            }
        }
    }
}

}  // namespace

SvdResult svd_small(const Mat& X) {
    require_finite(X, "svd_small");
    const bool transposed = X.rows() < X.cols();
    const Mat W0 = transposed ? X.transpose() : X;
    const int m = W0.rows(), k = W0.cols();

    auto [W, V] = one_sided_jacobi(W0);

    std::vector<double> sigma(k);
    Mat U(m, k);
    for (int j = 0; j < k; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += W(i, j) * W(i, j);
        sigma[j] = std::sqrt(s);
        if (sigma[j] > 0.0)
            for (int i = 0; i < m; ++i) U(i, j) = W(i, j) / sigma[j];
    }

    // stable descending order
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sigma[a] > sigma[b]; });
    Mat Us(m, k), Vs(V.rows(), k);
    std::vector<double> ss(k);
    for (int j = 0; j < k; ++j) {
        ss[j] = sigma[order[j]];
        for (int i = 0; i < m; ++i) Us(i, j) = U(i, order[j]);
        for (int i = 0; i < V.rows(); ++i) Vs(i, j) = V(i, order[j]);
    }
    complete_orthonormal(Us, ss);

    if (transposed) return {std::move(Vs), std::move(ss), std::move(Us)};
    return {std::move(Us), std::move(ss), std::move(Vs)};
}

int numerical_rank(const Mat& X, const RankPolicy& policy) {
    const SvdResult s = svd_small(X);
    const double sigma_max = s.sigma.empty() ? 0.0 : s.sigma.front();
    const double thr = policy.threshold(sigma_max);
    int r = 0;
    for (double sv : s.sigma)
        if (sv > thr) ++r;
    return r;
}

ProjectionPair projections(const Mat& X, const RankPolicy& policy) {
    const SvdResult s = svd_small(X);
    const int N = X.rows();
    const double sigma_max = s.sigma.empty() ? 0.0 : s.sigma.front();
    const double thr = policy.threshold(sigma_max);

    Mat par(N, N);
    int rank = 0;
    for (std::size_t j = 0; j < s.sigma.size(); ++j) {
        if (s.sigma[j] <= thr) continue;
        ++rank;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) par(a, b) += s.U(a, static_cast<int>(j)) * s.U(b, static_cast<int>(j));
    }
    Mat perp = Mat::identity(N) - par;
    return {std::move(par), std::move(perp), rank, s.sigma};
}

Vec gram_solve(const Mat& Du, const Vec& rhs, double abs_tol) {
    require_finite(Du, "gram_solve");
    require_finite(rhs, "gram_solve rhs");
    if (Du.cols() != 2 || rhs.size() != 2)
        throw InvalidInput("gram_solve: implemented for n = 2 only");

    // Gram matrix G = Du^T Du, inverted through cof(G)^T / det(G).
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (int i = 0; i < Du.rows(); ++i) {
        g00 += Du(i, 0) * Du(i, 0);
        g01 += Du(i, 0) * Du(i, 1);
        g11 += Du(i, 1) * Du(i, 1);
    }
    const double det = g00 * g11 - g01 * g01;
    if (!(det > abs_tol * abs_tol))
        throw SingularGramError("gram_solve: det(Du^T Du) = " + std::to_string(det) +
                                " below abs_tol^2");
    return {(g11 * rhs[0] - g01 * rhs[1]) / det,
            (-g01 * rhs[0] + g00 * rhs[1]) / det};
}

}  // namespace tlap
