#include "tlap/core.hpp"

#include <cmath>

namespace tlap {

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec vadd(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("vadd: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vsub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("vsub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vscale(double c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void require_finite(const Vec& v, const std::string& what) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw InvalidInput(what + ": non-finite entry at index " +
                               std::to_string(i));
}

double Rng::gaussian() {
    // Box-Muller; reject u1 == 0 so log stays finite.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

Vec Rng::unit_vector(int dim) {
    if (dim < 1) throw InvalidInput("unit_vector: dim must be positive");
    Vec v(dim);
    double n = 0.0;
    while (n < 1e-8) {  // resample near-zero draws
        for (int i = 0; i < dim; ++i) v[i] = gaussian();
        n = norm(v);
    }
    for (int i = 0; i < dim; ++i) v[i] /= n;
    return v;
}

}  // namespace tlap
