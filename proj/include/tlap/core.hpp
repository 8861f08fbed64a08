#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlap {

using Vec = std::vector<double>;

// Every failure carries a single-line message usable as a CLI diagnostic.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInput : Error { using Error::Error; };
// Point outside the domain box or the entry's validity region.
struct DomainError : Error { using Error::Error; };
// Point on a declared singular set of an analytic entry.
struct SingularPointError : DomainError { using DomainError::DomainError; };
struct SingularGramError : Error { using Error::Error; };
struct RankMismatchError : Error { using Error::Error; };
// Degenerate direction / coefficients / integration path / span.
struct DegenerateError : Error { using Error::Error; };

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(double c, const Vec& v);
bool all_finite(const Vec& v);
// Throws InvalidInput naming the offending entry.
void require_finite(const Vec& v, const std::string& what);

/// Deterministic random helpers. mt19937_64 is pinned by the standard;
/// the <random> distributions are not, so doubles are extracted by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /// Standard normal via Box-Muller (no state carried between calls).
    double gaussian();
    /// Uniform direction on the unit sphere of R^dim.
    Vec unit_vector(int dim);

private:
    std::mt19937_64 gen_;
};

}  // namespace tlap
