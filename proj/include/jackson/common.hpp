#ifndef JACKSON_COMMON_HPP
#define JACKSON_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace jackson {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Raised when an operation refuses its input (precondition or guard failure).
/// The message carries the diagnostic shown to the user.
class rejection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double sqr(double x) { return x * x; }

inline double log_abs(cplx z)
{
    return std::log(std::abs(z));
}

/// Point-to-segment distance in the plane.
inline double segment_distance(cplx a, cplx b, cplx z)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    double u = ((z - a) * std::conj(d)).real() / len2;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(z - (a + u * d));
}

/// Closest point on segment [a,b] to z.
inline cplx segment_project(cplx a, cplx b, cplx z)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return a;
    const double u = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return a + u * d;
}

} // namespace jackson

#endif
