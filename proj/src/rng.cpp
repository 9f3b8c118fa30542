#include "rfcompress/rng.hpp"

#include <cmath>

#include "rfcompress/errors.hpp"

namespace rfc {

namespace {

constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam_lower(double u) {
    constexpr double p_low = 0.02425;
    if (u < p_low) {
        double q = std::sqrt(-2.0 * std::log(u));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    double q = u - 0.5;
    double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

// u in (0, 0.5]; the erfc in the Halley step is then in the accurate tail.
double inv_normal_lower(double u) {
    double x = acklam_lower(u);
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - u;
    double v = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - v / (1.0 + 0.5 * x * v);
}

}  // namespace

double inv_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidArgument("inv_normal_cdf: argument must lie in (0, 1)");
    // Reflect the upper half; 1 - u is exact for u >= 0.5, and the result is
    // symmetric by construction.
    return u > 0.5 ? -inv_normal_lower(1.0 - u) : inv_normal_lower(u);
}

double inv_cauchy_cdf(double u, double scale) {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidArgument("inv_cauchy_cdf: argument must lie in (0, 1)");
    return scale * std::tan(M_PI * (u - 0.5));
}

double inv_laplace_cdf(double u, double scale) {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidArgument("inv_laplace_cdf: argument must lie in (0, 1)");
    return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

}  // namespace rfc
