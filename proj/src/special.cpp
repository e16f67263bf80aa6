#include "s2b/special.hpp"

#include <cmath>
#include <stdexcept>

namespace s2b {

double ln_minus(double t) {
    if (!(t > 0.0)) throw std::domain_error("ln_minus: argument must be > 0");
    return t < 1.0 ? -std::log(t) : 0.0;
}

double ln_plus(double t) {
    if (!(t > 0.0)) throw std::domain_error("ln_plus: argument must be > 0");
    return t >= 1.0 ? std::log(t) : 0.0;
}

namespace {

// sum_{k>=1} z^k / k^2, |z| <= 1/2: at most ~50 terms for 1e-16.
double dilog_series(double z) {
    double term = z;
    double sum = z;
    for (int k = 2; k < 200; ++k) {
        term *= z;
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double dilog(double z) {
    if (z < 0.0 || z > 1.0) throw std::domain_error("dilog: need z in [0, 1]");
    constexpr double pi2_6 = M_PI * M_PI / 6.0;
    if (z == 0.0) return 0.0;
    if (z == 1.0) return pi2_6;
    if (z <= 0.5) return dilog_series(z);
    // Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z)
    const double om = 1.0 - z;
    return pi2_6 - std::log(z) * std::log(om) - dilog_series(om);
}

}  // namespace s2b
