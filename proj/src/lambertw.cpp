#include "qcurl/lambertw.hpp"

#include <cmath>
#include <stdexcept>

namespace qcurl {

namespace {

// series around the branch point z = -1/e in p = sqrt(2(e*z + 1))
double branch_series(double p) {
    const double p2 = p * p;
    return -1.0 + p - p2 / 3.0 + (11.0 / 72.0) * p2 * p - (43.0 / 540.0) * p2 * p2 +
           (769.0 / 17280.0) * p2 * p2 * p;
}

}  // namespace

double lambert_w0(double z) {
    const double branch = -std::exp(-1.0);
    if (z <= branch) {
        if (z < branch - 1e-12) throw std::runtime_error("lambert_w0: z below -1/e");
        return -1.0;
    }
    if (z == 0.0) return 0.0;

    double w;
    if (z < -0.25) {
        // the radicand can round below zero one ulp above the branch point
        const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * z + 1.0)));
        if (p < 0.01) return branch_series(p);
        w = branch_series(p);
    } else if (z < 0.0) {
        w = z * (1.0 - z);
    } else if (z < 3.0) {
        w = std::log1p(z);
    } else {
        w = std::log(z) - std::log(std::log(z));
    }

    const double tol = 0.25e-12 * std::max(1.0, std::fabs(z));
    for (int it = 0; it < 50; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (std::fabs(f) <= tol) break;
        const double fp = ew * (1.0 + w);
        const double fpp = ew * (2.0 + w);
        const double step = f / (fp - f * fpp / (2.0 * fp));
        w -= step;
        if (std::fabs(step) <= 2e-16 * (1.0 + std::fabs(w))) break;
    }
    return w;
}

}  // namespace qcurl
