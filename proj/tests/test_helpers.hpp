#pragma once

// Shared test utilities: RNG-driven ring elements and an adaptive Simpson
// quadrature oracle kept independent of the Beta-function integration path.

#include <complex>
#include <functional>
#include <random>

#include "ncsphere/trig_laurent.hpp"

namespace ncs::testing {

inline TLF random_tlf(std::mt19937& rng, int max_terms = 8, int max_exp = 3,
                      bool theta_free = false, bool nonneg_exponents = false) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(nonneg_exponents ? 0 : -max_exp, max_exp);
    std::uniform_int_distribution<int> moded(-2, 2);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    TLF f;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        int n1 = theta_free ? 0 : moded(rng);
        int n2 = theta_free ? 0 : moded(rng);
        f += TLF::monomial({coeff(rng), coeff(rng)}, n1, n2, expd(rng), expd(rng),
                           expd(rng), expd(rng));
    }
    return f;
}

// adaptive Simpson on [a,b]
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12, int depth = 24) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int d) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, d - 1);
    };
    // split at an irrational ratio so symmetric integrands cannot fool the
    // first-level error estimate
    double cut = a + 0.3819660112501051 * (b - a);
    double total = 0.0;
    for (auto [lo, hi] : {std::pair{a, cut}, std::pair{cut, b}}) {
        double mid = 0.5 * (lo + hi);
        double flo = f(lo), fm = f(mid), fhi = f(hi);
        double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += rec(lo, hi, flo, fm, fhi, whole, depth);
    }
    return total;
}

// numeric oracle for integrate_quadrant restricted to a theta-free monomial
inline double quadrant_integral_oracle(int a, int b, int c, int d) {
    constexpr double pi = 3.14159265358979323846;
    auto fphi = [&](double phi) {
        return std::pow(std::cos(phi), a) * std::pow(std::sin(phi), b);
    };
    auto fpsi = [&](double psi) {
        return std::pow(std::cos(psi), c) * std::pow(std::sin(psi), d);
    };
    // avoid evaluating at the singular endpoints for negative exponents
    double eps = 0.0;
    if (a < 0 || b < 0 || c < 0 || d < 0) eps = 1e-9;
    double iphi = adaptive_simpson(fphi, eps, pi / 2 - eps);
    double ipsi = adaptive_simpson(fpsi, -pi / 2 + eps, pi / 2 - eps);
    return (2 * pi) * (2 * pi) * iphi * ipsi;
}

}  // namespace ncs::testing
