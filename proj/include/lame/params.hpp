#pragma once

#include <algorithm>
#include <stdexcept>

namespace lame {

/// Material pair (lambda, mu) for the operator -mu*Lap - (lambda+mu)*grad div.
/// Ellipticity requires mu > 0 and lambda + 2*mu > 0; both wave speeds are
/// then positive and the free spectrum is [0, inf).
struct LameParams {
    double lambda;
    double mu;

    LameParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
        if (!(mu > 0.0))
            throw std::invalid_argument("LameParams: mu must be positive");
        if (!(lambda + 2.0 * mu > 0.0))
            throw std::invalid_argument("LameParams: lambda + 2*mu must be positive");
    }

    double s_speed2() const { return mu; }              // transverse branch coefficient
    double p_speed2() const { return lambda + 2.0 * mu; } // longitudinal branch coefficient
    double min_speed2() const { return std::min(mu, lambda + 2.0 * mu); }
};

} // namespace lame
