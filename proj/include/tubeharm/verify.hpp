#pragma once

#include <string>
#include <vector>

namespace tubeharm::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0; // worst observed residual / margin, see detail
    double tol = 0.0;
    std::string detail;
};

struct OdeConfig {
    std::vector<double> lambdas{0.01, 0.1, 1.0};
    std::vector<double> theta0s{0.0, 1.3, 6.183185307179586}; // 2*pi - 0.1
    int kmax = 8;
    int mmax = 8;
    int npoints = 50;
    double rmax = 5.0;
    double tol = 1e-7;
};

// Radial-ODE residual sweep; one result per lambda.
std::vector<CheckResult> ode_suite(const OdeConfig& cfg = {});

// Finite-difference Laplacian residuals on harmonic fields plus a corrupted
// negative control.
std::vector<CheckResult> laplacian_suite();

// Invariant-annulus and full-torus fluxes, <dz, df> pairing, and disk-flux
// closed form vs quadrature, over a random 20-field battery (fixed seed).
std::vector<CheckResult> flux_suite();

// Boundary vs volume L^2 agreement, mode additivity, orthogonal
// decomposition, dz norm and duality-gap pairings.
std::vector<CheckResult> orthogonality_suite();

// The hypergeometric inequality grid plus its sharpness near u = 1.
std::vector<CheckResult> inequality_suite();

std::vector<CheckResult> all_suites();

bool all_pass(const std::vector<CheckResult>& results);

} // namespace tubeharm::verify
