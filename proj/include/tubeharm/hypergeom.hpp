#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace tubeharm::hypergeom {

// Parameters of the conjugate family 2F1(k/2 + id, k/2 - id; 1+k; u).
// All Taylor coefficients at u = 0 are real and strictly positive when
// (k,d) != (0,0), so evaluation never needs complex arithmetic.
struct ConjugateParams {
    int k = 0;      // angular index, >= 0
    double d = 0.0; // imaginary parameter, >= 0
};

struct SeriesResult {
    double value = 0.0;             // linear value; +inf if unrepresentable
    double log_value = 0.0;         // log(value), always finite on success
    long terms_used = 0;
    double truncation_estimate = 0.0; // absolute tail bound (relative when value overflows)
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double partial, double estimate, long terms)
        : std::runtime_error(msg), partial_value(partial), tail_estimate(estimate),
          terms(terms) {}
    double partial_value;
    double tail_estimate;
    long terms;
};

inline constexpr long term_cap = 1'000'000;

// Generic member of the family: sum_{n>=0} c_n u^n with c_0 = 1 and
// c_{n+1}/c_n = ((n+alpha)^2 + d^2) / ((n+c)(n+1)).  Internally rescaled so
// sums far beyond DBL_MAX still yield an accurate log_value.
SeriesResult conj_series(double alpha, double d, double c, double u, double tol);

// 2F1(k/2 + id, k/2 - id; 1+k; u); alpha = k/2, c = 1+k.
SeriesResult f21_conj(const ConjugateParams& p, double u, double tol = 1e-12);

// 2F1(1 + id, 1 - id; 2; u); the radial derivative factor at k = 0.
SeriesResult f21_deriv_factor(double d, double u, double tol = 1e-12);

struct EndpointValue {
    double log_value = 0.0;
    double value = 0.0;  // +inf when not representable
    bool linear_ok = true;
};

// Limit u -> 1 of f21_conj: Gamma(1+k) / |Gamma(1 + k/2 + id)|^2.
// For k = 0 this equals sinh(pi d)/(pi d).
EndpointValue endpoint_value(const ConjugateParams& p);

// Leading log behavior of f21_deriv_factor as u -> 1:
// endpoint_value(k=0,d) * log(1/(1-u)).  Requires u >= 0.9.
double log_asymptote(double d, double u);

// Lanczos log-gamma for Re(z) >= 0.5; relative error ~1e-13 on that strip.
std::complex<double> log_gamma(std::complex<double> z);

// Values of {2F1(id,-id;1;u), 2F1(1+id,1-id;2;u)} for u close to 1, where the
// direct series needs ~log(1/tol)/(1-u) terms and would blow the term cap.
// Anchored by the series at u = 0.99 and continued by integrating the
// hypergeometric ODE in s = -log(1-u).
struct NearOnePair {
    double f1 = 0.0;
    double f2 = 0.0;
};
NearOnePair near_one_pair(double d, double u, double tol = 1e-12);

} // namespace tubeharm::hypergeom
