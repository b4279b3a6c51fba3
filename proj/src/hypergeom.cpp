#include "tubeharm/hypergeom.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace tubeharm::hypergeom {

namespace {

constexpr double rescale_threshold = 1e280;
constexpr double rescale_factor = 1e-280;
const double log_rescale = std::log(rescale_threshold);

void check_domain(double u, double tol) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("series argument u must lie in [0,1)");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::domain_error("tolerance must lie in (0, 1e-3]");
}

} // namespace

SeriesResult conj_series(double alpha, double d, double c, double u, double tol) {
    check_domain(u, tol);

    double term = 1.0;
    double sum = 1.0;
    double logscale = 0.0;
    long n = 0;
    int small_streak = 0;
    double tail = 0.0;
    bool converged = false;

    while (n < term_cap) {
        const double na = n + alpha;
        const double ratio = ((na * na + d * d) / ((n + c) * (n + 1.0))) * u;
        term *= ratio;
        sum += term;
        ++n;
        if (term < tol * sum) {
            if (++small_streak >= 3) {
                // Bound the tail by a geometric series at the current ratio.
                const double ma = n + alpha;
                const double q = ((ma * ma + d * d) / ((n + c) * (n + 1.0))) * u;
                tail = q < 1.0 ? term * q / (1.0 - q) : term;
                if (tail <= tol * sum) {
                    converged = true;
                    break;
                }
                small_streak = 0;
            }
        } else {
            small_streak = 0;
        }
        if (sum > rescale_threshold) {
            sum *= rescale_factor;
            term *= rescale_factor;
            logscale += log_rescale;
        }
    }

    SeriesResult res;
    res.terms_used = n;
    res.log_value = logscale + std::log(sum);
    res.value = logscale == 0.0 ? sum : std::exp(res.log_value);
    const double rel_tail = tail / sum;
    res.truncation_estimate =
        std::isfinite(res.value) ? rel_tail * res.value : rel_tail;

    if (!converged)
        throw ConvergenceError("series term cap exceeded before tolerance met",
                               res.value, res.truncation_estimate, n);
    return res;
}

SeriesResult f21_conj(const ConjugateParams& p, double u, double tol) {
    if (p.k < 0 || p.d < 0.0)
        throw std::domain_error("conjugate parameters require k >= 0, d >= 0");
    return conj_series(0.5 * p.k, p.d, 1.0 + p.k, u, tol);
}

SeriesResult f21_deriv_factor(double d, double u, double tol) {
    if (d < 0.0)
        throw std::domain_error("conjugate parameters require d >= 0");
    return conj_series(1.0, d, 2.0, u, tol);
}

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos approximation, g = 7, 9 coefficients; valid for Re(z) >= 0.5.
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    constexpr double g = 7.0;
    constexpr double half_log_two_pi = 0.91893853320467274178;

    z -= 1.0;
    std::complex<double> x = coef[0];
    for (int i = 1; i < 9; ++i)
        x += coef[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + g + 0.5;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

EndpointValue endpoint_value(const ConjugateParams& p) {
    if (p.k < 0 || p.d < 0.0)
        throw std::domain_error("conjugate parameters require k >= 0, d >= 0");

    const std::complex<double> a(1.0 + 0.5 * p.k, p.d);
    const double log_num = std::lgamma(1.0 + p.k);
    const double log_den = 2.0 * log_gamma(a).real();

    EndpointValue ev;
    ev.log_value = log_num - log_den;
    ev.value = std::exp(ev.log_value);
    ev.linear_ok = std::isfinite(ev.value);
    if (!ev.linear_ok)
        ev.value = std::numeric_limits<double>::infinity();
    return ev;
}

double log_asymptote(double d, double u) {
    if (!(u >= 0.9 && u < 1.0))
        throw std::domain_error("log_asymptote requires u in [0.9, 1)");
    const EndpointValue ev = endpoint_value({0, d});
    const double log_factor = std::log(1.0 / (1.0 - u));
    if (ev.linear_ok)
        return ev.value * log_factor;
    return std::exp(ev.log_value + std::log(log_factor));
}

NearOnePair near_one_pair(double d, double u, double tol) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("series argument u must lie in [0,1)");

    constexpr double anchor = 0.99;
    if (u <= anchor) {
        NearOnePair out;
        out.f1 = f21_conj({0, d}, u, tol).value;
        out.f2 = f21_deriv_factor(d, u, tol).value;
        return out;
    }

    // State y = (F1, F1', F2, F2'), primes w.r.t. u, advanced in s = -log(1-u)
    // so the step count is ~log(1/(1-u)) instead of ~1/(1-u).
    const double d2 = d * d;
    std::array<double, 4> y;
    y[0] = f21_conj({0, d}, anchor, tol).value;
    y[2] = f21_deriv_factor(d, anchor, tol).value;
    y[1] = d2 * y[2]; // identity dF1/du = d^2 F2
    y[3] = 0.5 * (1.0 + d2) * conj_series(2.0, d, 3.0, anchor, tol).value;

    auto rhs = [d2](double s, const std::array<double, 4>& w) {
        const double v = std::exp(-s); // 1-u
        const double uu = 1.0 - v;
        std::array<double, 4> f;
        f[0] = v * w[1];
        f[1] = (d2 * w[0] - v * w[1]) / uu;
        f[2] = v * w[3];
        f[3] = ((1.0 + d2) * w[2] - (2.0 - 3.0 * uu) * w[3]) / uu;
        return f;
    };

    const double s0 = -std::log(1.0 - anchor);
    const double s1 = -std::log(1.0 - u);
    const long nsteps = std::max(16L, static_cast<long>(std::ceil((s1 - s0) / 0.005)));
    const double h = (s1 - s0) / nsteps;

    double s = s0;
    for (long i = 0; i < nsteps; ++i) {
        const auto k1 = rhs(s, y);
        std::array<double, 4> w;
        for (int j = 0; j < 4; ++j) w[j] = y[j] + 0.5 * h * k1[j];
        const auto k2 = rhs(s + 0.5 * h, w);
        for (int j = 0; j < 4; ++j) w[j] = y[j] + 0.5 * h * k2[j];
        const auto k3 = rhs(s + 0.5 * h, w);
        for (int j = 0; j < 4; ++j) w[j] = y[j] + h * k3[j];
        const auto k4 = rhs(s + h, w);
        for (int j = 0; j < 4; ++j)
            y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        s = s0 + (i + 1) * h;
    }

    return {y[0], y[2]};
}

} // namespace tubeharm::hypergeom
