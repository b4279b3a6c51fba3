#include "tubeharm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubeharm::bounds {

using std::numbers::pi;

ThurstonBound thurston_lower_bound(const ThurstonInput& in, bool exact_constants,
                                   double margulis_eps) {
    if (!(in.lambda > 0.0))
        throw std::domain_error("thurston bound requires lambda > 0");
    const double ak = std::abs(static_cast<double>(in.kappa));
    const double root = std::sqrt(in.lambda);
    const double main = exact_constants
                            ? 2.0 * pi * margulis_eps / std::sqrt(7.256) / root - 2.0 * pi
                            : 0.676 / root - 2.0 * pi;
    ThurstonBound out;
    out.bound = ak * main;
    out.vacuous = !(out.bound > 0.0);
    out.simplified = ak * 0.2 * pi / root;
    out.simplified_valid = in.lambda <= 58e-6;
    return out;
}

std::pair<double, double> bd_sandwich(double vol, double inj, double thurston) {
    if (!(vol > 0.0) || !(inj > 0.0) || thurston < 0.0)
        throw std::domain_error("bd_sandwich requires vol, inj > 0 and thurston >= 0");
    return {pi / std::sqrt(vol) * thurston, 10.0 * pi / std::sqrt(inj) * thurston};
}

double main_ratio_bound(double c_eps, double R) {
    if (!(c_eps > 0.0) || !(R > 0.0))
        throw std::domain_error("main_ratio_bound requires positive inputs");
    const double lc = std::log(std::cosh(R));
    return c_eps * pi + 2.0 * std::sqrt(c_eps * c_eps * pi * pi + 16.0 * lc);
}

double linf_l2_constant(double inj) {
    if (!(inj > 0.0))
        throw std::domain_error("linf_l2_constant requires inj > 0");
    return 5.0 / std::sqrt(inj);
}

double fiber_translation(double K) {
    if (!(K > 0.0))
        throw std::domain_error("fiber_translation requires K > 0");
    return 1.0 / K;
}

EntropyReport entropy_relations(const FiberedInvariants& inv) {
    if (!(inv.K > 0.0) || !(inv.ent > 0.0) || !(inv.vol > 0.0) ||
        inv.thurston < 0.0 || inv.genus < 2)
        throw std::domain_error("invalid fibered invariants");

    EntropyReport rep;
    auto strict = [&rep](std::string name, double lhs, double rhs, std::string anchor) {
        ReportRow row{std::move(name), lhs, rhs, lhs < rhs, rhs - lhs, std::move(anchor)};
        rep.consistent = rep.consistent && row.satisfied;
        rep.rows.push_back(std::move(row));
    };

    strict("entropy_lower", 1.0, 3.0 * inv.K * inv.ent, "1 < 3*K*ent");
    strict("translation_entropy", fiber_translation(inv.K), 3.0 * inv.ent,
           "1/K < 3*ent");
    strict("thurston_volume", pi * inv.thurston, inv.vol * inv.K,
           "pi*thurston < vol*K");
    const double chi = 2.0 * inv.genus - 2.0;
    ReportRow ve{"volume_entropy", inv.vol, 3.0 * pi * chi * inv.ent, false, 0.0,
                 "vol <= 3*pi*|chi|*ent"};
    ve.satisfied = ve.lhs <= ve.rhs;
    ve.slack = ve.rhs - ve.lhs;
    rep.consistent = rep.consistent && ve.satisfied;
    rep.rows.push_back(std::move(ve));
    return rep;
}

CoveringScaling covering_scaling(double lip, int n, double ent) {
    if (!(lip > 0.0) || n < 1)
        throw std::domain_error("covering_scaling requires lip > 0, n >= 1");
    CoveringScaling out;
    out.lip_n = lip;
    out.lip_over_n = lip / n;
    out.product = out.lip_over_n * (n * ent);
    return out;
}

VolumeComparison product_volume_comparison(int genus, double K, double vol_hyperbolic) {
    if (genus < 2 || !(K > 0.0) || !(vol_hyperbolic > 0.0))
        throw std::domain_error("invalid product_volume_comparison inputs");
    VolumeComparison out;
    out.vol_id = 2.0 * pi * (2.0 * genus - 2.0) / K;
    out.holds = 0.5 * out.vol_id < vol_hyperbolic;
    return out;
}

DehnGrowth dehn_example_growth(int n, double c) {
    if (n < 1 || !(c > 0.0))
        throw std::domain_error("dehn_example_growth requires n >= 1, c > 0");
    DehnGrowth out;
    out.lambda_n = c / (static_cast<double>(n) * n);
    // Written as n * (0.2*pi/sqrt(c)) so the linear scaling in n is exact
    // in floating point.
    out.lower_bound = static_cast<double>(n) * (0.2 * pi / std::sqrt(c));
    out.valid = out.lambda_n <= 58e-6;
    return out;
}

nlohmann::json report_json(const std::vector<ReportRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ReportRow& r : rows)
        arr.push_back({{"name", r.name},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"satisfied", r.satisfied},
                       {"slack", r.slack},
                       {"anchor", r.anchor}});
    return arr;
}

} // namespace tubeharm::bounds
