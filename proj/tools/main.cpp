#include "tubeharm/bounds.hpp"
#include "tubeharm/counterexample.hpp"
#include "tubeharm/harmonics.hpp"
#include "tubeharm/hypergeom.hpp"
#include "tubeharm/tubegeom.hpp"
#include "tubeharm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace tubeharm;

struct RunConfig {
    double tolerance = 1e-8;
    int n_r = 64;
    int n_theta = 64;
    int n_z = 64;
    double margulis_eps = 0.29;
    std::string output_format = "table";
};

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Pre-scan argv for --config <path> and fold the JSON document into the
// defaults; explicit flags parsed afterwards take precedence.
RunConfig load_config(int argc, char** argv) {
    RunConfig cfg;
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config")
            path = argv[i + 1];
    if (path.empty())
        return cfg;
    std::ifstream in(path);
    if (!in)
        throw std::domain_error("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.n_r = j.value("n_r", cfg.n_r);
    cfg.n_theta = j.value("n_theta", cfg.n_theta);
    cfg.n_z = j.value("n_z", cfg.n_z);
    cfg.margulis_eps = j.value("margulis_eps", cfg.margulis_eps);
    cfg.output_format = j.value("output_format", cfg.output_format);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-2))
        throw std::domain_error("tolerance must lie in (0, 1e-2]");
    if (cfg.n_r < 8 || cfg.n_theta < 8 || cfg.n_z < 8)
        throw std::domain_error("quadrature counts must be >= 8");
    if (cfg.output_format != "table" && cfg.output_format != "csv" &&
        cfg.output_format != "json")
        throw std::domain_error("format must be table, csv, or json");
}

int run_eval2f1(int k, double d, double u, double tol) {
    try {
        const auto res = hypergeom::f21_conj({k, d}, u, tol);
        std::cout << "value " << fmt12(res.value) << "\n"
                  << "terms_used " << res.terms_used << "\n"
                  << "truncation_estimate " << fmt12(res.truncation_estimate) << "\n";
        return 0;
    } catch (const hypergeom::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n"
                  << "partial_value " << fmt12(e.partial_value) << "\n"
                  << "tail_estimate " << fmt12(e.tail_estimate) << "\n"
                  << "terms " << e.terms << "\n";
        return 1;
    }
}

int run_verify(const std::string& suite, const verify::OdeConfig& ode_cfg) {
    std::vector<verify::CheckResult> results;
    if (suite == "ode")
        results = verify::ode_suite(ode_cfg);
    else if (suite == "laplacian")
        results = verify::laplacian_suite();
    else if (suite == "flux")
        results = verify::flux_suite();
    else if (suite == "orthogonality")
        results = verify::orthogonality_suite();
    else if (suite == "inequality")
        results = verify::inequality_suite();
    else
        results = verify::all_suites();

    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                  << "  worst=" << fmt12(r.worst) << " tol=" << fmt12(r.tol);
        if (!r.detail.empty())
            std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
        ok = ok && r.pass;
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    return ok ? 0 : 1;
}

int run_counterexample(int m, double V, int steps, double lambda0,
                       const std::string& format) {
    const auto rows = counterexample::linf_l2_growth(
        counterexample::GrowthParams{m, V, steps, lambda0});
    if (format == "csv") {
        std::cout << counterexample::growth_csv(rows);
    } else if (format == "json") {
        std::cout << counterexample::growth_json(rows).dump(2) << "\n";
    } else {
        std::cout << "lambda R linf_sq l2_sq log_cosh_R ratio constraint\n";
        for (const auto& r : rows)
            std::cout << fmt12(r.lambda) << " " << fmt12(r.R) << " "
                      << fmt12(r.linf_sq) << " " << fmt12(r.l2_sq) << " "
                      << fmt12(r.log_cosh_R) << " " << fmt12(r.ratio) << " "
                      << fmt12(r.constraint) << "\n";
    }
    if (rows.size() < 2)
        return 0; // single row: no growth claim
    bool ok = rows.back().ratio > rows.front().ratio;
    const size_t tail = std::min<size_t>(10, rows.size() / 2);
    for (size_t i = rows.size() - tail; i + 1 < rows.size(); ++i)
        ok = ok && rows[i + 1].ratio > rows[i].ratio;
    if (!ok)
        std::cerr << "tail growth not confirmed\n";
    return ok ? 0 : 1;
}

void print_rows(const std::vector<bounds::ReportRow>& rows, const std::string& format) {
    if (format == "json") {
        std::cout << bounds::report_json(rows).dump(2) << "\n";
        return;
    }
    for (const auto& r : rows)
        std::cout << r.name << "  lhs=" << fmt12(r.lhs) << " rhs=" << fmt12(r.rhs)
                  << " satisfied=" << (r.satisfied ? "true" : "false")
                  << " slack=" << fmt12(r.slack) << "  [" << r.anchor << "]\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Margulis-tube harmonic-form calculator"};
    app.require_subcommand(1);

    RunConfig cfg;
    try {
        cfg = load_config(argc, argv);
        validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string config_path; // consumed by load_config; registered so CLI11 accepts it
    app.add_option("--config", config_path, "JSON config file");

    // --- eval2f1 -----------------------------------------------------------
    auto* eval = app.add_subcommand("eval2f1", "evaluate the conjugate-family 2F1");
    int e_k = 0;
    double e_d = 0.0, e_u = 0.0;
    double e_tol = std::min(cfg.tolerance, 1e-3);
    eval->add_option("--k", e_k, "angular index");
    eval->add_option("--d", e_d, "imaginary parameter");
    eval->add_option("--u", e_u, "argument in [0,1)")->required();
    eval->add_option("--tol", e_tol, "relative tolerance");

    // --- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run identity/inequality sweeps");
    std::string suite = "all";
    ver->add_option("--suite", suite, "ode|laplacian|flux|orthogonality|inequality|all")
        ->check(CLI::IsMember({"ode", "laplacian", "flux", "orthogonality",
                               "inequality", "all"}));
    verify::OdeConfig ode_cfg;
    double v_lambda = 0.0, v_theta0 = -1.0;
    int v_k = -1, v_m = -1;
    ver->add_option("--lambda", v_lambda, "restrict the ODE sweep to one lambda");
    ver->add_option("--theta0", v_theta0, "restrict the ODE sweep to one twist");
    ver->add_option("--k", v_k, "cap the ODE sweep angular index");
    ver->add_option("--m", v_m, "cap the ODE sweep longitudinal index");

    // --- counterexample ----------------------------------------------------
    auto* ce = app.add_subcommand("counterexample", "emit the norm-ratio growth table");
    int c_m = 1, c_steps = 20;
    double c_V = 10.0, c_lambda0 = 0.1;
    std::string c_format = cfg.output_format;
    ce->add_option("--m", c_m, "mode index");
    ce->add_option("--V", c_V, "volume budget");
    ce->add_option("--steps", c_steps, "number of rows");
    ce->add_option("--lambda0", c_lambda0, "initial core length");
    ce->add_option("--format", c_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // --- bounds ------------------------------------------------------------
    auto* bd = app.add_subcommand("bounds", "closed-form inequality calculators");
    bd->require_subcommand(1);
    std::string b_format = cfg.output_format;
    bd->add_option("--format", b_format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));

    auto* b_th = bd->add_subcommand("thurston", "norm lower bound from a short core");
    double th_lambda = 0.0;
    int th_kappa = 1;
    bool th_rounded = false;
    double th_eps = cfg.margulis_eps;
    b_th->add_option("--lambda", th_lambda, "core length")->required();
    b_th->add_option("--kappa", th_kappa, "intersection number");
    b_th->add_flag("--rounded", th_rounded, "use the rounded constant 0.676");
    b_th->add_option("--eps", th_eps, "Margulis constant");

    auto* b_sw = bd->add_subcommand("sandwich", "volume/injectivity norm sandwich");
    double sw_vol = 0.0, sw_inj = 0.0, sw_th = 0.0;
    b_sw->add_option("--vol", sw_vol)->required();
    b_sw->add_option("--inj", sw_inj)->required();
    b_sw->add_option("--thurston", sw_th)->required();

    auto* b_ra = bd->add_subcommand("ratio", "quadratic norm-ratio bound");
    double ra_c = 1.0, ra_R = 0.0;
    b_ra->add_option("--c", ra_c, "existential constant");
    b_ra->add_option("--R", ra_R, "tube radius")->required();

    auto* b_en = bd->add_subcommand("entropy", "fibered invariant relations");
    double en_K = 1.0, en_ent = 1.0, en_vol = 1.0, en_th = 0.0;
    int en_genus = 2;
    b_en->add_option("--K", en_K)->required();
    b_en->add_option("--ent", en_ent)->required();
    b_en->add_option("--vol", en_vol);
    b_en->add_option("--thurston", en_th);
    b_en->add_option("--genus", en_genus);

    auto* b_de = bd->add_subcommand("dehn", "filling-sequence growth example");
    int de_n = 1;
    double de_c = 1.0;
    b_de->add_option("--n", de_n)->required();
    b_de->add_option("--c", de_c)->required();

    auto* b_vo = bd->add_subcommand("volume", "product-volume comparison");
    int vo_genus = 2;
    double vo_K = 1.0, vo_vol = 1.0;
    b_vo->add_option("--genus", vo_genus)->required();
    b_vo->add_option("--K", vo_K)->required();
    b_vo->add_option("--vol", vo_vol)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*eval)
            return run_eval2f1(e_k, e_d, e_u, e_tol);

        if (*ver) {
            if (v_lambda > 0.0)
                ode_cfg.lambdas = {v_lambda};
            if (v_theta0 >= 0.0)
                ode_cfg.theta0s = {v_theta0};
            if (v_k >= 0)
                ode_cfg.kmax = v_k;
            if (v_m >= 0)
                ode_cfg.mmax = v_m;
            return run_verify(suite, ode_cfg);
        }

        if (*ce)
            return run_counterexample(c_m, c_V, c_steps, c_lambda0, c_format);

        if (*bd) {
            std::vector<bounds::ReportRow> rows;
            if (*b_th) {
                const auto r = bounds::thurston_lower_bound({th_lambda, th_kappa},
                                                            !th_rounded, th_eps);
                rows.push_back({"thurston_lower_bound", r.bound, 0.0, !r.vacuous,
                                r.bound, "thurston >= |kappa|*(2*pi*eps/sqrt(7.256*lambda) - 2*pi)"});
                rows.push_back({"simplified_bound", r.simplified, 0.0,
                                r.simplified_valid, r.simplified,
                                "thurston >= 0.2*pi/sqrt(lambda), valid for lambda <= 58e-6"});
                if (r.vacuous)
                    std::cout << "note: bound is vacuous (non-positive) at this length\n";
            } else if (*b_sw) {
                const auto [lo, hi] = bounds::bd_sandwich(sw_vol, sw_inj, sw_th);
                rows.push_back({"sandwich_lower", lo, hi, lo <= hi, hi - lo,
                                "pi/sqrt(vol)*thurston <= 10*pi/sqrt(inj)*thurston"});
            } else if (*b_ra) {
                const double v = bounds::main_ratio_bound(ra_c, ra_R);
                const double lc = std::log(std::cosh(ra_R));
                rows.push_back({"main_ratio_bound", v,
                                lc > 0.0 ? v / std::sqrt(lc) : 0.0, true, 0.0,
                                "c*pi + 2*sqrt(c^2*pi^2 + 16*log cosh R); rhs column = value/sqrt(log cosh R)"});
            } else if (*b_en) {
                const auto rep = bounds::entropy_relations(
                    {en_K, en_ent, en_vol, en_th, en_genus});
                if (!rep.consistent)
                    std::cout << "inconsistent inputs: these invariants cannot come "
                                 "from one fibered manifold\n";
                print_rows(rep.rows, b_format);
                return rep.consistent ? 0 : 1;
            } else if (*b_de) {
                const auto r = bounds::dehn_example_growth(de_n, de_c);
                rows.push_back({"dehn_growth", r.lambda_n, r.lower_bound, r.valid,
                                r.lower_bound,
                                "lambda_n = c/n^2; bound 0.2*pi*n/sqrt(c) grows linearly in n"});
                if (!r.valid)
                    std::cout << "note: simplified bound valid only for lambda_n <= 58e-6\n";
            } else if (*b_vo) {
                const auto r = bounds::product_volume_comparison(vo_genus, vo_K, vo_vol);
                rows.push_back({"product_volume", 0.5 * r.vol_id, vo_vol, r.holds,
                                vo_vol - 0.5 * r.vol_id,
                                "vol_id/2 < vol, vol_id = 2*pi*(2g-2)/K"});
            }
            print_rows(rows, b_format);
            return 0;
        }
    } catch (const hypergeom::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 1;
    } catch (const harmonics::ResolutionError& e) {
        std::cerr << "resolution failure: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
