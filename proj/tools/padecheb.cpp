#include "pcheb/diagnostics.hpp"
#include "pcheb/interval.hpp"
#include "pcheb/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace pcheb;

struct RunConfig {
    std::string function = "exp";
    std::size_t m = 0, n = 0;
    std::string method = "linear";
    std::string normalization = "b0";
    std::string parity = "auto";  // auto|general|even|odd
    std::vector<double> segment;  // empty = catalog default
    std::string precision = "ext128";
    std::optional<std::size_t> nodes;
    std::optional<std::size_t> taylor_n;
    std::size_t grid = 2000;
    std::string format = "text";
    std::string output;     // empty = stdout
    std::string csv_curve;  // optional error-curve CSV path
    std::string data_path = PCHEB_DATA_FILE;
};

NormalizationCondition normalization_from_string(const std::string& s) {
    if (s == "b0") return NormalizationCondition::b0();
    if (s == "bm") return NormalizationCondition::bm();
    if (s == "an") return NormalizationCondition::an();
    throw CLI::ValidationError("--normalization", "expected b0|bm|an");
}

ConstructionSpec to_spec(const RunConfig& cfg) {
    ConstructionSpec spec;
    spec.function = cfg.function;
    spec.m = cfg.m;
    spec.n = cfg.n;
    spec.method = method_from_string(cfg.method);
    spec.normalization = normalization_from_string(cfg.normalization);
    if (cfg.parity != "auto") spec.parity_override = parity_from_string(cfg.parity);
    if (!cfg.segment.empty()) {
        if (cfg.segment.size() != 2 || cfg.segment[0] >= cfg.segment[1])
            throw CLI::ValidationError("--segment", "expected A B with A < B");
        spec.segment_override = {cfg.segment[0], cfg.segment[1]};
    }
    spec.node_count = cfg.nodes;
    spec.taylor_N = cfg.taylor_n;
    return spec;
}

json config_to_json(const RunConfig& cfg, const std::string& subcommand) {
    json j{{"subcommand", subcommand}, {"function", cfg.function},
           {"m", cfg.m},               {"n", cfg.n},
           {"method", cfg.method},     {"normalization", cfg.normalization},
           {"parity", cfg.parity},     {"precision", cfg.precision},
           {"grid", cfg.grid}};
    if (!cfg.segment.empty()) j["segment"] = cfg.segment;
    if (cfg.nodes) j["nodes"] = *cfg.nodes;
    if (cfg.taylor_n) j["taylor_n"] = *cfg.taylor_n;
    return j;
}

std::string timestamp_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const RunConfig& cfg, const json& report, const std::string& text) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw std::runtime_error("cannot open output file " + cfg.output);
        os = &file;
    }
    if (cfg.format == "json")
        *os << report.dump(2) << "\n";
    else
        *os << text;
}

json load_published(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open published data file " + path);
    json j;
    in >> j;
    return j;
}

double ratio_vs(double computed, double published) {
    if (published == 0.0) return computed == 0.0 ? 1.0 : 1e308;
    const double r = computed / published;
    return r >= 1.0 ? r : (r == 0.0 ? 1e308 : 1.0 / r);
}

// ---------------------------------------------------------------- approx

template <class Real>
int cmd_approx_impl(const RunConfig& cfg) {
    ConstructionSpec spec = to_spec(cfg);
    ConstructResult<Real> res = run_construction<Real>(spec);
    CatalogEntry<Real> entry = lookup<Real>(cfg.function);
    ApproxTarget<Real> target = make_target<Real>(spec);
    std::function<Real(const Real&)> f = entry.eval;
    MeasureOptions<Real> mopts;
    mopts.grid = cfg.grid;
    AccuracyReport<Real> acc = measure(f, res.approximant, mopts);

    json report{{"config", config_to_json(cfg, "approx")},
                {"coefficients",
                 {{"a", coeffs_to_json(res.approximant.numer)},
                  {"b", coeffs_to_json(res.approximant.denom)}}},
                {"basis", to_string(res.approximant.basis)},
                {"parity", to_string(res.approximant.parity)},
                {"errors", {{"abs", to_decimal_string(acc.abs_error)},
                            {"rel", to_decimal_string(acc.rel_error)}}},
                {"notes", json::array()},
                {"timestamp", timestamp_now()}};
    report["condition"] =
        res.report.condition ? json(to_decimal_string(*res.report.condition)) : json(nullptr);
    report["condition_reliable"] = res.report.condition_reliable;
    json residuals = json::array();
    residuals.push_back(to_decimal_string(res.report.residual_norm));
    if (spec.method == Method::linear) {
        QuadratureRule<Real> rule(default_node_count(cfg.m, cfg.n) + 29);
        for (const Real& r : orthogonality_residuals(res.approximant, target, cfg.m + cfg.n, rule))
            residuals.push_back(to_decimal_string(r));
    }
    report["residuals"] = residuals;

    if (!cfg.csv_curve.empty()) {
        std::ofstream csv(cfg.csv_curve);
        if (!csv) throw std::runtime_error("cannot open " + cfg.csv_curve);
        csv << "x,f,R,f_minus_R\n";
        const Real step =
            (res.approximant.seg_b - res.approximant.seg_a) / Real(static_cast<long>(cfg.grid - 1));
        for (std::size_t i = 0; i < cfg.grid; ++i) {
            const Real x = (i + 1 == cfg.grid)
                               ? res.approximant.seg_b
                               : res.approximant.seg_a + step * Real(static_cast<long>(i));
            const Real fx = f(x);
            const Real rx = evaluate(res.approximant, x);
            csv << to_decimal_string(x) << "," << to_decimal_string(fx) << ","
                << to_decimal_string(rx) << "," << to_decimal_string(Real(fx - rx)) << "\n";
        }
    }

    std::string text;
    text += "approx " + cfg.function + " method=" + cfg.method + " m=" + std::to_string(cfg.m) +
            " n=" + std::to_string(cfg.n) + " parity=" + to_string(res.approximant.parity) + "\n";
    text += "  abs error = " + to_decimal_string(acc.abs_error) + "\n";
    text += "  rel error = " + to_decimal_string(acc.rel_error) + "\n";
    if (res.report.condition)
        text += "  condition = " + to_decimal_string(*res.report.condition) +
                (res.report.condition_reliable ? "" : " (unreliable)") + "\n";
    text += "  a =";
    for (const Real& v : res.approximant.numer) text += " " + to_decimal_string(v);
    text += "\n  b =";
    for (const Real& v : res.approximant.denom) text += " " + to_decimal_string(v);
    text += "\n";
    emit(cfg, report, text);
    return 0;
}

// ---------------------------------------------------------------- table1

template <class Real>
int cmd_table1_impl(const RunConfig& cfg) {
    const json pub = load_published(cfg.data_path);
    json rows = json::array();
    std::string text = "function    m  n   computed_abs   published_abs  ratio   ok\n";
    std::size_t ok_count = 0, total = 0, errors = 0;
    for (const auto& row : pub.at("table1").at("rows")) {
        ++total;
        ConstructionSpec spec;
        spec.function = row.at("function").get<std::string>();
        spec.m = row.at("m").get<std::size_t>();
        spec.n = row.at("n").get<std::size_t>();
        spec.method = Method::linear;
        const double pub_abs = std::stod(row.at("abs").get<std::string>());
        const double pub_rel = std::stod(row.at("rel").get<std::string>());
        json jrow{{"function", spec.function}, {"m", spec.m}, {"n", spec.n},
                  {"published_abs", row.at("abs")}, {"published_rel", row.at("rel")},
                  {"published_rel_best", row.at("rel_best")}};
        try {
            ConstructResult<Real> res = run_construction<Real>(spec, SolveOptions{false});
            std::function<Real(const Real&)> f = lookup<Real>(spec.function).eval;
            MeasureOptions<Real> mopts;
            mopts.grid = cfg.grid;
            AccuracyReport<Real> acc = measure(f, res.approximant, mopts);
            const double abs_c = real_cast<double>(acc.abs_error);
            const double rel_c = real_cast<double>(acc.rel_error);
            const double r = std::max(ratio_vs(abs_c, pub_abs), ratio_vs(rel_c, pub_rel));
            const bool ok = r <= 3.0;
            if (ok) ++ok_count;
            jrow["computed_abs"] = to_decimal_string(acc.abs_error);
            jrow["computed_rel"] = to_decimal_string(acc.rel_error);
            jrow["ratio"] = r;
            jrow["ok"] = ok;
            char line[160];
            std::snprintf(line, sizeof line, "%-10s %2zu %2zu   %-13.3e  %-13.3e  %-6.2f  %s\n",
                          spec.function.c_str(), spec.m, spec.n, abs_c, pub_abs, r,
                          ok ? "yes" : "NO");
            text += line;
        } catch (const std::exception& e) {
            ++errors;
            jrow["error"] = e.what();
            text += spec.function + ": ERROR " + e.what() + "\n";
        }
        rows.push_back(jrow);
    }
    text += "passed " + std::to_string(ok_count) + "/" + std::to_string(total) + " rows\n";
    json report{{"config", config_to_json(cfg, "table1")},
                {"rows", rows},
                {"passed", ok_count},
                {"total", total},
                {"notes", json::array()},
                {"timestamp", timestamp_now()}};
    emit(cfg, report, text);
    return (errors == 0 && ok_count >= 20) ? 0 : 1;
}

// ---------------------------------------------------------------- table2

template <class Real>
int cmd_table2_impl(const RunConfig& cfg) {
    const json pub = load_published(cfg.data_path);
    const json& t2 = pub.at("table2");
    ConstructionSpec base;
    base.function = t2.at("function").get<std::string>();
    base.m = t2.at("m").get<std::size_t>();
    base.n = t2.at("n").get<std::size_t>();
    base.method = Method::nonlinear;

    std::function<Real(const Real&)> f = lookup<Real>(base.function).eval;
    MeasureOptions<Real> mopts;
    mopts.grid = cfg.grid;

    json rows = json::array();
    std::string text = "N    computed_abs   published_abs  cond           ok\n";
    bool all_ok = true;
    std::vector<double> deltas;
    std::map<std::size_t, ConstructResult<Real>> built;
    for (std::size_t i = 0; i < t2.at("N").size(); ++i) {
        const std::size_t N = t2.at("N")[i].get<std::size_t>();
        ConstructionSpec spec = base;
        spec.taylor_N = N;
        ConstructResult<Real> res = run_construction<Real>(spec);
        AccuracyReport<Real> acc = measure(f, res.approximant, mopts);
        const double abs_c = real_cast<double>(acc.abs_error);
        const double pub_abs = std::stod(t2.at("abs")[i].get<std::string>());
        const double r = ratio_vs(abs_c, pub_abs);
        const bool ok = r <= 10.0;
        all_ok = all_ok && ok;
        deltas.push_back(abs_c);
        json jrow{{"N", N},
                  {"computed_abs", to_decimal_string(acc.abs_error)},
                  {"published_abs", t2.at("abs")[i]},
                  {"published_cond", t2.at("cond")[i]},
                  {"ratio", r},
                  {"ok", ok}};
        if (res.report.condition) jrow["computed_cond"] = to_decimal_string(*res.report.condition);
        rows.push_back(jrow);
        char line[160];
        std::snprintf(line, sizeof line, "%-4zu %-13.3e  %-13.3e  %-13.3e  %s\n", N, abs_c, pub_abs,
                      res.report.condition ? real_cast<double>(*res.report.condition) : -1.0,
                      ok ? "yes" : "NO");
        text += line;
        built.emplace(N, std::move(res));
    }
    bool nonincreasing = true;
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (deltas[i] > deltas[i - 1]) nonincreasing = false;
    all_ok = all_ok && nonincreasing;
    text += std::string("abs(N) nonincreasing: ") + (nonincreasing ? "yes" : "NO") + "\n";

    json pairs = json::array();
    for (const auto& pr : t2.at("pair_abs")) {
        const std::size_t n1 = pr.at("N_first").get<std::size_t>();
        const std::size_t n2 = pr.at("N_second").get<std::size_t>();
        const ConstructResult<Real>& r1 = built.at(n1);
        const ConstructResult<Real>& r2 = built.at(n2);
        json jp{{"N_first", n1}, {"N_second", n2}, {"published_abs", pr.at("abs")}};
        try {
            ErrorApproximant<Real> ea = error_approximant(r1.approximant, r2.approximant, f);
            jp["computed_abs"] = to_decimal_string(ea.quality.abs_error);
            char line[160];
            std::snprintf(line, sizeof line, "pair N=%zu,%zu: error approximant abs %-13.3e (published %s)\n",
                          n1, n2, real_cast<double>(ea.quality.abs_error),
                          pr.at("abs").get<std::string>().c_str());
            text += line;
        } catch (const std::exception& e) {
            jp["error"] = e.what();
            text += "pair error: " + std::string(e.what()) + "\n";
        }
        pairs.push_back(jp);
    }
    json report{{"config", config_to_json(cfg, "table2")},
                {"rows", rows},
                {"pairs", pairs},
                {"nonincreasing", nonincreasing},
                {"notes", json::array()},
                {"timestamp", timestamp_now()}};
    emit(cfg, report, text);
    return all_ok ? 0 : 1;
}

// ------------------------------------------------------------ autocorrect

template <class Real>
int cmd_autocorrect_impl(const RunConfig& cfg) {
    ConstructionSpec spec = to_spec(cfg);
    PerturbationOutcome<Real> pert = perturbation_experiment<double, Real>(spec, cfg.grid);
    std::function<Real(const Real&)> f = lookup<Real>(cfg.function).eval;

    json report{{"config", config_to_json(cfg, "autocorrect")},
                {"max_rel_coeff_delta", to_decimal_string(pert.max_rel_coeff_delta)},
                {"abs_low", to_decimal_string(pert.lo_quality.abs_error)},
                {"abs_high", to_decimal_string(pert.hi_quality.abs_error)},
                {"value_change_rel", to_decimal_string(pert.value_change_rel)},
                {"signature_ratio", to_decimal_string(pert.signature_ratio)},
                {"notes", json::array()},
                {"timestamp", timestamp_now()}};
    if (pert.lo_condition) report["condition_low_precision"] = to_decimal_string(*pert.lo_condition);

    std::string text;
    text += "autocorrect " + cfg.function + " method=" + cfg.method + " m=" +
            std::to_string(cfg.m) + " n=" + std::to_string(cfg.n) + "\n";
    text += "  max relative coefficient delta = " + to_decimal_string(pert.max_rel_coeff_delta) + "\n";
    text += "  abs error (double build)   = " + to_decimal_string(pert.lo_quality.abs_error) + "\n";
    text += "  abs error (extended build) = " + to_decimal_string(pert.hi_quality.abs_error) + "\n";
    text += "  value-level change of R    = " + to_decimal_string(pert.value_change_rel) + "\n";
    text += "  autocorrection ratio       = " + to_decimal_string(pert.signature_ratio) + "\n";

    bool significant = pert.signature_ratio >= Real(1000);
    try {
        ErrorApproximant<Real> ea = error_approximant(pert.lo, pert.hi, f);
        report["error_approximant"] = {
            {"abs", to_decimal_string(ea.quality.abs_error)},
            {"rel", to_decimal_string(ea.quality.rel_error)},
            {"dP", coeffs_to_json(ea.dP)},
            {"dQ", coeffs_to_json(ea.dQ)}};
        text += "  error approximant abs error = " + to_decimal_string(ea.quality.abs_error) + "\n";

        ApproxTarget<Real> target = make_target<Real>(spec);
        std::vector<Real> res = verify_theorem(ea, target, spec.n);
        report["theorem_residuals"] = coeffs_to_json(res);

        RationalApproximant<Real> plain_lo = to_plain_form(pert.lo);
        RationalApproximant<Real> plain_hi = to_plain_form(pert.hi);
        PessimismProfile<Real> prof = pessimism_profile(plain_hi, plain_lo, 100,
                                                        ea.quality.excluded);
        if (prof.ratio_count > 0) {
            report["pessimism"] = {{"min", to_decimal_string(prof.min_ratio)},
                                   {"median", to_decimal_string(prof.median_ratio)},
                                   {"max", to_decimal_string(prof.max_ratio)},
                                   {"points", prof.ratio_count}};
            text += "  interval-bound pessimism (min/median/max) = " +
                    to_decimal_string(prof.min_ratio) + " / " + to_decimal_string(prof.median_ratio) +
                    " / " + to_decimal_string(prof.max_ratio) + "\n";
        }
    } catch (const error_approximant_undefined& e) {
        report["error_approximant"] = {{"error", e.what()}};
        text += "  error approximant: " + std::string(e.what()) + "\n";
        significant = false;
    }
    report["verdict"] = significant ? "error autocorrection active" : "no significant autocorrection";
    text += std::string("  verdict: ") +
            (significant ? "error autocorrection active" : "no significant autocorrection") + "\n";
    emit(cfg, report, text);
    return 0;
}

template <class F>
int dispatch_precision(const RunConfig& cfg, F&& run) {
    if (cfg.precision == "double") return run.template operator()<double>();
    if (cfg.precision == "ext128") return run.template operator()<Ext128>();
    if (cfg.precision == "ext256") return run.template operator()<Ext256>();
    throw CLI::ValidationError("--precision", "expected double|ext128|ext256");
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_problem) {
    if (with_problem) {
        sub->add_option("--function", cfg.function, "catalog function name");
        sub->add_option("--m", cfg.m, "denominator degree of the solved form");
        sub->add_option("--n", cfg.n, "numerator degree of the solved form");
        sub->add_option("--method", cfg.method, "linear|cross|nonlinear");
        sub->add_option("--normalization", cfg.normalization, "b0|bm|an (linear method)");
        sub->add_option("--parity", cfg.parity, "auto|general|even|odd");
        sub->add_option("--segment", cfg.segment, "segment endpoints A B")->expected(2);
        sub->add_option("--nodes", cfg.nodes, "quadrature node count");
        sub->add_option("--taylor-n", cfg.taylor_n, "Taylor route: raw series degree N");
    }
    sub->add_option("--precision", cfg.precision, "double|ext128|ext256");
    sub->add_option("--grid", cfg.grid, "measurement grid size");
    sub->add_option("--format", cfg.format, "text|json");
    sub->add_option("--output", cfg.output, "write the report to this file");
    sub->add_option("--data", cfg.data_path, "published reference data file");
    sub->add_option("--csv-curve", cfg.csv_curve, "write the x,f,R,f-R error curve CSV here");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pade-Chebyshev rational approximation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* p = std::getenv("PADECHEB_PRECISION")) cfg.precision = p;

    CLI::App* approx = app.add_subcommand("approx", "construct one approximant and measure it");
    CLI::App* table1 = app.add_subcommand("table1", "reproduce the linear-method reference table");
    CLI::App* autoc = app.add_subcommand("autocorrect", "run the autocorrection dossier");
    CLI::App* table2 = app.add_subcommand("table2", "reproduce the nonlinear Taylor-route table");
    add_common(approx, cfg, true);
    add_common(table1, cfg, false);
    add_common(autoc, cfg, true);
    add_common(table2, cfg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (approx->parsed())
            return dispatch_precision(cfg, [&]<class Real>() { return cmd_approx_impl<Real>(cfg); });
        if (table1->parsed())
            return dispatch_precision(cfg, [&]<class Real>() { return cmd_table1_impl<Real>(cfg); });
        if (autoc->parsed()) {
            if (cfg.precision == "double")
                throw CLI::ValidationError("--precision",
                                           "autocorrect compares double against ext128/ext256");
            return dispatch_precision(cfg,
                                      [&]<class Real>() { return cmd_autocorrect_impl<Real>(cfg); });
        }
        return dispatch_precision(cfg, [&]<class Real>() { return cmd_table2_impl<Real>(cfg); });
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
