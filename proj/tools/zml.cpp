// zml - numerical laboratory for Laplace-transformed moments of zeta on the
// critical line.  Every library operation is exposed as a subcommand with
// CSV or JSON output.
//
//   zml jmoment --beta 2 --delta 0.2 --format json
//   zml dtable --beta 3 --limit 100
//   zml identities --seed 7
//
// Exit codes: 0 success, 2 usage error, 3 budget/tolerance error,
// 4 numerical-validation failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zml/zml.hpp"

namespace {

using nlohmann::json;

struct CliOptions {
    double tol = 1e-6;
    double delta_min = 1e-3;
    std::int64_t node_budget = 50'000'000;
    int threads = 0;
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    std::optional<std::uint64_t> seed;
};

// Plain `key = value` config file; unknown keys are rejected, CLI flags win.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zml::domain_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw zml::domain_error("config file: expected `key = value`, got: " + line);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    static const std::vector<std::string> known = {"tol",     "delta_min", "node_budget",
                                                   "threads", "format",    "seed"};
    for (const auto& [k, v] : kv) {
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw zml::domain_error("config file: unknown key: " + k);
    }
    return kv;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw zml::domain_error("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void emit_json(Output& out, json j, const CliOptions& opt) {
    if (opt.seed) j["seed"] = *opt.seed;
    out.os() << j.dump(2) << "\n";
}

void emit_csv_seed(Output& out, const CliOptions& opt) {
    if (opt.seed) out.os() << "# seed=" << *opt.seed << "\n";
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"numerical laboratory for zeta moment Laplace transforms"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    auto* o_tol = app.add_option("--tol", opt.tol, "target tolerance")->check(CLI::PositiveNumber);
    auto* o_dmin = app.add_option("--delta-min", opt.delta_min, "smallest admissible delta")
                       ->check(CLI::PositiveNumber);
    auto* o_budget = app.add_option("--node-budget", opt.node_budget,
                                    "max integrand evaluations per quadrature")
                         ->check(CLI::PositiveNumber);
    auto* o_threads = app.add_option("--threads", opt.threads, "worker threads (0 = auto)");
    auto* o_format =
        app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout");
    app.add_option("--config", opt.config_path, "plain `key = value` config file");
    std::uint64_t seed_value = 0;
    auto* o_seed = app.add_option("--seed", seed_value, "seed for the property-test runner");

    // ---- subcommand declarations ------------------------------------------
    auto* c_dtable = app.add_subcommand("dtable", "sieve d_beta(1..N)");
    int dt_beta = 2;
    std::uint64_t dt_limit = 100;
    c_dtable->add_option("--beta", dt_beta)->required();
    c_dtable->add_option("--limit", dt_limit)->required();

    auto* c_laurent = app.add_subcommand("laurent", "Laurent data of Gamma zeta^beta at s = 1");
    int la_beta = 2, la_depth = 4;
    double la_radius = 0.25;
    c_laurent->add_option("--beta", la_beta)->required();
    c_laurent->add_option("--depth", la_depth);
    c_laurent->add_option("--radius", la_radius);

    auto* c_phi = app.add_subcommand("phi", "Phi_beta on rays x e^{i(pi/2-delta)}");
    int ph_beta = 2;
    std::string ph_repr = "direct";
    std::string ph_x = "1.0", ph_delta;
    double ph_alpha = 0.3, ph_abscissa = 0.5;
    c_phi->add_option("--beta", ph_beta)->required();
    c_phi->add_option("--repr", ph_repr)->check(CLI::IsMember({"direct", "halfline", "reflected"}));
    c_phi->add_option("--x", ph_x, "comma-separated moduli");
    c_phi->add_option("--delta", ph_delta, "comma-separated deltas")->required();
    c_phi->add_option("--alpha", ph_alpha);
    c_phi->add_option("--abscissa", ph_abscissa);

    auto* c_tsum = app.add_subcommand("tsum", "reflected three-term expansion T1+T2+T3");
    int ts_beta = 2;
    double ts_y = 2.0, ts_delta = 0.3, ts_alpha = 0.3;
    c_tsum->add_option("--beta", ts_beta)->required();
    c_tsum->add_option("--y", ts_y)->required();
    c_tsum->add_option("--delta", ts_delta)->required();
    c_tsum->add_option("--alpha", ts_alpha);

    auto* c_jmoment = app.add_subcommand("jmoment", "Laplace moment J_beta(delta)");
    int jm_beta = 1;
    double jm_delta = 0.5;
    bool jm_bridge = false;
    c_jmoment->add_option("--beta", jm_beta)->required();
    c_jmoment->add_option("--delta", jm_delta)->required();
    c_jmoment->add_flag("--bridge", jm_bridge,
                        "also report J via the Phi-integral at angle pi/2 - delta/2");

    auto* c_mmoment = app.add_subcommand("mmoment", "finite moment M_beta(T)");
    int mm_beta = 1;
    double mm_T = 100.0;
    c_mmoment->add_option("--beta", mm_beta)->required();
    c_mmoment->add_option("--T", mm_T)->required();

    auto* c_parseval = app.add_subcommand("parseval", "two-sided Parseval bridge");
    int pv_beta = 1;
    double pv_delta = 0.5;
    c_parseval->add_option("--beta", pv_beta)->required();
    c_parseval->add_option("--delta", pv_delta)->required();

    auto* c_decompose = app.add_subcommand("decompose", "J1/J3/J4 split of the Phi integral");
    int dc_beta = 2;
    double dc_delta = 0.2;
    c_decompose->add_option("--beta", dc_beta)->required();
    c_decompose->add_option("--delta", dc_delta)->required();

    auto* c_osc = app.add_subcommand("oscillatory", "model integral G e^{iF} on [a, b]");
    zml::PhaseSpec osc_spec;
    double osc_a = 10.0, osc_b = 100.0;
    std::int64_t osc_n = 1;
    c_osc->add_option("--beta", osc_spec.beta)->required();
    c_osc->add_option("--n", osc_n);
    c_osc->add_option("--x", osc_spec.x);
    c_osc->add_option("--alpha", osc_spec.alpha);
    c_osc->add_option("--delta", osc_spec.delta)->required();
    c_osc->add_option("--a", osc_a)->required();
    c_osc->add_option("--b", osc_b)->required();

    auto* c_certify = app.add_subcommand("certify", "second-derivative certificates on seeded specs");
    int ce_count = 50;
    c_certify->add_option("--count", ce_count);

    auto* c_scaling = app.add_subcommand("scaling", "log-log scaling campaign for J_beta");
    int sc_beta = 2;
    std::string sc_deltas = "0.4,0.2,0.1,0.05,0.025";
    c_scaling->add_option("--beta", sc_beta)->required();
    c_scaling->add_option("--deltas", sc_deltas, "comma-separated delta grid");

    auto* c_bounds = app.add_subcommand("bounds", "theorem and classical exponents");
    int bd_beta = 2;
    c_bounds->add_option("--beta", bd_beta)->required();

    auto* c_identities = app.add_subcommand("identities", "seeded analytic-identity suite");
    int id_count = 1000;
    c_identities->add_option("--count", id_count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    // config file values apply only where the CLI did not set the option
    if (!opt.config_path.empty()) {
        const auto kv = parse_config_file(opt.config_path);
        auto get = [&](const char* key) -> std::optional<std::string> {
            auto it = kv.find(key);
            return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
        };
        if (o_tol->count() == 0)
            if (auto v = get("tol")) opt.tol = std::stod(*v);
        if (o_dmin->count() == 0)
            if (auto v = get("delta_min")) opt.delta_min = std::stod(*v);
        if (o_budget->count() == 0)
            if (auto v = get("node_budget")) opt.node_budget = std::stoll(*v);
        if (o_threads->count() == 0)
            if (auto v = get("threads")) opt.threads = std::stoi(*v);
        if (o_format->count() == 0)
            if (auto v = get("format")) opt.format = *v;
        if (o_seed->count() == 0)
            if (auto v = get("seed")) {
                seed_value = std::stoull(*v);
                opt.seed = seed_value;
            }
    }
    if (o_seed->count() > 0) opt.seed = seed_value;
    if (opt.format != "csv" && opt.format != "json")
        throw zml::domain_error("format must be csv or json");

    // thread resolution: flag wins over ZML_THREADS
    if (o_threads->count() == 0) {
        if (const char* env = std::getenv("ZML_THREADS")) opt.threads = std::atoi(env);
    }

    zml::config().tol = opt.tol;
    zml::config().delta_min = opt.delta_min;
    zml::config().node_budget = opt.node_budget;
    zml::config().threads = opt.threads;

    Output out(opt.out_path);
    const bool as_json = opt.format == "json";
    const std::uint64_t seed = opt.seed.value_or(20250809ULL);

    // ---- dispatch ----------------------------------------------------------
    if (c_dtable->parsed()) {
        const auto table = zml::sieve_dbeta(dt_beta, dt_limit);
        if (as_json) {
            json j{{"beta", table.beta}, {"limit", table.limit}};
            j["values"] = std::vector<std::uint64_t>(table.values.begin() + 1, table.values.end());
            emit_json(out, j, opt);
        } else {
            emit_csv_seed(out, opt);
            zml::write_csv(table, out.os());
        }
        return 0;
    }

    if (c_laurent->parsed()) {
        const auto exp = zml::laurent_extract(la_beta, la_depth, la_radius);
        if (as_json) {
            emit_json(out,
                      json{{"beta", exp.beta},
                           {"principal", exp.principal},
                           {"analytic", exp.analytic},
                           {"radius", exp.radius}},
                      opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "kind,index,value\n";
            for (std::size_t i = 0; i < exp.principal.size(); ++i)
                out.os() << "principal," << i << ',' << exp.principal[i] << '\n';
            for (std::size_t i = 0; i < exp.analytic.size(); ++i)
                out.os() << "analytic," << i << ',' << exp.analytic[i] << '\n';
        }
        return 0;
    }

    if (c_phi->parsed()) {
        const auto xs = parse_list(ph_x);
        const auto deltas = parse_list(ph_delta);
        if (xs.empty() || deltas.empty())
            throw zml::domain_error("phi: need at least one --x and one --delta");
        json rows = json::array();
        if (!as_json) {
            emit_csv_seed(out, opt);
            out.os() << "x,delta,re_phi,im_phi,abs_err\n";
        }
        for (double delta : deltas) {
            for (double x : xs) {
                const auto z = zml::PolarArgument::on_ray(x, delta);
                zml::IntegralEstimate est;
                if (ph_repr == "direct") {
                    est = zml::phi_direct(ph_beta, z, opt.tol * 1e-2);
                } else if (ph_repr == "halfline") {
                    est = zml::phi_halfline(ph_beta, z, {ph_abscissa, 0.0, opt.tol * 1e-2});
                } else {
                    est = zml::phi_reflected(ph_beta, z, ph_alpha, {0.5, 0.0, opt.tol * 1e-2});
                }
                if (as_json) {
                    rows.push_back(json{{"x", x},
                                        {"delta", delta},
                                        {"re_phi", est.value.real()},
                                        {"im_phi", est.value.imag()},
                                        {"abs_err", est.abs_err}});
                } else {
                    out.os() << x << ',' << delta << ',' << est.value.real() << ','
                             << est.value.imag() << ',' << est.abs_err << '\n';
                }
            }
        }
        if (as_json) emit_json(out, json{{"beta", ph_beta}, {"repr", ph_repr}, {"rows", rows}}, opt);
        return 0;
    }

    if (c_tsum->parsed()) {
        const auto ts = zml::phi_tsum(ts_beta, ts_y, ts_delta, ts_alpha, opt.tol * 1e-3);
        if (as_json) {
            emit_json(out,
                      json{{"beta", ts_beta},
                           {"y", ts_y},
                           {"delta", ts_delta},
                           {"alpha", ts_alpha},
                           {"t1", ts.t1},
                           {"t2_re", ts.t2.real()},
                           {"t2_im", ts.t2.imag()},
                           {"t3", ts.t3}},
                      opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "beta,y,delta,alpha,t1,t2_re,t2_im,t3\n"
                     << ts_beta << ',' << ts_y << ',' << ts_delta << ',' << ts_alpha << ','
                     << ts.t1 << ',' << ts.t2.real() << ',' << ts.t2.imag() << ',' << ts.t3
                     << '\n';
        }
        return 0;
    }

    if (c_jmoment->parsed()) {
        const auto est = zml::j_moment(jm_beta, jm_delta, opt.tol);
        std::optional<double> via_phi;
        if (jm_bridge) {
            const auto report = zml::j_decomposition(jm_beta, jm_delta / 2.0, opt.tol);
            via_phi = report.total;
        }
        if (as_json) {
            json j{{"beta", jm_beta},
                   {"delta", jm_delta},
                   {"j_value", est.value.real()},
                   {"j_abs_err", est.abs_err},
                   {"nodes", est.nodes}};
            if (via_phi) j["j_via_phi"] = *via_phi;
            emit_json(out, j, opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "beta,delta,j_value,j_abs_err,nodes\n"
                     << jm_beta << ',' << jm_delta << ',' << est.value.real() << ','
                     << est.abs_err << ',' << est.nodes << '\n';
            if (via_phi) out.os() << "# j_via_phi=" << *via_phi << "\n";
        }
        return 0;
    }

    if (c_mmoment->parsed()) {
        const auto est = zml::m_moment(mm_beta, mm_T, opt.tol);
        if (as_json) {
            emit_json(out,
                      json{{"beta", mm_beta},
                           {"T", mm_T},
                           {"m_value", est.value.real()},
                           {"m_abs_err", est.abs_err},
                           {"nodes", est.nodes}},
                      opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "beta,T,m_value,m_abs_err,nodes\n"
                     << mm_beta << ',' << mm_T << ',' << est.value.real() << ',' << est.abs_err
                     << ',' << est.nodes << '\n';
        }
        return 0;
    }

    auto report_json = [](const zml::DecompositionReport& r) {
        return json{{"j1", r.j1},
                    {"j3", r.j3},
                    {"j4", r.j4},
                    {"total", r.total},
                    {"parseval_lhs", r.parseval_lhs},
                    {"parseval_rhs", r.parseval_rhs},
                    {"o1_correction", r.o1_correction},
                    {"j6_residue", r.j6_residue}};
    };
    auto report_csv = [&](Output& o, const zml::DecompositionReport& r) {
        emit_csv_seed(o, opt);
        o.os() << "j1,j3,j4,total,parseval_lhs,parseval_rhs,o1_correction,j6_residue\n"
               << r.j1 << ',' << r.j3 << ',' << r.j4 << ',' << r.total << ',' << r.parseval_lhs
               << ',' << r.parseval_rhs << ',' << r.o1_correction << ',' << r.j6_residue << '\n';
    };

    if (c_parseval->parsed()) {
        const auto report = zml::parseval_check(pv_beta, pv_delta, std::max(opt.tol, 1e-4));
        if (as_json)
            emit_json(out, report_json(report), opt);
        else
            report_csv(out, report);
        return 0;
    }

    if (c_decompose->parsed()) {
        const auto report = zml::j_decomposition(dc_beta, dc_delta, std::max(opt.tol, 1e-4));
        if (as_json)
            emit_json(out, report_json(report), opt);
        else
            report_csv(out, report);
        return 0;
    }

    if (c_osc->parsed()) {
        osc_spec.n = osc_n;
        const auto est = zml::oscillatory_integral(osc_spec, osc_a, osc_b, opt.tol);
        const double cert = zml::certificate_bound(osc_spec, osc_a, osc_b);
        if (as_json) {
            emit_json(out,
                      json{{"beta", osc_spec.beta},
                           {"n", osc_spec.n},
                           {"x", osc_spec.x},
                           {"alpha", osc_spec.alpha},
                           {"delta", osc_spec.delta},
                           {"a", osc_a},
                           {"b", osc_b},
                           {"re_value", est.value.real()},
                           {"im_value", est.value.imag()},
                           {"abs_err", est.abs_err},
                           {"certificate", cert}},
                      opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "beta,n,x,alpha,delta,a,b,re_value,im_value,abs_err,certificate\n"
                     << osc_spec.beta << ',' << osc_spec.n << ',' << osc_spec.x << ','
                     << osc_spec.alpha << ',' << osc_spec.delta << ',' << osc_a << ',' << osc_b
                     << ',' << est.value.real() << ',' << est.value.imag() << ',' << est.abs_err
                     << ',' << cert << '\n';
        }
        return 0;
    }

    if (c_certify->parsed()) {
        zml::SplitMix64 rng(seed);
        bool all_ok = true;
        json rows = json::array();
        if (!as_json) {
            emit_csv_seed(out, opt);
            out.os() << "beta,n,x,alpha,delta,a,b,re_value,im_value,abs_err,certificate\n";
        }
        for (int i = 0; i < ce_count; ++i) {
            zml::PhaseSpec spec;
            spec.beta = (i % 2 == 0) ? 2 : 3;
            spec.n = 1 + std::int64_t(rng.next_u64() % 8);
            spec.x = rng.uniform(0.3, 2.0);
            spec.alpha = rng.uniform(0.1, 0.6);
            spec.delta = rng.uniform(0.05, 0.4);
            const double a = rng.uniform(1.0, 20.0);
            const double b = a + rng.uniform(5.0, 120.0);
            const double cert = zml::certificate_bound(spec, a, b);
            const auto est = zml::oscillatory_integral(spec, a, b, 1e-9);
            const bool ok = std::abs(est.value) <= cert;
            all_ok = all_ok && ok;
            if (as_json) {
                rows.push_back(json{{"beta", spec.beta},
                                    {"n", spec.n},
                                    {"x", spec.x},
                                    {"alpha", spec.alpha},
                                    {"delta", spec.delta},
                                    {"a", a},
                                    {"b", b},
                                    {"re_value", est.value.real()},
                                    {"im_value", est.value.imag()},
                                    {"abs_err", est.abs_err},
                                    {"certificate", cert},
                                    {"pass", ok}});
            } else {
                out.os() << spec.beta << ',' << spec.n << ',' << spec.x << ',' << spec.alpha << ','
                         << spec.delta << ',' << a << ',' << b << ',' << est.value.real() << ','
                         << est.value.imag() << ',' << est.abs_err << ',' << cert << '\n';
            }
        }
        if (as_json) emit_json(out, json{{"rows", rows}, {"all_pass", all_ok}}, opt);
        if (!all_ok) {
            std::cerr << "certify: certificate violated\n";
            return 4;
        }
        return 0;
    }

    if (c_scaling->parsed()) {
        const auto deltas = parse_list(sc_deltas);
        const auto fit = zml::scaling_campaign(sc_beta, deltas, std::max(opt.tol, 1e-5));
        json pts = json::array();
        for (const auto& [delta, value] : fit.points)
            pts.push_back(json{{"delta", delta}, {"value", value}});
        if (as_json) {
            emit_json(out,
                      json{{"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"residual_rms", fit.residual_rms},
                           {"theorem_exponent", fit.theorem_exponent},
                           {"classical_exponent", fit.classical_exponent},
                           {"points", pts}},
                      opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "slope,intercept,residual_rms,theorem_exponent,classical_exponent\n"
                     << fit.slope << ',' << fit.intercept << ',' << fit.residual_rms << ','
                     << fit.theorem_exponent << ',' << fit.classical_exponent << '\n';
            out.os() << "delta,value\n";
            for (const auto& [delta, value] : fit.points) out.os() << delta << ',' << value << '\n';
        }
        return 0;
    }

    if (c_bounds->parsed()) {
        emit_json(out,
                  json{{"theorem_exponent", zml::theorem_exponent(bd_beta)},
                       {"classical_exponent", zml::classical_exponent(bd_beta)}},
                  opt);
        return 0;
    }

    if (c_identities->parsed()) {
        const auto results = zml::run_identity_suite(seed, id_count);
        bool all_ok = true;
        if (as_json) {
            json rows = json::array();
            for (const auto& r : results) {
                rows.push_back(json{{"name", r.name},
                                    {"max_residual", r.max_residual},
                                    {"threshold", r.threshold},
                                    {"pass", r.pass()}});
                all_ok = all_ok && r.pass();
            }
            emit_json(out, json{{"rows", rows}, {"all_pass", all_ok}}, opt);
        } else {
            emit_csv_seed(out, opt);
            out.os() << "name,max_residual,threshold,pass\n";
            for (const auto& r : results) {
                out.os() << r.name << ',' << r.max_residual << ',' << r.threshold << ','
                         << (r.pass() ? "true" : "false") << '\n';
                all_ok = all_ok && r.pass();
            }
        }
        if (!all_ok) {
            std::cerr << "identities: residual above threshold\n";
            return 4;
        }
        return 0;
    }

    std::cerr << "no subcommand dispatched\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const zml::budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const zml::tolerance_error& e) {
        std::cerr << "tolerance error: " << e.what() << "\n";
        return 3;
    } catch (const zml::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 4;
    } catch (const zml::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
