#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parityforge/circuit.hpp"
#include "parityforge/cost.hpp"
#include "parityforge/layout_io.hpp"
#include "parityforge/rng.hpp"
#include "parityforge/sampler.hpp"
#include "parityforge/synth.hpp"
#include "parityforge/threads.hpp"
#include "parityforge/verify.hpp"

namespace pf::cli {

using json = nlohmann::ordered_json;

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot open output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_eta(const std::string& s) {
    if (s == "inf" || s == "infinite" || s == "infinity")
        return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        return {static_cast<unsigned>(std::stoul(s)), static_cast<unsigned>(std::stoul(s))};
    return {static_cast<unsigned>(std::stoul(s.substr(0, colon))),
            static_cast<unsigned>(std::stoul(s.substr(colon + 1)))};
}

// parameter echo for CSV outputs
std::string csv_header(const std::string& params) { return "# " + params + "\n"; }

struct NoiseFlags {
    double p = 1e-3;
    std::string eta = "1e5";
    unsigned rounds = 10;
    std::string regime = "scaled";

    NoiseParams to_params() const {
        NoiseParams n;
        n.p = p;
        n.eta = parse_eta(eta);
        n.n_rounds = rounds;
        n.regime = parse_regime(regime);
        return n;
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--p", p, "physical error probability");
        cmd->add_option("--eta", eta, "noise bias (or 'inf')");
        cmd->add_option("--rounds", rounds, "syndrome extraction rounds");
        cmd->add_option("--regime", regime, "non-Clifford noise regime: constant|scaled");
    }
};

// ---- layout ----------------------------------------------------------

struct LayoutArgs {
    unsigned m = 4;
    std::string target = "ideal";
    unsigned drep = 0;
    std::string connectivity = "nn";
    std::string out;
    std::string svg;
};

int run_layout(const LayoutArgs& a) {
    LayoutOptions opt;
    if (a.target == "ideal") opt.target = TargetMode::Ideal;
    else if (a.target == "repetition") opt.target = TargetMode::Repetition;
    else throw InvalidParameter("unknown target mode: " + a.target);
    opt.repetition_distance = a.drep;
    opt.nearest_neighbour = parse_connectivity(a.connectivity) == Connectivity::NearestNeighbour;

    const UnfoldedLayout layout = make_layout(a.m, opt);
    write_output(a.out, export_layout_json(layout));
    if (!a.svg.empty()) write_output(a.svg, export_layout_svg(layout));
    return 0;
}

// ---- verify ----------------------------------------------------------

struct VerifyArgs {
    std::string layout_file;
    bool all = false;
    bool independence = false;
    bool labels = false;
    bool distance = false;
    bool kparity = false;
    bool transversal = false;
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    const UnfoldedLayout layout = import_layout_json(read_file(a.layout_file));
    bool ind = a.independence, lab = a.labels, dist = a.distance, kp = a.kparity, tr = a.transversal;
    if (a.all || (!ind && !lab && !dist && !kp && !tr)) ind = lab = dist = kp = tr = true;

    const VerificationSummary summary = verify_layout(layout, ind, lab, dist, kp, tr);
    json report;
    report["m"] = layout.grid.m;
    report["checks"] = json::array();
    for (const auto& rep : summary.reports) {
        report["checks"].push_back(
            {{"name", rep.name}, {"passed", rep.passed}, {"detail", rep.detail}});
    }
    report["all_passed"] = summary.all_passed();
    write_output(a.out, report.dump(2) + "\n");
    return summary.all_passed() ? 0 : 1;
}

// ---- simulate --------------------------------------------------------

struct SimulateArgs {
    std::string layout_file;
    unsigned k = 2;
    NoiseFlags noise;
    std::string mode = "twirl";
    double shots = 1e6;
    uint64_t seed = 1;
    std::string out;
};

int run_simulate(const SimulateArgs& a) {
    const UnfoldedLayout layout = import_layout_json(read_file(a.layout_file));
    const auto noise = a.noise.to_params();
    const auto circuit = build_circuit(layout, a.k, noise.n_rounds, noise, parse_nc_mode(a.mode));
    const auto est = estimate(circuit, static_cast<uint64_t>(a.shots), a.seed);

    json out;
    out["params"] = {{"m", layout.grid.m},      {"k", a.k},
                     {"p", noise.p},            {"eta", a.noise.eta},
                     {"rounds", noise.n_rounds}, {"regime", a.noise.regime},
                     {"mode", a.mode},          {"shots", est.shots},
                     {"seed", a.seed}};
    out["p_accept"] = est.p_accept;
    out["p_logical"] = est.p_logical;
    out["ci_low"] = est.ci_low;
    out["ci_high"] = est.ci_high;
    out["accepted"] = est.accepted;
    out["flips"] = est.flips;
    if (parse_nc_mode(a.mode) == NcMode::ProxyT)
        out["rescaled_lower_bound"] = rescale_lower_bound(est.p_logical, a.k, noise.p);
    write_output(a.out, out.dump(2) + "\n");
    return 0;
}

// ---- analytics -------------------------------------------------------

struct AnalyticsArgs {
    std::string k_range = "2:9";
    NoiseFlags noise;
    std::string out;
};

int run_analytics(const AnalyticsArgs& a) {
    const auto [k_lo, k_hi] = parse_range(a.k_range);
    const auto noise = a.noise.to_params();
    std::ostringstream csv;
    csv << csv_header("analytics p=" + std::to_string(noise.p) + " eta=" + a.noise.eta +
                      " rounds=" + std::to_string(noise.n_rounds) + " regime=" + a.noise.regime);
    csv << "k,p_eff,p_dist,p_gate\n";
    for (unsigned k = k_lo; k <= k_hi; ++k) {
        csv << k << "," << p_eff(k, noise) << "," << p_dist(k, noise) << ","
            << p_gate(k, noise).value << "\n";
    }
    write_output(a.out, csv.str());
    return 0;
}

// ---- estimate --------------------------------------------------------

struct EstimateArgs {
    std::string k_range = "2:9";
    double eps = 1e-3;
    std::string connectivity = "nn";
    NoiseFlags noise;
    std::string out;
};

int run_estimate(const EstimateArgs& a) {
    const auto [k_lo, k_hi] = parse_range(a.k_range);
    CostParams params;
    params.connectivity = parse_connectivity(a.connectivity);
    params.noise = a.noise.to_params();

    std::ostringstream csv;
    csv << csv_header("estimate eps=" + std::to_string(a.eps) + " connectivity=" + a.connectivity +
                      " p=" + std::to_string(params.noise.p) + " eta=" + a.noise.eta);
    csv << "k,n_qubits,n_data,n_attempts,cost_native,cost_synthesized,break_even\n";
    const double kb = break_even(a.eps, params);
    for (unsigned k = k_lo; k <= k_hi; ++k) {
        csv << k << "," << n_qubits(k, params.connectivity) << "," << n_data(k) << ","
            << acceptance_prob(k, n_data(k), params.noise).n_attempts << ","
            << cost_native(k, params).value << "," << cost_synthesized(a.eps, params).value << ","
            << kb << "\n";
    }
    write_output(a.out, csv.str());
    return 0;
}

// ---- synth -----------------------------------------------------------

struct SynthArgs {
    std::string target = "haar";
    unsigned count = 100;
    std::string gateset = "C2";
    double budget = 8;
    std::string budget_range;
    double samples = 2000;
    uint64_t seed = 1;
    double rtrunc = 8;
    std::string out;
    std::string fits_out;
};

Unitary2 parse_target(const std::string& name, uint64_t key) {
    if (name == "haar") return Unitary2::haar(key);
    if (name == "T") return Unitary2::z_rotation(2);
    if (name == "sqrtT") return Unitary2::z_rotation(3);
    if (name.rfind("rz:", 0) == 0) return Unitary2::rz(std::stod(name.substr(3)));
    throw InvalidParameter("unknown synth target: " + name);
}

int run_synth(const SynthArgs& a) {
    const GateSet set = GateSet::parse(a.gateset);
    const int rtrunc_halves = static_cast<int>(std::llround(a.rtrunc * 2));
    const BlockTable table = enumerate_blocks(set, rtrunc_halves);

    std::vector<double> budgets;
    if (a.budget_range.empty()) {
        budgets.push_back(a.budget);
    } else {
        // lo:hi:step
        double lo, hi, step = 2;
        const auto c1 = a.budget_range.find(':');
        const auto c2 = a.budget_range.find(':', c1 + 1);
        lo = std::stod(a.budget_range.substr(0, c1));
        if (c2 == std::string::npos) hi = std::stod(a.budget_range.substr(c1 + 1));
        else {
            hi = std::stod(a.budget_range.substr(c1 + 1, c2 - c1 - 1));
            step = std::stod(a.budget_range.substr(c2 + 1));
        }
        for (double b = lo; b <= hi + 1e-9; b += step) budgets.push_back(b);
    }

    std::ostringstream csv;
    csv << csv_header("synth gateset=" + a.gateset + " samples=" + std::to_string(a.samples) +
                      " seed=" + std::to_string(a.seed) + " rtrunc=" + std::to_string(a.rtrunc));
    csv << "target,budget,cost,eps,n_t,n_sqrt_t,total_gates\n";

    std::vector<std::vector<SequenceResult>> per_budget(budgets.size());
    for (auto& v : per_budget) v.resize(a.count);

    parallel_for_blocks(a.count, [&](std::size_t lo_t, std::size_t hi_t, unsigned) {
        for (std::size_t t = lo_t; t < hi_t; ++t) {
            const Unitary2 u = a.target == "haar" ? Unitary2::haar(a.seed * 1000003 + t)
                                                  : parse_target(a.target, a.seed + t);
            SynthOptions opt;
            opt.backend = SynthBackend::ChainSampler;
            opt.samples = static_cast<std::size_t>(a.samples);
            opt.seed = CounterRng::derive(a.seed, t);
            opt.r_trunc_halves = rtrunc_halves;
            const auto curve = synthesize_curve(u, table, budgets, opt);
            for (std::size_t b = 0; b < budgets.size(); ++b) per_budget[b][t] = curve[b];
        }
    });

    std::vector<std::pair<double, double>> cost_eps;     // (budget, median eps)
    std::vector<std::pair<double, double>> gates_eps;    // (median total gates, median eps)
    std::vector<SequenceResult> all_results;
    for (std::size_t b = 0; b < budgets.size(); ++b) {
        std::vector<double> errs;
        std::vector<double> totals;
        for (std::size_t t = 0; t < per_budget[b].size(); ++t) {
            const auto& r = per_budget[b][t];
            std::size_t n_t = 0, n_s = 0, tot = 0;
            for (const auto& [level, count] : r.counts) {
                tot += count;
                if (level == 2) n_t = count;
                if (level == 3) n_s = count;
            }
            csv << t << "," << budgets[b] << "," << r.cost << "," << r.eps << "," << n_t << ","
                << n_s << "," << tot << "\n";
            errs.push_back(r.eps);
            totals.push_back(static_cast<double>(tot));
            all_results.push_back(r);
        }
        std::sort(errs.begin(), errs.end());
        std::sort(totals.begin(), totals.end());
        const double med = errs[errs.size() / 2];
        if (med > 1e-12 && med < 0.5) {
            cost_eps.emplace_back(budgets[b], med);
            gates_eps.emplace_back(totals[totals.size() / 2], med);
        }
    }
    write_output(a.out, csv.str());

    if (!a.fits_out.empty()) {
        const FitResult fit = fit_scaling(cost_eps);
        const FitResult gate_fit = fit_scaling(gates_eps);
        const RatioStats ratio = gate_ratio(all_results);
        json fits;
        std::ifstream existing(a.fits_out);
        if (existing) {
            try {
                fits = json::parse(existing);
            } catch (...) {
                fits = json::object();
            }
        }
        fits[a.gateset] = {{"a", fit.a},
                           {"b", fit.b},
                           {"total_gate_slope", gate_fit.a},
                           {"kappa", ratio.median},
                           {"kappa_lo68", ratio.lo68},
                           {"kappa_hi68", ratio.hi68},
                           {"fraction_with_higher", ratio.fraction_with_higher}};
        std::ofstream out(a.fits_out);
        out << fits.dump(2) << "\n";
    }
    return 0;
}

// ---- pareto ----------------------------------------------------------

struct ParetoArgs {
    std::string gatesets = "C2,C3";
    std::string fits_file = "synth_fits.json";
    NoiseFlags noise;
    std::string out;
};

struct ParetoCurve {
    std::string name;
    double min_p = 0;
    double min_r = 0;
};

int run_pareto(const ParetoArgs& a) {
    json fits = json::parse(read_file(a.fits_file));
    CostParams params;
    params.noise = a.noise.to_params();

    std::vector<std::string> sets;
    std::stringstream ss(a.gatesets);
    std::string item;
    while (std::getline(ss, item, ',')) sets.push_back(item);

    std::ostringstream csv;
    csv << csv_header("pareto fits=" + a.fits_file + " p=" + std::to_string(params.noise.p) +
                      " eta=" + a.noise.eta + " regime=" + a.noise.regime);
    csv << "gateset,R,eps,p_logical\n";

    std::vector<ParetoCurve> curves;
    for (const std::string& name : sets) {
        if (!fits.contains(name)) throw InvalidParameter("fits file lacks entry for " + name);
        const double fa = fits[name]["a"].get<double>();
        const double fb = fits[name]["b"].get<double>();
        const double kappa = name == "C2" ? 0.0 : fits[name].value("kappa", 0.33);

        ParetoCurve curve;
        curve.name = name;
        curve.min_p = 1e30;
        const double pg2 = p_gate(2, params.noise).value;
        const double pg3 = name == "C2" ? 0.0 : p_gate(3, params.noise).value;
        for (double R = std::max(1.0, fb + 0.5); R <= 80.0; R += 0.25) {
            const double eps = std::pow(2.0, -(R - fb) / fa);
            // gate counts from the cost normalization
            const double n2 = R / (1.0 + 2.5 * kappa);
            const double n3 = kappa * n2;
            const double p_logical = eps * eps + n2 * pg2 + n3 * pg3;
            csv << name << "," << R << "," << eps << "," << p_logical << "\n";
            if (p_logical < curve.min_p) {
                curve.min_p = p_logical;
                curve.min_r = R;
            }
        }
        curves.push_back(curve);
    }
    for (const auto& c : curves)
        csv << "# " << c.name << " minimum: p_logical=" << c.min_p << " at R=" << c.min_r << "\n";
    if (curves.size() == 2) {
        csv << "# improvement: error " << 100.0 * (1.0 - curves[1].min_p / curves[0].min_p)
            << "%, cost " << 100.0 * (1.0 - curves[1].min_r / curves[0].min_r) << "%\n";
    }
    write_output(a.out, csv.str());
    return 0;
}

}  // namespace

void register_commands(CLI::App& app, int& exit_code) {
    app.set_config("--config", "", "configuration file (key=value lines)");

    auto layout_args = std::make_shared<LayoutArgs>();
    auto* layout_cmd = app.add_subcommand("layout", "construct an unfolded layout");
    layout_cmd->add_option("--m", layout_args->m, "variables (code has 2^m qubits)")->required();
    layout_cmd->add_option("--target", layout_args->target, "ideal|repetition");
    layout_cmd->add_option("--drep", layout_args->drep, "repetition distance (0 = 2^{m-1})");
    layout_cmd->add_option("--connectivity", layout_args->connectivity, "nn|long-range");
    layout_cmd->add_option("--out", layout_args->out, "layout JSON file");
    layout_cmd->add_option("--svg", layout_args->svg, "layout drawing file");
    layout_cmd->callback([layout_args, &exit_code] { exit_code = run_layout(*layout_args); });

    auto verify_args = std::make_shared<VerifyArgs>();
    auto* verify_cmd = app.add_subcommand("verify", "check layout invariants");
    verify_cmd->add_option("--layout", verify_args->layout_file, "layout JSON")->required();
    verify_cmd->add_flag("--all", verify_args->all);
    verify_cmd->add_flag("--independence", verify_args->independence);
    verify_cmd->add_flag("--labels", verify_args->labels);
    verify_cmd->add_flag("--distance", verify_args->distance);
    verify_cmd->add_flag("--kparity", verify_args->kparity);
    verify_cmd->add_flag("--transversal", verify_args->transversal);
    verify_cmd->add_option("--out", verify_args->out, "report JSON");
    verify_cmd->callback([verify_args, &exit_code] { exit_code = run_verify(*verify_args); });

    auto sim_args = std::make_shared<SimulateArgs>();
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo distillation run");
    sim_cmd->add_option("--layout", sim_args->layout_file, "layout JSON")->required();
    sim_cmd->add_option("--k", sim_args->k, "rotation level (m-2)")->required();
    sim_args->noise.attach(sim_cmd);
    sim_cmd->add_option("--mode", sim_args->mode, "twirl|proxy");
    sim_cmd->add_option("--shots", sim_args->shots, "number of shots");
    sim_cmd->add_option("--seed", sim_args->seed, "rng seed");
    sim_cmd->add_option("--out", sim_args->out, "result JSON");
    sim_cmd->callback([sim_args, &exit_code] { exit_code = run_simulate(*sim_args); });

    auto ana_args = std::make_shared<AnalyticsArgs>();
    auto* ana_cmd = app.add_subcommand("analytics", "closed-form error rates");
    ana_cmd->add_option("--k-range", ana_args->k_range, "lo:hi");
    ana_args->noise.attach(ana_cmd);
    ana_cmd->add_option("--out", ana_args->out, "CSV file");
    ana_cmd->callback([ana_args, &exit_code] { exit_code = run_analytics(*ana_args); });

    auto est_args = std::make_shared<EstimateArgs>();
    auto* est_cmd = app.add_subcommand("estimate", "resource cost model");
    est_cmd->add_option("--k-range", est_args->k_range, "lo:hi");
    est_cmd->add_option("--eps", est_args->eps, "synthesis error");
    est_cmd->add_option("--connectivity", est_args->connectivity, "nn|long-range");
    est_args->noise.attach(est_cmd);
    est_cmd->add_option("--out", est_args->out, "CSV file");
    est_cmd->callback([est_args, &exit_code] { exit_code = run_estimate(*est_args); });

    auto synth_args = std::make_shared<SynthArgs>();
    auto* synth_cmd = app.add_subcommand("synth", "single-qubit unitary synthesis");
    synth_cmd->add_option("--target", synth_args->target, "haar|T|sqrtT|rz:<angle>");
    synth_cmd->add_option("--count", synth_args->count, "number of targets");
    synth_cmd->add_option("--gateset", synth_args->gateset, "C2|C3|...");
    synth_cmd->add_option("--budget", synth_args->budget, "total non-Clifford cost");
    synth_cmd->add_option("--budget-range", synth_args->budget_range, "lo:hi[:step]");
    synth_cmd->add_option("--samples", synth_args->samples, "samples per partitioning");
    synth_cmd->add_option("--seed", synth_args->seed, "rng seed");
    synth_cmd->add_option("--rtrunc", synth_args->rtrunc, "block truncation cost");
    synth_cmd->add_option("--out", synth_args->out, "CSV file");
    synth_cmd->add_option("--fits-out", synth_args->fits_out, "fits JSON (merged per gate set)");
    synth_cmd->callback([synth_args, &exit_code] { exit_code = run_synth(*synth_args); });

    auto pareto_args = std::make_shared<ParetoArgs>();
    auto* pareto_cmd = app.add_subcommand("pareto", "error-versus-cost assembly");
    pareto_cmd->add_option("--gateset", pareto_args->gatesets, "comma-separated sets");
    pareto_cmd->add_option("--fits", pareto_args->fits_file, "fits JSON from synth");
    pareto_args->noise.attach(pareto_cmd);
    pareto_cmd->add_option("--out", pareto_args->out, "CSV file");
    pareto_cmd->callback([pareto_args, &exit_code] { exit_code = run_pareto(*pareto_args); });

    auto figure = std::make_shared<std::string>();
    auto outdir = std::make_shared<std::string>(".");
    auto shots = std::make_shared<uint64_t>(0);
    auto samples = std::make_shared<uint64_t>(0);
    auto seed = std::make_shared<uint64_t>(1);
    auto* rep_cmd = app.add_subcommand("reproduce", "regenerate a canned figure dataset");
    rep_cmd->add_option("figure", *figure, "fig5|fig6|fig7|fig8|fig9|synth")->required();
    rep_cmd->add_option("--outdir", *outdir, "output directory");
    rep_cmd->add_option("--shots", *shots, "override simulation shots");
    rep_cmd->add_option("--samples", *samples, "override sampler draws");
    rep_cmd->add_option("--seed", *seed, "rng seed");
    rep_cmd->callback([figure, outdir, shots, samples, seed, &exit_code] {
        exit_code = run_reproduce(*figure, *outdir, *shots, *samples, *seed);
    });
}

}  // namespace pf::cli
