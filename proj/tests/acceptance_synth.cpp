// Acceptance criteria 8 and 9: synthesis backends and the error-versus-cost
// dominance of the extended gate set.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "parityforge/cost.hpp"
#include "parityforge/rng.hpp"
#include "parityforge/synth.hpp"
#include "parityforge/threads.hpp"

using namespace pf;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail) {
    std::printf("CRITERION %d (%s): %s — %s\n", criterion, label, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

struct ScalingRun {
    FitResult cost_fit;
    FitResult gate_fit;
    RatioStats ratio;
};

ScalingRun haar_scaling(const BlockTable& table, std::size_t n_targets, std::size_t samples,
                        double max_budget, uint64_t seed) {
    std::vector<double> budgets;
    for (double b = 4; b <= max_budget + 1e-9; b += 2) budgets.push_back(b);

    std::vector<std::vector<SequenceResult>> per_budget(budgets.size(),
                                                        std::vector<SequenceResult>(n_targets));
    parallel_for_blocks(n_targets, [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t t = lo; t < hi; ++t) {
            SynthOptions opt;
            opt.samples = samples;
            opt.seed = CounterRng::derive(seed, t);
            const auto curve = synthesize_curve(Unitary2::haar(7000 + t), table, budgets, opt);
            for (std::size_t b = 0; b < budgets.size(); ++b) per_budget[b][t] = curve[b];
        }
    });

    std::vector<std::pair<double, double>> cost_eps, gates_eps;
    std::vector<SequenceResult> all;
    for (std::size_t b = 0; b < budgets.size(); ++b) {
        std::vector<double> errs, totals;
        for (const auto& r : per_budget[b]) {
            std::size_t tot = 0;
            for (const auto& [lvl, cnt] : r.counts) tot += cnt;
            errs.push_back(r.eps);
            totals.push_back(static_cast<double>(tot));
            all.push_back(r);
        }
        std::sort(errs.begin(), errs.end());
        std::sort(totals.begin(), totals.end());
        const double med = errs[errs.size() / 2];
        if (med > 1e-12 && med < 0.5) {
            cost_eps.emplace_back(budgets[b], med);
            gates_eps.emplace_back(totals[totals.size() / 2], med);
        }
    }
    ScalingRun run;
    run.cost_fit = fit_scaling(cost_eps);
    run.gate_fit = fit_scaling(gates_eps);
    run.ratio = gate_ratio(all);
    return run;
}

struct CurveMinimum {
    double p = 1e30;
    double r = 0;
};

CurveMinimum curve_minimum(const FitResult& fit, double kappa, const NoiseParams& noise) {
    const double pg2 = p_gate(2, noise).value;
    const double pg3 = kappa > 0 ? p_gate(3, noise).value : 0.0;
    CurveMinimum out;
    for (double R = std::max(1.0, fit.b + 0.5); R <= 120.0; R += 0.05) {
        const double eps = std::pow(2.0, -(R - fit.b) / fit.a);
        const double n2 = R / (1.0 + 2.5 * kappa);
        const double p = eps * eps + n2 * pg2 + kappa * n2 * pg3;
        if (p < out.p) {
            out.p = p;
            out.r = R;
        }
    }
    return out;
}

ScalingRun g_c2, g_c3;

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 16);
    const BlockTable c3 = enumerate_blocks(GateSet::make(3), 16);

    // exact words from the exhaustive backend
    SynthOptions ex;
    ex.backend = SynthBackend::Exhaustive;
    ex.budget = 1.0;
    const auto t_word = synthesize(Unitary2::z_rotation(2), c2, ex);
    ex.budget = 2.5;
    const auto s_word = synthesize(Unitary2::z_rotation(3), c3, ex);
    const bool exact_ok = t_word.eps < 1e-12 && s_word.eps < 1e-12;

    // sampler agrees with the exhaustive optimum on 50 targets at R <= 4
    bool oracle_ok = true;
    std::vector<uint8_t> agree(50, 0);
    parallel_for_blocks(50, [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t t = lo; t < hi; ++t) {
            const Unitary2 u = Unitary2::haar(31000 + t);
            SynthOptions a;
            a.backend = SynthBackend::Exhaustive;
            a.budget = 4.0;
            SynthOptions b;
            b.backend = SynthBackend::ChainSampler;
            b.budget = 4.0;
            b.samples = 10000;
            b.seed = t;
            agree[t] = std::abs(synthesize(u, c2, a).eps - synthesize(u, c2, b).eps) < 1e-9;
        }
    });
    for (uint8_t v : agree) oracle_ok &= v != 0;

    // scaling over 100 haar targets
    g_c2 = haar_scaling(c2, 100, 1500, 26.0, 11);
    g_c3 = haar_scaling(c3, 100, 700, 22.0, 13);

    const bool slope_ok = g_c2.cost_fit.a >= 2.5 && g_c2.cost_fit.a <= 4.5;
    const bool gate_slope_ok = g_c3.gate_fit.a < g_c2.gate_fit.a;
    const bool kappa_ok = g_c3.ratio.median >= 0.1 && g_c3.ratio.median <= 1.0;

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "exact words %s; oracle agreement %s; a_C2=%.2f; gate slopes %.2f vs %.2f; "
                  "kappa=%.2f; %.0f s",
                  exact_ok ? "ok" : "bad", oracle_ok ? "ok" : "bad", g_c2.cost_fit.a,
                  g_c3.gate_fit.a, g_c2.gate_fit.a, g_c3.ratio.median, secs);
    report(8, "synthesis", exact_ok && oracle_ok && slope_ok && gate_slope_ok && kappa_ok &&
                               secs < 7200,
           buf);
}

void criterion_9() {
    NoiseParams noise;
    noise.p = 1e-3;
    noise.eta = 1e5;
    noise.n_rounds = 10;
    noise.regime = NoiseRegime::Scaled;

    const CurveMinimum m2 = curve_minimum(g_c2.cost_fit, 0.0, noise);
    const CurveMinimum m3 = curve_minimum(g_c3.cost_fit, g_c3.ratio.median, noise);

    const bool dominance = m3.p <= m2.p && m3.r < m2.r;
    const double err_red = 100.0 * (1.0 - m3.p / m2.p);
    const double cost_red = 100.0 * (1.0 - m3.r / m2.r);
    // the paper states the pair {26, 49} with an ambiguous assignment; accept
    // either orientation within the +-15 pp tolerance
    const auto in = [](double v, double c) { return std::abs(v - c) <= 15.0; };
    const bool pct_ok = (in(err_red, 26) && in(cost_red, 49)) || (in(err_red, 49) && in(cost_red, 26));

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "C2 min p=%.3e@R=%.1f; C3 min p=%.3e@R=%.1f; error -%.0f%%, cost -%.0f%%", m2.p,
                  m2.r, m3.p, m3.r, err_red, cost_red);
    report(9, "pareto dominance", dominance && pct_ok, buf);
}

}  // namespace

int main() {
    criterion_8();
    criterion_9();
    return failures == 0 ? 0 : 1;
}
