// Acceptance criteria 5 and 6: Monte-Carlo bracket against the analytic
// plateau and exhaustive post-selection soundness.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "parityforge/sampler.hpp"

using namespace pf;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail) {
    std::printf("CRITERION %d (%s): %s — %s\n", criterion, label, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

NoiseParams inf_bias(double p) {
    NoiseParams n;
    n.p = p;
    n.eta = std::numeric_limits<double>::infinity();
    n.n_rounds = 10;
    n.regime = NoiseRegime::Scaled;
    return n;
}

void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    LayoutOptions opt;
    opt.nearest_neighbour = false;
    const UnfoldedLayout layout = make_layout(4, opt);

    // main point: p = 1e-2, >= 5e6 shots, within a factor 2 of the oracle
    const auto main_est = estimate(build_circuit(layout, 2, 10, inf_bias(1e-2), NcMode::Twirl),
                                   5'000'000, 2024);
    const double oracle = p_dist(2, inf_bias(1e-2));
    const bool factor2 = main_est.p_logical >= oracle / 2 && main_est.p_logical <= oracle * 2;

    // scaling exponent over a decade of physical error rates
    const std::vector<double> ps = {3e-3, 1e-2, 3e-2};
    const std::vector<uint64_t> shots = {40'000'000, 5'000'000, 1'000'000};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::string points;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto est = estimate(build_circuit(layout, 2, 10, inf_bias(ps[i]), NcMode::Twirl),
                                  shots[i], 31 + i);
        const double x = std::log(ps[i]);
        const double y = std::log(est.p_logical);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        points += " p=" + std::to_string(ps[i]) + ":" + std::to_string(est.p_logical);
    }
    const double n = static_cast<double>(ps.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool slope_ok = std::abs(slope - 3.0) <= 0.3;

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "p_logical=%.3e vs oracle %.3e (ratio %.2f), slope %.2f,%s %.0f s",
                  main_est.p_logical, oracle, main_est.p_logical / oracle, slope, points.c_str(),
                  secs);
    report(5, "simulation bracket", factor2 && slope_ok && secs < 1800, buf);
}

void criterion_6() {
    LayoutOptions opt;
    opt.nearest_neighbour = false;
    const UnfoldedLayout layout = make_layout(4, opt);
    const auto circuit = build_circuit(layout, 2, 10, inf_bias(0.0), NcMode::Twirl);
    const std::size_t fin = final_measure_index(circuit);
    const auto& qs = circuit.final_measured;

    std::size_t rejected = 0, patterns = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        ++patterns;
        rejected += !run_with_injection(circuit, {{fin, qs[i], Pauli::Z}}).outcome.accepted;
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
        for (std::size_t j = i + 1; j < qs.size(); ++j) {
            ++patterns;
            rejected += !run_with_injection(circuit, {{fin, qs[i], Pauli::Z}, {fin, qs[j], Pauli::Z}})
                             .outcome.accepted;
        }
    }
    std::size_t accepted_with_flip = 0;
    for (std::size_t i = 0; i < qs.size() && accepted_with_flip == 0; ++i)
        for (std::size_t j = i + 1; j < qs.size() && accepted_with_flip == 0; ++j)
            for (std::size_t k = j + 1; k < qs.size(); ++k) {
                const auto res = run_with_injection(
                    circuit,
                    {{fin, qs[i], Pauli::Z}, {fin, qs[j], Pauli::Z}, {fin, qs[k], Pauli::Z}});
                if (res.outcome.accepted && res.outcome.logical_flip) {
                    ++accepted_with_flip;
                    break;
                }
            }

    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/%zu low-weight patterns rejected, weight-3 flip found: %s",
                  rejected, patterns, accepted_with_flip ? "yes" : "no");
    report(6, "post-selection soundness", patterns == 120 && rejected == patterns &&
                                              accepted_with_flip == 1,
           buf);
}

}  // namespace

int main() {
    criterion_6();
    criterion_5();
    return failures == 0 ? 0 : 1;
}
