// Acceptance criteria 1-4 and 7: structural lemmas, transversality,
// boundary regression, closed-form analytics, and the cost model.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "parityforge/cost.hpp"
#include "parityforge/layout.hpp"
#include "parityforge/verify.hpp"

using namespace pf;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail) {
    std::printf("CRITERION %d (%s): %s — %s\n", criterion, label, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

NoiseParams reference_noise() {
    NoiseParams n;
    n.p = 1e-3;
    n.eta = 1e5;
    n.n_rounds = 10;
    n.regime = NoiseRegime::Scaled;
    return n;
}

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (unsigned m = 4; m <= 10; ++m) {
        LayoutOptions opt;
        opt.nearest_neighbour = false;
        const UnfoldedLayout layout = make_layout(m, opt);

        const CheckReport rank = check_independence(layout);
        const CheckReport labels = check_label_completeness(layout);
        const CheckReport dist = check_logical_distances(layout);
        const bool here = rank.passed && labels.passed && dist.passed;
        ok &= here;
        if (!here) detail += " m=" + std::to_string(m) + " failed;";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok &= secs < 60.0;
    report(1, "lemma suite m=4..10", ok,
           detail.empty() ? "rank, labels, distances all exact in " + std::to_string(secs) + " s"
                          : detail);
}

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (unsigned m = 4; m <= 8; ++m) {
        if (!transversal_phase_check(m, m - 2)) {
            ok = false;
            detail += " transversal m=" + std::to_string(m) + ";";
        }
        LayoutOptions opt;
        opt.nearest_neighbour = false;
        const UnfoldedLayout layout = make_layout(m, opt);
        std::vector<ParityLabel> labels;
        for (const auto& q : layout.qubits)
            if (q.label) labels.push_back(*q.label);
        const auto sup = logical_x_supports(layout);
        BitMatrix x(m + 1, layout.grid.code_qubits());
        for (unsigned k = 0; k <= m; ++k)
            for (int id : sup.at(k)) x.set(k, static_cast<std::size_t>(id), true);
        for (unsigned j = 1; j <= m - 1; ++j) {
            const bool parity = k_parity_check(labels, m, j);
            const bool ortho = k_orthogonality_check(x, j);
            if (parity != ortho || (j == m - 1 && !parity)) {
                ok = false;
                detail += " j=" + std::to_string(j) + "@m=" + std::to_string(m) + ";";
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok &= secs < 30.0;
    report(2, "transversality and parity criteria", ok,
           detail.empty() ? "phase congruences and parity/orthogonality agree in " +
                                std::to_string(secs) + " s"
                          : detail);
}

void criterion_3() {
    UnfoldedLayout layout = build_bulk(4);
    distribute_boundaries(layout);
    std::vector<const StabilizerSpec*> parents;
    for (const auto& s : layout.z_stabilizers)
        if (s.kind == StabilizerKind::BoundaryLogical) parents.push_back(&s);
    bool ok = parents.size() == 2;
    for (const auto* s : parents)
        ok &= s->origin && s->origin->first == 2 && s->origin->second == 0;
    // one per side type: one horizontal (top/bottom), one vertical
    if (ok) {
        const bool h0 = parents[0]->side == EdgeSide::Top || parents[0]->side == EdgeSide::Bottom;
        const bool v1 = parents[1]->side == EdgeSide::Left || parents[1]->side == EdgeSide::Right;
        ok &= h0 && v1;
    }
    report(3, "m=4 boundary regression", ok,
           "exactly one S(2,0) per side type: " + std::to_string(parents.size()) + " parents");
}

void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const NoiseParams n = reference_noise();

    const double pe = p_eff(2, n);
    const double pd = p_dist(2, n);
    const double pe_expected = 1.0001e-3;
    const bool pe_ok = std::abs(pe - pe_expected) <= 4 * std::ldexp(1.0, -52) * pe_expected;
    const double pd_closed = undetectable_triples(2) * pe * pe * pe;
    const bool pd_ok = pd == pd_closed && std::abs(pd - 3.50e-8) / 3.50e-8 < 2e-3;

    bool monotone = true;
    NoiseParams c = n;
    c.regime = NoiseRegime::Constant;
    for (unsigned k = 2; k < 9; ++k) monotone &= p_dist(k, c) < p_dist(k + 1, c);

    bool shape_ok = true;
    unsigned prev_kth = 0;
    for (double eta : {1e4, 1e5, 1e6}) {
        NoiseParams s = n;
        s.eta = eta;
        unsigned kth = 2;
        double best = p_dist(2, s);
        bool rose = false;
        for (unsigned k = 3; k <= 24; ++k) {
            const double v = p_dist(k, s);
            if (v < best) {
                best = v;
                kth = k;
            } else if (k > kth) {
                rose = true;
            }
        }
        shape_ok &= rose && kth > prev_kth;
        prev_kth = kth;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char buf[160];
    std::snprintf(buf, sizeof buf, "p_eff(2)=%.6e p_dist(2)=%.4e, %.3f s", pe, pd, secs);
    report(4, "analytics reproduction", pe_ok && pd_ok && monotone && shape_ok && secs < 1.0, buf);
}

void criterion_7() {
    CostParams params;
    params.noise = reference_noise();
    params.connectivity = Connectivity::NearestNeighbour;

    const double kb = break_even(1e-3, params);
    const bool kb_ok = std::abs(kb - 6.6) <= 0.1;

    const double flat = cost_synthesized(1e-3, params).value;
    const bool crossing_ok =
        cost_native(6, params).value < flat && cost_native(7, params).value > flat;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "break-even %.3f; native(6)=%.2f < synth=%.2f < native(7)=%.2f", kb,
                  cost_native(6, params).value, flat, cost_native(7, params).value);
    report(7, "cost model", kb_ok && crossing_ok, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_7();
    return failures == 0 ? 0 : 1;
}
