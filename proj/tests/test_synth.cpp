#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "parityforge/synth.hpp"

using namespace pf;

TEST_CASE("trace distance basics") {
    const Unitary2 id = Unitary2::identity();
    const Unitary2 t = Unitary2::z_rotation(2);
    const Unitary2 z = Unitary2::z_rotation(0);

    CHECK(trace_distance(t, t) == 0.0);
    CHECK(trace_distance(id, z) == doctest::Approx(1.0));
    CHECK(trace_distance(id, t) == doctest::Approx(std::sin(M_PI / 8)).epsilon(1e-12));
}

TEST_CASE("trace distance is a phase-invariant metric") {
    for (uint64_t trial = 0; trial < 30; ++trial) {
        const Unitary2 a = Unitary2::haar(trial);
        const Unitary2 b = Unitary2::haar(trial + 1000);
        const Unitary2 c = Unitary2::haar(trial + 2000);
        CHECK(a.is_unitary());
        const double ab = trace_distance(a, b);
        CHECK(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12);

        Unitary2 a_phase = a;
        const cplx phase = std::polar(1.0, 0.7312);
        for (auto& e : a_phase.u) e *= phase;
        CHECK(trace_distance(a_phase, b) == doctest::Approx(ab).epsilon(1e-12));
    }
}

TEST_CASE("cost-0 block is the 24-element Clifford group") {
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 8);
    REQUIRE(c2.block(0) != nullptr);
    CHECK(c2.block(0)->matrices.size() == 24);

    // matrices within a block are pairwise distinct
    const auto& m = c2.block(0)->matrices;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            double diff = 0;
            for (int e = 0; e < 4; ++e) diff = std::max(diff, std::abs(m[i].u[e] - m[j].u[e]));
            CHECK(diff > 1e-6);
        }
}

TEST_CASE("achievable cost lattice") {
    const GateSet c3 = GateSet::make(3);
    const auto costs = c3.achievable_costs(12);
    // halves: {0, 2=T, 4, 5=sqrtT, 6, 7, 8, 9, 10, 11, 12}
    CHECK(std::find(costs.begin(), costs.end(), 0) != costs.end());
    CHECK(std::find(costs.begin(), costs.end(), 2) != costs.end());
    CHECK(std::find(costs.begin(), costs.end(), 5) != costs.end());
    CHECK(std::find(costs.begin(), costs.end(), 1) == costs.end());
    CHECK(std::find(costs.begin(), costs.end(), 3) == costs.end());

    const BlockTable table = enumerate_blocks(c3, 7);
    for (const auto& block : table.blocks) {
        CHECK(std::find(costs.begin(), costs.end(), block.cost_halves) != costs.end());
        // every witness word reproduces its matrix and cost
        for (std::size_t i = 0; i < block.matrices.size(); ++i) {
            Unitary2 prod = Unitary2::identity();
            int halves = 0;
            for (uint16_t g : block.words[i]) {
                prod = prod * c3.gates[g].matrix;
                halves += c3.gates[g].cost_halves;
            }
            CHECK(halves == block.cost_halves);
            CHECK(trace_distance(prod, block.matrices[i]) < 1e-9);
        }
    }
}

TEST_CASE("partitionings") {
    const GateSet c2 = GateSet::make(2);
    const GateSet c3 = GateSet::make(3);

    // R <= r_trunc collapses to the single full block
    CHECK(partitionings(6, 8, c3) == std::vector<std::vector<int>>{{6}});

    // R=5, r_trunc=4: (4,1) and (2.5,2.5) in half units
    const auto p5 = partitionings(10, 8, c3);
    REQUIRE(p5.size() == 2);
    CHECK(std::find(p5.begin(), p5.end(), std::vector<int>{8, 2}) != p5.end());
    CHECK(std::find(p5.begin(), p5.end(), std::vector<int>{5, 5}) != p5.end());

    // single gate type: one tuple suffices
    const auto p10 = partitionings(20, 16, c2);
    CHECK(p10 == std::vector<std::vector<int>>{{16, 4}});
}

TEST_CASE("exhaustive backend finds exact words") {
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 8);
    SynthOptions opt;
    opt.backend = SynthBackend::Exhaustive;
    opt.budget = 1.0;
    const auto t = synthesize(Unitary2::z_rotation(2), c2, opt);
    CHECK(t.eps < 1e-12);
    CHECK(t.cost == 1.0);
    REQUIRE(t.word.size() == 1);
    CHECK(t.word[0] == "T");

    const BlockTable c3 = enumerate_blocks(GateSet::make(3), 8);
    opt.budget = 2.5;
    const auto s = synthesize(Unitary2::z_rotation(3), c3, opt);
    CHECK(s.eps < 1e-12);
    CHECK(s.cost == 2.5);

    // sqrt(T) is not exactly representable over Clifford+T at cost 2
    opt.budget = 2.0;
    const auto approx = synthesize(Unitary2::z_rotation(3), c2, opt);
    CHECK(approx.eps > 0.09);

    opt.budget = 8.0;
    const auto better = synthesize(Unitary2::z_rotation(3), c2, opt);
    CHECK(better.eps <= approx.eps);
}

TEST_CASE("global phase invariance of synthesis") {
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 8);
    SynthOptions opt;
    opt.backend = SynthBackend::Exhaustive;
    opt.budget = 3.0;
    const Unitary2 u = Unitary2::haar(99);
    Unitary2 up = u;
    for (auto& e : up.u) e *= std::polar(1.0, 1.234);
    const auto a = synthesize(u, c2, opt);
    const auto b = synthesize(up, c2, opt);
    CHECK(a.eps == doctest::Approx(b.eps).epsilon(1e-12));
    CHECK(a.word == b.word);
}

TEST_CASE("chain sampler matches the exhaustive optimum at small budgets") {
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 8);
    SynthOptions ex;
    ex.backend = SynthBackend::Exhaustive;
    SynthOptions ch;
    ch.backend = SynthBackend::ChainSampler;
    ch.samples = 10000;
    for (uint64_t trial = 0; trial < 12; ++trial) {
        const Unitary2 u = Unitary2::haar(500 + trial);
        ex.budget = ch.budget = 4.0;
        ch.seed = trial;
        const auto a = synthesize(u, c2, ex);
        const auto b = synthesize(u, c2, ch);
        CHECK(std::abs(a.eps - b.eps) < 1e-9);
    }
}

TEST_CASE("sampler cost accounting is exact") {
    const BlockTable c3 = enumerate_blocks(GateSet::make(3), 8);
    SynthOptions opt;
    opt.budget = 7.0;
    opt.samples = 500;
    for (uint64_t trial = 0; trial < 6; ++trial) {
        const auto r = synthesize(Unitary2::haar(trial), c3, opt);
        REQUIRE(r.found);
        double cost = 0;
        for (const auto& [level, count] : r.counts)
            cost += static_cast<double>(count) * (level == 2 ? 1.0 : 2.5);
        CHECK(cost == doctest::Approx(r.cost));
        CHECK(r.cost <= opt.budget);
        CHECK(r.eps >= 0);
        CHECK(r.eps <= 1);
    }
}

TEST_CASE("median error decreases with budget") {
    const BlockTable c2 = enumerate_blocks(GateSet::make(2), 8);
    SynthOptions opt;
    opt.samples = 400;
    std::vector<double> medians;
    for (double budget : {4.0, 8.0, 12.0}) {
        opt.budget = budget;
        std::vector<double> errs;
        for (uint64_t t = 0; t < 9; ++t) {
            opt.seed = t;
            errs.push_back(synthesize(Unitary2::haar(t), c2, opt).eps);
        }
        std::sort(errs.begin(), errs.end());
        medians.push_back(errs[errs.size() / 2]);
    }
    CHECK(medians[1] < medians[0]);
    CHECK(medians[2] < medians[1]);
}

TEST_CASE("fit recovers exact linear scaling") {
    std::vector<std::pair<double, double>> pts;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4})
        pts.emplace_back(3.2 * std::log2(1.0 / eps) - 4.5, eps);
    const FitResult fit = fit_scaling(pts);
    CHECK(fit.a == doctest::Approx(3.2).epsilon(1e-9));
    CHECK(fit.b == doctest::Approx(-4.5).epsilon(1e-7));
}

TEST_CASE("gate ratio statistics") {
    SequenceResult no_sqrt;
    no_sqrt.counts = {{2, 10}};
    SequenceResult balanced;
    balanced.counts = {{2, 6}, {3, 3}};
    const RatioStats stats = gate_ratio({no_sqrt, balanced});
    CHECK(stats.fraction_with_higher == doctest::Approx(0.5));
    CHECK(stats.lo68 == 0.0);
    CHECK(stats.hi68 == doctest::Approx(0.5));
}

TEST_CASE("information-theoretic floor") {
    CHECK(lower_bound_gates(2, 1e-3) == doctest::Approx(29.897).epsilon(1e-3));
    CHECK(lower_bound_gates(3, 1e-3) == doctest::Approx(29.897 / 2).epsilon(1e-3));
    CHECK(lower_bound_gates(5, 1.0) == 0.0);
}
