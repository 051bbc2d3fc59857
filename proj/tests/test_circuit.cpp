#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "parityforge/circuit.hpp"

using namespace pf;

namespace {
UnfoldedLayout long_range_layout(unsigned m, TargetMode target = TargetMode::Ideal) {
    LayoutOptions opt;
    opt.nearest_neighbour = false;
    opt.target = target;
    return make_layout(m, opt);
}

NoiseParams inf_bias(double p) {
    NoiseParams n;
    n.p = p;
    n.eta = std::numeric_limits<double>::infinity();
    n.n_rounds = 10;
    n.regime = NoiseRegime::Scaled;
    return n;
}
}  // namespace

TEST_CASE("round split around the non-Clifford layer") {
    const auto layout = long_range_layout(4);
    const auto c = build_circuit(layout, 2, 10, inf_bias(1e-3), NcMode::Twirl);

    std::size_t layer_pos = 0, rounds_before = 0, rounds_after = 0;
    std::set<int> seen_rounds_before, seen_rounds_after;
    bool after = false;
    for (const auto& op : c.ops) {
        if (op.kind == OpKind::NonCliffordLayer) {
            after = true;
            continue;
        }
        if (op.kind == OpKind::MeasureZAncilla)
            (after ? seen_rounds_after : seen_rounds_before).insert(op.round);
    }
    rounds_before = seen_rounds_before.size();
    rounds_after = seen_rounds_after.size();
    CHECK(rounds_before == 5);
    CHECK(rounds_after == 5);
    (void)layer_pos;
}

TEST_CASE("detector accounting for the 15-qubit instance") {
    const auto layout = long_range_layout(4);
    const auto c = build_circuit(layout, 2, 10, inf_bias(1e-3), NcMode::Twirl);
    CHECK(c.n_checks == 11);
    CHECK(c.detector_count() == 110);  // 99 consecutive-round pairs + 11 first-round anchors
    CHECK(c.postselect_observables.size() == 4);
    for (const auto& v : c.postselect_observables) CHECK(v.size() == 8);
    CHECK(c.logical_observable.size() == 7);  // label-0 support minus the target
}

TEST_CASE("parameter validation") {
    const auto layout = long_range_layout(4);
    CHECK_THROWS_AS(build_circuit(layout, 2, 1, inf_bias(1e-3), NcMode::Twirl), InvalidParameter);
    CHECK_THROWS_AS(build_circuit(layout, 3, 10, inf_bias(1e-3), NcMode::Twirl), InvalidParameter);
}

TEST_CASE("layer covers code qubits only") {
    const auto layout = long_range_layout(6, TargetMode::Repetition);
    const auto c = build_circuit(layout, 4, 10, inf_bias(1e-3), NcMode::Twirl);
    const auto layer = c.layer_qubits();
    CHECK(layer.size() == 63);  // 2^6 - 1 code qubits, target excluded
    for (int q : layer) CHECK(q != c.target_interface);
}

TEST_CASE("composite circuit extends volume supports over ancilla data") {
    LayoutOptions opt;
    opt.nearest_neighbour = true;
    const auto layout = make_layout(4, opt);
    const auto c = build_circuit(layout, 2, 6, inf_bias(1e-3), NcMode::Twirl);
    // composite checks outnumber the long-range parents
    CHECK(c.n_checks == 9 + 2 * 3);
    // every volume support still commutes with each measured check
    for (const auto& support : c.postselect_observables) {
        std::set<int> sup(support.begin(), support.end());
        for (const auto& cs : c.check_support) {
            std::size_t overlap = 0;
            for (int q : cs) overlap += sup.count(q);
            CHECK(overlap % 2 == 0);
        }
    }
}

TEST_CASE("proxy mode doubles the twirl probability at high k") {
    const auto layout = long_range_layout(6);
    const auto twirl = build_circuit(layout, 4, 10, inf_bias(1e-3), NcMode::Twirl);
    const auto proxy = build_circuit(layout, 4, 10, inf_bias(1e-3), NcMode::ProxyT);
    CHECK(twirl.twirl_y_probability() == doctest::Approx(0.038060).epsilon(1e-4));
    CHECK(proxy.twirl_y_probability() == 0.5);
}
