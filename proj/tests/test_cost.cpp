#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "parityforge/cost.hpp"

using namespace pf;

namespace {
CostParams paper_cost() {
    CostParams c;
    c.noise.p = 1e-3;
    c.noise.eta = 1e5;
    c.noise.n_rounds = 10;
    c.noise.regime = NoiseRegime::Scaled;
    return c;
}
}  // namespace

TEST_CASE("qubit counts") {
    CHECK(n_qubits(2, Connectivity::LongRange) == 27);
    CHECK(n_qubits(4, Connectivity::NearestNeighbour) == 161);
    CHECK(n_qubits(2, Connectivity::NearestNeighbour) == 35);
    CHECK(n_data(2) == 20);
    CHECK(n_data(4) == 84);
    CHECK(n_data(6) == 324);

    for (unsigned k = 2; k <= 9; ++k) {
        CHECK(n_qubits(k, Connectivity::NearestNeighbour) >= n_qubits(k, Connectivity::LongRange));
        CHECK(n_qubits(k, Connectivity::NearestNeighbour) == 2 * n_data(k) - k - 3);
    }
    // nearest-neighbour overhead scales like k 2^{k/2}
    for (unsigned k = 4; k <= 8; k += 2) {
        const double diff = static_cast<double>(n_qubits(k, Connectivity::NearestNeighbour)) -
                            static_cast<double>(n_qubits(k, Connectivity::LongRange));
        const double lead = static_cast<double>(k - 2) * std::pow(2.0, k / 2.0 + 2.0);
        CHECK(diff == doctest::Approx(lead + 8).epsilon(0.01));
    }
}

TEST_CASE("factory capacity") {
    CHECK(factory_capacity(4, 2) == 4);
    CHECK(factory_capacity(4, 4) == 1);
    CHECK(factory_capacity(6, 3) == 8);
}

TEST_CASE("native cost chain") {
    CostParams c = paper_cost();
    c.noise.p = 0;  // attempts exactly 1
    const double q2 = static_cast<double>(n_qubits(2, c.connectivity));
    const double q3 = static_cast<double>(n_qubits(3, c.connectivity));
    CHECK(cost_native(2, c).value == doctest::Approx(q2));
    CHECK(cost_native(3, c).value == doctest::Approx(q3 + q2 / 2));

    c = paper_cost();
    const NativeCost k6 = cost_native(6, c);
    CHECK(k6.value < k6.bound);
}

TEST_CASE("synthesized cost and break-even") {
    CostParams c = paper_cost();
    const SynthesizedCost s = cost_synthesized(1e-3, c);
    CHECK(s.n_gates == doctest::Approx(24.4256).epsilon(1e-3));
    CHECK_FALSE(s.out_of_regime);
    CHECK(cost_synthesized(1.0, c).out_of_regime);

    CHECK(break_even(1e-3, c) == doctest::Approx(6.61).epsilon(0.01));
    c.synthesis_fit = {1.0, std::log2(4.0) * 0.0 + 2.0};  // N_gates(eps)=log2(1/eps)+2
    // at eps = 0.25, N_gates = 4 -> k_b = 4
    CHECK(break_even(0.25, c) == doctest::Approx(4.0));
}

TEST_CASE("cost-attempt product stays near the ideal footprint") {
    CostParams c = paper_cost();
    for (unsigned k = 2; k <= 8; ++k) {
        const double prod = static_cast<double>(n_qubits(k, c.connectivity)) *
                            acceptance_prob(k, n_data(k), c.noise).n_attempts;
        CHECK(prod <= 2.2 * std::pow(2.0, k + 3.0));
    }
}

TEST_CASE("total error and cost") {
    CostParams c = paper_cost();
    ErrorAndCost zero = total_error_and_cost({}, 0.0, c);
    CHECK(zero.p_logical == 0.0);
    CHECK(zero.r_total == 0.0);

    const double pg2 = p_gate(2, c.noise).value;
    const ErrorAndCost mix = total_error_and_cost({{2, 24.0}}, 1e-3, c);
    CHECK(mix.p_logical == doctest::Approx(1e-6 + 24 * pg2).epsilon(1e-12));
    CHECK(mix.r_total == doctest::Approx(24 * cost_native(2, c).value).epsilon(1e-12));

    // kappa = 1/3 normalization: N_2 = R / (1 + kappa * 2.5)
    const double R = 30.0, kappa = 1.0 / 3.0;
    const double n2 = R / (1.0 + kappa * 2.5);
    CHECK(n2 * (1.0 + kappa * 2.5) == doctest::Approx(R));
}
