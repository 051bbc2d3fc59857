#include "parityforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pf {

NcMode parse_nc_mode(const std::string& s) {
    if (s == "twirl") return NcMode::Twirl;
    if (s == "proxy" || s == "proxy-T" || s == "proxy-t") return NcMode::ProxyT;
    throw std::invalid_argument("unknown non-Clifford mode: " + s);
}

double DistillationCircuit::twirl_y_probability() const {
    if (nc_mode == NcMode::ProxyT) return 0.5;
    const double s = std::sin(M_PI / std::pow(2.0, static_cast<double>(k)));
    return s * s;
}

double DistillationCircuit::layer_q() const { return q_of_k(k, noise); }

std::vector<int> DistillationCircuit::layer_qubits() const {
    for (const auto& op : ops)
        if (op.kind == OpKind::NonCliffordLayer) return op.qubits;
    return {};
}

namespace {

// CNOT schedule within one check: corners of a plaquette run NW, NE, SE, SW;
// anything else in (row, col) order.
std::vector<int> schedule_support(const UnfoldedLayout& layout, const StabilizerSpec& s) {
    std::vector<int> order = s.support;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& qa = layout.qubit(a);
        const auto& qb = layout.qubit(b);
        return qa.row != qb.row ? qa.row < qb.row : qa.col < qb.col;
    });
    if (order.size() == 4 && s.kind == StabilizerKind::Bulk) std::swap(order[2], order[3]);
    return order;
}

// Volume stabilizers of the measured code. With composite boundaries the
// label supports alone no longer commute with every part, so each support is
// completed over the ancilla-data qubits by solving in the check kernel.
std::vector<std::vector<int>> volume_supports(const UnfoldedLayout& layout) {
    const unsigned m = layout.grid.m;
    const auto label_sup = logical_x_supports(layout);

    std::vector<std::vector<int>> out(m + 1);
    if (!layout.nearest_neighbour_realized) {
        for (unsigned j = 0; j <= m; ++j) out[j] = label_sup.at(j);
        return out;
    }

    std::vector<int> data = layout.data_qubit_ids();
    std::map<int, std::size_t> col;
    for (std::size_t i = 0; i < data.size(); ++i) col[data[i]] = i;
    const auto checks = layout.measured_check_indices();
    const BitMatrix h = layout.check_matrix(checks, data);
    const BitMatrix kernel = gf2_kernel(h);

    // restrict the kernel basis to labelled columns and solve for the combo
    // reproducing each label support there
    std::vector<std::size_t> labelled_cols;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (layout.qubit(data[i]).label) labelled_cols.push_back(i);

    BitMatrix restricted(kernel.n_rows(), labelled_cols.size());
    for (std::size_t r = 0; r < kernel.n_rows(); ++r)
        for (std::size_t c = 0; c < labelled_cols.size(); ++c)
            if (kernel.get(r, labelled_cols[c])) restricted.set(r, c, true);

    for (unsigned j = 0; j <= m; ++j) {
        BitMatrix target(1, labelled_cols.size());
        for (int id : label_sup.at(j)) {
            const std::size_t full_col = col.at(id);
            const auto it = std::lower_bound(labelled_cols.begin(), labelled_cols.end(), full_col);
            target.set(0, static_cast<std::size_t>(it - labelled_cols.begin()), true);
        }
        std::vector<uint8_t> combo;
        if (!gf2_solve_row(restricted, target, 0, combo))
            throw InternalInconsistency("volume support does not lift to the composite code");
        BitMatrix lifted(1, data.size());
        for (std::size_t r = 0; r < kernel.n_rows(); ++r)
            if (combo[r]) lifted.xor_row(0, kernel, r);
        for (std::size_t c : lifted.row_support(0)) out[j].push_back(data[c]);
    }
    return out;
}

}  // namespace

DistillationCircuit build_circuit(const UnfoldedLayout& layout, unsigned k, unsigned n_rounds,
                                  const NoiseParams& noise, NcMode nc_mode) {
    if (n_rounds < 2) throw InvalidParameter("build_circuit: n_rounds >= 2");
    if (k + 2 != layout.grid.m)
        throw InvalidParameter("build_circuit: layout distills Z_{m-2}, need k = m - 2");
    if (!layout.finalized)
        throw InvalidParameter("build_circuit: layout needs measure ancillas");

    DistillationCircuit c;
    c.m = layout.grid.m;
    c.k = k;
    c.n_rounds = n_rounds;
    c.nc_mode = nc_mode;
    c.noise = noise;
    c.n_qubits = layout.qubits.size();
    c.target_interface = layout.target_interface_id();
    if (c.target_interface < 0) throw InvalidParameter("build_circuit: layout has no target");

    const auto checks = layout.measured_check_indices();
    c.n_checks = checks.size();

    // measure ancillas were appended in measured-check order
    std::size_t first_ancilla = layout.qubits.size();
    for (const auto& q : layout.qubits)
        if (q.role == QubitRole::MeasureAncilla) {
            first_ancilla = static_cast<std::size_t>(q.id);
            break;
        }
    for (std::size_t i = 0; i < checks.size(); ++i) {
        c.check_ancilla.push_back(static_cast<int>(first_ancilla + i));
        c.check_support.push_back(schedule_support(layout, layout.z_stabilizers[checks[i]]));
    }

    std::vector<int> data_qubits;
    std::vector<int> code_qubits;  // receive the non-Clifford layer
    for (const auto& q : layout.qubits) {
        if (q.role == QubitRole::MeasureAncilla) continue;
        data_qubits.push_back(q.id);
        if (q.role == QubitRole::BulkData) code_qubits.push_back(q.id);
        if (q.role != QubitRole::TargetInterface && q.role != QubitRole::RepetitionChain)
            c.final_measured.push_back(q.id);
    }

    // X noise on a fresh |+> state acts trivially, so plus-state preparation
    // carries no error term of its own.
    const double p = noise.p;
    c.ops.push_back({OpKind::ResetPlus, data_qubits, 0, 0, -1, -1});

    auto extraction_round = [&](int round) {
        for (std::size_t i = 0; i < c.check_support.size(); ++i) {
            const int anc = c.check_ancilla[i];
            c.ops.push_back({OpKind::AncillaReset, {anc}, p, 0, static_cast<int>(i), round});
            for (int q : c.check_support[i])
                c.ops.push_back({OpKind::Cnot, {q, anc}, 0, p, static_cast<int>(i), round});
            c.ops.push_back({OpKind::MeasureZAncilla, {anc}, p, 0, static_cast<int>(i), round});
        }
    };

    const unsigned before = (n_rounds + 1) / 2;
    int round = 0;
    for (unsigned r = 0; r < before; ++r) extraction_round(round++);
    c.ops.push_back({OpKind::NonCliffordLayer, code_qubits, 0, 0, -1, -1});
    for (unsigned r = before; r < n_rounds; ++r) extraction_round(round++);
    c.ops.push_back({OpKind::FinalMeasureX, c.final_measured, 0, 0, -1, -1});

    const auto volumes = volume_supports(layout);
    for (unsigned j = 1; j <= c.m; ++j) c.postselect_observables.push_back(volumes[j]);
    for (int id : volumes[0])
        if (id != c.target_interface) c.logical_observable.push_back(id);
    return c;
}

}  // namespace pf
