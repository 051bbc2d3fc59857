#include "parityforge/layout.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

namespace pf {

unsigned ParityLabel::cardinality() const { return static_cast<unsigned>(std::popcount(mask)); }

std::vector<unsigned> ParityLabel::indices() const {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < 32; ++i)
        if ((mask >> i) & 1u) out.push_back(i);
    return out;
}

ParityLabel ParityLabel::from_indices(const std::vector<unsigned>& idx) {
    ParityLabel l;
    for (unsigned i : idx) l.mask |= 1u << i;
    return l;
}

std::string role_name(QubitRole r) {
    switch (r) {
        case QubitRole::BulkData: return "bulk-data";
        case QubitRole::BoundaryAncillaData: return "boundary-ancilla-data";
        case QubitRole::MeasureAncilla: return "measure-ancilla";
        case QubitRole::TargetInterface: return "target-interface";
        case QubitRole::RepetitionChain: return "repetition-chain";
    }
    throw std::logic_error("bad role");
}

QubitRole parse_role(const std::string& s) {
    if (s == "bulk-data") return QubitRole::BulkData;
    if (s == "boundary-ancilla-data") return QubitRole::BoundaryAncillaData;
    if (s == "measure-ancilla") return QubitRole::MeasureAncilla;
    if (s == "target-interface") return QubitRole::TargetInterface;
    if (s == "repetition-chain") return QubitRole::RepetitionChain;
    throw std::invalid_argument("unknown qubit role: " + s);
}

std::string kind_name(StabilizerKind k) {
    switch (k) {
        case StabilizerKind::Bulk: return "bulk";
        case StabilizerKind::BoundaryLogical: return "boundary-logical";
        case StabilizerKind::BoundaryCompositePart: return "boundary-composite-part";
        case StabilizerKind::TargetChain: return "target-chain";
    }
    throw std::logic_error("bad kind");
}

StabilizerKind parse_kind(const std::string& s) {
    if (s == "bulk") return StabilizerKind::Bulk;
    if (s == "boundary-logical") return StabilizerKind::BoundaryLogical;
    if (s == "boundary-composite-part") return StabilizerKind::BoundaryCompositePart;
    if (s == "target-chain") return StabilizerKind::TargetChain;
    throw std::invalid_argument("unknown stabilizer kind: " + s);
}

UnfoldedLayout build_bulk(unsigned m) {
    if (m < 4) throw InvalidParameter("build_bulk: m >= 4 (smallest non-Clifford level)");
    UnfoldedLayout layout;
    layout.grid.m = m;
    layout.grid.h = m / 2;
    layout.grid.l = m - layout.grid.h;

    const std::size_t rows = layout.grid.rows(), cols = layout.grid.cols();
    layout.qubits.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            QubitNode q;
            q.id = layout.grid_qubit_id(r, c);
            q.row = static_cast<double>(r);
            q.col = static_cast<double>(c);
            q.layer = 0;
            q.role = QubitRole::BulkData;
            layout.qubits.push_back(q);
        }
    }
    for (std::size_t r = 0; r + 1 < rows; ++r) {
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            StabilizerSpec s;
            s.kind = StabilizerKind::Bulk;
            s.support = {layout.grid_qubit_id(r, c), layout.grid_qubit_id(r, c + 1),
                         layout.grid_qubit_id(r + 1, c), layout.grid_qubit_id(r + 1, c + 1)};
            layout.z_stabilizers.push_back(std::move(s));
        }
    }
    return layout;
}

std::vector<BoundaryStabilizer> boundary_stabilizers(unsigned side_exponent) {
    std::vector<BoundaryStabilizer> out;
    if (side_exponent < 2) return out;
    const long L = 1l << side_exponent;
    for (unsigned s = 1; s + 1 <= side_exponent; ++s) {
        const long w = 1l << s;
        for (long t = -L / (2 * w) + 1; t <= L / (2 * w) - 1; ++t) {
            BoundaryStabilizer b;
            b.w = static_cast<unsigned>(w);
            b.t = static_cast<int>(t);
            const long left = L / 2 - w / 2 + w * t;
            const long right = L / 2 + w / 2 + w * t;
            b.positions = {static_cast<unsigned>(left), static_cast<unsigned>(left + 1),
                           static_cast<unsigned>(right), static_cast<unsigned>(right + 1)};
            out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end(), [](const BoundaryStabilizer& a, const BoundaryStabilizer& b) {
        return a.w != b.w ? a.w < b.w : a.t < b.t;
    });
    return out;
}

namespace {

// Centre offset and access-pair offsets of S(w, t), in units of qubit index
// relative to the edge midpoint.
long centre_offset(const BoundaryStabilizer& b) { return static_cast<long>(b.w) * b.t; }

// Edge assignment for one side type. A distance-w stabilizer climbs to its
// access pairs through the rings below it, so anything centred exactly on an
// access point must sit on the opposite edge. Two-colour the resulting
// constraint graph; unconstrained stabilizers alternate by shift parameter
// (even t to the first side).
std::vector<bool> assign_edges(const std::vector<BoundaryStabilizer>& fam) {
    const std::size_t n = fam.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (fam[i].w < 4) continue;
        const long c = centre_offset(fam[i]);
        const long half = fam[i].w / 2;
        for (std::size_t j = 0; j < n; ++j) {
            if (fam[j].w < 4 || fam[j].w >= fam[i].w) continue;
            const long cj = centre_offset(fam[j]);
            if (cj == c - half || cj == c + half) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }

    // anchor order: largest w first, then central shifts
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fam[a].w != fam[b].w) return fam[a].w > fam[b].w;
        if (std::abs(fam[a].t) != std::abs(fam[b].t)) return std::abs(fam[a].t) < std::abs(fam[b].t);
        return fam[a].t > fam[b].t;
    });

    std::vector<int> colour(n, -1);
    for (std::size_t seed : order) {
        if (colour[seed] != -1) continue;
        colour[seed] = (fam[seed].t % 2 == 0) ? 0 : 1;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adj[u]) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if (colour[v] == colour[u]) {
                    throw ConstructionFailure("assign_edges: access constraints are not two-colourable");
                }
            }
        }
    }
    std::vector<bool> first_side(n);
    for (std::size_t i = 0; i < n; ++i) first_side[i] = colour[i] == 0;
    return first_side;
}

int edge_code_qubit(const UnfoldedLayout& layout, EdgeSide side, unsigned pos /*1-based*/) {
    const std::size_t rows = layout.grid.rows(), cols = layout.grid.cols();
    switch (side) {
        case EdgeSide::Top: return layout.grid_qubit_id(0, pos - 1);
        case EdgeSide::Bottom: return layout.grid_qubit_id(rows - 1, pos - 1);
        case EdgeSide::Left: return layout.grid_qubit_id(pos - 1, 0);
        case EdgeSide::Right: return layout.grid_qubit_id(pos - 1, cols - 1);
        default: throw std::logic_error("edge_code_qubit: bad side");
    }
}

}  // namespace

void distribute_boundaries(UnfoldedLayout& layout) {
    if (layout.boundaries_distributed) return;
    for (const bool horizontal : {true, false}) {
        const unsigned exponent = horizontal ? layout.grid.l : layout.grid.h;
        const auto fam = boundary_stabilizers(exponent);
        const auto first = assign_edges(fam);
        for (std::size_t i = 0; i < fam.size(); ++i) {
            StabilizerSpec s;
            s.kind = StabilizerKind::BoundaryLogical;
            s.origin = {fam[i].w, fam[i].t};
            s.side = horizontal ? (first[i] ? EdgeSide::Top : EdgeSide::Bottom)
                                : (first[i] ? EdgeSide::Right : EdgeSide::Left);
            for (unsigned pos : fam[i].positions)
                s.support.push_back(edge_code_qubit(layout, s.side, pos));
            layout.z_stabilizers.push_back(std::move(s));
        }
    }
    layout.boundaries_distributed = true;
}

void assign_parity_labels(UnfoldedLayout& layout) {
    const unsigned m = layout.grid.m, h = layout.grid.h, l = layout.grid.l;
    const std::size_t rows = layout.grid.rows(), cols = layout.grid.cols();

    std::vector<std::optional<ParityLabel>> labels(rows * cols);
    auto at = [&](std::size_t r, std::size_t c) -> std::optional<ParityLabel>& {
        return labels[r * cols + c];
    };

    // Seed one edge line from its canonical stabilizer family: assign the
    // next base label to the free position nearest the already-known end,
    // then force fourth labels until stuck.
    auto seed_line = [&](const std::vector<std::size_t>& line_cells, unsigned exponent,
                         unsigned first_base, unsigned n_bases, bool ascending) {
        const auto fam = boundary_stabilizers(exponent);
        unsigned next_base = first_base;
        while (true) {
            bool progress = true;
            while (progress) {
                progress = false;
                for (const auto& b : fam) {
                    std::size_t unknown = 0, idx = 0;
                    ParityLabel acc;
                    for (unsigned pos : b.positions) {
                        const std::size_t cell = line_cells[pos - 1];
                        if (labels[cell]) acc = acc ^ *labels[cell];
                        else { ++unknown; idx = cell; }
                    }
                    if (unknown == 1) {
                        if (acc.cardinality() % 2 == 0)
                            throw InternalInconsistency("assign_parity_labels: even forced label");
                        labels[idx] = acc;
                        progress = true;
                    }
                }
            }
            // stuck: place the next base label
            std::size_t pick = line_cells.size();
            if (ascending) {
                for (std::size_t i = 0; i < line_cells.size(); ++i)
                    if (!labels[line_cells[i]]) { pick = i; break; }
            } else {
                for (std::size_t i = line_cells.size(); i-- > 0;)
                    if (!labels[line_cells[i]]) { pick = i; break; }
            }
            if (pick == line_cells.size()) break;  // line complete
            if (next_base >= first_base + n_bases)
                throw InternalInconsistency("assign_parity_labels: base pool exhausted");
            labels[line_cells[pick]] = ParityLabel{1u << next_base};
            ++next_base;
        }
        if (next_base != first_base + n_bases)
            throw InternalInconsistency("assign_parity_labels: unused base labels");
    };

    // Bottom row: bases 0..l assigned left to right.
    std::vector<std::size_t> bottom(cols);
    for (std::size_t c = 0; c < cols; ++c) bottom[c] = (rows - 1) * cols + c;
    seed_line(bottom, l, 0, l + 1, /*ascending=*/true);

    // Rightmost column: bases l+1..m assigned from the shared corner upwards.
    std::vector<std::size_t> rightcol(rows);
    for (std::size_t r = 0; r < rows; ++r) rightcol[r] = r * cols + (cols - 1);
    seed_line(rightcol, h, l + 1, m - l, /*ascending=*/false);

    // Bulk: each plaquette forces its fourth corner.
    for (std::size_t r = rows - 1; r-- > 0;) {
        for (std::size_t c = cols - 1; c-- > 0;) {
            const ParityLabel v = *at(r, c + 1) ^ *at(r + 1, c) ^ *at(r + 1, c + 1);
            if (v.cardinality() % 2 == 0)
                throw InternalInconsistency("assign_parity_labels: even propagated label");
            at(r, c) = v;
        }
    }

    std::set<uint32_t> seen;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        if (!labels[i]) throw InternalInconsistency("assign_parity_labels: incomplete");
        if (!seen.insert(labels[i]->mask).second)
            throw InternalInconsistency("assign_parity_labels: duplicate label");
        layout.qubits[i].label = labels[i];
    }
    layout.labels_assigned = true;
}

void attach_target(UnfoldedLayout& layout, TargetMode mode, unsigned repetition_distance) {
    if (!layout.labels_assigned)
        throw std::logic_error("attach_target: labels must be assigned first");
    if (mode == TargetMode::Repetition && repetition_distance < 1)
        throw InvalidParameter("attach_target: repetition distance >= 1");

    int interface_id = -1;
    for (auto& q : layout.qubits) {
        if (q.label && q.label->mask == 1u) {
            q.role = QubitRole::TargetInterface;
            interface_id = q.id;
            break;
        }
    }
    if (interface_id < 0) throw InternalInconsistency("attach_target: no label-{0} qubit");

    layout.target_mode = mode;
    layout.repetition_distance = mode == TargetMode::Repetition ? repetition_distance : 1;
    if (mode == TargetMode::Repetition) {
        const QubitNode& iface = layout.qubit(interface_id);
        int prev = interface_id;
        for (unsigned j = 1; j < repetition_distance; ++j) {
            QubitNode q;
            q.id = static_cast<int>(layout.qubits.size());
            q.row = iface.row + j;
            q.col = iface.col;
            q.layer = -static_cast<int>(j);
            q.role = QubitRole::RepetitionChain;
            layout.qubits.push_back(q);

            StabilizerSpec s;
            s.kind = StabilizerKind::TargetChain;
            s.support = {prev, q.id};
            layout.z_stabilizers.push_back(std::move(s));
            prev = q.id;
        }
    }
    layout.target_attached = true;
}

std::map<unsigned, std::vector<int>> logical_x_supports(const UnfoldedLayout& layout) {
    std::map<unsigned, std::vector<int>> out;
    for (unsigned k = 0; k <= layout.grid.m; ++k) out[k] = {};
    for (const auto& q : layout.qubits)
        if (q.label)
            for (unsigned k : q.label->indices()) out[k].push_back(q.id);
    return out;
}

int UnfoldedLayout::target_interface_id() const {
    for (const auto& q : qubits)
        if (q.role == QubitRole::TargetInterface) return q.id;
    return -1;
}

std::vector<int> UnfoldedLayout::labelled_qubit_ids() const {
    std::vector<int> out;
    for (const auto& q : qubits)
        if (q.label) out.push_back(q.id);
    return out;
}

std::vector<int> UnfoldedLayout::data_qubit_ids() const {
    std::vector<int> out;
    for (const auto& q : qubits)
        if (q.role != QubitRole::MeasureAncilla) out.push_back(q.id);
    return out;
}

std::vector<std::size_t> UnfoldedLayout::measured_check_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < z_stabilizers.size(); ++i) {
        const auto kind = z_stabilizers[i].kind;
        if (kind == StabilizerKind::Bulk || kind == StabilizerKind::TargetChain)
            out.push_back(i);
        else if (nearest_neighbour_realized ? kind == StabilizerKind::BoundaryCompositePart
                                            : kind == StabilizerKind::BoundaryLogical)
            out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> UnfoldedLayout::parent_level_check_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < z_stabilizers.size(); ++i) {
        const auto kind = z_stabilizers[i].kind;
        if (kind == StabilizerKind::Bulk || kind == StabilizerKind::BoundaryLogical ||
            kind == StabilizerKind::TargetChain)
            out.push_back(i);
    }
    return out;
}

BitMatrix UnfoldedLayout::check_matrix(const std::vector<std::size_t>& checks,
                                       const std::vector<int>& qubit_ids) const {
    std::map<int, std::size_t> column;
    for (std::size_t i = 0; i < qubit_ids.size(); ++i) column[qubit_ids[i]] = i;
    BitMatrix mat(checks.size(), qubit_ids.size());
    for (std::size_t r = 0; r < checks.size(); ++r) {
        for (int id : z_stabilizers[checks[r]].support) {
            auto it = column.find(id);
            if (it != column.end()) mat.set(r, it->second, true);
        }
    }
    return mat;
}

void finalize_measure_ancillas(UnfoldedLayout& layout) {
    if (layout.finalized) return;
    for (std::size_t idx : layout.measured_check_indices()) {
        const auto& s = layout.z_stabilizers[idx];
        double rmin = 1e30, rmax = -1e30, cmin = 1e30, cmax = -1e30;
        int layer = 0;
        for (int id : s.support) {
            const auto& q = layout.qubit(id);
            rmin = std::min(rmin, q.row);
            rmax = std::max(rmax, q.row);
            cmin = std::min(cmin, q.col);
            cmax = std::max(cmax, q.col);
            if (std::abs(q.layer) > std::abs(layer)) layer = q.layer;
        }
        QubitNode anc;
        anc.id = static_cast<int>(layout.qubits.size());
        anc.row = (rmin + rmax) / 2;
        anc.col = (cmin + cmax) / 2;
        anc.layer = layer;
        anc.role = QubitRole::MeasureAncilla;
        layout.qubits.push_back(anc);
    }
    layout.finalized = true;
}

UnfoldedLayout make_layout(unsigned m, const LayoutOptions& options) {
    UnfoldedLayout layout = build_bulk(m);
    distribute_boundaries(layout);
    if (options.nearest_neighbour) realize_nearest_neighbour(layout);
    assign_parity_labels(layout);
    unsigned d = options.repetition_distance;
    if (options.target == TargetMode::Repetition && d == 0) d = 1u << (m - 1);
    attach_target(layout, options.target, d);
    finalize_measure_ancillas(layout);
    return layout;
}

}  // namespace pf
