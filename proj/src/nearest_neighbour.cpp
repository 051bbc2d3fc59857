#include <algorithm>
#include <map>
#include <set>

#include "parityforge/layout.hpp"

// Nearest-neighbour realization of the boundary stabilizers.
//
// Edge-local coordinates: x is the 1-based position along the edge, d >= 1
// the ancilla ring counted outward from the code row (d = 0). A distance-w
// stabilizer S(w, t) acts on two pairs of code qubits w apart. It is
// realized by a king-move chain of w ancilla-data qubits that starts at one
// pair, climbs to ring s = log2(w), runs across, and descends to the other
// pair, giving w+1 parts of weight <= 4 whose product is the parent.
//
// A pair can be picked up in two ways:
//  - riser: the pair's own ring-1 cells are free, so a weight-3 part
//    {pair, ancilla} starts the chain at ring 1;
//  - pass-through: a layer-1 stabilizer sits on the pair. That stabilizer is
//    then built side-blocking, i.e. with a central part {pair, a1, a2}, and
//    the outer chain starts from {a1, a2, ancilla} at ring 2. The central
//    part is recorded as borrowed: the symmetric difference of the outer
//    chain's own parts plus its borrowed parts equals the parent exactly.
//
// Which pairs collide is decided by the edge assignment (see assign_edges).

namespace pf {

namespace {

struct Cell {
    int d;
    long x;
    bool operator<(const Cell& o) const { return d != o.d ? d < o.d : x < o.x; }
    bool operator==(const Cell& o) const { return d == o.d && x == o.x; }
};

struct EdgeFrame {
    EdgeSide side;
    const UnfoldedLayout* layout;

    long length() const {
        return side == EdgeSide::Top || side == EdgeSide::Bottom
                   ? static_cast<long>(layout->grid.cols())
                   : static_cast<long>(layout->grid.rows());
    }
    int code_qubit(long x) const {
        return [&] {
            const auto rows = layout->grid.rows(), cols = layout->grid.cols();
            switch (side) {
                case EdgeSide::Top: return layout->grid_qubit_id(0, x - 1);
                case EdgeSide::Bottom: return layout->grid_qubit_id(rows - 1, x - 1);
                case EdgeSide::Left: return layout->grid_qubit_id(x - 1, 0);
                case EdgeSide::Right: return layout->grid_qubit_id(x - 1, cols - 1);
                default: throw std::logic_error("bad side");
            }
        }();
    }
    QubitNode make_ancilla(Cell c, int id) const {
        const auto rows = layout->grid.rows(), cols = layout->grid.cols();
        QubitNode q;
        q.id = id;
        q.role = QubitRole::BoundaryAncillaData;
        switch (side) {
            case EdgeSide::Top: q.row = -c.d; q.col = c.x - 1; q.layer = c.d; break;
            case EdgeSide::Bottom: q.row = static_cast<double>(rows - 1 + c.d); q.col = c.x - 1; q.layer = -c.d; break;
            case EdgeSide::Left: q.row = c.x - 1; q.col = -c.d; q.layer = c.d; break;
            case EdgeSide::Right: q.row = c.x - 1; q.col = static_cast<double>(cols - 1 + c.d); q.layer = -c.d; break;
            default: throw std::logic_error("bad side");
        }
        return q;
    }
};

struct PairAccess {
    int a1 = -1, a2 = -1;          // ring-1 ancillas holding the pair
    std::size_t central_part = 0;  // index of the borrowable central part
};

struct EdgeBuilder {
    EdgeFrame frame;
    UnfoldedLayout* layout;
    std::set<Cell> occupied;
    std::map<long, PairAccess> pass_access;  // keyed by pair start position

    bool free_cell(Cell c) const {
        return c.d >= 1 && c.x >= 1 && c.x <= frame.length() && !occupied.count(c);
    }

    int new_ancilla(Cell c) {
        const int id = static_cast<int>(layout->qubits.size());
        layout->qubits.push_back(frame.make_ancilla(c, id));
        occupied.insert(c);
        return id;
    }

    std::size_t add_part(std::vector<int> support, unsigned w, int t) {
        StabilizerSpec s;
        s.kind = StabilizerKind::BoundaryCompositePart;
        s.support = std::move(support);
        s.origin = {w, t};
        s.side = frame.side;
        layout->z_stabilizers.push_back(std::move(s));
        return layout->z_stabilizers.size() - 1;
    }

    // Exact-length king path between two cells through free cells; canonical
    // route climbs to ring `peak` early and descends late.
    bool find_path(Cell from, Cell to, std::size_t intermediates, int peak,
                   std::vector<Cell>& out) const {
        std::vector<Cell> path{from};
        std::set<Cell> used{from};
        const bool ok = extend_path(path, used, to, intermediates + 1, peak);
        if (ok) out.assign(path.begin() + 1, path.end() - 1);
        return ok;
    }

    bool extend_path(std::vector<Cell>& path, std::set<Cell>& used, Cell to,
                     std::size_t steps_left, int peak) const {
        const Cell cur = path.back();
        if (steps_left == 0) return cur == to;
        const long cheb = std::max<long>(std::abs(cur.x - to.x), std::abs(cur.d - to.d));
        if (cheb > static_cast<long>(steps_left)) return false;

        const int dx_toward = to.x > cur.x ? 1 : (to.x < cur.x ? -1 : 0);
        std::vector<int> dx_order = dx_toward != 0 ? std::vector<int>{dx_toward, 0, -dx_toward}
                                                   : std::vector<int>{0, 1, -1};
        std::vector<int> dd_order = cur.d < peak ? std::vector<int>{1, 0, -1}
                                                 : std::vector<int>{0, -1, 1};
        for (int dx : dx_order) {
            for (int dd : dd_order) {
                if (dx == 0 && dd == 0) continue;
                const Cell next{cur.d + dd, cur.x + dx};
                if (next == to) {
                    if (steps_left != 1) continue;
                } else if (!free_cell(next) || used.count(next)) {
                    continue;
                }
                path.push_back(next);
                used.insert(next);
                if (extend_path(path, used, to, steps_left - 1, peak)) return true;
                used.erase(next);
                path.pop_back();
            }
        }
        return false;
    }
};

// One terminal of a distance-w chain: the ancilla cell where the chain
// starts and the part that picks up the pair there.
struct Terminal {
    Cell cell;
    bool pass_through;
    long pair_start;
};

void realize_edge(UnfoldedLayout& layout, EdgeSide side, unsigned exponent) {
    const auto fam = boundary_stabilizers(exponent);

    // parents on this edge, in family (w, t) order
    std::vector<std::pair<std::size_t, BoundaryStabilizer>> stabs;
    for (const auto& b : fam) {
        for (std::size_t i = 0; i < layout.z_stabilizers.size(); ++i) {
            const auto& s = layout.z_stabilizers[i];
            if (s.kind == StabilizerKind::BoundaryLogical && s.side == side &&
                s.origin && s.origin->first == b.w && s.origin->second == b.t)
                stabs.emplace_back(i, b);
        }
    }

    EdgeBuilder builder{EdgeFrame{side, &layout}, &layout, {}, {}};
    const long L = builder.frame.length();

    // pairs that outer stabilizers on this edge must reach
    std::set<long> demanded;
    for (const auto& [idx, b] : stabs) {
        if (b.w < 4) continue;
        demanded.insert(static_cast<long>(b.positions[0]));
        demanded.insert(static_cast<long>(b.positions[2]));
    }

    // layer 1
    unsigned unforced = 0;
    for (const auto& [idx, b] : stabs) {
        if (b.w != 2) continue;
        const long p1 = b.positions[0], p2 = b.positions[1], p3 = b.positions[2], p4 = b.positions[3];
        const int a1 = builder.new_ancilla({1, p2});
        const int a2 = builder.new_ancilla({1, p3});
        const auto code = [&](long x) { return builder.frame.code_qubit(x); };

        CompositeGroup group;
        group.parent = idx;
        const bool forced = demanded.count(p2) > 0;
        const bool side_blocking = forced || (unforced++ % 2 == 0);
        if (side_blocking) {
            group.parts.push_back(builder.add_part({code(p1), a1}, 2, b.t));
            const std::size_t central =
                builder.add_part({code(p2), code(p3), a1, a2}, 2, b.t);
            group.parts.push_back(central);
            group.parts.push_back(builder.add_part({code(p4), a2}, 2, b.t));
            builder.pass_access[p2] = PairAccess{a1, a2, central};
        } else {
            group.parts.push_back(builder.add_part({code(p1), code(p2), a1}, 2, b.t));
            group.parts.push_back(builder.add_part({a1, a2}, 2, b.t));
            group.parts.push_back(builder.add_part({a2, code(p3), code(p4)}, 2, b.t));
        }
        layout.composite_groups.push_back(std::move(group));
    }

    // layers 2 and up
    for (const auto& [idx, b] : stabs) {
        if (b.w < 4) continue;
        const long w = b.w;
        int s = 0;
        while ((1l << (s + 1)) <= w) ++s;
        const long pL = b.positions[0], pR = b.positions[2];

        auto terminal_options = [&](long p, bool left_end) {
            std::vector<Terminal> options;
            const bool pass = builder.pass_access.count(p) > 0;
            const int ring = pass ? 2 : 1;
            const long preferred = left_end ? p + 1 : p;
            const long alternate = left_end ? p : p + 1;
            for (long x : {preferred, alternate})
                if (builder.free_cell({ring, x}))
                    options.push_back(Terminal{{ring, x}, pass, p});
            return options;
        };

        bool done = false;
        for (const Terminal& termL : terminal_options(pL, true)) {
            if (done) break;
            for (const Terminal& termR : terminal_options(pR, false)) {
                if (termL.cell == termR.cell) continue;
                std::vector<Cell> inner;
                if (!builder.find_path(termL.cell, termR.cell, static_cast<std::size_t>(w - 2), s, inner))
                    continue;

                CompositeGroup group;
                group.parent = idx;
                auto attach = [&](const Terminal& term, int anc) {
                    if (term.pass_through) {
                        const auto& acc = builder.pass_access.at(term.pair_start);
                        group.borrowed.push_back(acc.central_part);
                        return builder.add_part({acc.a1, acc.a2, anc}, b.w, b.t);
                    }
                    return builder.add_part({builder.frame.code_qubit(term.pair_start),
                                             builder.frame.code_qubit(term.pair_start + 1), anc},
                                            b.w, b.t);
                };

                const int ancL = builder.new_ancilla(termL.cell);
                group.parts.push_back(attach(termL, ancL));
                int prev = ancL;
                for (const Cell& c : inner) {
                    const int anc = builder.new_ancilla(c);
                    group.parts.push_back(builder.add_part({prev, anc}, b.w, b.t));
                    prev = anc;
                }
                const int ancR = builder.new_ancilla(termR.cell);
                group.parts.push_back(builder.add_part({prev, ancR}, b.w, b.t));
                group.parts.push_back(attach(termR, ancR));
                layout.composite_groups.push_back(std::move(group));
                done = true;
                break;
            }
        }
        if (!done)
            throw ConstructionFailure("realize_nearest_neighbour: no blocking assignment exposes the pairs of S(" +
                                      std::to_string(b.w) + "," + std::to_string(b.t) + ") on edge " +
                                      std::to_string(static_cast<int>(side)));
    }
}

void verify_group_products(const UnfoldedLayout& layout) {
    for (const auto& g : layout.composite_groups) {
        std::set<int> acc;
        auto flip = [&](const StabilizerSpec& s) {
            for (int q : s.support) {
                auto it = acc.find(q);
                if (it == acc.end()) acc.insert(q);
                else acc.erase(it);
            }
        };
        for (std::size_t p : g.parts) flip(layout.z_stabilizers[p]);
        for (std::size_t p : g.borrowed) flip(layout.z_stabilizers[p]);
        std::set<int> parent(layout.z_stabilizers[g.parent].support.begin(),
                             layout.z_stabilizers[g.parent].support.end());
        if (acc != parent)
            throw InternalInconsistency("composite group does not multiply to its parent");
    }
}

}  // namespace

void realize_nearest_neighbour(UnfoldedLayout& layout) {
    if (!layout.boundaries_distributed)
        throw std::logic_error("realize_nearest_neighbour: distribute boundaries first");
    if (layout.nearest_neighbour_realized) return;

    realize_edge(layout, EdgeSide::Top, layout.grid.l);
    realize_edge(layout, EdgeSide::Bottom, layout.grid.l);
    realize_edge(layout, EdgeSide::Left, layout.grid.h);
    realize_edge(layout, EdgeSide::Right, layout.grid.h);
    verify_group_products(layout);
    layout.nearest_neighbour_realized = true;
}

}  // namespace pf
