#include "parityforge/layout_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pf {

using json = nlohmann::ordered_json;

namespace {

std::string target_mode_string(const UnfoldedLayout& layout) {
    if (layout.target_mode == TargetMode::Ideal) return "ideal";
    return "repetition:" + std::to_string(layout.repetition_distance);
}

}  // namespace

std::string export_layout_json(const UnfoldedLayout& layout) {
    json root;
    root["m"] = layout.grid.m;
    root["grid"] = {{"h", layout.grid.h}, {"l", layout.grid.l}};

    json qubits = json::array();
    for (const auto& q : layout.qubits) {
        json jq;
        jq["id"] = q.id;
        jq["row"] = q.row;
        jq["col"] = q.col;
        jq["layer"] = q.layer;
        jq["role"] = role_name(q.role);
        if (q.label) jq["label"] = q.label->indices();
        qubits.push_back(std::move(jq));
    }
    root["qubits"] = std::move(qubits);

    json stabs = json::array();
    for (const auto& s : layout.z_stabilizers) {
        json js;
        js["support"] = s.support;
        js["kind"] = kind_name(s.kind);
        if (s.origin) {
            js["w"] = s.origin->first;
            js["t"] = s.origin->second;
        }
        stabs.push_back(std::move(js));
    }
    root["stabilizers"] = std::move(stabs);
    root["target_mode"] = target_mode_string(layout);
    return root.dump(2);
}

namespace {

EdgeSide deduce_parent_side(const UnfoldedLayout& layout, const StabilizerSpec& s) {
    const auto& q0 = layout.qubit(s.support.front());
    bool same_row = true, same_col = true;
    for (int id : s.support) {
        const auto& q = layout.qubit(id);
        same_row &= q.row == q0.row;
        same_col &= q.col == q0.col;
    }
    if (same_row) return q0.row == 0 ? EdgeSide::Top : EdgeSide::Bottom;
    if (same_col) return q0.col == 0 ? EdgeSide::Left : EdgeSide::Right;
    throw InternalInconsistency("boundary stabilizer is neither row nor column aligned");
}

EdgeSide deduce_part_side(const UnfoldedLayout& layout, const StabilizerSpec& s) {
    for (int id : s.support) {
        const auto& q = layout.qubit(id);
        if (q.role != QubitRole::BoundaryAncillaData) continue;
        if (q.row < 0) return EdgeSide::Top;
        if (q.row >= static_cast<double>(layout.grid.rows())) return EdgeSide::Bottom;
        if (q.col < 0) return EdgeSide::Left;
        return EdgeSide::Right;
    }
    throw InternalInconsistency("composite part without ancilla-data member");
}

// Rebuild the composite grouping: parts of one parent are contiguous in
// serialization order; borrowed central parts are recovered from the
// difference between the part product and the parent support.
void rebuild_groups(UnfoldedLayout& layout) {
    layout.composite_groups.clear();
    std::map<std::tuple<int, unsigned, int>, std::size_t> parent_index;
    for (std::size_t i = 0; i < layout.z_stabilizers.size(); ++i) {
        const auto& s = layout.z_stabilizers[i];
        if (s.kind == StabilizerKind::BoundaryLogical && s.origin)
            parent_index[{static_cast<int>(s.side), s.origin->first, s.origin->second}] = i;
    }

    std::map<std::tuple<int, unsigned, int>, CompositeGroup> groups;
    std::vector<std::tuple<int, unsigned, int>> order;
    for (std::size_t i = 0; i < layout.z_stabilizers.size(); ++i) {
        const auto& s = layout.z_stabilizers[i];
        if (s.kind != StabilizerKind::BoundaryCompositePart) continue;
        const auto key = std::make_tuple(static_cast<int>(s.side), s.origin->first, s.origin->second);
        if (!groups.count(key)) {
            groups[key].parent = parent_index.at(key);
            order.push_back(key);
        }
        groups[key].parts.push_back(i);
    }

    for (const auto& key : order) {
        auto& g = groups[key];
        std::set<int> acc;
        auto flip = [&](const StabilizerSpec& s) {
            for (int q : s.support) {
                if (!acc.erase(q)) acc.insert(q);
            }
        };
        for (std::size_t p : g.parts) flip(layout.z_stabilizers[p]);
        for (int q : layout.z_stabilizers[g.parent].support)
            if (!acc.erase(q)) acc.insert(q);
        // residue is a union of side-blocked central parts on the same edge
        while (!acc.empty()) {
            bool matched = false;
            for (std::size_t i = 0; i < layout.z_stabilizers.size() && !matched; ++i) {
                const auto& s = layout.z_stabilizers[i];
                if (s.kind != StabilizerKind::BoundaryCompositePart || s.support.size() != 4) continue;
                if (s.side != layout.z_stabilizers[g.parent].side) continue;
                bool subset = true;
                for (int q : s.support) subset &= acc.count(q) > 0;
                if (!subset) continue;
                g.borrowed.push_back(i);
                for (int q : s.support) acc.erase(q);
                matched = true;
            }
            if (!matched)
                throw InternalInconsistency("import: cannot resolve borrowed parts");
        }
        layout.composite_groups.push_back(g);
    }
}

}  // namespace

UnfoldedLayout import_layout_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("import_layout_json: ") + e.what());
    }

    UnfoldedLayout layout;
    layout.grid.m = root.at("m").get<unsigned>();
    layout.grid.h = root.at("grid").at("h").get<unsigned>();
    layout.grid.l = root.at("grid").at("l").get<unsigned>();

    for (const auto& jq : root.at("qubits")) {
        QubitNode q;
        q.id = jq.at("id").get<int>();
        q.row = jq.at("row").get<double>();
        q.col = jq.at("col").get<double>();
        q.layer = jq.at("layer").get<int>();
        q.role = parse_role(jq.at("role").get<std::string>());
        if (jq.contains("label"))
            q.label = ParityLabel::from_indices(jq.at("label").get<std::vector<unsigned>>());
        layout.qubits.push_back(q);
    }

    for (const auto& js : root.at("stabilizers")) {
        StabilizerSpec s;
        s.support = js.at("support").get<std::vector<int>>();
        s.kind = parse_kind(js.at("kind").get<std::string>());
        if (js.contains("w")) s.origin = {js.at("w").get<unsigned>(), js.at("t").get<int>()};
        layout.z_stabilizers.push_back(std::move(s));
    }
    for (auto& s : layout.z_stabilizers) {
        if (s.kind == StabilizerKind::BoundaryLogical) s.side = deduce_parent_side(layout, s);
        else if (s.kind == StabilizerKind::BoundaryCompositePart) s.side = deduce_part_side(layout, s);
    }

    const std::string mode = root.at("target_mode").get<std::string>();
    if (mode == "ideal") {
        layout.target_mode = TargetMode::Ideal;
        layout.repetition_distance = 1;
    } else if (mode.rfind("repetition:", 0) == 0) {
        layout.target_mode = TargetMode::Repetition;
        layout.repetition_distance = static_cast<unsigned>(std::stoul(mode.substr(11)));
    } else {
        throw InvalidParameter("import_layout_json: bad target_mode " + mode);
    }

    for (const auto& s : layout.z_stabilizers) {
        layout.boundaries_distributed |= s.kind == StabilizerKind::BoundaryLogical;
        layout.nearest_neighbour_realized |= s.kind == StabilizerKind::BoundaryCompositePart;
    }
    for (const auto& q : layout.qubits) {
        layout.labels_assigned |= q.label.has_value();
        layout.target_attached |= q.role == QubitRole::TargetInterface;
        layout.finalized |= q.role == QubitRole::MeasureAncilla;
    }
    rebuild_groups(layout);
    return layout;
}

bool layouts_equal(const UnfoldedLayout& a, const UnfoldedLayout& b) {
    if (!(a.grid.m == b.grid.m && a.grid.h == b.grid.h && a.grid.l == b.grid.l)) return false;
    if (a.target_mode != b.target_mode || a.repetition_distance != b.repetition_distance) return false;
    if (a.qubits.size() != b.qubits.size() || a.z_stabilizers.size() != b.z_stabilizers.size()) return false;
    for (std::size_t i = 0; i < a.qubits.size(); ++i)
        if (!(a.qubits[i] == b.qubits[i])) return false;
    for (std::size_t i = 0; i < a.z_stabilizers.size(); ++i)
        if (!(a.z_stabilizers[i] == b.z_stabilizers[i])) return false;
    if (a.composite_groups.size() != b.composite_groups.size()) return false;
    for (std::size_t i = 0; i < a.composite_groups.size(); ++i) {
        const auto& ga = a.composite_groups[i];
        const auto& gb = b.composite_groups[i];
        auto sorted = [](std::vector<std::size_t> v) { std::sort(v.begin(), v.end()); return v; };
        if (ga.parent != gb.parent || sorted(ga.parts) != sorted(gb.parts) ||
            sorted(ga.borrowed) != sorted(gb.borrowed))
            return false;
    }
    return true;
}

std::string export_layout_svg(const UnfoldedLayout& layout) {
    double rmin = 0, rmax = 0, cmin = 0, cmax = 0;
    for (const auto& q : layout.qubits) {
        rmin = std::min(rmin, q.row);
        rmax = std::max(rmax, q.row);
        cmin = std::min(cmin, q.col);
        cmax = std::max(cmax, q.col);
    }
    const double unit = 44.0, margin = 40.0;
    auto X = [&](double col) { return margin + (col - cmin) * unit; };
    auto Y = [&](double row) { return margin + (row - rmin) * unit; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << static_cast<int>(2 * margin + (cmax - cmin) * unit) << "\" height=\""
        << static_cast<int>(2 * margin + (rmax - rmin) * unit) << "\">\n";

    auto stab_rect = [&](const StabilizerSpec& s, const std::string& cls, const std::string& fill) {
        double r0 = 1e30, r1 = -1e30, c0 = 1e30, c1 = -1e30;
        for (int id : s.support) {
            const auto& q = layout.qubit(id);
            r0 = std::min(r0, q.row);
            r1 = std::max(r1, q.row);
            c0 = std::min(c0, q.col);
            c1 = std::max(c1, q.col);
        }
        svg << "  <rect class=\"" << cls << "\" x=\"" << X(c0) << "\" y=\"" << Y(r0)
            << "\" width=\"" << std::max(8.0, (c1 - c0) * unit) << "\" height=\""
            << std::max(8.0, (r1 - r0) * unit) << "\" fill=\"" << fill
            << "\" fill-opacity=\"0.35\" stroke=\"#666\"/>\n";
    };

    for (const auto& s : layout.z_stabilizers) {
        switch (s.kind) {
            case StabilizerKind::Bulk: stab_rect(s, "bulk-plaquette", "#9ecae1"); break;
            case StabilizerKind::BoundaryCompositePart: stab_rect(s, "boundary-part", "#fdd0a2"); break;
            case StabilizerKind::TargetChain: stab_rect(s, "chain-check", "#c7e9c0"); break;
            case StabilizerKind::BoundaryLogical:
                if (!layout.nearest_neighbour_realized) stab_rect(s, "boundary-logical", "#fcbba1");
                break;
        }
    }

    for (const auto& q : layout.qubits) {
        if (q.role == QubitRole::MeasureAncilla) {
            svg << "  <circle class=\"measure-ancilla\" cx=\"" << X(q.col) << "\" cy=\"" << Y(q.row)
                << "\" r=\"4\" fill=\"#555\"/>\n";
            continue;
        }
        const char* fill = q.role == QubitRole::TargetInterface   ? "#ffd92f"
                           : q.role == QubitRole::RepetitionChain ? "#a1d99b"
                           : q.role == QubitRole::BoundaryAncillaData ? "#bcbddc"
                                                                      : "#fc9272";
        svg << "  <circle class=\"" << role_name(q.role) << "\" cx=\"" << X(q.col) << "\" cy=\""
            << Y(q.row) << "\" r=\"14\" fill=\"" << fill << "\" stroke=\"#333\"/>\n";
        if (q.label) {
            svg << "  <text x=\"" << X(q.col) << "\" y=\"" << Y(q.row) + 4
                << "\" font-size=\"9\" text-anchor=\"middle\">";
            for (unsigned idx : q.label->indices()) svg << idx;
            svg << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace pf
