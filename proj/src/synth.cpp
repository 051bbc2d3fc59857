#include "parityforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

#include "parityforge/cost.hpp"
#include "parityforge/rng.hpp"

namespace pf {

Unitary2 Unitary2::operator*(const Unitary2& r) const {
    Unitary2 out;
    out.u[0] = u[0] * r.u[0] + u[1] * r.u[2];
    out.u[1] = u[0] * r.u[1] + u[1] * r.u[3];
    out.u[2] = u[2] * r.u[0] + u[3] * r.u[2];
    out.u[3] = u[2] * r.u[1] + u[3] * r.u[3];
    return out;
}

Unitary2 Unitary2::dagger() const {
    Unitary2 out;
    out.u[0] = std::conj(u[0]);
    out.u[1] = std::conj(u[2]);
    out.u[2] = std::conj(u[1]);
    out.u[3] = std::conj(u[3]);
    return out;
}

Unitary2 Unitary2::canonical() const {
    for (const cplx& e : u) {
        const double mag = std::abs(e);
        if (mag > 1e-12) {
            const cplx phase = std::conj(e) / mag;
            Unitary2 out;
            for (int i = 0; i < 4; ++i) out.u[i] = u[i] * phase;
            return out;
        }
    }
    return *this;
}

bool Unitary2::is_unitary(double tol) const {
    const Unitary2 p = *this * dagger();
    return std::abs(p.u[0] - 1.0) < tol && std::abs(p.u[3] - 1.0) < tol &&
           std::abs(p.u[1]) < tol && std::abs(p.u[2]) < tol;
}

Unitary2 Unitary2::rz(double theta) {
    Unitary2 out;
    out.u[0] = std::polar(1.0, -theta / 2);
    out.u[3] = std::polar(1.0, theta / 2);
    return out;
}

Unitary2 Unitary2::z_rotation(unsigned k) {
    Unitary2 out;
    out.u[3] = std::polar(1.0, M_PI / std::pow(2.0, static_cast<double>(k)));
    return out;
}

Unitary2 Unitary2::haar(uint64_t key) {
    CounterRng rng(CounterRng::derive(key, 0x68616172ull));
    // Gaussian quaternion -> uniform SU(2), times a random global phase
    double g[4];
    for (int i = 0; i < 4; i += 2) {
        const double u1 = std::max(rng.next_double(), 1e-300);
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        g[i] = r * std::cos(2 * M_PI * u2);
        g[i + 1] = r * std::sin(2 * M_PI * u2);
    }
    const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
    const double a = g[0] / norm, b = g[1] / norm, c = g[2] / norm, d = g[3] / norm;
    Unitary2 out;
    out.u[0] = cplx(a, b);
    out.u[1] = cplx(c, d);
    out.u[2] = cplx(-c, d);
    out.u[3] = cplx(a, -b);
    return out;
}

double trace_distance(const Unitary2& u, const Unitary2& v) {
    const Unitary2 p = v * u.dagger();
    const cplx tr = p.u[0] + p.u[3];
    const double val = 1.0 - std::norm(tr) / 4.0;
    return std::sqrt(std::max(0.0, val));
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Unitary2 gate_h() {
    Unitary2 g;
    g.u = {cplx(kInvSqrt2), cplx(kInvSqrt2), cplx(kInvSqrt2), cplx(-kInvSqrt2)};
    return g;
}
Unitary2 gate_x() {
    Unitary2 g;
    g.u = {cplx(0), cplx(1), cplx(1), cplx(0)};
    return g;
}
Unitary2 gate_y() {
    Unitary2 g;
    g.u = {cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)};
    return g;
}
Unitary2 gate_z() {
    Unitary2 g;
    g.u = {cplx(1), cplx(0), cplx(0), cplx(-1)};
    return g;
}

}  // namespace

GateSet GateSet::make(unsigned level) {
    if (level < 2) throw InvalidParameter("GateSet: level >= 2");
    GateSet set;
    set.level = level;
    set.gates.push_back({"H", gate_h(), 0});
    set.gates.push_back({"S", Unitary2::z_rotation(1), 0});
    set.gates.push_back({"X", gate_x(), 0});
    set.gates.push_back({"Y", gate_y(), 0});
    set.gates.push_back({"Z", gate_z(), 0});
    set.gates.push_back({"T", Unitary2::z_rotation(2), 2});
    if (level >= 3) set.gates.push_back({"sqrtT", Unitary2::z_rotation(3), 5});
    // beyond sqrt(T): normalize on the T distillation cost at the reference
    // operating point, rounded to the half-unit lattice
    if (level >= 4) {
        CostParams ref;
        const double base = cost_native(2, ref).value;
        for (unsigned j = 4; j <= level; ++j) {
            const double ratio = cost_native(j, ref).value / base;
            const int halves = static_cast<int>(std::lround(2.0 * ratio));
            set.gates.push_back({"Z" + std::to_string(j), Unitary2::z_rotation(j), halves});
        }
    }
    return set;
}

GateSet GateSet::parse(const std::string& name) {
    if (name.size() < 2 || name[0] != 'C')
        throw InvalidParameter("gate set name must look like C2, C3, ...");
    return make(static_cast<unsigned>(std::stoul(name.substr(1))));
}

std::vector<int> GateSet::achievable_costs(int limit) const {
    std::vector<bool> reach(static_cast<std::size_t>(limit) + 1, false);
    reach[0] = true;
    for (int c = 0; c <= limit; ++c) {
        if (!reach[static_cast<std::size_t>(c)]) continue;
        for (const Gate& g : gates)
            if (g.cost_halves > 0 && c + g.cost_halves <= limit)
                reach[static_cast<std::size_t>(c + g.cost_halves)] = true;
    }
    std::vector<int> out;
    for (int c = 0; c <= limit; ++c)
        if (reach[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
}

namespace {

// Quantized key of a canonical matrix for the dedup table; candidates in the
// same bucket are confirmed with the 1e-9 tolerance.
struct MatrixKey {
    std::array<int64_t, 8> q;
    bool operator==(const MatrixKey& o) const { return q == o.q; }
};

struct MatrixKeyHash {
    std::size_t operator()(const MatrixKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (int64_t v : k.q) {
            h ^= static_cast<uint64_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

MatrixKey quantize(const Unitary2& m) {
    MatrixKey key;
    for (int i = 0; i < 4; ++i) {
        key.q[2 * i] = std::llround(m.u[i].real() * 1e6);
        key.q[2 * i + 1] = std::llround(m.u[i].imag() * 1e6);
    }
    return key;
}

bool close(const Unitary2& a, const Unitary2& b, double tol = 1e-9) {
    for (int i = 0; i < 4; ++i)
        if (std::abs(a.u[i] - b.u[i]) > tol) return false;
    return true;
}

}  // namespace

const CostBlock* BlockTable::block(int cost_halves) const {
    for (const auto& b : blocks)
        if (b.cost_halves == cost_halves) return &b;
    return nullptr;
}

std::size_t BlockTable::total_matrices() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.matrices.size();
    return n;
}

BlockTable enumerate_blocks(const GateSet& set, int r_trunc_halves) {
    BlockTable table;
    table.set = set;
    table.r_trunc_halves = r_trunc_halves;

    struct Node {
        Unitary2 mat;
        int cost;
        int parent;   // node index, -1 for the root
        int16_t gate;  // gate applied to the parent
    };
    std::vector<Node> nodes;
    // dedup is per cost level: blocks at distinct costs may legitimately
    // repeat a matrix (a word can idle through Cliffords worth of cost)
    std::map<int, std::unordered_map<MatrixKey, std::vector<int>, MatrixKeyHash>> seen;

    auto try_insert = [&](const Unitary2& mat, int cost, int parent, int gate) -> int {
        const Unitary2 canon = mat.canonical();
        auto& bucket = seen[cost][quantize(canon)];
        for (int idx : bucket)
            if (close(nodes[static_cast<std::size_t>(idx)].mat, canon)) return -1;
        nodes.push_back({canon, cost, parent, static_cast<int16_t>(gate)});
        bucket.push_back(static_cast<int>(nodes.size()) - 1);
        return static_cast<int>(nodes.size()) - 1;
    };

    std::map<int, std::deque<int>> frontier;
    frontier[0].push_back(try_insert(Unitary2::identity(), 0, -1, -1));

    while (!frontier.empty()) {
        auto it = frontier.begin();
        if (it->second.empty()) {
            frontier.erase(it);
            continue;
        }
        const int cur = it->second.front();
        it->second.pop_front();
        const Unitary2 mat = nodes[static_cast<std::size_t>(cur)].mat;
        const int cost = nodes[static_cast<std::size_t>(cur)].cost;
        for (std::size_t g = 0; g < set.gates.size(); ++g) {
            const int next_cost = cost + set.gates[g].cost_halves;
            if (next_cost > r_trunc_halves) continue;
            const int idx = try_insert(mat * set.gates[g].matrix, next_cost, cur, static_cast<int>(g));
            if (idx >= 0) frontier[next_cost].push_back(idx);
        }
    }

    for (const auto& [cost, bucket_map] : seen) {
        CostBlock block;
        block.cost_halves = cost;
        std::vector<int> indices;
        for (const auto& [key, bucket] : bucket_map)
            for (int idx : bucket) indices.push_back(idx);
        std::sort(indices.begin(), indices.end());  // creation order
        for (int idx : indices) {
            block.matrices.push_back(nodes[static_cast<std::size_t>(idx)].mat);
            std::vector<uint16_t> word;
            for (int cur = idx; cur >= 0 && nodes[static_cast<std::size_t>(cur)].gate >= 0;
                 cur = nodes[static_cast<std::size_t>(cur)].parent)
                word.push_back(static_cast<uint16_t>(nodes[static_cast<std::size_t>(cur)].gate));
            std::reverse(word.begin(), word.end());
            block.words.push_back(std::move(word));
        }
        table.blocks.push_back(std::move(block));
    }
    return table;
}

std::vector<std::vector<int>> partitionings(int total, int r_trunc, const GateSet& set) {
    if (total <= r_trunc) return {{total}};

    const auto achievable = set.achievable_costs(total);
    std::set<int> reachable(achievable.begin(), achievable.end());

    // gate multisets of the total cost, as count vectors over charged gates
    std::vector<int> charged;
    for (const Gate& g : set.gates)
        if (g.cost_halves > 0) charged.push_back(g.cost_halves);
    std::vector<std::vector<int>> multisets;
    std::vector<int> counts(charged.size(), 0);
    const auto enumerate = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == charged.size()) {
            if (remaining % charged[i] == 0) {
                counts[i] = remaining / charged[i];
                multisets.push_back(counts);
            }
            return;
        }
        for (int n = 0; n * charged[i] <= remaining; ++n) {
            counts[i] = n;
            self(self, i + 1, remaining - n * charged[i]);
        }
    };
    enumerate(enumerate, 0, total);

    // candidate part lists: multisets of achievable parts <= r_trunc
    std::vector<std::vector<int>> candidates;
    std::vector<int> parts;
    const auto build = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            candidates.push_back(parts);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 2; --part) {
            if (!reachable.count(part)) continue;
            parts.push_back(part);
            self(self, remaining - part, part);
            parts.pop_back();
        }
    };
    build(build, total, r_trunc);
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a > b;
    });

    // can the gate multiset split into submultisets matching the parts?
    const auto covers = [&](const std::vector<int>& tuple, const std::vector<int>& multiset) {
        std::vector<std::vector<int>> fill{multiset};
        std::vector<std::vector<int>> states{multiset};
        for (int part : tuple) {
            std::vector<std::vector<int>> next;
            std::set<std::vector<int>> dedup;
            for (const auto& state : states) {
                // all submultisets of `state` with cost sum == part
                std::vector<int> take(state.size(), 0);
                const auto walk = [&](auto&& self, std::size_t i, int remaining) -> void {
                    if (remaining == 0 || i == state.size()) {
                        if (remaining != 0) return;
                        std::vector<int> rest(state.size());
                        for (std::size_t j = 0; j < state.size(); ++j) rest[j] = state[j] - take[j];
                        if (dedup.insert(rest).second) next.push_back(rest);
                        return;
                    }
                    for (int n = 0; n <= state[i] && n * charged[i] <= remaining; ++n) {
                        take[i] = n;
                        self(self, i + 1, remaining - n * charged[i]);
                    }
                    take[i] = 0;
                };
                walk(walk, 0, part);
            }
            states = std::move(next);
            if (states.empty()) return false;
        }
        return !states.empty();
    };

    std::vector<std::vector<int>> chosen;
    std::vector<bool> covered(multisets.size(), false);
    std::size_t remaining = multisets.size();
    for (const auto& tuple : candidates) {
        if (remaining == 0) break;
        bool useful = false;
        for (std::size_t i = 0; i < multisets.size(); ++i) {
            if (!covered[i] && covers(tuple, multisets[i])) {
                covered[i] = true;
                --remaining;
                useful = true;
            }
        }
        if (useful) chosen.push_back(tuple);
    }
    if (remaining != 0)
        throw InternalInconsistency("partitionings: uncoverable gate multiset");
    return chosen;
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& pairs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pairs.size());
    for (const auto& [cost, eps] : pairs) {
        const double x = std::log2(1.0 / eps);
        sx += x;
        sy += cost;
        sxx += x * x;
        sxy += x * cost;
    }
    FitResult fit;
    const double denom = n * sxx - sx * sx;
    fit.a = (n * sxy - sx * sy) / denom;
    fit.b = (sy - fit.a * sx) / n;
    return fit;
}

RatioStats gate_ratio(const std::vector<SequenceResult>& results) {
    std::vector<double> ratios;
    std::size_t with_higher = 0;
    for (const auto& r : results) {
        double base = 0, higher = 0;
        for (const auto& [level, count] : r.counts) {
            if (level == 2) base = static_cast<double>(count);
            if (level >= 3) higher += static_cast<double>(count);
        }
        with_higher += higher > 0;
        if (higher == 0) ratios.push_back(0.0);
        else if (base > 0) ratios.push_back(higher / base);
        else ratios.push_back(higher);  // no T gates at all
    }
    RatioStats out;
    if (ratios.empty()) return out;
    std::sort(ratios.begin(), ratios.end());
    const auto q = [&](double f) {
        return ratios[std::min(ratios.size() - 1,
                               static_cast<std::size_t>(f * static_cast<double>(ratios.size())))];
    };
    out.median = q(0.5);
    out.lo68 = q(0.16);
    out.hi68 = q(0.84);
    out.fraction_with_higher = static_cast<double>(with_higher) / static_cast<double>(results.size());
    return out;
}

double lower_bound_gates(unsigned k, double eps) {
    if (k < 2) throw InvalidParameter("lower_bound_gates: k >= 2");
    if (eps >= 1) return 0;
    return 3.0 / std::log2(2.0 * (k - 1)) * std::log2(1.0 / eps);
}

}  // namespace pf
