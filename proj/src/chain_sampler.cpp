#include <algorithm>
#include <cmath>

#include "parityforge/rng.hpp"
#include "parityforge/synth.hpp"

// Chain sampling over fixed-cost blocks. For a partitioning (R_1..R_l) the
// candidate word factorizes as V = A_1(m_1) ... A_l(m_l) with A_i drawn from
// the cost-R_i block, and |Tr(U^dag V)|^2 is treated as an unnormalized
// distribution over the index tuple. The trace closure is carried as an
// extra bond label a, giving an open chain of bond dimension 4:
//
//   L[m][(a,b)]              = (U^dag A_1(m))[a, b]
//   T_i[m][(a,x),(a',y)]     = delta_{aa'} A_i(m)[x, y]
//   R[m][(a,x)]              = A_l(m)[x, a]
//
// Right environments E_i = sum_m T E T^dag are target independent, so the
// conditional distributions come cheap; sampling walks a prefix tree so
// repeated prefixes share their distribution vectors.

namespace pf {

namespace {

struct Mat2 {
    cplx a, b, c, d;

    static Mat2 from(const Unitary2& u) { return {u.u[0], u.u[1], u.u[2], u.u[3]}; }
    Unitary2 to_unitary() const {
        Unitary2 u;
        u.u = {a, b, c, d};
        return u;
    }
    Mat2 mul(const Mat2& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
    Mat2 dag() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
};

// 4x4 Hermitian environment stored as 2x2 grid of 2x2 blocks E[a][a'].
struct Env {
    Mat2 block[2][2];

    static Env identity() {
        Env e{};
        e.block[0][0] = {cplx(1), cplx(0), cplx(0), cplx(1)};
        e.block[1][1] = {cplx(1), cplx(0), cplx(0), cplx(1)};
        return e;
    }
};

struct Vec4 {
    cplx v[4];  // layout (a, x): index 2a + x
};

// p = w E w^dag for the bond vector w
double quadratic_form(const Vec4& w, const Env& e) {
    cplx acc(0);
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) {
            const Mat2& blk = e.block[a][ap];
            const cplx* wa = w.v + 2 * a;
            const cplx* wb = w.v + 2 * ap;
            acc += wa[0] * (blk.a * std::conj(wb[0]) + blk.b * std::conj(wb[1]));
            acc += wa[1] * (blk.c * std::conj(wb[0]) + blk.d * std::conj(wb[1]));
        }
    return std::max(0.0, acc.real());
}

struct Chain {
    const BlockTable* table;
    std::vector<const CostBlock*> sites;
    std::vector<Env> env_after;  // env to the right of site i (index i)

    explicit Chain(const BlockTable& tbl, const std::vector<int>& parts) : table(&tbl) {
        for (int part : parts) {
            const CostBlock* b = tbl.block(part);
            if (!b || b->matrices.empty())
                throw InternalInconsistency("chain sampler: missing block");
            sites.push_back(b);
        }
        env_after.assign(sites.size(), Env::identity());
        // rightmost: E[a][a'][x,y] = sum_m A[x,a] conj(A[y,a'])
        if (sites.size() >= 2) {
            Env last{};
            for (const Unitary2& u : sites.back()->matrices) {
                const Mat2 A = Mat2::from(u);
                const cplx col[2][2] = {{A.a, A.c}, {A.b, A.d}};  // col[a] = (A[0,a], A[1,a])
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap) {
                        last.block[a][ap].a += col[a][0] * std::conj(col[ap][0]);
                        last.block[a][ap].b += col[a][0] * std::conj(col[ap][1]);
                        last.block[a][ap].c += col[a][1] * std::conj(col[ap][0]);
                        last.block[a][ap].d += col[a][1] * std::conj(col[ap][1]);
                    }
            }
            env_after[sites.size() - 2] = last;
            // middle environments: E'[a][a'] = sum_m A E[a][a'] A^dag
            for (std::size_t i = sites.size() - 2; i-- > 0;) {
                Env next{};
                for (const Unitary2& u : sites[i + 1]->matrices) {
                    const Mat2 A = Mat2::from(u);
                    const Mat2 Ad = A.dag();
                    for (int a = 0; a < 2; ++a)
                        for (int ap = 0; ap < 2; ++ap) {
                            const Mat2 t = A.mul(env_after[i + 1].block[a][ap]).mul(Ad);
                            next.block[a][ap].a += t.a;
                            next.block[a][ap].b += t.b;
                            next.block[a][ap].c += t.c;
                            next.block[a][ap].d += t.d;
                        }
                }
                env_after[i] = next;
            }
        }
    }
};

struct BestWord {
    double eps = 2.0;
    std::vector<std::size_t> indices;
    bool found = false;
};

// Recursive prefix-tree sampling: distributions are computed once per
// distinct prefix; n_samples at a node are split multinomially.
void sample_node(const Chain& chain, const Unitary2& target, std::size_t site, const Vec4& v,
                 const Mat2& prefix, std::size_t n_samples, CounterRng& rng, BestWord& best,
                 std::vector<std::size_t>& path) {
    const CostBlock& block = *chain.sites[site];
    const std::size_t M = block.matrices.size();
    const bool last = site + 1 == chain.sites.size();
    std::vector<double> weight(M);

    if (site == 0 && chain.sites.size() == 1) {
        // single site: weight = |Tr(U^dag A)|^2 directly
        const Mat2 Ud = Mat2::from(target.dagger());
        for (std::size_t m = 0; m < M; ++m) {
            const Mat2 P = Ud.mul(Mat2::from(block.matrices[m]));
            weight[m] = std::norm(P.a + P.d);
        }
    } else if (last) {
        for (std::size_t m = 0; m < M; ++m) {
            const Mat2 A = Mat2::from(block.matrices[m]);
            // w = sum_{a,x} v[(a,x)] A[x,a]
            const cplx w = v.v[0] * A.a + v.v[1] * A.c + v.v[2] * A.b + v.v[3] * A.d;
            weight[m] = std::norm(w);
        }
    } else {
        const Env& env = chain.env_after[site];
        for (std::size_t m = 0; m < M; ++m) {
            const Mat2 A = Mat2::from(block.matrices[m]);
            Vec4 w;
            for (int a = 0; a < 2; ++a) {
                w.v[2 * a] = v.v[2 * a] * A.a + v.v[2 * a + 1] * A.c;
                w.v[2 * a + 1] = v.v[2 * a] * A.b + v.v[2 * a + 1] * A.d;
            }
            weight[m] = quadratic_form(w, env);
        }
    }

    std::vector<double> prefix_sum(M + 1, 0.0);
    for (std::size_t m = 0; m < M; ++m) prefix_sum[m + 1] = prefix_sum[m] + weight[m];
    const double total = prefix_sum.back();

    std::map<std::size_t, std::size_t> counts;
    for (std::size_t s = 0; s < n_samples; ++s) {
        std::size_t pick;
        if (total <= 0) {
            pick = rng.next_below(M);
        } else {
            const double r = rng.next_double() * total;
            pick = static_cast<std::size_t>(
                       std::upper_bound(prefix_sum.begin() + 1, prefix_sum.end(), r) -
                       (prefix_sum.begin() + 1));
            if (pick >= M) pick = M - 1;
        }
        ++counts[pick];
    }

    for (const auto& [m, n] : counts) {
        path.push_back(m);
        const Mat2 A = Mat2::from(block.matrices[m]);
        const Mat2 product = site == 0 ? A : prefix.mul(A);
        if (last) {
            const double eps = trace_distance(target, product.to_unitary());
            if (!best.found || eps < best.eps - 1e-15) {
                best.found = true;
                best.eps = eps;
                best.indices = path;
            }
        } else {
            Vec4 w;
            if (site == 0) {
                const Mat2 L = Mat2::from(target.dagger()).mul(A);
                w.v[0] = L.a;
                w.v[1] = L.b;
                w.v[2] = L.c;
                w.v[3] = L.d;
            } else {
                for (int a = 0; a < 2; ++a) {
                    w.v[2 * a] = v.v[2 * a] * A.a + v.v[2 * a + 1] * A.c;
                    w.v[2 * a + 1] = v.v[2 * a] * A.b + v.v[2 * a + 1] * A.d;
                }
            }
            // normalize to keep magnitudes sane down the tree
            double norm = 0;
            for (const cplx& e : w.v) norm += std::norm(e);
            if (norm > 0) {
                const double inv = 1.0 / std::sqrt(norm);
                for (cplx& e : w.v) e *= inv;
            }
            sample_node(chain, target, site + 1, w, product, n, rng, best, path);
        }
        path.pop_back();
    }
}

SequenceResult assemble(const BlockTable& table, const std::vector<const CostBlock*>& sites,
                        const std::vector<std::size_t>& indices, const Unitary2& target) {
    SequenceResult out;
    out.found = true;
    Unitary2 product = Unitary2::identity();
    int cost_halves = 0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto& word = sites[i]->words[indices[i]];
        for (uint16_t g : word) {
            const Gate& gate = table.set.gates[g];
            out.word.push_back(gate.name);
            product = product * gate.matrix;
            cost_halves += gate.cost_halves;
            if (gate.cost_halves > 0) {
                unsigned level = 2;
                if (gate.name == "sqrtT") level = 3;
                else if (gate.name.rfind("Z", 0) == 0 && gate.name.size() > 1)
                    level = static_cast<unsigned>(std::stoul(gate.name.substr(1)));
                ++out.counts[level];
            }
        }
    }
    out.cost = cost_halves / 2.0;
    out.eps = trace_distance(target, product);
    return out;
}

}  // namespace

namespace {

// best sampled word per achievable total cost, one chain per partitioning
std::map<int, SequenceResult> best_by_total(const Unitary2& target, const BlockTable& table,
                                            int budget_halves, const SynthOptions& options) {
    std::map<int, SequenceResult> out;
    const auto totals = table.set.achievable_costs(budget_halves);
    std::size_t tuple_counter = 0;
    for (int total : totals) {
        const auto tuples = partitionings(total, table.r_trunc_halves, table.set);
        SequenceResult best_here;
        bool any = false;
        for (const auto& tuple : tuples) {
            Chain chain(table, tuple);
            BestWord bw;
            std::vector<std::size_t> path;
            CounterRng rng(CounterRng::derive(options.seed, 0x636861696eull, tuple_counter++));
            sample_node(chain, target, 0, Vec4{}, Mat2{}, options.samples, rng, bw, path);
            if (bw.found) {
                const SequenceResult candidate = assemble(table, chain.sites, bw.indices, target);
                if (!any || candidate.eps < best_here.eps - 1e-15) {
                    best_here = candidate;
                    any = true;
                }
            }
        }
        if (any) out[total] = best_here;
    }
    return out;
}

}  // namespace

std::vector<SequenceResult> synthesize_curve(const Unitary2& target, const BlockTable& table,
                                             const std::vector<double>& budgets,
                                             const SynthOptions& options) {
    int max_halves = 0;
    for (double b : budgets)
        max_halves = std::max(max_halves, static_cast<int>(std::llround(b * 2.0)));
    const Unitary2 canon_target = target.canonical();
    const auto per_total = best_by_total(canon_target, table, max_halves, options);

    std::vector<SequenceResult> out;
    for (double b : budgets) {
        const int halves = static_cast<int>(std::llround(b * 2.0));
        SequenceResult best;
        bool any = false;
        for (const auto& [total, res] : per_total) {
            if (total > halves) break;
            if (!any || res.eps < best.eps - 1e-15) {
                best = res;
                any = true;
            }
        }
        if (!any) throw InvalidParameter("synthesize_curve: no achievable cost within budget");
        out.push_back(best);
    }
    return out;
}

SequenceResult synthesize(const Unitary2& target, const BlockTable& table,
                          const SynthOptions& options) {
    const int budget = static_cast<int>(std::llround(options.budget * 2.0));
    if (budget < 0) throw InvalidParameter("synthesize: empty budget");
    const Unitary2 canon_target = target.canonical();

    if (options.backend == SynthBackend::Exhaustive) {
        if (budget > table.r_trunc_halves)
            throw InvalidParameter("synthesize: exhaustive backend requires R <= r_trunc");
        SequenceResult best;
        best.eps = 2.0;
        std::vector<const CostBlock*> site(1);
        for (const auto& block : table.blocks) {
            if (block.cost_halves > budget) break;
            site[0] = &block;
            for (std::size_t m = 0; m < block.matrices.size(); ++m) {
                const double eps = trace_distance(canon_target, block.matrices[m]);
                if (!best.found || eps < best.eps - 1e-15) {
                    best = assemble(table, site, {m}, canon_target);
                }
            }
        }
        if (!best.found) throw InvalidParameter("synthesize: no achievable cost within budget");
        return best;
    }

    SequenceResult best;
    bool any = false;
    for (const auto& [total, res] : best_by_total(canon_target, table, budget, options)) {
        if (!any || res.eps < best.eps - 1e-15) {
            best = res;
            any = true;
        }
    }
    if (!any) throw InvalidParameter("synthesize: no achievable cost within budget");
    return best;
}

}  // namespace pf
