#include "parityforge/verify.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace pf {

CheckReport check_independence(const UnfoldedLayout& layout) {
    const unsigned m = layout.grid.m;
    std::vector<std::size_t> checks;
    for (std::size_t i = 0; i < layout.z_stabilizers.size(); ++i) {
        const auto kind = layout.z_stabilizers[i].kind;
        if (kind == StabilizerKind::Bulk || kind == StabilizerKind::BoundaryLogical)
            checks.push_back(i);
    }
    const auto mat = layout.check_matrix(checks, layout.labelled_qubit_ids());
    const std::size_t rank = gf2_rank(mat);
    const std::size_t expected = (1ull << m) - m - 1;

    CheckReport rep;
    rep.name = "independence";
    rep.passed = rank == expected;
    std::ostringstream os;
    os << "rank " << rank << ", expected " << expected << ", deficit "
       << (expected > rank ? expected - rank : 0);
    rep.detail = os.str();
    return rep;
}

CheckReport check_label_completeness(const UnfoldedLayout& layout) {
    const unsigned m = layout.grid.m;
    std::set<uint32_t> seen;
    bool odd_ok = true;
    std::size_t count = 0;
    for (const auto& q : layout.qubits) {
        if (!q.label) continue;
        ++count;
        odd_ok &= q.label->cardinality() % 2 == 1;
        seen.insert(q.label->mask);
    }
    CheckReport rep;
    rep.name = "labels";
    rep.passed = odd_ok && count == (1ull << m) && seen.size() == count;
    std::ostringstream os;
    os << count << " labels, " << seen.size() << " distinct, odd-only=" << (odd_ok ? "yes" : "no");
    rep.detail = os.str();
    return rep;
}

namespace {

// Kernel of the parent z-check matrix over the labelled qubits is spanned by
// the logical X supports; enumerate all 2^{m+1} combinations.
struct KernelScan {
    std::vector<std::size_t> min_weight;  // per logical index

    explicit KernelScan(const UnfoldedLayout& layout) {
        const unsigned m = layout.grid.m;
        if (m > 14)
            throw ResourceLimit("logical_distance: enumeration beyond m = 14 is out of reach");
        const auto ids = layout.labelled_qubit_ids();
        const auto supports = logical_x_supports(layout);

        std::map<int, std::size_t> col;
        for (std::size_t i = 0; i < ids.size(); ++i) col[ids[i]] = i;
        BitMatrix basis(m + 1, ids.size());
        for (unsigned k = 0; k <= m; ++k)
            for (int id : supports.at(k)) basis.set(k, col.at(id), true);

        min_weight.assign(m + 1, SIZE_MAX);
        BitMatrix acc(1, ids.size());
        for (uint32_t combo = 1; combo < (1u << (m + 1)); ++combo) {
            for (std::size_t w = 0; w < acc.words_per_row(); ++w) acc.row_data(0)[w] = 0;
            for (unsigned k = 0; k <= m; ++k)
                if ((combo >> k) & 1u) acc.xor_row(0, basis, k);
            const std::size_t weight = acc.row_weight(0);
            for (unsigned k = 0; k <= m; ++k)
                if ((combo >> k) & 1u) min_weight[k] = std::min(min_weight[k], weight);
        }
    }
};

}  // namespace

std::size_t logical_distance(const UnfoldedLayout& layout, unsigned k) {
    return KernelScan(layout).min_weight.at(k);
}

CheckReport check_logical_distances(const UnfoldedLayout& layout) {
    const unsigned m = layout.grid.m;
    const KernelScan scan(layout);
    const std::size_t expected = 1ull << (m - 1);
    CheckReport rep;
    rep.name = "distance";
    rep.passed = true;
    std::ostringstream os;
    for (unsigned k = 0; k <= m; ++k) {
        rep.passed &= scan.min_weight[k] == expected;
        if (k) os << ",";
        os << scan.min_weight[k];
    }
    rep.detail = "distances [" + os.str() + "], expected " + std::to_string(expected);
    return rep;
}

bool k_parity_check(const std::vector<ParityLabel>& labels, unsigned m, unsigned j) {
    if (j < 1 || j > m + 1) throw InvalidParameter("k_parity_check: 1 <= j <= m+1");
    // iterate all j-subsets of {0..m} as masks
    std::vector<unsigned> idx(j);
    for (unsigned i = 0; i < j; ++i) idx[i] = i;
    while (true) {
        uint32_t subset = 0;
        for (unsigned v : idx) subset |= 1u << v;
        std::size_t count = 0;
        for (const auto& l : labels)
            if ((l.mask & subset) == subset) ++count;
        if (count % 2 != 0) return false;

        int i = static_cast<int>(j) - 1;
        while (i >= 0 && idx[i] == m + 1 - j + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (unsigned t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
    return true;
}

bool k_orthogonality_check(const BitMatrix& x_matrix, unsigned j) {
    const std::size_t rows = x_matrix.n_rows();
    if (j < 1 || j > rows) throw InvalidParameter("k_orthogonality_check: 1 <= j <= rows");
    std::vector<std::size_t> idx(j);
    for (std::size_t i = 0; i < j; ++i) idx[i] = i;
    std::vector<uint64_t> acc(x_matrix.words_per_row());
    while (true) {
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] = ~0ull;
        for (std::size_t r : idx)
            for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= x_matrix.row_data(r)[w];
        // mask tail bits
        if (x_matrix.n_cols() % 64 != 0 && !acc.empty())
            acc.back() &= (1ull << (x_matrix.n_cols() % 64)) - 1;
        std::size_t weight = 0;
        for (uint64_t w : acc) weight += std::popcount(w);
        if (weight % 2 != 0) return false;

        int i = static_cast<int>(j) - 1;
        while (i >= 0 && idx[i] == rows - j + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
    return true;
}

bool transversal_phase_check(unsigned m, unsigned k) {
    if (m > 20) throw ResourceLimit("transversal_phase_check: m too large to enumerate");
    const CssCode code = shortened_qrm(m);
    const uint64_t modulus = 1ull << (k + 1);

    BitMatrix acc(1, code.x_checks.n_cols());
    for (uint64_t combo = 0; combo < (1ull << (m + 1)); ++combo) {
        for (std::size_t w = 0; w < acc.words_per_row(); ++w) acc.row_data(0)[w] = 0;
        for (unsigned v = 0; v < m; ++v)
            if ((combo >> v) & 1ull) acc.xor_row(0, code.x_checks, v);
        const bool coset = (combo >> m) & 1ull;
        if (coset) acc.xor_row(0, code.logical_x, 0);
        const uint64_t weight = acc.row_weight(0);
        if (!coset && weight % modulus != 0) return false;
        if (coset && weight % modulus != modulus - 1) return false;
    }
    return true;
}

bool VerificationSummary::all_passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

VerificationSummary verify_layout(const UnfoldedLayout& layout, bool independence, bool labels,
                                  bool distance, bool kparity, bool transversal) {
    VerificationSummary out;
    if (independence) out.reports.push_back(check_independence(layout));
    if (labels) out.reports.push_back(check_label_completeness(layout));
    if (distance) out.reports.push_back(check_logical_distances(layout));
    if (kparity) {
        const unsigned m = layout.grid.m;
        std::vector<ParityLabel> ls;
        for (const auto& q : layout.qubits)
            if (q.label) ls.push_back(*q.label);
        CheckReport rep;
        rep.name = "kparity";
        rep.passed = true;
        std::string profile;
        for (unsigned j = 1; j <= m - 1; ++j) {
            const bool ok = k_parity_check(ls, m, j);
            rep.passed &= ok;
            profile += ok ? '1' : '0';
        }
        rep.detail = "parity profile j=1.." + std::to_string(m - 1) + ": " + profile;
        out.reports.push_back(rep);
    }
    if (transversal) {
        CheckReport rep;
        rep.name = "transversal";
        const unsigned m = layout.grid.m;
        rep.passed = transversal_phase_check(m, m - 2);
        rep.detail = "Z_" + std::to_string(m - 2) + " phase congruences on 2^" +
                     std::to_string(m + 1) + " span vectors";
        out.reports.push_back(rep);
    }
    return out;
}

}  // namespace pf
