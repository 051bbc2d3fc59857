#pragma once

#include <map>
#include <string>
#include <vector>

#include "parityforge/codes.hpp"
#include "parityforge/layout.hpp"

namespace pf {

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Verification results are values, never aborts, so the CLI can batch-check.
struct CheckReport {
    bool passed = false;
    std::string name;
    std::string detail;
};

// Rank of the parent-level z-check matrix over the labelled qubits must be
// 2^m - m - 1.
CheckReport check_independence(const UnfoldedLayout& layout);

// Labels must be exactly the 2^m odd-cardinality subsets of {0..m}.
CheckReport check_label_completeness(const UnfoldedLayout& layout);

// Minimum weight over kernel codewords whose logical decomposition includes
// index k; 2^{m-1} on a valid layout. Enumerates 2^{m+1} codewords (m <= 14).
std::size_t logical_distance(const UnfoldedLayout& layout, unsigned k);
CheckReport check_logical_distances(const UnfoldedLayout& layout);

// True iff every j-subset of {0..m} is contained in an even number of labels.
bool k_parity_check(const std::vector<ParityLabel>& labels, unsigned m, unsigned j);

// True iff every j-subset of rows of x_matrix has even common support.
bool k_orthogonality_check(const BitMatrix& x_matrix, unsigned j);

// Weight congruences certifying a transversal level-k diagonal gate on the
// shortened quantum Reed-Muller code: stabilizer-span weights = 0 and
// logical-coset weights = -1 mod 2^{k+1}.
bool transversal_phase_check(unsigned m, unsigned k);

struct VerificationSummary {
    std::vector<CheckReport> reports;
    bool all_passed() const;
};

VerificationSummary verify_layout(const UnfoldedLayout& layout, bool independence, bool labels,
                                  bool distance, bool kparity, bool transversal);

}  // namespace pf
