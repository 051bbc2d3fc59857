#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parityforge/bitmatrix.hpp"
#include "parityforge/codes.hpp"

namespace pf {

// 2^h x 2^l grid of code qubits; h + l = m with h = floor(m/2).
struct GridSpec {
    unsigned m = 0;
    unsigned h = 0;
    unsigned l = 0;

    std::size_t rows() const { return 1ull << h; }
    std::size_t cols() const { return 1ull << l; }
    std::size_t code_qubits() const { return 1ull << m; }
};

// Subset of logical indices {0..m} stored as a bitmask. A physical Z on the
// qubit equals the product of logical Z on the indices in the subset.
struct ParityLabel {
    uint32_t mask = 0;

    bool contains(unsigned idx) const { return (mask >> idx) & 1u; }
    unsigned cardinality() const;
    std::vector<unsigned> indices() const;
    static ParityLabel from_indices(const std::vector<unsigned>& idx);

    ParityLabel operator^(const ParityLabel& o) const { return {mask ^ o.mask}; }
    bool operator==(const ParityLabel& o) const { return mask == o.mask; }
    bool operator<(const ParityLabel& o) const { return mask < o.mask; }
};

enum class QubitRole { BulkData, BoundaryAncillaData, MeasureAncilla, TargetInterface, RepetitionChain };

std::string role_name(QubitRole r);
QubitRole parse_role(const std::string& s);

struct QubitNode {
    int id = -1;
    double row = 0;
    double col = 0;
    int layer = 0;  // 0 bulk; +d top/left ancilla ring d; -d bottom/right ring d
    QubitRole role = QubitRole::BulkData;
    std::optional<ParityLabel> label;

    bool operator==(const QubitNode& o) const {
        return id == o.id && row == o.row && col == o.col && layer == o.layer &&
               role == o.role && label == o.label;
    }
};

enum class StabilizerKind { Bulk, BoundaryLogical, BoundaryCompositePart, TargetChain };

std::string kind_name(StabilizerKind k);
StabilizerKind parse_kind(const std::string& s);

enum class EdgeSide { Top, Bottom, Left, Right, None };

struct StabilizerSpec {
    std::vector<int> support;  // qubit ids
    StabilizerKind kind = StabilizerKind::Bulk;
    std::optional<std::pair<unsigned, int>> origin;  // (w, t) for boundary kinds
    EdgeSide side = EdgeSide::None;

    bool operator==(const StabilizerSpec& o) const {
        return support == o.support && kind == o.kind && origin == o.origin && side == o.side;
    }
};

// Composite realization bookkeeping: the parts created for one boundary
// stabilizer, plus any side-blocked central parts borrowed from layer-1
// neighbours; the symmetric difference of the whole group is the parent.
struct CompositeGroup {
    std::size_t parent;            // index into z_stabilizers
    std::vector<std::size_t> parts;
    std::vector<std::size_t> borrowed;
};

enum class TargetMode { Ideal, Repetition };

// Canonical boundary stabilizer along one edge of length 2^l, before
// distribution: S(w, t) with 1-based positions [i, i+1, i+w, i+w+1].
struct BoundaryStabilizer {
    unsigned w = 0;
    int t = 0;
    std::array<unsigned, 4> positions{};  // 1-based along the edge
};

struct UnfoldedLayout {
    GridSpec grid;
    std::vector<QubitNode> qubits;
    std::vector<StabilizerSpec> z_stabilizers;
    std::vector<CompositeGroup> composite_groups;
    TargetMode target_mode = TargetMode::Ideal;
    unsigned repetition_distance = 1;
    bool nearest_neighbour_realized = false;
    bool boundaries_distributed = false;
    bool labels_assigned = false;
    bool target_attached = false;
    bool finalized = false;

    int grid_qubit_id(std::size_t row, std::size_t col) const {
        return static_cast<int>(row * grid.cols() + col);
    }
    const QubitNode& qubit(int id) const { return qubits.at(static_cast<std::size_t>(id)); }

    int target_interface_id() const;
    std::vector<int> labelled_qubit_ids() const;
    std::vector<int> data_qubit_ids() const;  // everything except measure ancillas
    std::vector<std::size_t> measured_check_indices() const;  // bulk/parts(or parents)/chain

    // Z-check matrix of the measured (or parent-level) stabilizers restricted
    // to a given qubit set; columns follow the given id order.
    BitMatrix check_matrix(const std::vector<std::size_t>& checks,
                           const std::vector<int>& qubit_ids) const;
    std::vector<std::size_t> parent_level_check_indices() const;  // bulk + boundary-logical + chain
};

// Grid placement and the interior weight-4 plaquettes; (2^h-1)(2^l-1) of
// them. Requires m >= 4.
UnfoldedLayout build_bulk(unsigned m);

// Boundary stabilizers S(w, t) along one edge of 2^l qubits: w = 2^s with
// s in [1, l-1], t in [-2^l/(2w)+1 .. 2^l/(2w)-1]. Empty for l < 2.
std::vector<BoundaryStabilizer> boundary_stabilizers(unsigned side_exponent);

// Assign each horizontal stabilizer to the top or bottom edge and each
// vertical one to left or right, then materialize the parent supports on the
// chosen rows/columns. Stays within the group generated with the bulk.
void distribute_boundaries(UnfoldedLayout& layout);

// Realize every boundary stabilizer with nearest-neighbour composite parts:
// w ancilla-data qubits and w+1 weight-<=4 parts per distance-w stabilizer.
void realize_nearest_neighbour(UnfoldedLayout& layout);

// Seed the bottom row and rightmost column with base labels, propagate
// through the bulk; produces all 2^m odd-cardinality subsets of {0..m}.
void assign_parity_labels(UnfoldedLayout& layout);

// Mark the label-{0} qubit as the target interface; in repetition mode
// append d_rep - 1 chain qubits and weight-2 checks.
void attach_target(UnfoldedLayout& layout, TargetMode mode, unsigned repetition_distance = 1);

// Support of logical X_k: labelled qubits whose label contains k.
std::map<unsigned, std::vector<int>> logical_x_supports(const UnfoldedLayout& layout);

// One measure ancilla per measured check, placed at the check's bounding-box
// centre. Call after construction is complete.
void finalize_measure_ancillas(UnfoldedLayout& layout);

struct LayoutOptions {
    TargetMode target = TargetMode::Ideal;
    unsigned repetition_distance = 0;  // 0 -> default 2^{m-1} in repetition mode
    bool nearest_neighbour = true;
};

// Full pipeline: bulk, boundaries, labels, optional composite realization,
// target, measure ancillas.
UnfoldedLayout make_layout(unsigned m, const LayoutOptions& options = {});

}  // namespace pf
