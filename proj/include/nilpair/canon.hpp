// Canonical forms for commuting nilpotent pairs under simultaneous similarity.
#pragma once

#include <optional>

#include "nilpair/commutant.hpp"

namespace nilpair {

// One indecomposable summand.  Size-4 labels follow the classification table:
// 1.1, 2.1, 2.2, 3.1, 3.2, 4.1, 4.2, 4.3, 5.1.  Smaller sizes use derived
// labels:
//   3.j  (J3, lambda*J3 + mu*J3^2)        params (lambda, mu)
//   3.t  (E12, E13 + delta*E32)           param  (delta)
//   3.s  (E12, E32)
//   3.z  (0, J3)
//   2.j  (J2, lambda*J2)                  param  (lambda)
//   2.z  (0, J2)
//   1.z  (0, 0)
struct IndecBlock {
    int size = 0;
    std::string label;
    std::vector<Scalar> params;
    bool operator==(const IndecBlock& o) const {
        return size == o.size && label == o.label && params == o.params;
    }
    std::string str() const;
};

// Number of parameters a family carries; throws on unknown labels.
int family_param_count(const std::string& label);
int family_size(const std::string& label);
std::vector<std::string> family_labels_size4();
std::vector<std::string> family_labels_all();

// Canonical sequence: size descending, then label, then params under the
// canonical scalar order.  Stable and deterministic.
std::vector<IndecBlock> normalize_block_order(std::vector<IndecBlock> blocks);

struct CanonForm {
    std::vector<IndecBlock> blocks;  // always in normalize_block_order order
    static CanonForm of(std::vector<IndecBlock> blocks);
    bool operator==(const CanonForm& o) const { return blocks == o.blocks; }
    bool operator!=(const CanonForm& o) const { return !(*this == o); }
    int total_size() const;
    std::string str() const;
};

struct Witness {
    Mat x;
};

// Exact block-diagonal pair for a canonical form (sizes must sum to <= 4).
MatrixPair build_canonical(const CanonForm& form, const FieldSpec& spec);

struct CanonOptions {
    // Over GF(p), lift to GF(p^2) when an eigenvalue is missing instead of
    // raising NotSplit.
    bool allow_extension = false;
};

struct CanonResult {
    CanonForm form;
    Witness witness;     // conjugate(witness.x, input) equals `pair` exactly
    MatrixPair pair;     // build_canonical(form) over `field`
    FieldSpec field;     // input field, or its quadratic extension
    bool extended = false;
};

CanonResult canonicalize(const MatrixPair& p, const CanonOptions& opts = {});

// Maybe-witness similarity test: Some(X) iff the canonical forms agree.
std::optional<Witness> similar(const MatrixPair& p1, const MatrixPair& p2,
                               const CanonOptions& opts = {});

// ---------------------------------------------------------------------------
// Per-case reductions (classification level).  Inputs are coordinates of a
// nilpotent-commutator member for the canonical A of the type (type (2,2) in
// the transformed basis).  They report the resulting block or the coordinate
// split of a decomposable branch; canonicalize() drives the same logic with
// explicit conjugations.
// ---------------------------------------------------------------------------

struct DecomposeHint {
    // Disjoint coordinate groups (0-indexed, in the reduced basis).
    std::vector<std::vector<int>> parts;
};

struct CaseReduction {
    std::optional<IndecBlock> block;
    std::optional<DecomposeHint> hint;
};

CaseReduction reduce_case1(const CaseCoordinates& c);
CaseReduction reduce_case2(const CaseCoordinates& c);
CaseReduction reduce_case3(const CaseCoordinates& c);  // may throw NotSplit
CaseReduction reduce_case4(const CaseCoordinates& c);
std::vector<IndecBlock> reduce_case5(const MatrixPair& p);

// Canonicalization for n <= 3 (the derived small-size family table).
CanonResult small_canonicalize(const MatrixPair& p);

}  // namespace nilpair
