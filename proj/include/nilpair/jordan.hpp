// Jordan normal forms: full JNF for nilpotent matrices, complete 2x2 JNF.
#pragma once

#include "nilpair/matrix.hpp"

namespace nilpair {

struct JordanType {
    std::vector<int> partition;  // weakly decreasing, sums to n
    int sum() const;
    bool operator==(const JordanType& o) const { return partition == o.partition; }
    bool operator!=(const JordanType& o) const { return !(*this == o); }
    std::string str() const;
};

struct NilpotentJnf {
    Mat p;  // invertible; p^{-1} a p is the canonical Jordan matrix
    JordanType type;
};

// Deterministic Jordan chains for nilpotent a: chain tops are chosen from the
// canonical kernel bases in order, so P is reproducible run to run.
NilpotentJnf nilpotent_jnf(const Mat& a);

// Independent route to the partition: conjugate partition of the rank
// sequence rank(a^k).  Used as a cross-check oracle in tests.
JordanType partition_from_ranks(const Mat& a);

struct Jnf2x2 {
    enum class Kind { Diagonal, JordanBlock, NotSplit };
    Kind kind = Kind::NotSplit;
    Mat p;              // valid for the split kinds
    Scalar l1, l2;      // Diagonal: l1 <= l2 in canonical order; JordanBlock: l1
    Scalar cp_b, cp_c;  // char poly t^2 + cp_b t + cp_c (always set)
    std::string charpoly_text() const { return quadratic_text(cp_b, cp_c); }
};

Jnf2x2 jnf_2x2(const Mat& m);

}  // namespace nilpair
