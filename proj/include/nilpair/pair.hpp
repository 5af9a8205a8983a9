// Validated commuting nilpotent pairs.
#pragma once

#include "nilpair/matrix.hpp"

namespace nilpair {

struct MatrixPair {
    Mat a, b;

    // Validates: square <= 4x4, both over one field, A^n = 0, B^n = 0,
    // AB = BA.  Throws ValidationError naming the violated condition.
    static MatrixPair validated(Mat a, Mat b);

    int n() const { return a.n(); }
    const FieldSpec& spec() const { return a.spec(); }
    MatrixPair embedded() const;  // GF(p) -> GF(p^2) lift
    bool operator==(const MatrixPair& o) const { return a == o.a && b == o.b; }
};

}  // namespace nilpair
