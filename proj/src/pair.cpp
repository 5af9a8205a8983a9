#include "nilpair/pair.hpp"

namespace nilpair {

MatrixPair MatrixPair::validated(Mat a, Mat b) {
    if (a.n() != b.n()) throw ValidationError("non-square: A and B have different dimensions");
    if (a.n() < 1 || a.n() > kMaxDim)
        throw ValidationError("dimension out of range (need 1 <= n <= 4)");
    if (a.spec() != b.spec()) throw ValidationError("field mismatch");
    if (!is_nilpotent(a)) throw ValidationError("not nilpotent: A");
    if (!is_nilpotent(b)) throw ValidationError("not nilpotent: B");
    if (a * b != b * a) throw ValidationError("not commuting");
    return MatrixPair{std::move(a), std::move(b)};
}

MatrixPair MatrixPair::embedded() const { return MatrixPair{a.embedded(), b.embedded()}; }

}  // namespace nilpair
