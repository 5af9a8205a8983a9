// Independent (in)decomposability certification via the commutant algebra.
#pragma once

#include <optional>

#include "nilpair/pair.hpp"

namespace nilpair {

struct IndecCertificate {
    enum class Verdict { Indecomposable, Decomposable };
    enum class Method { IdempotentFound, LocalAlgebra, ExhaustiveScan };
    Verdict verdict = Verdict::Indecomposable;
    Method method = Method::LocalAlgebra;
    // Decomposable only: conjugation by split_basis makes both matrices
    // block-diagonal with the stated sizes (re-validated on construction).
    Mat split_basis;
    std::vector<int> sizes;
    bool decomposable() const { return verdict == Verdict::Decomposable; }
    std::string method_name() const;
};

// Fitting decomposition attempt: for e in the pair commutant, split along
// ker(e^n) + im(e^n).  Returns the basis and the kernel dimension, or nothing
// when e^n is zero or invertible.
std::optional<std::pair<Mat, int>> fitting_split(const MatrixPair& p, const Mat& e);

// Definitive over finite fields reachable by the exhaustive commutant scan
// (always for p in {2, 3} at n <= 4) and over Q; the method used is recorded
// in the certificate.
IndecCertificate is_indecomposable(const MatrixPair& p);

}  // namespace nilpair
