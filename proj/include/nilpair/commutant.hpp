// Stabilizer and nilpotent-commutator structure around a nilpotent matrix.
#pragma once

#include "nilpair/jordan.hpp"
#include "nilpair/pair.hpp"

namespace nilpair {

// Basis of {X : XA = AX}.
LinSpace commutant(const Mat& a);

// Basis of {X : XA = AX and XB = BX}; always contains the identity.
LinSpace pair_commutant(const MatrixPair& p);

bool stab_contains(const Mat& a, const Mat& x);   // invertible and commutes
bool nilc_contains(const Mat& a, const Mat& b);   // nilpotent and commutes

// Named coordinates of a nilpotent-commutator member for the canonical A of a
// 4x4 Jordan type.  Coordinate names and positions per case:
//   (4):       lambda, mu, nu           at (0,1), (0,2), (0,3)
//   (3,1):     alpha, beta, sigma, tau  at (0,1), (0,2), (0,3), (3,2)
//   (2,2):     alpha, lambda, sigma, gamma (block N), beta, mu, tau, delta
//              (block M) -- in the transformed basis where A' = [[0,I],[0,0]]
//   (2,1,1):   alpha, sigma, tau at (0,1), (0,2), (0,3); lambda, mu at
//              (2,1), (3,1); beta, gamma, delta, eta the lower-right block
//   (1,1,1,1): all 16 entries b11..b44
struct CaseCoordinates {
    JordanType jt;
    std::vector<std::pair<std::string, Scalar>> coords;
    const Scalar& operator[](const std::string& name) const;
};

// Reads coordinates off b; throws NotInNilC when b is not in the nilpotent
// commutator of the canonical A for that type (for (2,2): of the transformed
// A').  coords_to_matrix is the exact inverse.
CaseCoordinates case_coordinates(const JordanType& jt, const Mat& b);
Mat coords_to_matrix(const CaseCoordinates& c, const FieldSpec& spec);

// Named coordinates of a stabilizer member, mirroring the per-case displays:
//   (4):       x, y, z, w
//   (3,1):     x, y, z, w, s, t
//   (2,2):     x, s, u, z (block P), y, t, v, w (block Q), transformed basis
//   (2,1,1):   x, y, s, t, p, q, z, u, v, w
//   (1,1,1,1): all 16 entries x11..x44
struct StabParams {
    JordanType jt;
    std::vector<std::pair<std::string, Scalar>> coords;
    const Scalar& operator[](const std::string& name) const;
};

Mat stab_matrix(const StabParams& sp, const FieldSpec& spec);
StabParams stab_params(const JordanType& jt, const Mat& x);
// Invertibility condition per case (x != 0, blocks invertible, ...).
bool stab_params_valid(const StabParams& sp);

// The canonical A for a 4x4 Jordan type; for (2,2) optionally the transformed
// shape A' = [[0,I],[0,0]].
Mat canonical_nilpotent(const JordanType& jt, const FieldSpec& spec, bool transformed_22 = false);

// The fixed basis-change of the (2,2) case: swaps the middle coordinates.
Mat case3_transform(const FieldSpec& spec);

}  // namespace nilpair
