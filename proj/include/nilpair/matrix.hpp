// Dense exact matrices of size <= 4 and the linear-algebra kernel.
#pragma once

#include <vector>

#include "nilpair/field.hpp"

namespace nilpair {

constexpr int kMaxDim = 4;

class Mat {
public:
    Mat() = default;
    Mat(int n, const FieldSpec& spec);  // zero matrix

    static Mat identity(int n, const FieldSpec& spec);
    static Mat from_rows(const std::vector<std::vector<Scalar>>& rows);
    // Nilpotent Jordan matrix for a partition (blocks in the given order,
    // superdiagonal ones inside each block).
    static Mat jordan(const std::vector<int>& partition, const FieldSpec& spec);
    static Mat unit(int n, const FieldSpec& spec, int i, int j);  // E_ij (0-indexed)
    // Permutation matrix whose column j is e_{src[j]}; conjugation by it
    // reads entry (i, j) of the result from (src[i], src[j]).
    static Mat permutation(const std::vector<int>& src, const FieldSpec& spec);

    int n() const { return n_; }
    const FieldSpec& spec() const { return spec_; }
    Scalar& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const Scalar& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    bool is_zero() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(const Scalar& c) const;
    Mat pow(int k) const;

    // Row-major vectorization (documented order for witnesses and solvers).
    std::vector<Scalar> vectorized() const;

    Mat embedded() const;  // entry-wise GF(p) -> GF(p^2)
    std::string str() const;

private:
    int n_ = 0;
    FieldSpec spec_{};
    std::vector<Scalar> e_;
};

int rank(const Mat& a);
std::vector<std::vector<Scalar>> kernel_basis(const Mat& a);
Mat inverse(const Mat& x);  // throws SingularMatrix
// Monic characteristic polynomial, ascending coefficients (size n+1, last 1).
// Division-free (Berkowitz), valid in characteristic 2.
std::vector<Scalar> char_poly(const Mat& a);
bool is_nilpotent(const Mat& a);
Mat conjugate(const Mat& x, const Mat& a);  // x^{-1} a x
Scalar det(const Mat& a);
bool is_invertible(const Mat& a);

// Span of matrices, e.g. a commutant.
struct LinSpace {
    int n = 0;
    FieldSpec spec{};
    std::vector<Mat> basis;
    int dim() const { return static_cast<int>(basis.size()); }
    bool independent() const;  // rank of vectorized stack equals basis size
};

// Basis of {X : X*M = M*X for every M in commute_with}, via the vectorized
// n^2-dimensional linear system.
LinSpace solve_matrix_equations(const std::vector<Mat>& commute_with);

// Reduced-row-echelon machinery shared by rank/kernel/solvers.  Rows are
// plain scalar vectors; all arithmetic exact.
struct Echelon {
    std::vector<std::vector<Scalar>> rows;  // nonzero rows of the RREF
    std::vector<int> pivots;                // pivot column per row
};
Echelon rref(std::vector<std::vector<Scalar>> rows);
// Canonical kernel basis of the row system (one vector per free column).
std::vector<std::vector<Scalar>> kernel_of_rows(const std::vector<std::vector<Scalar>>& rows,
                                                int width, const FieldSpec& spec);

Mat direct_sum(const Mat& a, const Mat& b);

}  // namespace nilpair
