#include "nilpair/matrix.hpp"

#include <numeric>

namespace nilpair {

Mat::Mat(int n, const FieldSpec& spec) : n_(n), spec_(spec) {
    if (n < 1) throw ShapeMismatch("matrix dimension must be positive");
    e_.assign(static_cast<std::size_t>(n) * n, Scalar::zero(spec));
}

Mat Mat::identity(int n, const FieldSpec& spec) {
    Mat m(n, spec);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(spec);
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    int n = static_cast<int>(rows.size());
    if (n == 0) throw ShapeMismatch("empty matrix");
    const FieldSpec& spec = rows[0][0].spec();
    Mat m(n, spec);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw ShapeMismatch("matrix is not square");
        for (int j = 0; j < n; ++j) {
            if (rows[i][j].spec() != spec) throw FieldMismatch();
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

Mat Mat::jordan(const std::vector<int>& partition, const FieldSpec& spec) {
    int n = std::accumulate(partition.begin(), partition.end(), 0);
    Mat m(n, spec);
    int off = 0;
    for (int part : partition) {
        for (int i = 0; i + 1 < part; ++i) m.at(off + i, off + i + 1) = Scalar::one(spec);
        off += part;
    }
    return m;
}

Mat Mat::unit(int n, const FieldSpec& spec, int i, int j) {
    Mat m(n, spec);
    m.at(i, j) = Scalar::one(spec);
    return m;
}

Mat Mat::permutation(const std::vector<int>& src, const FieldSpec& spec) {
    int n = static_cast<int>(src.size());
    Mat m(n, spec);
    for (int j = 0; j < n; ++j) m.at(src[j], j) = Scalar::one(spec);
    return m;
}

bool Mat::is_zero() const {
    for (const Scalar& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::operator==(const Mat& o) const {
    return n_ == o.n_ && spec_ == o.spec_ && e_ == o.e_;
}

Mat Mat::operator+(const Mat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("dimension mismatch in +");
    if (spec_ != o.spec_) throw FieldMismatch();
    Mat r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("dimension mismatch in -");
    if (spec_ != o.spec_) throw FieldMismatch();
    Mat r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (n_ != o.n_) throw ShapeMismatch("dimension mismatch in *");
    if (spec_ != o.spec_) throw FieldMismatch();
    Mat r(n_, spec_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < n_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
        }
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    if (c.spec() != spec_) throw FieldMismatch();
    Mat r = *this;
    for (Scalar& s : r.e_) s = s * c;
    return r;
}

Mat Mat::pow(int k) const {
    Mat r = identity(n_, spec_);
    Mat base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::vector<Scalar> Mat::vectorized() const { return e_; }

Mat Mat::embedded() const {
    Mat r(n_, extend_to_quadratic(spec_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j).embedded();
    return r;
}

std::string Mat::str() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
        s += i == 0 ? "[" : " ";
        for (int j = 0; j < n_; ++j) {
            s += at(i, j).str();
            if (j + 1 < n_) s += " ";
        }
        s += i + 1 < n_ ? "\n" : "]";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Echelon forms
// ---------------------------------------------------------------------------

Echelon rref(std::vector<std::vector<Scalar>> rows) {
    Echelon out;
    if (rows.empty()) return out;
    std::size_t width = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        Scalar inv = rows[r][c].inverse();
        for (std::size_t j = c; j < width; ++j) rows[r][j] = rows[r][j] * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (std::size_t j = c; j < width; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::vector<std::vector<Scalar>> kernel_of_rows(const std::vector<std::vector<Scalar>>& rows,
                                                int width, const FieldSpec& spec) {
    Echelon ech = rref(rows);
    std::vector<bool> is_pivot(width, false);
    for (int p : ech.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < width; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(width, Scalar::zero(spec));
        v[free] = Scalar::one(spec);
        for (std::size_t r = 0; r < ech.rows.size(); ++r)
            v[ech.pivots[r]] = -ech.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

std::vector<std::vector<Scalar>> mat_rows(const Mat& a) {
    std::vector<std::vector<Scalar>> rows(a.n());
    for (int i = 0; i < a.n(); ++i) {
        rows[i].reserve(a.n());
        for (int j = 0; j < a.n(); ++j) rows[i].push_back(a.at(i, j));
    }
    return rows;
}

}  // namespace

int rank(const Mat& a) { return static_cast<int>(rref(mat_rows(a)).rows.size()); }

std::vector<std::vector<Scalar>> kernel_basis(const Mat& a) {
    return kernel_of_rows(mat_rows(a), a.n(), a.spec());
}

Mat inverse(const Mat& x) {
    int n = x.n();
    std::vector<std::vector<Scalar>> aug(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i].push_back(x.at(i, j));
        for (int j = 0; j < n; ++j)
            aug[i].push_back(i == j ? Scalar::one(x.spec()) : Scalar::zero(x.spec()));
    }
    Echelon ech = rref(std::move(aug));
    if (static_cast<int>(ech.rows.size()) != n || ech.pivots.back() >= n) throw SingularMatrix();
    Mat r(n, x.spec());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = ech.rows[i][n + j];
    return r;
}

std::vector<Scalar> char_poly(const Mat& a) {
    // Berkowitz: division-free, so GF(2) needs no special casing.  Builds the
    // characteristic polynomial of each leading principal submatrix by a
    // Toeplitz convolution.
    int n = a.n();
    const FieldSpec& spec = a.spec();
    Scalar one = Scalar::one(spec), zero = Scalar::zero(spec);
    std::vector<Scalar> p{one};  // descending coefficients, starts as poly "1"
    for (int m = 1; m <= n; ++m) {
        // leading (m-1)x(m-1) block M, row R = a[m-1][0..m-2], col C = a[0..m-2][m-1]
        std::vector<Scalar> q(static_cast<std::size_t>(m) + 1, zero);
        q[0] = one;
        q[1] = -a.at(m - 1, m - 1);
        std::vector<Scalar> v;  // M^k * C
        for (int i = 0; i < m - 1; ++i) v.push_back(a.at(i, m - 1));
        for (int k = 2; k <= m; ++k) {
            Scalar dot = zero;
            for (int i = 0; i < m - 1; ++i) dot = dot + a.at(m - 1, i) * v[i];
            q[k] = -dot;
            std::vector<Scalar> nv(v.size(), zero);
            for (int i = 0; i < m - 1; ++i)
                for (int j = 0; j < m - 1; ++j) nv[i] = nv[i] + a.at(i, j) * v[j];
            v = std::move(nv);
        }
        std::vector<Scalar> np(static_cast<std::size_t>(m) + 1, zero);
        for (std::size_t i = 0; i < np.size(); ++i)
            for (std::size_t j = 0; j < p.size() && j <= i; ++j)
                if (i - j < q.size()) np[i] = np[i] + q[i - j] * p[j];
        p = std::move(np);
    }
    // descending -> ascending
    std::vector<Scalar> asc(p.rbegin(), p.rend());
    return asc;
}

bool is_nilpotent(const Mat& a) { return a.pow(a.n()).is_zero(); }

Mat conjugate(const Mat& x, const Mat& a) { return inverse(x) * a * x; }

Scalar det(const Mat& a) {
    // constant term of char poly is (-1)^n det; cheaper: eliminate directly
    int n = a.n();
    std::vector<std::vector<Scalar>> rows = mat_rows(a);
    Scalar d = Scalar::one(a.spec());
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (!rows[i][c].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Scalar::zero(a.spec());
        if (pivot != c) {
            std::swap(rows[pivot], rows[c]);
            d = -d;
        }
        d = d * rows[c][c];
        Scalar inv = rows[c][c].inverse();
        for (int i = c + 1; i < n; ++i) {
            if (rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c] * inv;
            for (int j = c; j < n; ++j) rows[i][j] = rows[i][j] - f * rows[c][j];
        }
    }
    return d;
}

bool is_invertible(const Mat& a) { return !det(a).is_zero(); }

bool LinSpace::independent() const {
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(basis.size());
    for (const Mat& m : basis) rows.push_back(m.vectorized());
    return rref(std::move(rows)).rows.size() == basis.size();
}

LinSpace solve_matrix_equations(const std::vector<Mat>& commute_with) {
    if (commute_with.empty()) throw ShapeMismatch("no constraints given");
    int n = commute_with[0].n();
    const FieldSpec& spec = commute_with[0].spec();
    for (const Mat& m : commute_with) {
        if (m.n() != n) throw ShapeMismatch("constraint dimension mismatch");
        if (m.spec() != spec) throw FieldMismatch();
    }
    // Unknown X vectorized row-major; constraint (X*M - M*X)_{ij} = 0 gives
    // coefficient delta_{ik} M_{lj} - delta_{jl} M_{ik} for variable X_{kl}.
    std::vector<std::vector<Scalar>> rows;
    for (const Mat& m : commute_with) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Scalar> row(static_cast<std::size_t>(n) * n, Scalar::zero(spec));
                for (int l = 0; l < n; ++l) row[static_cast<std::size_t>(i) * n + l] =
                    row[static_cast<std::size_t>(i) * n + l] + m.at(l, j);
                for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k) * n + j] =
                    row[static_cast<std::size_t>(k) * n + j] - m.at(i, k);
                rows.push_back(std::move(row));
            }
    }
    std::vector<std::vector<Scalar>> vecs = kernel_of_rows(rows, n * n, spec);
    LinSpace space;
    space.n = n;
    space.spec = spec;
    for (const auto& v : vecs) {
        Mat m(n, spec);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = v[static_cast<std::size_t>(i) * n + j];
        space.basis.push_back(std::move(m));
    }
    return space;
}

Mat direct_sum(const Mat& a, const Mat& b) {
    if (a.spec() != b.spec()) throw FieldMismatch();
    Mat r(a.n() + b.n(), a.spec());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.n(); ++i)
        for (int j = 0; j < b.n(); ++j) r.at(a.n() + i, a.n() + j) = b.at(i, j);
    return r;
}

}  // namespace nilpair
