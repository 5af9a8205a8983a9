#include "nilpair/jordan.hpp"

#include <algorithm>
#include <numeric>

namespace nilpair {

int JordanType::sum() const { return std::accumulate(partition.begin(), partition.end(), 0); }

std::string JordanType::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(partition[i]);
    }
    return s + ")";
}

namespace {

// Incremental span tracker over vectors of scalars.
class Span {
public:
    explicit Span(const FieldSpec& spec) : spec_(spec) {}

    bool contains(const std::vector<Scalar>& v) const {
        std::vector<Scalar> r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    // Adds v if independent; returns true when added.
    bool add(const std::vector<Scalar>& v) {
        std::vector<Scalar> r = reduce(v);
        int pivot = -1;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!r[i].is_zero()) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) return false;
        Scalar inv = r[pivot].inverse();
        for (Scalar& s : r) s = s * inv;
        rows_.push_back(std::move(r));
        pivots_.push_back(pivot);
        return true;
    }

private:
    std::vector<Scalar> reduce(std::vector<Scalar> v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Scalar& c = v[pivots_[k]];
            if (c.is_zero()) continue;
            Scalar f = c;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows_[k][j];
        }
        return v;
    }

    FieldSpec spec_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<int> pivots_;
};

std::vector<Scalar> apply_vec(const Mat& a, const std::vector<Scalar>& v) {
    std::vector<Scalar> r(v.size(), Scalar::zero(a.spec()));
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r[i] = r[i] + a.at(i, j) * v[j];
    return r;
}

}  // namespace

NilpotentJnf nilpotent_jnf(const Mat& a) {
    if (!is_nilpotent(a)) throw NotNilpotent();
    int n = a.n();
    const FieldSpec& spec = a.spec();

    // nilpotency index m: least k with a^k = 0
    std::vector<Mat> powers{Mat::identity(n, spec)};
    int m = 0;
    while (!powers.back().is_zero() || m == 0) {
        if (m > 0 && powers.back().is_zero()) break;
        powers.push_back(powers.back() * a);
        ++m;
        if (powers.back().is_zero()) break;
    }

    // canonical kernel bases of a^j
    std::vector<std::vector<std::vector<Scalar>>> kernels(m + 1);
    for (int j = 1; j <= m; ++j) kernels[j] = kernel_basis(powers[j]);

    struct Chain {
        int length;
        std::vector<Scalar> top;
    };
    std::vector<Chain> chains;

    // Fill the Young diagram from the longest chains down; tops at level j are
    // taken from the canonical basis of ker(a^j), skipping ker(a^{j-1}) and
    // the shadows of longer chains.
    for (int j = m; j >= 1; --j) {
        Span forbidden(spec);
        if (j >= 2)
            for (const auto& v : kernels[j - 1]) forbidden.add(v);
        for (const Chain& c : chains) {
            // a^{len-j} * top lies in ker(a^j)
            std::vector<Scalar> v = c.top;
            for (int k = 0; k < c.length - j; ++k) v = apply_vec(a, v);
            forbidden.add(v);
        }
        for (const auto& v : kernels[j]) {
            if (forbidden.add(v)) chains.push_back(Chain{j, v});
        }
    }

    // chains are produced longest first; assemble P columns chain by chain
    JordanType type;
    Mat p(n, spec);
    int col = 0;
    for (const Chain& c : chains) {
        type.partition.push_back(c.length);
        std::vector<std::vector<Scalar>> cols(c.length);
        cols[c.length - 1] = c.top;
        for (int k = c.length - 2; k >= 0; --k) cols[k] = apply_vec(a, cols[k + 1]);
        for (int k = 0; k < c.length; ++k, ++col)
            for (int i = 0; i < n; ++i) p.at(i, col) = cols[k][i];
    }

    NilpotentJnf out{p, type};
    if (conjugate(out.p, a) != Mat::jordan(type.partition, spec))
        throw InternalError("nilpotent_jnf: conjugation does not give the Jordan matrix");
    return out;
}

JordanType partition_from_ranks(const Mat& a) {
    if (!is_nilpotent(a)) throw NotNilpotent();
    int n = a.n();
    // number of parts >= k equals rank(a^{k-1}) - rank(a^k)
    std::vector<int> counts;
    for (int k = 1; k <= n; ++k) {
        int r0 = rank(a.pow(k - 1));
        int r1 = rank(a.pow(k));
        counts.push_back(r0 - r1);
    }
    JordanType type;
    for (int size = n; size >= 1; --size) {
        int mult = (size < n ? counts[size - 1] - counts[size] : counts[n - 1]);
        for (int i = 0; i < mult; ++i) type.partition.push_back(size);
    }
    return type;
}

Jnf2x2 jnf_2x2(const Mat& m) {
    if (m.n() != 2) throw ShapeMismatch("jnf_2x2 needs a 2x2 matrix");
    const FieldSpec& spec = m.spec();
    Jnf2x2 out;
    Scalar tr = m.at(0, 0) + m.at(1, 1);
    out.cp_b = -tr;
    out.cp_c = det(m);
    QuadraticRoots roots = quadratic_roots(out.cp_b, out.cp_c);
    if (!roots.split) {
        out.kind = Jnf2x2::Kind::NotSplit;
        return out;
    }
    if (roots.r1 == roots.r2) {
        Scalar l = roots.r1;
        Mat shifted = m - Mat::identity(2, spec).scaled(l);
        if (shifted.is_zero()) {
            out.kind = Jnf2x2::Kind::Diagonal;
            out.l1 = l;
            out.l2 = l;
            out.p = Mat::identity(2, spec);
            return out;
        }
        out.kind = Jnf2x2::Kind::JordanBlock;
        out.l1 = l;
        // chain: first standard basis vector not killed by (m - l)
        std::vector<Scalar> top(2, Scalar::zero(spec));
        for (int j = 0; j < 2; ++j) {
            std::vector<Scalar> e(2, Scalar::zero(spec));
            e[j] = Scalar::one(spec);
            std::vector<Scalar> img(2, Scalar::zero(spec));
            for (int i = 0; i < 2; ++i) img[i] = shifted.at(i, j);
            if (!(img[0].is_zero() && img[1].is_zero())) {
                top = e;
                break;
            }
        }
        Mat p(2, spec);
        for (int i = 0; i < 2; ++i) {
            Scalar img = shifted.at(i, 0) * top[0] + shifted.at(i, 1) * top[1];
            p.at(i, 0) = img;
            p.at(i, 1) = top[i];
        }
        Mat target(2, spec);
        target.at(0, 0) = l;
        target.at(1, 1) = l;
        target.at(0, 1) = Scalar::one(spec);
        if (conjugate(p, m) != target) throw InternalError("jnf_2x2: Jordan block reduction failed");
        out.p = p;
        return out;
    }
    out.kind = Jnf2x2::Kind::Diagonal;
    out.l1 = roots.r1;
    out.l2 = roots.r2;
    Mat p(2, spec);
    for (int which = 0; which < 2; ++which) {
        Scalar l = which == 0 ? roots.r1 : roots.r2;
        Mat shifted = m - Mat::identity(2, spec).scaled(l);
        auto kern = kernel_basis(shifted);
        if (kern.empty()) throw InternalError("jnf_2x2: eigenvector missing");
        for (int i = 0; i < 2; ++i) p.at(i, which) = kern[0][i];
    }
    Mat target(2, spec);
    target.at(0, 0) = roots.r1;
    target.at(1, 1) = roots.r2;
    if (conjugate(p, m) != target) throw InternalError("jnf_2x2: diagonalization failed");
    out.p = p;
    return out;
}

}  // namespace nilpair
