#include "nilpair/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nilpair {

// ---------------------------------------------------------------------------
// Family table
// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, std::pair<int, int>>& family_table() {
    // label -> (size, param count)
    static const std::map<std::string, std::pair<int, int>> table = {
        {"1.1", {4, 3}}, {"2.1", {4, 2}}, {"2.2", {4, 1}}, {"3.1", {4, 2}}, {"3.2", {4, 1}},
        {"4.1", {4, 1}}, {"4.2", {4, 0}}, {"4.3", {4, 0}}, {"5.1", {4, 0}}, {"3.j", {3, 2}},
        {"3.t", {3, 1}}, {"3.s", {3, 0}}, {"3.z", {3, 0}}, {"2.j", {2, 1}}, {"2.z", {2, 0}},
        {"1.z", {1, 0}},
    };
    return table;
}

}  // namespace

int family_param_count(const std::string& label) {
    auto it = family_table().find(label);
    if (it == family_table().end()) throw ValidationError("unknown family label " + label);
    return it->second.second;
}

int family_size(const std::string& label) {
    auto it = family_table().find(label);
    if (it == family_table().end()) throw ValidationError("unknown family label " + label);
    return it->second.first;
}

std::vector<std::string> family_labels_size4() {
    return {"1.1", "2.1", "2.2", "3.1", "3.2", "4.1", "4.2", "4.3", "5.1"};
}

std::vector<std::string> family_labels_all() {
    std::vector<std::string> out;
    for (const auto& [label, _] : family_table()) out.push_back(label);
    return out;
}

std::string IndecBlock::str() const {
    std::string s = label;
    if (!params.empty()) {
        s += "(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) s += ",";
            s += params[i].str();
        }
        s += ")";
    }
    return s;
}

namespace {

bool block_less(const IndecBlock& u, const IndecBlock& v) {
    if (u.size != v.size) return u.size > v.size;
    if (u.label != v.label) return u.label < v.label;
    for (std::size_t i = 0; i < u.params.size() && i < v.params.size(); ++i) {
        int c = scalar_cmp(u.params[i], v.params[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

void check_block(const IndecBlock& b) {
    if (family_size(b.label) != b.size)
        throw ValidationError("block size does not match label " + b.label);
    if (family_param_count(b.label) != static_cast<int>(b.params.size()))
        throw ValidationError("wrong parameter count for family " + b.label);
}

}  // namespace

std::vector<IndecBlock> normalize_block_order(std::vector<IndecBlock> blocks) {
    std::stable_sort(blocks.begin(), blocks.end(), block_less);
    return blocks;
}

CanonForm CanonForm::of(std::vector<IndecBlock> blocks) {
    for (const auto& b : blocks) check_block(b);
    CanonForm f;
    f.blocks = normalize_block_order(std::move(blocks));
    return f;
}

int CanonForm::total_size() const {
    int s = 0;
    for (const auto& b : blocks) s += b.size;
    return s;
}

std::string CanonForm::str() const {
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += " + ";
        s += blocks[i].str();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Canonical block pairs
// ---------------------------------------------------------------------------

namespace {

std::pair<Mat, Mat> build_block(const IndecBlock& blk, const FieldSpec& spec) {
    check_block(blk);
    for (const Scalar& s : blk.params)
        if (s.spec() != spec) throw FieldMismatch("block parameter over a different field");
    const std::string& L = blk.label;
    Scalar one = Scalar::one(spec);
    auto P = [&](int i) { return blk.params[i]; };

    if (L == "1.1") {
        Mat a = Mat::jordan({4}, spec);
        Mat b = a.scaled(P(0)) + (a * a).scaled(P(1)) + (a * a * a).scaled(P(2));
        return {a, b};
    }
    if (L == "2.1" || L == "2.2") {
        Mat a = Mat::jordan({3, 1}, spec);
        Mat b(4, spec);
        b.at(0, 1) = P(0);
        b.at(1, 2) = P(0);
        if (L == "2.1") {
            b.at(0, 3) = blk.params[1];
            b.at(3, 2) = one;
        } else {
            b.at(0, 3) = one;
        }
        return {a, b};
    }
    if (L == "3.1") {
        Mat a = Mat::jordan({2, 2}, spec);
        Mat b(4, spec);
        b.at(0, 2) = one;
        b.at(1, 3) = one;
        b.at(2, 1) = P(0);
        b.at(2, 3) = P(1);
        return {a, b};
    }
    if (L == "3.2") {
        Mat a = Mat::jordan({2, 2}, spec);
        Mat b(4, spec);
        b.at(0, 1) = P(0);
        b.at(0, 3) = one;
        b.at(2, 3) = P(0);
        return {a, b};
    }
    if (L == "4.1" || L == "4.2" || L == "4.3") {
        Mat a = Mat::jordan({2, 1, 1}, spec);
        Mat b(4, spec);
        b.at(0, 2) = L == "4.1" ? P(0) : one;
        if (L != "4.3") b.at(2, 3) = one;
        if (L != "4.2") b.at(3, 1) = one;
        return {a, b};
    }
    if (L == "5.1") return {Mat(4, spec), Mat::jordan({4}, spec)};
    if (L == "3.j") {
        Mat a = Mat::jordan({3}, spec);
        Mat b = a.scaled(P(0)) + (a * a).scaled(P(1));
        return {a, b};
    }
    if (L == "3.t") {
        Mat a = Mat::jordan({2, 1}, spec);
        Mat b(3, spec);
        b.at(0, 2) = one;
        b.at(2, 1) = P(0);
        return {a, b};
    }
    if (L == "3.s") {
        Mat a = Mat::jordan({2, 1}, spec);
        Mat b(3, spec);
        b.at(2, 1) = one;
        return {a, b};
    }
    if (L == "3.z") return {Mat(3, spec), Mat::jordan({3}, spec)};
    if (L == "2.j") {
        Mat a = Mat::jordan({2}, spec);
        return {a, a.scaled(P(0))};
    }
    if (L == "2.z") return {Mat(2, spec), Mat::jordan({2}, spec)};
    if (L == "1.z") return {Mat(1, spec), Mat(1, spec)};
    throw ValidationError("unknown family label " + L);
}

}  // namespace

MatrixPair build_canonical(const CanonForm& form, const FieldSpec& spec) {
    if (form.blocks.empty()) throw ValidationError("empty canonical form");
    if (form.total_size() > kMaxDim) throw ValidationError("canonical form exceeds dimension 4");
    if (normalize_block_order(form.blocks) != form.blocks)
        throw ValidationError("canonical form is not in normalized block order");
    Mat a(0 + form.blocks[0].size, spec), b = a;
    bool first = true;
    for (const auto& blk : form.blocks) {
        auto [ba, bb] = build_block(blk, spec);
        if (first) {
            a = ba;
            b = bb;
            first = false;
        } else {
            a = direct_sum(a, ba);
            b = direct_sum(b, bb);
        }
    }
    return MatrixPair::validated(a, b);
}

// ---------------------------------------------------------------------------
// The reduction engine
// ---------------------------------------------------------------------------

namespace {

// Running state of a reduction: (a, b) is the current pair, x the accumulated
// conjugator, so conjugate(x, input) == current at every step.
struct Work {
    Mat a, b, x;
    Work(const Mat& a0, const Mat& b0)
        : a(a0), b(b0), x(Mat::identity(a0.n(), a0.spec())) {}
    const FieldSpec& spec() const { return a.spec(); }
    void apply(const Mat& g) {
        Mat gi = inverse(g);
        a = gi * (a * g);
        b = gi * (b * g);
        x = x * g;
    }
};

struct Outcome {
    std::vector<IndecBlock> blocks;         // set when terminal
    std::vector<std::vector<int>> split;    // non-empty when decomposing
    bool terminal() const { return split.empty(); }
};

IndecBlock mk_block(const std::string& label, std::vector<Scalar> params = {}) {
    return IndecBlock{family_size(label), label, std::move(params)};
}

Mat shift(const FieldSpec& spec, int n, int i, int j, const Scalar& v) {
    Mat m = Mat::identity(n, spec);
    m.at(i, j) = v;
    return m;
}

// A = 0: blocks come straight from the Jordan type of B.
Outcome handle_zero_a(Work& w) {
    if (!w.a.is_zero()) throw InternalError("zero-A case entered with nonzero A");
    NilpotentJnf jb = nilpotent_jnf(w.b);
    w.apply(jb.p);
    Outcome out;
    for (int part : jb.type.partition) {
        switch (part) {
            case 4: out.blocks.push_back(mk_block("5.1")); break;
            case 3: out.blocks.push_back(mk_block("3.z")); break;
            case 2: out.blocks.push_back(mk_block("2.z")); break;
            default: out.blocks.push_back(mk_block("1.z")); break;
        }
    }
    return out;
}

Outcome handle_case1(Work& w) {
    CaseCoordinates c = case_coordinates(JordanType{{4}}, w.b);
    Outcome out;
    out.blocks.push_back(mk_block("1.1", {c["lambda"], c["mu"], c["nu"]}));
    return out;
}

Outcome handle_case2(Work& w) {
    CaseCoordinates c = case_coordinates(JordanType{{3, 1}}, w.b);
    Scalar alpha = c["alpha"], beta = c["beta"], sigma = c["sigma"], tau = c["tau"];
    Outcome out;
    if (sigma.is_zero() && tau.is_zero()) {
        out.split = {{0, 1, 2}, {3}};
        return out;
    }
    Mat x = Mat::identity(4, w.spec());
    if (!tau.is_zero()) {
        // x = 1, w = tau normalizes the (4,3) entry to 1; s = beta clears the
        // (1,3) entry; sigma lands as sigma*tau at (1,4).
        x.at(0, 3) = beta;
        x.at(3, 3) = tau;
        w.apply(x);
        out.blocks.push_back(mk_block("2.1", {alpha, sigma * tau}));
    } else {
        // w = sigma^{-1} scales the (1,4) entry to 1; t = -beta/sigma clears beta.
        x.at(3, 2) = -(beta / sigma);
        x.at(3, 3) = sigma.inverse();
        w.apply(x);
        out.blocks.push_back(mk_block("2.2", {alpha}));
    }
    return out;
}

Outcome handle_case3(Work& w) {
    const FieldSpec& spec = w.spec();
    Mat t = case3_transform(spec);
    w.apply(t);  // A' = [[0, I], [0, 0]]
    CaseCoordinates c = case_coordinates(JordanType{{2, 2}}, w.b);
    Mat nblk(2, spec);
    nblk.at(0, 0) = c["alpha"];
    nblk.at(0, 1) = c["lambda"];
    nblk.at(1, 0) = c["sigma"];
    nblk.at(1, 1) = c["gamma"];
    Outcome out;
    if (!nblk.is_zero()) {
        NilpotentJnf jn = nilpotent_jnf(nblk);
        w.apply(direct_sum(jn.p, jn.p));
        // N is now the 2x2 Jordan block; clear (1,3) with the free v, then
        // (1,4) with the free y.  The entries (2,3) and (2,4) become the
        // invariants tau and beta + delta.
        c = case_coordinates(JordanType{{2, 2}}, w.b);
        w.apply(shift(spec, 4, 1, 2, -c["beta"]));
        w.apply(shift(spec, 4, 0, 2, w.b.at(0, 3)));
        Scalar lam = w.b.at(1, 2), mu = w.b.at(1, 3);
        w.apply(t);  // back to the untransformed basis
        out.blocks.push_back(mk_block("3.1", {lam, mu}));
        return out;
    }
    Mat mblk(2, spec);
    mblk.at(0, 0) = c["beta"];
    mblk.at(0, 1) = c["mu"];
    mblk.at(1, 0) = c["tau"];
    mblk.at(1, 1) = c["delta"];
    Jnf2x2 jm = jnf_2x2(mblk);
    if (jm.kind == Jnf2x2::Kind::NotSplit) throw NotSplit(jm.charpoly_text());
    w.apply(direct_sum(jm.p, jm.p));
    if (jm.kind == Jnf2x2::Kind::JordanBlock) {
        w.apply(t);
        out.blocks.push_back(mk_block("3.2", {jm.l1}));
        return out;
    }
    // Diagonal: the pair splits over the invariant spans {e1,e3} and {e2,e4}.
    out.split = {{0, 2}, {1, 3}};
    return out;
}

Outcome handle_case4(Work& w) {
    const FieldSpec& spec = w.spec();
    Mat id2 = Mat::identity(2, spec);
    CaseCoordinates c = case_coordinates(JordanType{{2, 1, 1}}, w.b);
    Mat dblk(2, spec);
    dblk.at(0, 0) = c["beta"];
    dblk.at(0, 1) = c["gamma"];
    dblk.at(1, 0) = c["delta"];
    dblk.at(1, 1) = c["eta"];
    Outcome out;
    if (!dblk.is_zero()) {
        NilpotentJnf jd = nilpotent_jnf(dblk);
        w.apply(direct_sum(id2, jd.p));
        // (1,4) goes first (free s), then (3,2) (free q); both leave the
        // later invariants untouched.
        w.apply(shift(spec, 4, 0, 2, w.b.at(0, 3)));
        w.apply(shift(spec, 4, 3, 1, -w.b.at(2, 1)));
        Scalar mu = w.b.at(3, 1), sigma = w.b.at(0, 2);
        if (!mu.is_zero()) {
            w.apply(shift(spec, 4, 0, 3, w.b.at(0, 1) / mu));  // t clears alpha
            Mat scale = Mat::identity(4, spec);
            scale.at(2, 2) = mu;
            scale.at(3, 3) = mu;
            w.apply(scale);  // (4,2) becomes 1, (1,3) becomes sigma*mu
            out.blocks.push_back(mk_block("4.1", {w.b.at(0, 2)}));
            return out;
        }
        if (!sigma.is_zero()) {
            w.apply(shift(spec, 4, 2, 1, -(w.b.at(0, 1) / sigma)));  // p clears alpha
            Mat scale = Mat::identity(4, spec);
            scale.at(2, 2) = sigma.inverse();
            scale.at(3, 3) = sigma.inverse();
            w.apply(scale);  // (1,3) becomes 1
            out.blocks.push_back(mk_block("4.2"));
            return out;
        }
        // B = alpha*E12 + E34: splits into {e1,e2} and {e3,e4}
        out.split = {{0, 1}, {2, 3}};
        return out;
    }
    Scalar sigma = c["sigma"], tau = c["tau"];
    if (!sigma.is_zero() || !tau.is_zero()) {
        // normalize the row (sigma, tau) to (1, 0) inside the GL2 block
        Mat wmat(2, spec);
        if (!sigma.is_zero()) {
            wmat.at(0, 0) = sigma.inverse();
            wmat.at(0, 1) = -(sigma.inverse() * tau);
            wmat.at(1, 1) = Scalar::one(spec);
        } else {
            wmat.at(0, 1) = Scalar::one(spec);
            wmat.at(1, 0) = tau.inverse();
        }
        w.apply(direct_sum(id2, wmat));
        Scalar lam = w.b.at(2, 1), mu = w.b.at(3, 1);
        if (!lam.is_zero()) {
            Mat v(2, spec);  // [[1,0],[mu/lam,1]] clears the (4,2) entry
            v.at(0, 0) = Scalar::one(spec);
            v.at(1, 1) = Scalar::one(spec);
            v.at(1, 0) = mu / lam;
            w.apply(direct_sum(id2, v));
            w.apply(shift(spec, 4, 0, 2, w.b.at(0, 1) / lam));  // s clears alpha
            out.split = {{0, 1, 2}, {3}};  // (E12, E13 + lam*E32) + zero
            return out;
        }
        if (!mu.is_zero()) {
            Mat scale(2, spec);
            scale.at(0, 0) = Scalar::one(spec);
            scale.at(1, 1) = mu;
            w.apply(direct_sum(id2, scale));  // (4,2) becomes 1
            w.apply(shift(spec, 4, 0, 3, w.b.at(0, 1)));  // t clears alpha
            out.blocks.push_back(mk_block("4.3"));
            return out;
        }
        w.apply(shift(spec, 4, 2, 1, -w.b.at(0, 1)));  // p clears alpha
        out.split = {{0, 1, 2}, {3}};                  // (E12, E13) + zero
        return out;
    }
    Scalar lam = c["lambda"], mu = c["mu"];
    if (!lam.is_zero() || !mu.is_zero()) {
        // normalize the column (lambda, mu) to (1, 0)
        Mat wmat(2, spec);
        if (!lam.is_zero()) {
            wmat.at(0, 0) = lam;
            wmat.at(1, 0) = mu;
            wmat.at(1, 1) = Scalar::one(spec);
        } else {
            wmat.at(0, 1) = Scalar::one(spec);
            wmat.at(1, 0) = mu;
        }
        w.apply(direct_sum(id2, wmat));
        w.apply(shift(spec, 4, 0, 2, w.b.at(0, 1)));  // s clears alpha
        out.split = {{0, 1, 2}, {3}};                 // (E12, E32) + zero
        return out;
    }
    // B = alpha*E12
    out.split = {{0, 1}, {2, 3}};
    return out;
}

// n = 3, A of type (3): B is a nilpotent polynomial in J3.
Outcome handle_j3(Work& w) {
    const Mat& b = w.b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j)
            if (!b.at(i, j).is_zero()) throw InternalError("unexpected J3 commutant shape");
    if (b.at(0, 1) != b.at(1, 2)) throw InternalError("unexpected J3 commutant shape");
    Outcome out;
    out.blocks.push_back(mk_block("3.j", {b.at(0, 1), b.at(0, 2)}));
    return out;
}

// n = 3, A of type (2,1): B = b*E12 + c*E13 + d*E32.
Outcome handle_j21(Work& w) {
    const FieldSpec& spec = w.spec();
    const Mat& m = w.b;
    for (int i = 0; i < 3; ++i)
        if (!m.at(i, i).is_zero()) throw InternalError("unexpected (2,1) commutant shape");
    if (!m.at(1, 0).is_zero() || !m.at(2, 0).is_zero() || !m.at(1, 2).is_zero())
        throw InternalError("unexpected (2,1) commutant shape");
    Scalar b = m.at(0, 1), c = m.at(0, 2), d = m.at(2, 1);
    Outcome out;
    if (c.is_zero() && d.is_zero()) {
        out.split = {{0, 1}, {2}};
        return out;
    }
    Mat x = Mat::identity(3, spec);
    if (!c.is_zero()) {
        // z = c^{-1} scales c to 1 and turns d into c*d; t = -b/c clears b
        x.at(2, 1) = -(b / c);
        x.at(2, 2) = c.inverse();
        w.apply(x);
        out.blocks.push_back(mk_block("3.t", {c * d}));
    } else {
        // z = d scales d to 1; s = b clears b
        x.at(0, 2) = b;
        x.at(2, 2) = d;
        w.apply(x);
        out.blocks.push_back(mk_block("3.s"));
    }
    return out;
}

// n = 2, A of type (2): B = lambda * J2.
Outcome handle_j2(Work& w) {
    const Mat& b = w.b;
    if (!b.at(0, 0).is_zero() || !b.at(1, 0).is_zero() || !b.at(1, 1).is_zero())
        throw InternalError("unexpected J2 commutant shape");
    Outcome out;
    out.blocks.push_back(mk_block("2.j", {b.at(0, 1)}));
    return out;
}

struct SubResult {
    std::vector<IndecBlock> blocks;  // sorted
    Mat witness;
};

std::pair<Mat, Mat> expected_pair(const std::vector<IndecBlock>& blocks, const FieldSpec& spec) {
    Mat a(1, spec), b(1, spec);
    bool first = true;
    for (const auto& blk : blocks) {
        auto [pa, pb] = build_block(blk, spec);
        if (first) {
            a = pa;
            b = pb;
            first = false;
        } else {
            a = direct_sum(a, pa);
            b = direct_sum(b, pb);
        }
    }
    return {a, b};
}

SubResult canon_recursive(const Mat& a0, const Mat& b0);

// Applies a coordinate split: permutes to contiguous blocks, recurses on the
// sub-pairs, then reorders the summands canonically.
SubResult finish_split(Work& w, const std::vector<std::vector<int>>& groups) {
    const FieldSpec& spec = w.spec();
    int n = w.a.n();
    std::vector<int> order;
    std::vector<int> sizes;
    for (const auto& g : groups) {
        sizes.push_back(static_cast<int>(g.size()));
        for (int i : g) order.push_back(i);
    }
    if (static_cast<int>(order.size()) != n) throw InternalError("split does not cover all coordinates");
    w.apply(Mat::permutation(order, spec));

    // extract sub-pairs, checking the off-diagonal blocks vanish
    std::vector<SubResult> subs;
    std::vector<int> offsets;
    int off = 0;
    for (int sz : sizes) {
        offsets.push_back(off);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool in_i = i >= off && i < off + sz, in_j = j >= off && j < off + sz;
                if (in_i != in_j && (!w.a.at(i, j).is_zero() || !w.b.at(i, j).is_zero()))
                    throw InternalError("split blocks are not invariant");
            }
        Mat sa(sz, spec), sb(sz, spec);
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) {
                sa.at(i, j) = w.a.at(off + i, off + j);
                sb.at(i, j) = w.b.at(off + i, off + j);
            }
        subs.push_back(canon_recursive(sa, sb));
        off += sz;
    }

    // block-diagonal witness of the sub-reductions
    Mat diag = subs[0].witness;
    for (std::size_t k = 1; k < subs.size(); ++k) diag = direct_sum(diag, subs[k].witness);
    w.apply(diag);

    // flatten blocks, then sort summands into the canonical sequence
    std::vector<IndecBlock> blocks;
    std::vector<int> blk_off;
    int pos = 0;
    for (const auto& s : subs)
        for (const auto& blk : s.blocks) {
            blocks.push_back(blk);
            blk_off.push_back(pos);
            pos += blk.size;
        }
    std::vector<std::size_t> idx(blocks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t u, std::size_t v) {
        return block_less(blocks[u], blocks[v]);
    });
    std::vector<int> src;
    std::vector<IndecBlock> sorted;
    for (std::size_t k : idx) {
        for (int r = 0; r < blocks[k].size; ++r) src.push_back(blk_off[k] + r);
        sorted.push_back(blocks[k]);
    }
    w.apply(Mat::permutation(src, spec));

    auto [ea, eb] = expected_pair(sorted, spec);
    if (w.a != ea || w.b != eb) throw InternalError("assembled pair does not match its canonical form");
    return SubResult{std::move(sorted), w.x};
}

SubResult canon_recursive(const Mat& a0, const Mat& b0) {
    int n = a0.n();
    const FieldSpec& spec = a0.spec();
    Work w(a0, b0);
    if (n == 1) {
        if (!w.a.is_zero() || !w.b.is_zero()) throw InternalError("1x1 pair must be zero");
        return SubResult{{mk_block("1.z")}, w.x};
    }

    NilpotentJnf ja = nilpotent_jnf(w.a);
    w.apply(ja.p);
    const std::vector<int>& part = ja.type.partition;

    Outcome out;
    if (w.a.is_zero()) {
        out = handle_zero_a(w);
    } else if (n == 4) {
        if (part == std::vector<int>{4}) out = handle_case1(w);
        else if (part == std::vector<int>{3, 1}) out = handle_case2(w);
        else if (part == std::vector<int>{2, 2}) out = handle_case3(w);
        else if (part == std::vector<int>{2, 1, 1}) out = handle_case4(w);
        else throw InternalError("unexpected 4x4 Jordan type");
    } else if (n == 3) {
        if (part == std::vector<int>{3}) out = handle_j3(w);
        else if (part == std::vector<int>{2, 1}) out = handle_j21(w);
        else throw InternalError("unexpected 3x3 Jordan type");
    } else {  // n == 2
        if (part == std::vector<int>{2}) out = handle_j2(w);
        else throw InternalError("unexpected 2x2 Jordan type");
    }

    if (!out.terminal()) return finish_split(w, out.split);

    auto [ea, eb] = expected_pair(out.blocks, spec);
    if (w.a != ea || w.b != eb)
        throw InternalError("reduced pair does not match its canonical form");
    return SubResult{std::move(out.blocks), w.x};
}

CanonResult canonicalize_in_field(const MatrixPair& p) {
    SubResult s = canon_recursive(p.a, p.b);
    CanonForm form = CanonForm::of(s.blocks);
    MatrixPair canon = build_canonical(form, p.spec());
    Witness wit{s.witness};
    if (conjugate(wit.x, p.a) != canon.a || conjugate(wit.x, p.b) != canon.b)
        throw InternalError("witness verification failed");
    return CanonResult{std::move(form), std::move(wit), std::move(canon), p.spec(), false};
}

}  // namespace

CanonResult canonicalize(const MatrixPair& p, const CanonOptions& opts) {
    try {
        return canonicalize_in_field(p);
    } catch (const NotSplit&) {
        if (!opts.allow_extension || p.spec().kind != FieldKind::Prime) throw;
        CanonResult r = canonicalize_in_field(p.embedded());
        r.extended = true;
        return r;
    }
}

CanonResult small_canonicalize(const MatrixPair& p) {
    if (p.n() > 3) throw ShapeMismatch("small_canonicalize needs n <= 3");
    return canonicalize_in_field(p);
}

std::optional<Witness> similar(const MatrixPair& p1, const MatrixPair& p2,
                               const CanonOptions& opts) {
    if (p1.n() != p2.n()) throw ValidationError("non-square: pairs have different dimensions");
    if (p1.spec() != p2.spec()) throw ValidationError("field mismatch");
    CanonResult r1, r2;
    try {
        r1 = canonicalize_in_field(p1);
        r2 = canonicalize_in_field(p2);
    } catch (const NotSplit&) {
        if (!opts.allow_extension || p1.spec().kind != FieldKind::Prime) throw;
        r1 = canonicalize_in_field(p1.embedded());
        r2 = canonicalize_in_field(p2.embedded());
    }
    if (r1.form != r2.form) return std::nullopt;
    Mat x = r1.witness.x * inverse(r2.witness.x);
    if (conjugate(x, r1.field == p1.spec() ? p1.a : p1.a.embedded()) !=
            (r1.field == p1.spec() ? p2.a : p2.a.embedded()) ||
        conjugate(x, r1.field == p1.spec() ? p1.b : p1.b.embedded()) !=
            (r1.field == p1.spec() ? p2.b : p2.b.embedded()))
        throw InternalError("similarity witness failed verification");
    return Witness{x};
}

// ---------------------------------------------------------------------------
// Classification-level case reductions
// ---------------------------------------------------------------------------

namespace {

CaseReduction outcome_to_reduction(Outcome out) {
    CaseReduction r;
    if (out.terminal()) {
        if (out.blocks.size() != 1) throw InternalError("case reduction expected a single block");
        r.block = out.blocks[0];
    } else {
        r.hint = DecomposeHint{out.split};
    }
    return r;
}

}  // namespace

CaseReduction reduce_case1(const CaseCoordinates& c) {
    const FieldSpec& spec = c.coords[0].second.spec();
    Work w(canonical_nilpotent(JordanType{{4}}, spec), coords_to_matrix(c, spec));
    return outcome_to_reduction(handle_case1(w));
}

CaseReduction reduce_case2(const CaseCoordinates& c) {
    const FieldSpec& spec = c.coords[0].second.spec();
    Work w(canonical_nilpotent(JordanType{{3, 1}}, spec), coords_to_matrix(c, spec));
    return outcome_to_reduction(handle_case2(w));
}

CaseReduction reduce_case3(const CaseCoordinates& c) {
    const FieldSpec& spec = c.coords[0].second.spec();
    Mat t = case3_transform(spec);
    Mat b = t * coords_to_matrix(c, spec) * t;  // untransformed-basis input
    Work w(canonical_nilpotent(JordanType{{2, 2}}, spec), b);
    return outcome_to_reduction(handle_case3(w));
}

CaseReduction reduce_case4(const CaseCoordinates& c) {
    const FieldSpec& spec = c.coords[0].second.spec();
    Work w(canonical_nilpotent(JordanType{{2, 1, 1}}, spec), coords_to_matrix(c, spec));
    return outcome_to_reduction(handle_case4(w));
}

std::vector<IndecBlock> reduce_case5(const MatrixPair& p) {
    if (!p.a.is_zero()) throw ShapeMismatch("case 5 needs A = 0");
    Work w(p.a, p.b);
    return handle_zero_a(w).blocks;
}

}  // namespace nilpair
