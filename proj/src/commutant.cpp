#include "nilpair/commutant.hpp"

namespace nilpair {

LinSpace commutant(const Mat& a) { return solve_matrix_equations({a}); }

LinSpace pair_commutant(const MatrixPair& p) { return solve_matrix_equations({p.a, p.b}); }

bool stab_contains(const Mat& a, const Mat& x) {
    return is_invertible(x) && x * a == a * x;
}

bool nilc_contains(const Mat& a, const Mat& b) {
    return is_nilpotent(b) && a * b == b * a;
}

const Scalar& CaseCoordinates::operator[](const std::string& name) const {
    for (const auto& [n, v] : coords)
        if (n == name) return v;
    throw InternalError("no coordinate named " + name);
}

const Scalar& StabParams::operator[](const std::string& name) const {
    for (const auto& [n, v] : coords)
        if (n == name) return v;
    throw InternalError("no stabilizer parameter named " + name);
}

Mat case3_transform(const FieldSpec& spec) {
    return Mat::permutation({0, 2, 1, 3}, spec);
}

Mat canonical_nilpotent(const JordanType& jt, const FieldSpec& spec, bool transformed_22) {
    Mat a = Mat::jordan(jt.partition, spec);
    if (transformed_22) {
        if (jt.partition != std::vector<int>{2, 2})
            throw ShapeMismatch("transformed shape only exists for type (2,2)");
        Mat t = case3_transform(spec);
        a = conjugate(t, a);
    }
    return a;
}

namespace {

void expect_zero(const Mat& b, int i, int j) {
    if (!b.at(i, j).is_zero())
        throw NotInNilC("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") must be zero");
}

void expect_equal(const Mat& b, int i1, int j1, int i2, int j2) {
    if (b.at(i1, j1) != b.at(i2, j2))
        throw NotInNilC("entries (" + std::to_string(i1 + 1) + "," + std::to_string(j1 + 1) +
                        ") and (" + std::to_string(i2 + 1) + "," + std::to_string(j2 + 1) +
                        ") must agree");
}

}  // namespace

CaseCoordinates case_coordinates(const JordanType& jt, const Mat& b) {
    if (b.n() != 4 || jt.sum() != 4) throw ShapeMismatch("case coordinates are for 4x4 pairs");
    CaseCoordinates out;
    out.jt = jt;
    const auto& part = jt.partition;
    auto push = [&](const char* name, const Scalar& v) { out.coords.emplace_back(name, v); };

    if (part == std::vector<int>{4}) {
        // b = lambda*J + mu*J^2 + nu*J^3
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j <= i; ++j) expect_zero(b, i, j);
        expect_equal(b, 0, 1, 1, 2);
        expect_equal(b, 0, 1, 2, 3);
        expect_equal(b, 0, 2, 1, 3);
        push("lambda", b.at(0, 1));
        push("mu", b.at(0, 2));
        push("nu", b.at(0, 3));
        return out;
    }
    if (part == std::vector<int>{3, 1}) {
        for (int i = 0; i < 4; ++i) expect_zero(b, i, i);
        expect_zero(b, 1, 0);
        expect_zero(b, 2, 0);
        expect_zero(b, 3, 0);
        expect_zero(b, 2, 1);
        expect_zero(b, 3, 1);
        expect_zero(b, 1, 3);
        expect_zero(b, 2, 3);
        expect_equal(b, 0, 1, 1, 2);
        push("alpha", b.at(0, 1));
        push("beta", b.at(0, 2));
        push("sigma", b.at(0, 3));
        push("tau", b.at(3, 2));
        return out;
    }
    if (part == std::vector<int>{2, 2}) {
        // transformed basis: b = [[N, M], [0, N]] with N^2 = 0
        for (int i = 2; i < 4; ++i)
            for (int j = 0; j < 2; ++j) expect_zero(b, i, j);
        expect_equal(b, 0, 0, 2, 2);
        expect_equal(b, 0, 1, 2, 3);
        expect_equal(b, 1, 0, 3, 2);
        expect_equal(b, 1, 1, 3, 3);
        Scalar al = b.at(0, 0), la = b.at(0, 1), si = b.at(1, 0), ga = b.at(1, 1);
        // N^2 = 0
        if (!(al * al + la * si).is_zero() || !(al * la + la * ga).is_zero() ||
            !(si * al + ga * si).is_zero() || !(si * la + ga * ga).is_zero())
            throw NotInNilC("upper-left 2x2 block must square to zero");
        push("alpha", al);
        push("lambda", la);
        push("sigma", si);
        push("gamma", ga);
        push("beta", b.at(0, 2));
        push("mu", b.at(0, 3));
        push("tau", b.at(1, 2));
        push("delta", b.at(1, 3));
        return out;
    }
    if (part == std::vector<int>{2, 1, 1}) {
        expect_zero(b, 0, 0);
        for (int j = 0; j < 4; ++j) expect_zero(b, 1, j);
        expect_zero(b, 2, 0);
        expect_zero(b, 3, 0);
        Scalar be = b.at(2, 2), ga = b.at(2, 3), de = b.at(3, 2), et = b.at(3, 3);
        if (!(be * be + ga * de).is_zero() || !(be * ga + ga * et).is_zero() ||
            !(de * be + et * de).is_zero() || !(de * ga + et * et).is_zero())
            throw NotInNilC("lower-right 2x2 block must square to zero");
        push("alpha", b.at(0, 1));
        push("sigma", b.at(0, 2));
        push("tau", b.at(0, 3));
        push("lambda", b.at(2, 1));
        push("mu", b.at(3, 1));
        push("beta", be);
        push("gamma", ga);
        push("delta", de);
        push("eta", et);
        return out;
    }
    if (part == std::vector<int>{1, 1, 1, 1}) {
        if (!is_nilpotent(b)) throw NotInNilC("matrix must be nilpotent");
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                push(("b" + std::to_string(i + 1) + std::to_string(j + 1)).c_str(), b.at(i, j));
        return out;
    }
    throw ShapeMismatch("unknown 4x4 Jordan type " + jt.str());
}

Mat coords_to_matrix(const CaseCoordinates& c, const FieldSpec& spec) {
    Mat b(4, spec);
    const auto& part = c.jt.partition;
    if (part == std::vector<int>{4}) {
        Mat j = Mat::jordan({4}, spec);
        return j.scaled(c["lambda"]) + (j * j).scaled(c["mu"]) + (j * j * j).scaled(c["nu"]);
    }
    if (part == std::vector<int>{3, 1}) {
        b.at(0, 1) = c["alpha"];
        b.at(1, 2) = c["alpha"];
        b.at(0, 2) = c["beta"];
        b.at(0, 3) = c["sigma"];
        b.at(3, 2) = c["tau"];
        return b;
    }
    if (part == std::vector<int>{2, 2}) {
        b.at(0, 0) = c["alpha"];
        b.at(0, 1) = c["lambda"];
        b.at(1, 0) = c["sigma"];
        b.at(1, 1) = c["gamma"];
        b.at(2, 2) = c["alpha"];
        b.at(2, 3) = c["lambda"];
        b.at(3, 2) = c["sigma"];
        b.at(3, 3) = c["gamma"];
        b.at(0, 2) = c["beta"];
        b.at(0, 3) = c["mu"];
        b.at(1, 2) = c["tau"];
        b.at(1, 3) = c["delta"];
        return b;
    }
    if (part == std::vector<int>{2, 1, 1}) {
        b.at(0, 1) = c["alpha"];
        b.at(0, 2) = c["sigma"];
        b.at(0, 3) = c["tau"];
        b.at(2, 1) = c["lambda"];
        b.at(3, 1) = c["mu"];
        b.at(2, 2) = c["beta"];
        b.at(2, 3) = c["gamma"];
        b.at(3, 2) = c["delta"];
        b.at(3, 3) = c["eta"];
        return b;
    }
    if (part == std::vector<int>{1, 1, 1, 1}) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                b.at(i, j) = c["b" + std::to_string(i + 1) + std::to_string(j + 1)];
        return b;
    }
    throw ShapeMismatch("unknown 4x4 Jordan type");
}

StabParams stab_params(const JordanType& jt, const Mat& x) {
    if (x.n() != 4 || jt.sum() != 4) throw ShapeMismatch("stabilizer parameters are for 4x4");
    StabParams out;
    out.jt = jt;
    const auto& part = jt.partition;
    auto push = [&](const char* name, const Scalar& v) { out.coords.emplace_back(name, v); };
    if (part == std::vector<int>{4}) {
        push("x", x.at(0, 0));
        push("y", x.at(0, 1));
        push("z", x.at(0, 2));
        push("w", x.at(0, 3));
        return out;
    }
    if (part == std::vector<int>{3, 1}) {
        push("x", x.at(0, 0));
        push("y", x.at(0, 1));
        push("z", x.at(0, 2));
        push("w", x.at(3, 3));
        push("s", x.at(0, 3));
        push("t", x.at(3, 2));
        return out;
    }
    if (part == std::vector<int>{2, 2}) {
        push("x", x.at(0, 0));
        push("s", x.at(0, 1));
        push("u", x.at(1, 0));
        push("z", x.at(1, 1));
        push("y", x.at(0, 2));
        push("t", x.at(0, 3));
        push("v", x.at(1, 2));
        push("w", x.at(1, 3));
        return out;
    }
    if (part == std::vector<int>{2, 1, 1}) {
        push("x", x.at(0, 0));
        push("y", x.at(0, 1));
        push("s", x.at(0, 2));
        push("t", x.at(0, 3));
        push("p", x.at(2, 1));
        push("q", x.at(3, 1));
        push("z", x.at(2, 2));
        push("u", x.at(2, 3));
        push("v", x.at(3, 2));
        push("w", x.at(3, 3));
        return out;
    }
    if (part == std::vector<int>{1, 1, 1, 1}) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                push(("x" + std::to_string(i + 1) + std::to_string(j + 1)).c_str(), x.at(i, j));
        return out;
    }
    throw ShapeMismatch("unknown 4x4 Jordan type");
}

Mat stab_matrix(const StabParams& sp, const FieldSpec& spec) {
    Mat x(4, spec);
    const auto& part = sp.jt.partition;
    if (part == std::vector<int>{4}) {
        for (int d = 0; d < 4; ++d) x.at(d, d) = sp["x"];
        for (int d = 0; d < 3; ++d) x.at(d, d + 1) = sp["y"];
        for (int d = 0; d < 2; ++d) x.at(d, d + 2) = sp["z"];
        x.at(0, 3) = sp["w"];
        return x;
    }
    if (part == std::vector<int>{3, 1}) {
        for (int d = 0; d < 3; ++d) x.at(d, d) = sp["x"];
        x.at(0, 1) = sp["y"];
        x.at(1, 2) = sp["y"];
        x.at(0, 2) = sp["z"];
        x.at(0, 3) = sp["s"];
        x.at(3, 2) = sp["t"];
        x.at(3, 3) = sp["w"];
        return x;
    }
    if (part == std::vector<int>{2, 2}) {
        // transformed basis: [[P, Q], [0, P]]
        x.at(0, 0) = sp["x"];
        x.at(0, 1) = sp["s"];
        x.at(1, 0) = sp["u"];
        x.at(1, 1) = sp["z"];
        x.at(2, 2) = sp["x"];
        x.at(2, 3) = sp["s"];
        x.at(3, 2) = sp["u"];
        x.at(3, 3) = sp["z"];
        x.at(0, 2) = sp["y"];
        x.at(0, 3) = sp["t"];
        x.at(1, 2) = sp["v"];
        x.at(1, 3) = sp["w"];
        return x;
    }
    if (part == std::vector<int>{2, 1, 1}) {
        x.at(0, 0) = sp["x"];
        x.at(1, 1) = sp["x"];
        x.at(0, 1) = sp["y"];
        x.at(0, 2) = sp["s"];
        x.at(0, 3) = sp["t"];
        x.at(2, 1) = sp["p"];
        x.at(3, 1) = sp["q"];
        x.at(2, 2) = sp["z"];
        x.at(2, 3) = sp["u"];
        x.at(3, 2) = sp["v"];
        x.at(3, 3) = sp["w"];
        return x;
    }
    if (part == std::vector<int>{1, 1, 1, 1}) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                x.at(i, j) = sp["x" + std::to_string(i + 1) + std::to_string(j + 1)];
        return x;
    }
    throw ShapeMismatch("unknown 4x4 Jordan type");
}

bool stab_params_valid(const StabParams& sp) {
    const auto& part = sp.jt.partition;
    auto nonzero = [&](const char* n) { return !sp[n].is_zero(); };
    auto det2 = [&](const char* a, const char* b, const char* c, const char* d) {
        return sp[a] * sp[d] - sp[b] * sp[c];
    };
    if (part == std::vector<int>{4}) return nonzero("x");
    if (part == std::vector<int>{3, 1}) return nonzero("x") && nonzero("w");
    if (part == std::vector<int>{2, 2}) return !det2("x", "s", "u", "z").is_zero();
    if (part == std::vector<int>{2, 1, 1})
        return nonzero("x") && !det2("z", "u", "v", "w").is_zero();
    if (part == std::vector<int>{1, 1, 1, 1}) {
        Mat x = stab_matrix(sp, sp.coords[0].second.spec());
        return is_invertible(x);
    }
    throw ShapeMismatch("unknown 4x4 Jordan type");
}

}  // namespace nilpair
