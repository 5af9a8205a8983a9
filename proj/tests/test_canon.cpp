#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nilpair/canon.hpp"

using namespace nilpair;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(mpq_class(n, d)); }

IndecBlock blk(const std::string& label, std::vector<Scalar> params = {}) {
    return IndecBlock{family_size(label), label, std::move(params)};
}

CanonForm form_of(std::vector<IndecBlock> blocks) { return CanonForm::of(std::move(blocks)); }

Mat random_invertible(int n, const FieldSpec& spec, std::mt19937_64& rng) {
    Mat m(n, spec);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = Scalar::of_int(spec, static_cast<long>(rng() % 5) - 2);
    } while (!is_invertible(m));
    return m;
}

std::vector<Scalar> random_params(const std::string& label, const FieldSpec& spec,
                                  std::mt19937_64& rng) {
    std::vector<Scalar> out;
    for (int k = 0; k < family_param_count(label); ++k)
        out.push_back(Scalar::of_int(spec, static_cast<long>(rng() % 5) - 2));
    return out;
}

// random canonical form of total size 4 (possibly several blocks)
CanonForm random_form(const FieldSpec& spec, std::mt19937_64& rng) {
    static const std::vector<std::vector<std::string>> size_pool = {
        {"1.1", "2.1", "2.2", "3.1", "3.2", "4.1", "4.2", "4.3", "5.1"},
        {"3.j", "3.t", "3.s", "3.z"},
        {"2.j", "2.z"},
        {"1.z"}};
    std::vector<IndecBlock> blocks;
    int remaining = 4;
    while (remaining > 0) {
        int size = 1 + static_cast<int>(rng() % remaining);
        const auto& pool = size_pool[4 - size];
        const std::string& label = pool[rng() % pool.size()];
        blocks.push_back(blk(label, random_params(label, spec, rng)));
        remaining -= size;
    }
    return CanonForm::of(std::move(blocks));
}

void check_result(const MatrixPair& input, const CanonResult& r) {
    MatrixPair rebuilt = build_canonical(r.form, r.field);
    CHECK(rebuilt == r.pair);
    CHECK(conjugate(r.witness.x, input.a) == r.pair.a);
    CHECK(conjugate(r.witness.x, input.b) == r.pair.b);
}

}  // namespace

TEST_CASE("single regular block: parameters read straight off") {
    FieldSpec spec = FieldSpec::rationals();
    Mat j = Mat::jordan({4}, spec);
    Mat b = j.scaled(q(2)) + (j * j).scaled(q(5)) + (j * j * j).scaled(q(7));
    MatrixPair p = MatrixPair::validated(j, b);
    CanonResult r = canonicalize(p);
    CHECK(r.form == form_of({blk("1.1", {q(2), q(5), q(7)})}));
    CHECK(r.witness.x == Mat::identity(4, spec));
    check_result(p, r);
}

TEST_CASE("zero first component: Jordan split of the second") {
    FieldSpec spec = FieldSpec::rationals();
    MatrixPair p = MatrixPair::validated(Mat(4, spec), Mat::jordan({4}, spec));
    CHECK(canonicalize(p).form == form_of({blk("5.1")}));

    MatrixPair p2 = MatrixPair::validated(Mat(4, spec), Mat(4, spec));
    CHECK(canonicalize(p2).form ==
          form_of({blk("1.z"), blk("1.z"), blk("1.z"), blk("1.z")}));

    MatrixPair p3 = MatrixPair::validated(Mat(4, spec), Mat::jordan({2, 2}, spec));
    CHECK(canonicalize(p3).form == form_of({blk("2.z"), blk("2.z")}));
}

TEST_CASE("case (3,1) reductions") {
    FieldSpec spec = FieldSpec::rationals();
    auto coords = [&](long a, long b, long s, long t) {
        CaseCoordinates c;
        c.jt = JordanType{{3, 1}};
        c.coords = {{"alpha", q(a)}, {"beta", q(b)}, {"sigma", q(s)}, {"tau", q(t)}};
        return c;
    };

    CaseReduction r1 = reduce_case2(coords(1, 5, 2, 3));
    REQUIRE(r1.block.has_value());
    CHECK(*r1.block == blk("2.1", {q(1), q(6)}));

    CaseReduction r2 = reduce_case2(coords(0, 7, 1, 0));
    REQUIRE(r2.block.has_value());
    CHECK(*r2.block == blk("2.2", {q(0)}));

    CaseReduction r3 = reduce_case2(coords(1, 1, 0, 0));
    REQUIRE(r3.hint.has_value());
    CHECK(r3.hint->parts == std::vector<std::vector<int>>{{0, 1, 2}, {3}});

    // and end to end: the decomposable branch produces (J3, J3 + J3^2) + zero
    MatrixPair p = MatrixPair::validated(Mat::jordan({3, 1}, spec),
                                         coords_to_matrix(coords(1, 1, 0, 0), spec));
    CanonResult res = canonicalize(p);
    CHECK(res.form == form_of({blk("3.j", {q(1), q(1)}), blk("1.z")}));
    check_result(p, res);

    // tau != 0 with sigma = 0 keeps family 2.1 with second parameter 0
    CaseReduction r4 = reduce_case2(coords(2, 3, 0, 5));
    REQUIRE(r4.block.has_value());
    CHECK(*r4.block == blk("2.1", {q(2), q(0)}));
}

TEST_CASE("case (2,2) reductions") {
    auto coords22 = [&](std::vector<long> n, std::vector<long> m) {
        CaseCoordinates c;
        c.jt = JordanType{{2, 2}};
        c.coords = {{"alpha", q(n[0])}, {"lambda", q(n[1])}, {"sigma", q(n[2])},
                    {"gamma", q(n[3])}, {"beta", q(m[0])},   {"mu", q(m[1])},
                    {"tau", q(m[2])},   {"delta", q(m[3])}};
        return c;
    };

    // N = J2, (tau, beta, delta) = (2, 1, 4) -> 3.1(2, 5)
    CaseReduction r1 = reduce_case3(coords22({0, 1, 0, 0}, {1, 0, 2, 4}));
    REQUIRE(r1.block.has_value());
    CHECK(*r1.block == blk("3.1", {q(2), q(5)}));

    // N = 0, M a Jordan block at 3 -> 3.2(3)
    CaseReduction r2 = reduce_case3(coords22({0, 0, 0, 0}, {3, 1, 0, 3}));
    REQUIRE(r2.block.has_value());
    CHECK(*r2.block == blk("3.2", {q(3)}));

    // N = 0, M with distinct rational eigenvalues -> split {0,2} | {1,3}
    CaseReduction r3 = reduce_case3(coords22({0, 0, 0, 0}, {1, 0, 0, 2}));
    REQUIRE(r3.hint.has_value());
    CHECK(r3.hint->parts == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

    // N = 0, M irreducible over GF(2) -> NotSplit with the polynomial
    FieldSpec f2 = FieldSpec::prime(2);
    CaseCoordinates cg;
    cg.jt = JordanType{{2, 2}};
    auto g = [&](long v) { return Scalar::gfp(f2, v); };
    cg.coords = {{"alpha", g(0)}, {"lambda", g(0)}, {"sigma", g(0)}, {"gamma", g(0)},
                 {"beta", g(0)},  {"mu", g(1)},     {"tau", g(1)},   {"delta", g(1)}};
    CHECK_THROWS_WITH_AS(reduce_case3(cg), "polynomial does not split: t^2+t+1", NotSplit);

    // same pair over GF(4) decomposes into conjugate scalar lines
    Mat t4 = case3_transform(FieldSpec::quadratic(2));
    Mat bq(4, FieldSpec::quadratic(2));
    bq.at(0, 3) = Scalar::gfp2(bq.spec(), 0, 1);
    bq.at(1, 2) = Scalar::gfp2(bq.spec(), 0, 1);
    bq.at(1, 3) = Scalar::gfp2(bq.spec(), 0, 1);
    MatrixPair p4 = MatrixPair::validated(Mat::jordan({2, 2}, bq.spec()),
                                          conjugate(t4, bq) /* transformed to plain basis */);
    CanonResult res4 = canonicalize(p4);
    CHECK(res4.form == form_of({blk("2.j", {Scalar::gfp2(bq.spec(), 1, 0)}),
                                blk("2.j", {Scalar::gfp2(bq.spec(), 1, 1)})}));
    check_result(p4, res4);
}

TEST_CASE("case (2,1,1) reductions") {
    FieldSpec spec = FieldSpec::rationals();
    auto coords211 = [&](long al, long si, long ta, long la, long mu, std::vector<long> d) {
        CaseCoordinates c;
        c.jt = JordanType{{2, 1, 1}};
        c.coords = {{"alpha", q(al)}, {"sigma", q(si)}, {"tau", q(ta)},
                    {"lambda", q(la)}, {"mu", q(mu)},   {"beta", q(d[0])},
                    {"gamma", q(d[1])}, {"delta", q(d[2])}, {"eta", q(d[3])}};
        return c;
    };

    // lower block nonzero, (sigma, mu) = (2, 3) -> 4.1(6)
    CaseReduction r1 = reduce_case4(coords211(0, 2, 0, 0, 3, {0, 1, 0, 0}));
    REQUIRE(r1.block.has_value());
    CHECK(*r1.block == blk("4.1", {q(6)}));

    // lower block nonzero, mu = 0, sigma = 1 -> 4.2
    CaseReduction r2 = reduce_case4(coords211(0, 1, 0, 0, 0, {0, 1, 0, 0}));
    REQUIRE(r2.block.has_value());
    CHECK(*r2.block == blk("4.2"));

    // lower block zero, sigma = tau = 0, (lambda, mu) = (0, 1): decomposes
    CaseReduction r3 = reduce_case4(coords211(0, 0, 0, 0, 1, {0, 0, 0, 0}));
    REQUIRE(r3.hint.has_value());
    CHECK(r3.hint->parts == std::vector<std::vector<int>>{{0, 1, 2}, {3}});
    MatrixPair p3 = MatrixPair::validated(
        Mat::jordan({2, 1, 1}, spec), coords_to_matrix(coords211(0, 0, 0, 0, 1, {0, 0, 0, 0}), spec));
    CanonResult res3 = canonicalize(p3);
    CHECK(res3.form == form_of({blk("3.s"), blk("1.z")}));
    check_result(p3, res3);

    // lower block zero, sigma/tau present: lambda transforms to
    // sigma*lambda + tau*mu, so 4.3 needs that combination to vanish
    CaseReduction r4 = reduce_case4(coords211(2, 1, 3, -15, 5, {0, 0, 0, 0}));
    REQUIRE(r4.block.has_value());
    CHECK(*r4.block == blk("4.3"));

    // lower block zero, sigma/tau present, lambda != 0: decomposes with the
    // lambda parameter surviving as the size-3 delta invariant
    CaseCoordinates c5 = coords211(1, 1, 0, 7, 3, {0, 0, 0, 0});
    CaseReduction r5 = reduce_case4(c5);
    REQUIRE(r5.hint.has_value());
    MatrixPair p5 =
        MatrixPair::validated(Mat::jordan({2, 1, 1}, spec), coords_to_matrix(c5, spec));
    CanonResult res5 = canonicalize(p5);
    CHECK(res5.form == form_of({blk("3.t", {q(7)}), blk("1.z")}));
    check_result(p5, res5);
}

TEST_CASE("case (1,1,1,1) emits one zero-type block per Jordan part") {
    FieldSpec spec = FieldSpec::rationals();
    auto run = [&](const std::vector<int>& part) {
        MatrixPair p = MatrixPair::validated(Mat(4, spec), Mat::jordan(part, spec));
        return reduce_case5(p);
    };
    CHECK(run({4}) == std::vector<IndecBlock>{blk("5.1")});
    CHECK(run({2, 2}) == std::vector<IndecBlock>{blk("2.z"), blk("2.z")});
    CHECK(run({1, 1, 1, 1}) ==
          std::vector<IndecBlock>{blk("1.z"), blk("1.z"), blk("1.z"), blk("1.z")});
}

TEST_CASE("one-dimensional pairs") {
    for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::prime(2)}) {
        MatrixPair p = MatrixPair::validated(Mat(1, spec), Mat(1, spec));
        CanonResult r = canonicalize(p);
        CHECK(r.form == form_of({blk("1.z")}));
        CHECK(r.witness.x == Mat::identity(1, spec));
    }
}

TEST_CASE("no quadratic towers: a GF(p^2) input that fails to split is terminal") {
    FieldSpec f4 = FieldSpec::quadratic(2);
    // x^2 + x + t has no root in GF(4), so M = [[0, t], [1, 1]] cannot be
    // put in Jordan form without a further extension
    Scalar t_elem = Scalar::gfp2(f4, 1, 0);
    REQUIRE_FALSE(quadratic_roots(Scalar::one(f4), t_elem).split);
    Mat bt(4, f4);
    bt.at(0, 3) = t_elem;
    bt.at(1, 2) = Scalar::one(f4);
    bt.at(1, 3) = Scalar::one(f4);
    Mat t = case3_transform(f4);
    MatrixPair p = MatrixPair::validated(Mat::jordan({2, 2}, f4), conjugate(t, bt));
    CanonOptions ext;
    ext.allow_extension = true;
    CHECK_THROWS_AS(canonicalize(p, ext), NotSplit);
}

TEST_CASE("small sizes") {
    FieldSpec spec = FieldSpec::rationals();
    Mat j2 = Mat::jordan({2}, spec);
    CanonResult r1 = small_canonicalize(MatrixPair::validated(j2, j2.scaled(q(5))));
    CHECK(r1.form == form_of({blk("2.j", {q(5)})}));
    CHECK(r1.witness.x == Mat::identity(2, spec));

    CanonResult r2 = small_canonicalize(MatrixPair::validated(Mat(2, spec), j2));
    CHECK(r2.form == form_of({blk("2.z")}));

    // (E12, E13 + delta E32) keeps delta as an invariant
    for (long delta : {-2, 0, 1, 3}) {
        Mat a = Mat::jordan({2, 1}, spec);
        Mat b(3, spec);
        b.at(0, 2) = q(1);
        b.at(2, 1) = q(delta);
        MatrixPair p = MatrixPair::validated(a, b);
        CanonResult r = small_canonicalize(p);
        CHECK(r.form == form_of({blk("3.t", {q(delta)})}));
        CHECK(r.witness.x == Mat::identity(3, spec));
    }

    // generic members of the (2,1) fiber at n = 3
    Mat a = Mat::jordan({2, 1}, spec);
    Mat b(3, spec);
    b.at(0, 1) = q(4);
    b.at(0, 2) = q(3);
    b.at(2, 1) = q(2);
    CanonResult r3 = small_canonicalize(MatrixPair::validated(a, b));
    CHECK(r3.form == form_of({blk("3.t", {q(6)})}));
    check_result(MatrixPair::validated(a, b), r3);

    Mat b2(3, spec);
    b2.at(0, 1) = q(4);
    b2.at(2, 1) = q(2);
    CanonResult r4 = small_canonicalize(MatrixPair::validated(a, b2));
    CHECK(r4.form == form_of({blk("3.s")}));

    Mat b3(3, spec);
    b3.at(0, 1) = q(4);
    CanonResult r5 = small_canonicalize(MatrixPair::validated(a, b3));
    CHECK(r5.form == form_of({blk("2.j", {q(4)}), blk("1.z")}));
}

TEST_CASE("block ordering is canonical and deterministic") {
    std::vector<IndecBlock> blocks = {blk("1.z"), blk("2.1", {q(0), q(1)})};
    auto sorted = normalize_block_order(blocks);
    CHECK(sorted[0].label == "2.1");
    CHECK(sorted[1].label == "1.z");

    std::vector<IndecBlock> params = {blk("2.j", {q(1)}), blk("2.j", {q(0)})};
    auto sorted2 = normalize_block_order(params);
    CHECK(sorted2[0].params[0] == q(0));
    CHECK(sorted2[1].params[0] == q(1));

    std::mt19937_64 rng(307);
    std::vector<IndecBlock> pool = {blk("2.j", {q(1)}), blk("2.z"), blk("1.z"),
                                    blk("2.j", {q(-1)})};
    auto expect = normalize_block_order(pool);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(pool.begin(), pool.end(), rng);
        CHECK(normalize_block_order(pool) == expect);
    }
}

TEST_CASE("build_canonical places the displayed entries") {
    FieldSpec spec = FieldSpec::rationals();
    MatrixPair p11 = build_canonical(form_of({blk("1.1", {q(2), q(5), q(7)})}), spec);
    CHECK(p11.a == Mat::jordan({4}, spec));
    CHECK(p11.b.at(0, 1) == q(2));
    CHECK(p11.b.at(1, 2) == q(2));
    CHECK(p11.b.at(2, 3) == q(2));
    CHECK(p11.b.at(0, 2) == q(5));
    CHECK(p11.b.at(1, 3) == q(5));
    CHECK(p11.b.at(0, 3) == q(7));

    MatrixPair p42 = build_canonical(form_of({blk("4.2")}), spec);
    CHECK(p42.b == Mat::unit(4, spec, 0, 2) + Mat::unit(4, spec, 2, 3));

    MatrixPair p31 = build_canonical(form_of({blk("3.1", {q(2), q(3)})}), spec);
    CHECK(p31.b.at(0, 2) == q(1));
    CHECK(p31.b.at(1, 3) == q(1));
    CHECK(p31.b.at(2, 1) == q(2));
    CHECK(p31.b.at(2, 3) == q(3));

    CHECK_THROWS_AS(build_canonical(form_of({blk("1.1", {q(1), q(0), q(0)}), blk("1.z")}), spec),
                    ValidationError);
}

TEST_CASE("canonicalize is idempotent with identity witness on every family") {
    std::mt19937_64 rng(311);
    for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::prime(3)}) {
        for (const std::string& label : family_labels_all()) {
            for (int trial = 0; trial < 4; ++trial) {
                CanonForm form = form_of({blk(label, random_params(label, spec, rng))});
                MatrixPair p = build_canonical(form, spec);
                if (p.n() != 4) continue;  // top-level canonicalize below handles n = 4
                CanonResult r = canonicalize(p);
                CHECK(r.form == form);
                CHECK(r.witness.x == Mat::identity(4, spec));
            }
        }
        // multi-block forms, idempotence through the split machinery
        for (int trial = 0; trial < 60; ++trial) {
            CanonForm form = random_form(spec, rng);
            if (form.total_size() != 4) continue;
            MatrixPair p = build_canonical(form, spec);
            CanonResult r = canonicalize(p);
            CHECK(r.form == form);
            CHECK(r.witness.x == Mat::identity(4, spec));
        }
    }
}

TEST_CASE("canonical form is invariant under conjugation of the input") {
    std::mt19937_64 rng(313);
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)}) {
        for (int trial = 0; trial < 150; ++trial) {
            CanonForm form = random_form(spec, rng);
            MatrixPair p = build_canonical(form, spec);
            Mat x = random_invertible(4, spec, rng);
            MatrixPair moved = MatrixPair::validated(conjugate(x, p.a), conjugate(x, p.b));
            CanonResult r = canonicalize(moved);
            CHECK(r.form == form);
            check_result(moved, r);
        }
    }
}

TEST_CASE("similarity") {
    FieldSpec spec = FieldSpec::rationals();
    std::mt19937_64 rng(317);
    CanonForm form = random_form(spec, rng);
    MatrixPair p = build_canonical(form, spec);
    Mat x = random_invertible(4, spec, rng);
    MatrixPair moved = MatrixPair::validated(conjugate(x, p.a), conjugate(x, p.b));
    auto wit = similar(p, moved);
    REQUIRE(wit.has_value());
    CHECK(conjugate(wit->x, p.a) == moved.a);
    CHECK(conjugate(wit->x, p.b) == moved.b);

    MatrixPair left = MatrixPair::validated(Mat::jordan({4}, spec), Mat(4, spec));
    MatrixPair right = MatrixPair::validated(Mat(4, spec), Mat::jordan({4}, spec));
    CHECK_FALSE(similar(left, right).has_value());

    MatrixPair f21 = build_canonical(form_of({blk("2.1", {q(0), q(1)})}), spec);
    MatrixPair f22 = build_canonical(form_of({blk("2.2", {q(0)})}), spec);
    CHECK_FALSE(similar(f21, f22).has_value());

    MatrixPair small = build_canonical(form_of({blk("2.j", {q(1)})}), spec);
    CHECK_THROWS_AS(similar(p, small), ValidationError);
}

TEST_CASE("missing eigenvalues: terminal over Q, extension over GF(p)") {
    // A of type (2,2) with B = [[0, M], [0, 0]] in the transformed basis and
    // M irreducible
    FieldSpec spec = FieldSpec::rationals();
    Mat t = case3_transform(spec);
    Mat bt(4, spec);
    bt.at(0, 3) = q(1);
    bt.at(1, 2) = q(-1);  // M = [[0, 1], [-1, 0]], char poly t^2 + 1
    MatrixPair p = MatrixPair::validated(Mat::jordan({2, 2}, spec), conjugate(t, bt));
    CHECK_THROWS_AS(canonicalize(p), NotSplit);
    try {
        canonicalize(p);
    } catch (const NotSplit& e) {
        CHECK(e.polynomial == "t^2+1");
    }
    CanonOptions ext;
    ext.allow_extension = true;
    CHECK_THROWS_AS(canonicalize(p, ext), NotSplit);  // no extension over Q

    FieldSpec f2 = FieldSpec::prime(2);
    Mat bt2(4, f2);
    bt2.at(0, 3) = Scalar::one(f2);
    bt2.at(1, 2) = Scalar::one(f2);
    bt2.at(1, 3) = Scalar::one(f2);
    MatrixPair p2 = MatrixPair::validated(Mat::jordan({2, 2}, f2),
                                          conjugate(case3_transform(f2), bt2));
    CanonResult r = canonicalize(p2, ext);
    CHECK(r.extended);
    CHECK(r.field == FieldSpec::quadratic(2));
    REQUIRE(r.form.blocks.size() == 2);
    CHECK(r.form.blocks[0].label == "2.j");
    CHECK(r.form.blocks[1].label == "2.j");
    CHECK(conjugate(r.witness.x, p2.a.embedded()) == r.pair.a);
    CHECK(conjugate(r.witness.x, p2.b.embedded()) == r.pair.b);
}

TEST_CASE("conjugating by stabilizer members fixes the regular-case coordinates") {
    FieldSpec spec = FieldSpec::prime(5);
    std::mt19937_64 rng(331);
    Mat j4 = Mat::jordan({4}, spec);
    for (int trial = 0; trial < 50; ++trial) {
        CaseCoordinates c;
        c.jt = JordanType{{4}};
        c.coords = {{"lambda", Scalar::gfp(spec, static_cast<long>(rng() % 5))},
                    {"mu", Scalar::gfp(spec, static_cast<long>(rng() % 5))},
                    {"nu", Scalar::gfp(spec, static_cast<long>(rng() % 5))}};
        Mat b = coords_to_matrix(c, spec);
        StabParams sp;
        sp.jt = c.jt;
        sp.coords = {{"x", Scalar::gfp(spec, 1 + static_cast<long>(rng() % 4))},
                     {"y", Scalar::gfp(spec, static_cast<long>(rng() % 5))},
                     {"z", Scalar::gfp(spec, static_cast<long>(rng() % 5))},
                     {"w", Scalar::gfp(spec, static_cast<long>(rng() % 5))}};
        Mat x = stab_matrix(sp, spec);
        CHECK(conjugate(x, b) == b);
        CHECK(reduce_case1(c).block == blk("1.1", {c["lambda"], c["mu"], c["nu"]}));
    }
}
