#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nilpair/jordan.hpp"

using namespace nilpair;

namespace {

Mat random_nilpotent(int n, const FieldSpec& spec, std::mt19937_64& rng) {
    // strictly upper triangular, conjugated by a random invertible
    Mat u(n, spec);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            u.at(i, j) = Scalar::of_int(spec, static_cast<long>(rng() % 5) - 2);
    Mat x(n, spec);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                x.at(i, j) = Scalar::of_int(spec, static_cast<long>(rng() % 5) - 2);
    } while (!is_invertible(x));
    return conjugate(x, u);
}

}  // namespace

TEST_CASE("nilpotent JNF of canonical inputs is the identity transform") {
    FieldSpec spec = FieldSpec::rationals();
    for (const std::vector<int>& part :
         {std::vector<int>{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}}) {
        NilpotentJnf j = nilpotent_jnf(Mat::jordan(part, spec));
        CHECK(j.type.partition == part);
        CHECK(j.p == Mat::identity(4, spec));
    }
}

TEST_CASE("JNF of the zero matrix") {
    FieldSpec spec = FieldSpec::prime(3);
    NilpotentJnf j = nilpotent_jnf(Mat(4, spec));
    CHECK(j.type.partition == std::vector<int>{1, 1, 1, 1});
    CHECK(j.p == Mat::identity(4, spec));
}

TEST_CASE("single off-diagonal unit lands on the (2,1,1) canonical matrix") {
    FieldSpec spec = FieldSpec::rationals();
    Mat a = Mat::unit(4, spec, 0, 2);  // ones at (1,3) only
    NilpotentJnf j = nilpotent_jnf(a);
    CHECK(j.type.partition == std::vector<int>{2, 1, 1});
    CHECK(conjugate(j.p, a) == Mat::jordan({2, 1, 1}, spec));
}

TEST_CASE("JNF rejects non-nilpotent input") {
    FieldSpec spec = FieldSpec::rationals();
    CHECK_THROWS_AS(nilpotent_jnf(Mat::identity(3, spec)), NotNilpotent);
}

TEST_CASE("partition agrees with the rank-sequence oracle on random nilpotents") {
    std::mt19937_64 rng(101);
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3),
          FieldSpec::quadratic(2)}) {
        for (int trial = 0; trial < 60; ++trial) {
            int n = 2 + static_cast<int>(rng() % 3);
            Mat a = random_nilpotent(n, spec, rng);
            NilpotentJnf j = nilpotent_jnf(a);
            CHECK(j.type == partition_from_ranks(a));
            CHECK(conjugate(j.p, a) == Mat::jordan(j.type.partition, spec));
            // deterministic: a second run gives the same transform
            CHECK(nilpotent_jnf(a).p == j.p);
        }
    }
}

TEST_CASE("2x2 JNF: Jordan block") {
    FieldSpec spec = FieldSpec::rationals();
    Mat m(2, spec);
    m.at(0, 0) = Scalar::of_int(spec, 1);
    m.at(0, 1) = Scalar::of_int(spec, 1);
    m.at(1, 1) = Scalar::of_int(spec, 1);
    Jnf2x2 j = jnf_2x2(m);
    REQUIRE(j.kind == Jnf2x2::Kind::JordanBlock);
    CHECK(j.l1 == Scalar::of_int(spec, 1));
    CHECK(j.p == Mat::identity(2, spec));
}

TEST_CASE("2x2 JNF: split diagonal over Q") {
    FieldSpec spec = FieldSpec::rationals();
    Mat m(2, spec);
    m.at(0, 1) = Scalar::of_int(spec, 1);
    m.at(1, 0) = Scalar::of_int(spec, 1);
    Jnf2x2 j = jnf_2x2(m);
    REQUIRE(j.kind == Jnf2x2::Kind::Diagonal);
    CHECK(j.l1 == Scalar::of_int(spec, -1));
    CHECK(j.l2 == Scalar::of_int(spec, 1));
    Mat d(2, spec);
    d.at(0, 0) = j.l1;
    d.at(1, 1) = j.l2;
    CHECK(conjugate(j.p, m) == d);
}

TEST_CASE("2x2 JNF: irreducible characteristic polynomial over GF(2)") {
    FieldSpec spec = FieldSpec::prime(2);
    Mat m(2, spec);
    m.at(0, 1) = Scalar::one(spec);
    m.at(1, 0) = Scalar::one(spec);
    m.at(1, 1) = Scalar::one(spec);
    Jnf2x2 j = jnf_2x2(m);
    REQUIRE(j.kind == Jnf2x2::Kind::NotSplit);
    CHECK(j.charpoly_text() == "t^2+t+1");
}

TEST_CASE("2x2 JNF splits exactly when the quadratic does") {
    std::mt19937_64 rng(103);
    for (const FieldSpec& spec : {FieldSpec::prime(3), FieldSpec::quadratic(2)}) {
        for (int trial = 0; trial < 150; ++trial) {
            Mat m(2, spec);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    m.at(i, j) = Scalar::of_int(spec, static_cast<long>(rng() % spec.p));
            Jnf2x2 j = jnf_2x2(m);
            Scalar tr = m.at(0, 0) + m.at(1, 1);
            bool splits = quadratic_roots(-tr, det(m)).split;
            CHECK((j.kind != Jnf2x2::Kind::NotSplit) == splits);
            if (j.kind == Jnf2x2::Kind::Diagonal) {
                Mat d(2, spec);
                d.at(0, 0) = j.l1;
                d.at(1, 1) = j.l2;
                CHECK(conjugate(j.p, m) == d);
                CHECK(scalar_cmp(j.l1, j.l2) <= 0);
            }
        }
    }
}
