// Exhaustive ground truth over GF(2)/GF(3): pair enumeration, conjugation
// orbits, and the classification crosscheck.
#pragma once

#include <cstdint>

#include "nilpair/canon.hpp"

namespace nilpair::oracle {

// Matrices over GF(p) are packed big-endian in row-major entry order, so the
// numeric order of codes is the lexicographic order on entries.
std::uint32_t pack(const Mat& m);
Mat unpack(int p, int n, std::uint32_t code);

struct PackedPair {
    std::uint32_t a = 0, b = 0;
    std::uint64_t key(int p, int n) const;
};

MatrixPair unpack_pair(int p, int n, const PackedPair& pp);

std::uint64_t count_nilpotent(int p, int n);

// Every commuting nilpotent pair exactly once, ordered by (A, B) codes.
std::vector<PackedPair> enumerate_pairs(int p, int n);

// All nilpotent B commuting with a fixed A (the NilC fiber), by code.
std::vector<std::uint32_t> nilc_members(int p, int n, std::uint32_t code_a);

std::vector<Mat> gl_generators(int p, int n);
std::vector<Mat> gl_generators_alt(int p, int n);  // a second generating set
std::uint64_t gl_order(int p, int n);              // product formula
std::uint64_t gl_order_by_closure(int p, int n);   // BFS closure count

struct Orbit {
    PackedPair rep;  // lexicographically minimal pair of the orbit
    std::uint64_t size = 0;
};

struct OrbitTable {
    int p = 0, n = 0;
    std::uint64_t total_pairs = 0;
    std::vector<Orbit> orbits;  // ordered by representative
};

OrbitTable orbit_partition(int p, int n);
OrbitTable orbit_partition_with_generators(int p, int n, const std::vector<Mat>& gens);

// Number of invertible matrices commuting with both members (exhaustive).
std::uint64_t pair_stabilizer_order(const MatrixPair& p);

struct CrosscheckReport {
    std::string field;
    std::uint64_t total_pairs = 0;
    std::uint64_t orbit_count = 0;
    std::uint64_t orbits_matched = 0;    // unique in-field canonical form
    std::uint64_t orbits_extension = 0;  // resolved only over GF(p^2)
    std::vector<std::string> mismatches;
    std::uint64_t orbit_size_checksum = 0;
    bool clean() const {
        return mismatches.empty() && orbit_size_checksum == total_pairs &&
               orbits_matched + orbits_extension == orbit_count;
    }
};

// Canonicalizes every pair, checks constancy on orbits and injectivity across
// orbits, and resolves NotSplit orbits over GF(p^2).
CrosscheckReport crosscheck(int p, int n);

}  // namespace nilpair::oracle
