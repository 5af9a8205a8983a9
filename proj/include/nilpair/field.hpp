// Exact scalar arithmetic over Q, GF(p) and GF(p^2), p prime <= 97.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nilpair {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    FieldMismatch() : Error("field mismatch") {}
    explicit FieldMismatch(const std::string& what) : Error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};

struct NotNilpotent : Error {
    explicit NotNilpotent(const std::string& what = "matrix is not nilpotent") : Error(what) {}
};

struct NotInNilC : Error {
    explicit NotInNilC(const std::string& what) : Error(what) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& what) : Error(what) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Raised when a required eigenvalue does not lie in the coefficient field.
// Carries the offending monic quadratic rendered as text, e.g. "t^2+t+1".
struct NotSplit : Error {
    std::string polynomial;
    explicit NotSplit(std::string poly)
        : Error("polynomial does not split: " + poly), polynomial(std::move(poly)) {}
};

// Internal invariant breach (a witness failing its own verification and the
// like).  CLI maps this to exit code 3.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// Field specification
// ---------------------------------------------------------------------------

enum class FieldKind { Rationals, Prime, Quadratic };

constexpr int kMaxPrime = 97;

// A coefficient field: Q, GF(p), or GF(p^2) with the fixed minimal polynomial
// t^2 + c1*t + c0 from the documented per-prime table.
struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    int p = 0;   // prime; 0 for the rationals
    int c1 = 0;  // quadratic minimal polynomial coefficients (residues mod p)
    int c0 = 0;

    static FieldSpec rationals();
    static FieldSpec prime(int p);
    static FieldSpec quadratic(int p);

    bool operator==(const FieldSpec& o) const {
        return kind == o.kind && p == o.p && c1 == o.c1 && c0 == o.c0;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    // Number of elements; 0 means infinite.
    std::uint64_t size() const;
    std::string name() const;          // "Q", "GF(7)", "GF(49)"
    std::string minimal_poly() const;  // quadratic fields only
};

bool is_supported_prime(int p);
int least_quadratic_nonresidue(int p);

// (p, minimal polynomial text) for every supported prime.
std::vector<std::pair<int, std::string>> minimal_poly_table();

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

// Exact element of one of the supported fields.  Rationals are kept in lowest
// terms with positive denominator; GF(p) residues lie in [0, p); GF(p^2)
// elements are coordinate pairs (a, b) meaning a*t + b with a, b in [0, p).
class Scalar {
public:
    Scalar() = default;  // 0 over Q

    static Scalar zero(const FieldSpec& spec);
    static Scalar one(const FieldSpec& spec);
    static Scalar of_int(const FieldSpec& spec, long v);
    static Scalar rational(const mpq_class& q);
    static Scalar gfp(const FieldSpec& spec, long residue);
    static Scalar gfp2(const FieldSpec& spec, long a, long b);

    // Text round-trip; format: Q "n/d"|"n", GF(p) "r", GF(p^2) "[a,b]".
    static Scalar parse(const FieldSpec& spec, std::string_view text);
    std::string str() const;

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar inverse() const;  // throws DivisionByZero on zero

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Raw payload access (used by serialization and the finite-field oracle).
    const mpq_class& rat() const { return rat_; }
    long coeff_a() const { return a_; }
    long coeff_b() const { return b_; }

    // GF(p) -> GF(p^2) field embedding r |-> (0, r).
    Scalar embedded() const;

private:
    FieldSpec spec_{};
    mpq_class rat_{0};  // Rationals payload
    long a_ = 0;        // GF(p^2) t-coordinate
    long b_ = 0;        // GF(p) residue / GF(p^2) constant coordinate
    void check_same(const Scalar& o) const;
};

// Canonical total order: Q by numeric value, GF(p) by residue, GF(p^2)
// lexicographic on (a, b).  Returns -1, 0, +1.
int scalar_cmp(const Scalar& x, const Scalar& y);

// ---------------------------------------------------------------------------
// Quadratic polynomials
// ---------------------------------------------------------------------------

// Result of solving the monic quadratic t^2 + b*t + c.
struct QuadraticRoots {
    bool split = false;
    Scalar r1, r2;  // valid when split; r1 <= r2 under scalar_cmp
};

QuadraticRoots quadratic_roots(const Scalar& b, const Scalar& c);

// Renders the monic quadratic t^2 + b*t + c as text ("t^2+t+1", "t^2-3", ...).
std::string quadratic_text(const Scalar& b, const Scalar& c);

// GF(p) -> GF(p^2).  Throws Unsupported for Q and for quadratic fields.
FieldSpec extend_to_quadratic(const FieldSpec& spec);

}  // namespace nilpair
