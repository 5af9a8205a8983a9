#include "nilpair/field.hpp"

#include <algorithm>
#include <array>

namespace nilpair {

namespace {

constexpr std::array<int, 25> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

long mod_reduce(long v, int p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

long mod_pow(long base, long exp, int p) {
    long r = 1 % p;
    base = mod_reduce(base, p);
    while (exp > 0) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

long mod_inverse(long v, int p) {
    v = mod_reduce(v, p);
    if (v == 0) throw DivisionByZero();
    // extended Euclid
    long a = v, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
        long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return mod_reduce(x0, p);
}

}  // namespace

bool is_supported_prime(int p) {
    return std::find(kPrimes.begin(), kPrimes.end(), p) != kPrimes.end();
}

int least_quadratic_nonresidue(int p) {
    for (int s = 2; s < p; ++s) {
        if (mod_pow(s, (p - 1) / 2, p) == p - 1) return s;
    }
    throw InternalError("no quadratic non-residue found");
}

FieldSpec FieldSpec::rationals() { return FieldSpec{FieldKind::Rationals, 0, 0, 0}; }

FieldSpec FieldSpec::prime(int p) {
    if (!is_supported_prime(p))
        throw ValidationError("unsupported prime " + std::to_string(p) + " (need a prime <= 97)");
    return FieldSpec{FieldKind::Prime, p, 0, 0};
}

FieldSpec FieldSpec::quadratic(int p) {
    FieldSpec base = prime(p);
    FieldSpec spec{FieldKind::Quadratic, p, 0, 0};
    if (p == 2) {
        spec.c1 = 1;  // t^2 + t + 1
        spec.c0 = 1;
    } else if (p % 4 == 3) {
        spec.c1 = 0;  // t^2 + 1
        spec.c0 = 1;
    } else {
        int s = least_quadratic_nonresidue(p);  // t^2 - s
        spec.c1 = 0;
        spec.c0 = mod_reduce(-s, p);
    }
    (void)base;
    return spec;
}

std::uint64_t FieldSpec::size() const {
    switch (kind) {
        case FieldKind::Rationals: return 0;
        case FieldKind::Prime: return static_cast<std::uint64_t>(p);
        case FieldKind::Quadratic: return static_cast<std::uint64_t>(p) * p;
    }
    return 0;
}

std::string FieldSpec::name() const {
    switch (kind) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "GF(" + std::to_string(p) + ")";
        case FieldKind::Quadratic: return "GF(" + std::to_string(p * p) + ")";
    }
    return "?";
}

std::string FieldSpec::minimal_poly() const {
    if (kind != FieldKind::Quadratic) throw Unsupported("minimal_poly: not a quadratic field");
    FieldSpec base = FieldSpec::prime(p);
    return quadratic_text(Scalar::gfp(base, c1), Scalar::gfp(base, c0));
}

std::vector<std::pair<int, std::string>> minimal_poly_table() {
    std::vector<std::pair<int, std::string>> table;
    for (int p : kPrimes) table.emplace_back(p, FieldSpec::quadratic(p).minimal_poly());
    return table;
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

Scalar Scalar::zero(const FieldSpec& spec) { return of_int(spec, 0); }
Scalar Scalar::one(const FieldSpec& spec) { return of_int(spec, 1); }

Scalar Scalar::of_int(const FieldSpec& spec, long v) {
    Scalar s;
    s.spec_ = spec;
    switch (spec.kind) {
        case FieldKind::Rationals: s.rat_ = mpq_class(v); break;
        case FieldKind::Prime: s.b_ = mod_reduce(v, spec.p); break;
        case FieldKind::Quadratic:
            s.a_ = 0;
            s.b_ = mod_reduce(v, spec.p);
            break;
    }
    return s;
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s;
    s.spec_ = FieldSpec::rationals();
    s.rat_ = q;
    s.rat_.canonicalize();
    return s;
}

Scalar Scalar::gfp(const FieldSpec& spec, long residue) {
    if (spec.kind != FieldKind::Prime) throw FieldMismatch("gfp: spec is not a prime field");
    return of_int(spec, residue);
}

Scalar Scalar::gfp2(const FieldSpec& spec, long a, long b) {
    if (spec.kind != FieldKind::Quadratic) throw FieldMismatch("gfp2: spec is not a quadratic field");
    Scalar s;
    s.spec_ = spec;
    s.a_ = mod_reduce(a, spec.p);
    s.b_ = mod_reduce(b, spec.p);
    return s;
}

Scalar Scalar::parse(const FieldSpec& spec, std::string_view text) {
    auto bad = [&](const char* why) {
        return ValidationError("bad scalar \"" + std::string(text) + "\": " + why);
    };
    std::string t(text);
    switch (spec.kind) {
        case FieldKind::Rationals: {
            if (t.empty()) throw bad("empty");
            mpq_class q;
            if (q.set_str(t, 10) != 0) throw bad("not a rational");
            if (q.get_den() == 0) throw bad("zero denominator");
            q.canonicalize();
            return rational(q);
        }
        case FieldKind::Prime: {
            try {
                std::size_t pos = 0;
                long v = std::stol(t, &pos);
                if (pos != t.size()) throw bad("trailing characters");
                return of_int(spec, v);
            } catch (const std::invalid_argument&) {
                throw bad("not an integer residue");
            } catch (const std::out_of_range&) {
                throw bad("residue out of range");
            }
        }
        case FieldKind::Quadratic: {
            if (t.size() < 5 || t.front() != '[' || t.back() != ']') throw bad("expected [a,b]");
            auto comma = t.find(',');
            if (comma == std::string::npos) throw bad("expected [a,b]");
            try {
                long a = std::stol(t.substr(1, comma - 1));
                long b = std::stol(t.substr(comma + 1, t.size() - comma - 2));
                return gfp2(spec, a, b);
            } catch (const std::exception&) {
                throw bad("expected [a,b] with integer coordinates");
            }
        }
    }
    throw bad("unknown field kind");
}

std::string Scalar::str() const {
    switch (spec_.kind) {
        case FieldKind::Rationals: return rat_.get_str();
        case FieldKind::Prime: return std::to_string(b_);
        case FieldKind::Quadratic:
            return "[" + std::to_string(a_) + "," + std::to_string(b_) + "]";
    }
    return "?";
}

bool Scalar::is_zero() const {
    switch (spec_.kind) {
        case FieldKind::Rationals: return rat_ == 0;
        case FieldKind::Prime: return b_ == 0;
        case FieldKind::Quadratic: return a_ == 0 && b_ == 0;
    }
    return false;
}

bool Scalar::is_one() const {
    switch (spec_.kind) {
        case FieldKind::Rationals: return rat_ == 1;
        case FieldKind::Prime: return b_ == 1 % spec_.p;
        case FieldKind::Quadratic: return a_ == 0 && b_ == 1 % spec_.p;
    }
    return false;
}

void Scalar::check_same(const Scalar& o) const {
    if (spec_ != o.spec_) throw FieldMismatch();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    switch (spec_.kind) {
        case FieldKind::Rationals: r.rat_ = -rat_; break;
        case FieldKind::Prime: r.b_ = mod_reduce(-b_, spec_.p); break;
        case FieldKind::Quadratic:
            r.a_ = mod_reduce(-a_, spec_.p);
            r.b_ = mod_reduce(-b_, spec_.p);
            break;
    }
    return r;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    x.check_same(y);
    Scalar r = x;
    switch (x.spec_.kind) {
        case FieldKind::Rationals:
            r.rat_ = x.rat_ + y.rat_;
            r.rat_.canonicalize();
            break;
        case FieldKind::Prime: r.b_ = (x.b_ + y.b_) % x.spec_.p; break;
        case FieldKind::Quadratic:
            r.a_ = (x.a_ + y.a_) % x.spec_.p;
            r.b_ = (x.b_ + y.b_) % x.spec_.p;
            break;
    }
    return r;
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    x.check_same(y);
    Scalar r = x;
    switch (x.spec_.kind) {
        case FieldKind::Rationals:
            r.rat_ = x.rat_ * y.rat_;
            r.rat_.canonicalize();
            break;
        case FieldKind::Prime: r.b_ = x.b_ * y.b_ % x.spec_.p; break;
        case FieldKind::Quadratic: {
            // (a1 t + b1)(a2 t + b2) reduced modulo t^2 + c1 t + c0
            int p = x.spec_.p;
            long tt = x.a_ * y.a_ % p;  // coefficient of t^2
            long a = (x.a_ * y.b_ + x.b_ * y.a_ - tt * x.spec_.c1) % p;
            long b = (x.b_ * y.b_ - tt * x.spec_.c0) % p;
            r.a_ = mod_reduce(a, p);
            r.b_ = mod_reduce(b, p);
            break;
        }
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r = *this;
    switch (spec_.kind) {
        case FieldKind::Rationals: r.rat_ = 1 / rat_; break;
        case FieldKind::Prime: r.b_ = mod_inverse(b_, spec_.p); break;
        case FieldKind::Quadratic: {
            // Norm of a*t + b is b^2 - a*b*c1 + a^2*c0 (product of the two
            // conjugate evaluations); nonzero because the polynomial is
            // irreducible.
            int p = spec_.p;
            long norm = mod_reduce(b_ * b_ % p - a_ * b_ % p * spec_.c1 % p + a_ * a_ % p * spec_.c0 % p, p);
            long ninv = mod_inverse(norm, p);
            r.a_ = mod_reduce(-a_ * ninv, p);
            r.b_ = mod_reduce((b_ - a_ * spec_.c1) % p * ninv, p);
            break;
        }
    }
    return r;
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (spec_ != o.spec_) return false;
    switch (spec_.kind) {
        case FieldKind::Rationals: return rat_ == o.rat_;
        case FieldKind::Prime: return b_ == o.b_;
        case FieldKind::Quadratic: return a_ == o.a_ && b_ == o.b_;
    }
    return false;
}

Scalar Scalar::embedded() const {
    if (spec_.kind != FieldKind::Prime) throw Unsupported("embedded: source must be GF(p)");
    return gfp2(extend_to_quadratic(spec_), 0, b_);
}

int scalar_cmp(const Scalar& x, const Scalar& y) {
    if (x.spec() != y.spec()) throw FieldMismatch();
    switch (x.spec().kind) {
        case FieldKind::Rationals: {
            int c = cmp(x.rat(), y.rat());
            return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        case FieldKind::Prime:
            return x.coeff_b() < y.coeff_b() ? -1 : x.coeff_b() > y.coeff_b() ? 1 : 0;
        case FieldKind::Quadratic:
            if (x.coeff_a() != y.coeff_a()) return x.coeff_a() < y.coeff_a() ? -1 : 1;
            return x.coeff_b() < y.coeff_b() ? -1 : x.coeff_b() > y.coeff_b() ? 1 : 0;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Quadratic roots
// ---------------------------------------------------------------------------

QuadraticRoots quadratic_roots(const Scalar& b, const Scalar& c) {
    if (b.spec() != c.spec()) throw FieldMismatch();
    const FieldSpec& spec = b.spec();
    QuadraticRoots out;
    if (spec.kind == FieldKind::Rationals) {
        // roots exist iff the discriminant is a square in Q
        mpq_class disc = b.rat() * b.rat() - 4 * c.rat();
        disc.canonicalize();
        if (disc < 0) return out;
        mpz_class num = disc.get_num(), den = disc.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return out;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        mpq_class root(sn, sd);
        root.canonicalize();
        mpq_class r1 = (-b.rat() - root) / 2, r2 = (-b.rat() + root) / 2;
        r1.canonicalize();
        r2.canonicalize();
        out.split = true;
        out.r1 = Scalar::rational(r1);
        out.r2 = Scalar::rational(r2);
        return out;
    }
    // Finite fields: exhaustive scan (correct in characteristic 2 as well).
    std::vector<Scalar> roots;
    auto consider = [&](const Scalar& r) {
        if ((r * r + b * r + c).is_zero()) roots.push_back(r);
    };
    if (spec.kind == FieldKind::Prime) {
        for (long v = 0; v < spec.p; ++v) consider(Scalar::gfp(spec, v));
    } else {
        for (long a = 0; a < spec.p; ++a)
            for (long v = 0; v < spec.p; ++v) consider(Scalar::gfp2(spec, a, v));
    }
    if (roots.empty()) return out;
    out.split = true;
    if (roots.size() == 1) {
        // double root (scan finds it once)
        out.r1 = roots[0];
        out.r2 = roots[0];
    } else {
        out.r1 = roots[0];
        out.r2 = roots[1];
        if (scalar_cmp(out.r1, out.r2) > 0) std::swap(out.r1, out.r2);
    }
    return out;
}

std::string quadratic_text(const Scalar& b, const Scalar& c) {
    std::string s = "t^2";
    auto term = [&](const Scalar& coeff, const char* var) {
        if (coeff.is_zero()) return;
        std::string cs = coeff.str();
        if (!cs.empty() && cs[0] == '-') {
            s += "-";
            cs = cs.substr(1);
        } else {
            s += "+";
        }
        if (*var && cs == "1")
            s += var;
        else {
            s += cs;
            s += var;
        }
    };
    term(b, "t");
    term(c, "");
    return s;
}

FieldSpec extend_to_quadratic(const FieldSpec& spec) {
    if (spec.kind != FieldKind::Prime)
        throw Unsupported("extend_to_quadratic: only GF(p) can be extended");
    return FieldSpec::quadratic(spec.p);
}

}  // namespace nilpair
