#include "nilpair/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_set>

namespace nilpair::oracle {

namespace {

void require_oracle_field(int p, int n) {
    if (p != 2 && p != 3) throw Unsupported("the exhaustive oracle runs over GF(2) and GF(3)");
    if (n < 1 || n > 4) throw Unsupported("the exhaustive oracle runs at n <= 4");
}

// Plain mod-p matrices for the hot enumeration loops.
struct SM {
    int n = 0, p = 0;
    std::array<int, 16> e{};

    static SM zero(int n, int p) { return SM{n, p, {}}; }
    static SM identity(int n, int p) {
        SM m = zero(n, p);
        for (int i = 0; i < n; ++i) m.e[i * n + i] = 1 % p;
        return m;
    }
    int at(int i, int j) const { return e[i * n + j]; }
    int& at(int i, int j) { return e[i * n + j]; }

    SM mul(const SM& o) const {
        SM r = zero(n, p);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                int a = at(i, k);
                if (!a) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) = (r.at(i, j) + a * o.at(k, j)) % p;
            }
        return r;
    }

    bool is_zero() const {
        for (int i = 0; i < n * n; ++i)
            if (e[i]) return false;
        return true;
    }

    bool is_nilpotent() const {
        SM acc = *this;
        for (int k = 1; k < n; ++k) acc = acc.mul(*this);
        return acc.is_zero();
    }

    bool invert(SM& out) const {
        // Gauss-Jordan mod p
        std::array<std::array<int, 8>, 4> aug{};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[i][j] = at(i, j);
            for (int j = 0; j < n; ++j) aug[i][n + j] = i == j ? 1 : 0;
        }
        auto inv_mod = [&](int v) {
            for (int c = 1; c < p; ++c)
                if (c * v % p == 1) return c;
            return 0;
        };
        for (int c = 0; c < n; ++c) {
            int pivot = -1;
            for (int i = c; i < n; ++i)
                if (aug[i][c]) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return false;
            std::swap(aug[pivot], aug[c]);
            int f = inv_mod(aug[c][c]);
            for (int j = 0; j < 2 * n; ++j) aug[c][j] = aug[c][j] * f % p;
            for (int i = 0; i < n; ++i) {
                if (i == c || !aug[i][c]) continue;
                int g = aug[i][c];
                for (int j = 0; j < 2 * n; ++j)
                    aug[i][j] = ((aug[i][j] - g * aug[c][j]) % p + p) % p;
            }
        }
        out = zero(n, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) = aug[i][n + j];
        return true;
    }

    std::uint32_t code() const {
        std::uint32_t c = 0;
        for (int i = 0; i < n * n; ++i) c = c * static_cast<std::uint32_t>(p) + e[i];
        return c;
    }

    static SM decode(int n, int p, std::uint32_t code) {
        SM m = zero(n, p);
        for (int i = n * n - 1; i >= 0; --i) {
            m.e[i] = static_cast<int>(code % p);
            code /= static_cast<std::uint32_t>(p);
        }
        return m;
    }
};

SM to_small(const Mat& m) {
    if (m.spec().kind != FieldKind::Prime) throw Unsupported("oracle matrices live over GF(p)");
    SM s = SM::zero(m.n(), m.spec().p);
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) s.at(i, j) = static_cast<int>(m.at(i, j).coeff_b());
    return s;
}

Mat to_mat(const SM& s) {
    FieldSpec spec = FieldSpec::prime(s.p);
    Mat m(s.n, spec);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) m.at(i, j) = Scalar::gfp(spec, s.at(i, j));
    return m;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Kernel basis of the commutation system {X : XA = AX} over GF(p), one array
// of n^2 residues per basis element.
std::vector<std::array<int, 16>> commutant_basis_small(const SM& a) {
    int n = a.n, p = a.p, width = n * n;
    std::vector<std::array<int, 16>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<int, 16> row{};
            for (int l = 0; l < n; ++l) row[i * n + l] = (row[i * n + l] + a.at(l, j)) % p;
            for (int k = 0; k < n; ++k)
                row[k * n + j] = ((row[k * n + j] - a.at(i, k)) % p + p) % p;
            rows.push_back(row);
        }
    // RREF mod p
    auto inv_mod = [&](int v) {
        for (int c = 1; c < p; ++c)
            if (c * v % p == 1) return c;
        return 0;
    };
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < width && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        int f = inv_mod(rows[r][c]);
        for (int j = 0; j < width; ++j) rows[r][j] = rows[r][j] * f % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int g = rows[i][c];
            for (int j = 0; j < width; ++j)
                rows[i][j] = ((rows[i][j] - g * rows[r][j]) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(width, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::array<int, 16>> basis;
    for (int free = 0; free < width; ++free) {
        if (is_pivot[free]) continue;
        std::array<int, 16> v{};
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = (p - rows[k][free]) % p;
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

std::uint32_t pack(const Mat& m) { return to_small(m).code(); }

Mat unpack(int p, int n, std::uint32_t code) { return to_mat(SM::decode(n, p, code)); }

std::uint64_t PackedPair::key(int p, int n) const {
    return static_cast<std::uint64_t>(a) * ipow(p, n * n) + b;
}

MatrixPair unpack_pair(int p, int n, const PackedPair& pp) {
    return MatrixPair::validated(unpack(p, n, pp.a), unpack(p, n, pp.b));
}

std::uint64_t count_nilpotent(int p, int n) {
    require_oracle_field(p, n);
    std::uint64_t total = ipow(p, n * n), count = 0;
    for (std::uint64_t code = 0; code < total; ++code)
        if (SM::decode(n, p, static_cast<std::uint32_t>(code)).is_nilpotent()) ++count;
    return count;
}

std::vector<std::uint32_t> nilc_members(int p, int n, std::uint32_t code_a) {
    require_oracle_field(p, n);
    SM a = SM::decode(n, p, code_a);
    auto basis = commutant_basis_small(a);
    int d = static_cast<int>(basis.size());
    std::vector<std::uint32_t> out;
    std::vector<int> odo(d, 0);
    while (true) {
        SM b = SM::zero(n, p);
        for (int k = 0; k < d; ++k) {
            if (!odo[k]) continue;
            for (int i = 0; i < n * n; ++i) b.e[i] = (b.e[i] + odo[k] * basis[k][i]) % p;
        }
        if (b.is_nilpotent()) out.push_back(b.code());
        int k = 0;
        while (k < d) {
            if (++odo[k] < p) break;
            odo[k] = 0;
            ++k;
        }
        if (k == d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PackedPair> enumerate_pairs(int p, int n) {
    require_oracle_field(p, n);
    std::vector<PackedPair> out;
    std::uint64_t total = ipow(p, n * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        SM a = SM::decode(n, p, static_cast<std::uint32_t>(code));
        if (!a.is_nilpotent()) continue;
        for (std::uint32_t bc : nilc_members(p, n, a.code()))
            out.push_back(PackedPair{a.code(), bc});
    }
    return out;
}

std::vector<Mat> gl_generators(int p, int n) {
    FieldSpec spec = FieldSpec::prime(p);
    std::vector<Mat> gens;
    if (n > 1) {
        Mat t = Mat::identity(n, spec);
        t.at(0, 1) = Scalar::one(spec);
        gens.push_back(t);
        std::vector<int> cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        gens.push_back(Mat::permutation(cyc, spec));
    }
    if (p > 2) {
        // smallest generator of the multiplicative group
        int g = 2;
        for (; g < p; ++g) {
            int ord = 1, v = g;
            while (v != 1) {
                v = v * g % p;
                ++ord;
            }
            if (ord == p - 1) break;
        }
        Mat d = Mat::identity(n, spec);
        d.at(0, 0) = Scalar::gfp(spec, g);
        gens.push_back(d);
    }
    if (gens.empty()) gens.push_back(Mat::identity(n, spec));
    return gens;
}

std::vector<Mat> gl_generators_alt(int p, int n) {
    FieldSpec spec = FieldSpec::prime(p);
    std::vector<Mat> gens;
    if (n > 1) {
        Mat t = Mat::identity(n, spec);
        t.at(n - 1, n - 2) = Scalar::one(spec);  // a lower transvection
        gens.push_back(t);
        std::vector<int> cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = (i + n - 1) % n;  // inverse cycle
        gens.push_back(Mat::permutation(cyc, spec));
    }
    if (p > 2) {
        int g = 2;
        for (; g < p; ++g) {
            int ord = 1, v = g;
            while (v != 1) {
                v = v * g % p;
                ++ord;
            }
            if (ord == p - 1) break;
        }
        Mat d = Mat::identity(n, spec);
        d.at(n - 1, n - 1) = Scalar::gfp(spec, g);
        gens.push_back(d);
    }
    if (gens.empty()) gens.push_back(Mat::identity(n, spec));
    return gens;
}

std::uint64_t gl_order(int p, int n) {
    std::uint64_t pn = ipow(p, n), order = 1;
    for (int i = 0; i < n; ++i) order *= pn - ipow(p, i);
    return order;
}

std::uint64_t gl_order_by_closure(int p, int n) {
    std::vector<SM> gens;
    for (const Mat& g : gl_generators(p, n)) gens.push_back(to_small(g));
    std::unordered_set<std::uint32_t> seen;
    std::vector<SM> queue{SM::identity(n, p)};
    seen.insert(queue[0].code());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        SM cur = queue[head];
        for (const SM& g : gens) {
            SM next = cur.mul(g);
            if (seen.insert(next.code()).second) queue.push_back(next);
        }
    }
    return seen.size();
}

namespace {

// Shared orbit walk: BFS closure of the conjugation action on the sorted pair
// list.  Calls on_member for every pair and on_orbit at each orbit's end.
template <typename PerMember, typename PerOrbit>
void walk_orbits(int p, int n, const std::vector<Mat>& gens, PerMember&& on_member,
                 PerOrbit&& on_orbit) {
    require_oracle_field(p, n);
    std::vector<PackedPair> pairs = enumerate_pairs(p, n);
    std::uint64_t mult = ipow(p, n * n);
    std::vector<std::uint64_t> keys;
    keys.reserve(pairs.size());
    for (const auto& pp : pairs) keys.push_back(static_cast<std::uint64_t>(pp.a) * mult + pp.b);
    // enumerate_pairs emits (a, b) in ascending order already
    std::vector<bool> visited(pairs.size(), false);

    std::vector<std::pair<SM, SM>> action;  // (g, g^{-1})
    for (const Mat& g : gens) {
        SM sg = to_small(g), sgi{};
        if (!sg.invert(sgi)) throw ValidationError("generator is singular");
        action.emplace_back(sg, sgi);
    }

    auto index_of = [&](std::uint64_t key) {
        auto it = std::lower_bound(keys.begin(), keys.end(), key);
        if (it == keys.end() || *it != key)
            throw InternalError("conjugate pair left the enumeration");
        return static_cast<std::size_t>(it - keys.begin());
    };

    std::vector<std::size_t> queue;
    for (std::size_t start = 0; start < pairs.size(); ++start) {
        if (visited[start]) continue;
        queue.clear();
        queue.push_back(start);
        visited[start] = true;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t cur = queue[head];
            on_member(pairs[start], pairs[cur]);
            SM a = SM::decode(n, p, pairs[cur].a), b = SM::decode(n, p, pairs[cur].b);
            for (const auto& [g, gi] : action) {
                SM a2 = gi.mul(a).mul(g), b2 = gi.mul(b).mul(g);
                std::uint64_t key = static_cast<std::uint64_t>(a2.code()) * mult + b2.code();
                std::size_t idx = index_of(key);
                if (!visited[idx]) {
                    visited[idx] = true;
                    queue.push_back(idx);
                }
            }
        }
        on_orbit(pairs[start], static_cast<std::uint64_t>(queue.size()));
    }
}

}  // namespace

OrbitTable orbit_partition_with_generators(int p, int n, const std::vector<Mat>& gens) {
    OrbitTable table;
    table.p = p;
    table.n = n;
    walk_orbits(
        p, n, gens, [](const PackedPair&, const PackedPair&) {},
        [&](const PackedPair& rep, std::uint64_t size) {
            table.orbits.push_back(Orbit{rep, size});
            table.total_pairs += size;
        });
    return table;
}

OrbitTable orbit_partition(int p, int n) {
    return orbit_partition_with_generators(p, n, gl_generators(p, n));
}

std::uint64_t pair_stabilizer_order(const MatrixPair& pr) {
    if (pr.spec().kind != FieldKind::Prime)
        throw Unsupported("stabilizer counting runs over GF(p)");
    int p = pr.spec().p, n = pr.n();
    SM a = to_small(pr.a), b = to_small(pr.b);
    auto basis_a = commutant_basis_small(a);
    // restrict to elements commuting with b as well by direct filtering
    int d = static_cast<int>(basis_a.size());
    std::vector<int> odo(d, 0);
    std::uint64_t count = 0;
    while (true) {
        SM x = SM::zero(n, p);
        for (int k = 0; k < d; ++k) {
            if (!odo[k]) continue;
            for (int i = 0; i < n * n; ++i) x.e[i] = (x.e[i] + odo[k] * basis_a[k][i]) % p;
        }
        SM xb = x.mul(b), bx = b.mul(x), tmp{};
        if (xb.code() == bx.code() && x.invert(tmp)) ++count;
        int k = 0;
        while (k < d) {
            if (++odo[k] < p) break;
            odo[k] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return count;
}

CrosscheckReport crosscheck(int p, int n) {
    require_oracle_field(p, n);
    CrosscheckReport report;
    report.field = FieldSpec::prime(p).name();

    struct OrbitState {
        bool have_key = false;
        bool extended = false;
        std::string key;
    };
    OrbitState state;
    std::map<std::string, std::uint64_t> key_owner;  // canonical key -> orbit rep key
    CanonOptions ext;
    ext.allow_extension = true;

    walk_orbits(
        p, n, gl_generators(p, n),
        [&](const PackedPair& rep, const PackedPair& member) {
            if (!state.have_key) state = OrbitState{};
            std::string key;
            bool extended = false;
            try {
                MatrixPair pr = unpack_pair(p, n, member);
                CanonResult r = canonicalize(pr, ext);
                extended = r.extended;
                key = (extended ? "ext|" : "base|") + r.form.str();
            } catch (const Error& e) {
                key = std::string("error|") + e.what();
            }
            if (!state.have_key) {
                state.have_key = true;
                state.extended = extended;
                state.key = key;
            } else if (state.key != key) {
                report.mismatches.push_back("orbit rep a=" + std::to_string(rep.a) +
                                            " b=" + std::to_string(rep.b) +
                                            ": member form " + key + " differs from " + state.key);
            }
        },
        [&](const PackedPair& rep, std::uint64_t size) {
            report.orbit_count += 1;
            report.orbit_size_checksum += size;
            if (state.key.rfind("error|", 0) == 0) {
                report.mismatches.push_back("orbit rep a=" + std::to_string(rep.a) +
                                            " b=" + std::to_string(rep.b) + ": " + state.key);
            } else if (state.extended) {
                report.orbits_extension += 1;
            } else {
                report.orbits_matched += 1;
            }
            auto [it, inserted] = key_owner.emplace(state.key, rep.key(p, n));
            if (!inserted)
                report.mismatches.push_back("orbits " + std::to_string(it->second) + " and " +
                                            std::to_string(rep.key(p, n)) +
                                            " share canonical form " + state.key);
            state = OrbitState{};
        });
    report.total_pairs = report.orbit_size_checksum;
    // recompute the true total independently of the partition
    std::uint64_t direct = enumerate_pairs(p, n).size();
    if (direct != report.total_pairs)
        report.mismatches.push_back("orbit size checksum " + std::to_string(report.total_pairs) +
                                    " != pair count " + std::to_string(direct));
    report.total_pairs = direct;
    return report;
}

}  // namespace nilpair::oracle
