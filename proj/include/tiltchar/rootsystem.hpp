#pragma once

#include "tiltchar/common.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace tiltchar {

// Point of the weight lattice in fundamental-weight coordinates:
// coords[i] = <lambda, alpha_i^vee>.
struct Weight {
    std::vector<Int> coords;

    Weight() = default;
    explicit Weight(std::vector<Int> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<Int> c) : coords(c) {}

    std::size_t rank() const { return coords.size(); }
    Int operator[](std::size_t i) const { return coords[i]; }
    Int& operator[](std::size_t i) { return coords[i]; }

    bool dominant() const
    {
        return std::all_of(coords.begin(), coords.end(), [](Int v) { return v >= 0; });
    }

    bool zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](Int v) { return v == 0; });
    }

    auto operator<=>(const Weight&) const = default;
};

inline std::string to_string(const Weight& w)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < w.rank(); ++i) {
        if (i)
            os << ',';
        os << w.coords[i];
    }
    os << ']';
    return os.str();
}

inline Weight operator+(const Weight& a, const Weight& b)
{
    if (a.rank() != b.rank())
        throw error("weight rank mismatch: " + to_string(a) + " vs " + to_string(b));
    Weight r = a;
    for (std::size_t i = 0; i < r.rank(); ++i)
        r[i] = checked_add(r[i], b[i]);
    return r;
}

inline Weight operator-(const Weight& a, const Weight& b)
{
    if (a.rank() != b.rank())
        throw error("weight rank mismatch: " + to_string(a) + " vs " + to_string(b));
    Weight r = a;
    for (std::size_t i = 0; i < r.rank(); ++i)
        r[i] = checked_sub(r[i], b[i]);
    return r;
}

inline Weight operator-(const Weight& a)
{
    Weight r = a;
    for (auto& v : r.coords)
        v = checked_sub(0, v);
    return r;
}

inline Weight operator*(Int n, const Weight& a)
{
    Weight r = a;
    for (auto& v : r.coords)
        v = checked_mul(n, v);
    return r;
}

// Raised when a tilting provider cannot answer for a weight. Carries the
// weight so callers can tell users exactly which data is missing.
class unsupported_weight_error : public error {
public:
    unsupported_weight_error(Weight w, const std::string& msg)
        : error(msg), weight_(std::move(w))
    {
    }
    const Weight& weight() const { return weight_; }

private:
    Weight weight_;
};

// Raised when computed or loaded data breaks a structural invariant
// (negative multiplicity, broken unitriangularity, bad tilting entry).
// Carries the offending weight.
class validation_error : public error {
public:
    validation_error(Weight w, const std::string& msg)
        : error(msg), weight_(std::move(w))
    {
    }
    const Weight& weight() const { return weight_; }

private:
    Weight weight_;
};

namespace detail {

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix transpose(const IntMatrix& m)
{
    const std::size_t n = m.size();
    IntMatrix t(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[j][i] = m[i][j];
    return t;
}

// Fraction-free Gaussian elimination (Bareiss); exact for integer matrices.
inline Int int_det(IntMatrix a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0)
                ++piv;
            if (piv == n)
                return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (checked_sub(checked_mul(a[i][j], a[k][k]),
                                       checked_mul(a[i][k], a[k][j])))
                    / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline IntMatrix adjugate(const IntMatrix& m)
{
    const std::size_t n = m.size();
    IntMatrix adj(n, std::vector<Int>(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, std::vector<Int>(n - 1));
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == j)
                    continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == i)
                        continue;
                    minor[mr][mc++] = m[r][c];
                }
                ++mr;
            }
            const Int cof = int_det(minor);
            adj[i][j] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return adj;
}

// cartan[i][j] = <alpha_j, alpha_i^vee>. Columns are the simple roots in
// fundamental-weight coordinates.
inline IntMatrix irreducible_cartan(char type, int rank)
{
    auto chain = [&](int n) {
        IntMatrix c(n, std::vector<Int>(n, 0));
        for (int i = 0; i < n; ++i) {
            c[i][i] = 2;
            if (i + 1 < n) {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        return c;
    };
    switch (type) {
    case 'A':
        if (rank < 1)
            throw error("type A requires rank >= 1");
        return chain(rank);
    case 'B': {
        if (rank < 2)
            throw error("type B requires rank >= 2");
        IntMatrix c = chain(rank);
        c[rank - 1][rank - 2] = -2; // alpha_{n-1} long against short coroot alpha_n^vee
        return c;
    }
    case 'C': {
        if (rank < 2)
            throw error("type C requires rank >= 2");
        IntMatrix c = chain(rank);
        c[rank - 2][rank - 1] = -2; // long alpha_n against alpha_{n-1}^vee
        return c;
    }
    case 'D': {
        if (rank < 4)
            throw error("type D requires rank >= 4");
        IntMatrix c = chain(rank - 1);
        c.resize(rank);
        c[rank - 1].assign(rank, 0);
        for (int i = 0; i < rank - 1; ++i)
            c[i].resize(rank, 0);
        c[rank - 1][rank - 1] = 2;
        // fork: alpha_n attached to alpha_{n-2}
        c[rank - 1][rank - 2] = 0;
        c[rank - 2][rank - 1] = 0;
        c[rank - 1][rank - 3] = -1;
        c[rank - 3][rank - 1] = -1;
        return c;
    }
    case 'E': {
        if (rank < 6 || rank > 8)
            throw error("type E requires rank in {6,7,8}");
        // Bourbaki: chain 1-3-4-5-...-n with node 2 attached to 4.
        IntMatrix c(rank, std::vector<Int>(rank, 0));
        for (int i = 0; i < rank; ++i)
            c[i][i] = 2;
        auto bond = [&](int i, int j) {
            c[i - 1][j - 1] = -1;
            c[j - 1][i - 1] = -1;
        };
        bond(1, 3);
        bond(3, 4);
        bond(2, 4);
        for (int k = 4; k < rank; ++k)
            bond(k, k + 1);
        return c;
    }
    case 'F': {
        if (rank != 4)
            throw error("type F requires rank 4");
        IntMatrix c = chain(4);
        c[2][1] = -2; // alpha_2 long against short coroot alpha_3^vee
        return c;
    }
    case 'G': {
        if (rank != 2)
            throw error("type G requires rank 2");
        // alpha_1 short, alpha_2 long
        return { { 2, -3 }, { -1, 2 } };
    }
    default:
        throw error(std::string("unknown root system type '") + type + "'");
    }
}

// (alpha_i, alpha_i)/2 with short roots normalized to squared length 2.
inline std::vector<Int> root_length_halves(char type, int rank)
{
    std::vector<Int> d(static_cast<std::size_t>(rank), 1);
    switch (type) {
    case 'B':
        for (int i = 0; i < rank - 1; ++i)
            d[i] = 2;
        break;
    case 'C':
        d[rank - 1] = 2;
        break;
    case 'F':
        d[0] = d[1] = 2;
        break;
    case 'G':
        d[1] = 3;
        break;
    default:
        break;
    }
    return d;
}

// Positive roots as expansions over the simple roots, via closure under
// root strings: for a root beta and simple alpha_i, beta + alpha_i is a
// root iff p - <beta, alpha_i^vee> >= 1 where p is the depth of the
// downward string. Returned grouped by height, lexicographic within a level.
inline std::vector<std::vector<Int>> positive_root_closure(const IntMatrix& cartan)
{
    const std::size_t n = cartan.size();
    std::set<std::vector<Int>> seen;
    std::vector<std::vector<Int>> level;
    std::vector<std::vector<Int>> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, 0);
        e[i] = 1;
        level.push_back(e);
        seen.insert(e);
    }
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
        std::vector<std::vector<Int>> next;
        for (const auto& c : level) {
            for (std::size_t i = 0; i < n; ++i) {
                Int pairing = 0;
                for (std::size_t j = 0; j < n; ++j)
                    pairing += cartan[i][j] * c[j];
                Int depth = 0;
                std::vector<Int> v = c;
                for (;;) {
                    v[i] -= 1;
                    if (v[i] < 0 || !seen.count(v))
                        break;
                    ++depth;
                }
                if (depth - pairing >= 1) {
                    std::vector<Int> w = c;
                    w[i] += 1;
                    if (seen.insert(w).second)
                        next.push_back(w);
                }
            }
        }
        level = std::move(next);
    }
    return out;
}

} // namespace detail

struct IrreducibleFactor {
    char type = 'A';
    int rank = 0;
    std::size_t offset = 0; // first coordinate slot within the product
    Int coxeter_number = 0;
    // coroot of the highest short root over the simple coroots;
    // <lambda, alpha_0^vee> restricted to this factor is the dot product
    // with the factor's coordinate slice
    std::vector<Int> alpha0_coroot;
    detail::IntMatrix cartan_adjugate;
    Int cartan_det = 1;
};

// Immutable context for one (possibly reducible) root system. Constructed by
// build_root_system and shared read-only; all operations on it are pure.
struct RootSystemData {
    std::string label; // canonical, e.g. "A1", "A2xG2"
    int rank = 0;
    std::vector<IrreducibleFactor> factors;
    detail::IntMatrix cartan; // cartan[i][j] = <alpha_j, alpha_i^vee>
    std::vector<Weight> simple_roots; // fundamental-weight coordinates
    std::vector<Weight> positive_roots;
    // expansions of the positive coroots over the simple coroots (the
    // positive roots of the dual system); order is per factor, by height
    std::vector<std::vector<Int>> positive_coroots;
    Weight rho;
    Int coxeter_number = 0; // max over factors
    std::vector<std::size_t> dual_perm; // (-w0 lambda)[i] = lambda[dual_perm[i]]
    // form[i][j] = form_scale * (omega_i, omega_j), short roots normalized
    // to squared length 2 within each factor
    detail::IntMatrix form;
    Int form_scale = 1;
};

using RootSystemPtr = std::shared_ptr<const RootSystemData>;

namespace detail {

inline Weight make_dominant_with_cartan(Weight la, const IntMatrix& cartan)
{
    const std::size_t n = la.rank();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (la[i] < 0) {
                const Int c = la[i];
                for (std::size_t k = 0; k < n; ++k)
                    la[k] = checked_sub(la[k], checked_mul(c, cartan[k][i]));
                changed = true;
            }
        }
    }
    return la;
}

} // namespace detail

inline RootSystemPtr build_root_system(const std::vector<std::pair<char, int>>& factor_spec)
{
    if (factor_spec.empty())
        throw error("root system needs at least one irreducible factor");
    auto rs = std::make_shared<RootSystemData>();
    std::vector<Int> dets;
    std::size_t offset = 0;
    std::string label;
    for (const auto& [type, frank] : factor_spec) {
        const auto cartan_f = detail::irreducible_cartan(type, frank);
        const std::size_t n = cartan_f.size();

        IrreducibleFactor fac;
        fac.type = type;
        fac.rank = frank;
        fac.offset = offset;
        fac.cartan_det = detail::int_det(cartan_f);
        fac.cartan_adjugate = detail::adjugate(cartan_f);
        if (fac.cartan_det <= 0)
            throw error("internal: Cartan determinant must be positive");

        // coroots = positive roots of the dual system (transposed Cartan);
        // the unique maximal-height one is the coroot of the highest short root
        const auto dual_roots = detail::positive_root_closure(detail::transpose(cartan_f));
        const auto primal_roots = detail::positive_root_closure(cartan_f);
        auto height = [](const std::vector<Int>& v) {
            return std::accumulate(v.begin(), v.end(), Int{ 0 });
        };
        Int maxht = 0;
        for (const auto& d : dual_roots)
            maxht = std::max(maxht, height(d));
        std::vector<std::vector<Int>> tops;
        for (const auto& d : dual_roots)
            if (height(d) == maxht)
                tops.push_back(d);
        if (tops.size() != 1)
            throw error("internal: highest coroot not unique");
        fac.alpha0_coroot = tops.front();
        fac.coxeter_number = maxht + 1;
        if (static_cast<Int>(primal_roots.size()) * 2 != Int(frank) * fac.coxeter_number)
            throw error("internal: positive root count disagrees with Coxeter number");

        rs->factors.push_back(fac);
        dets.push_back(fac.cartan_det);
        offset += n;
        if (!label.empty())
            label += 'x';
        label += type;
        label += std::to_string(frank);
    }
    rs->label = label;
    rs->rank = static_cast<int>(offset);

    // assemble block-diagonal Cartan and padded root lists
    const std::size_t N = offset;
    rs->cartan.assign(N, std::vector<Int>(N, 0));
    Int scale = 1;
    for (Int d : dets)
        scale = std::lcm(scale, d);
    rs->form_scale = scale;
    rs->form.assign(N, std::vector<Int>(N, 0));
    for (std::size_t f = 0; f < rs->factors.size(); ++f) {
        const auto& fac = rs->factors[f];
        const auto cartan_f = detail::irreducible_cartan(fac.type, fac.rank);
        const std::size_t n = cartan_f.size();
        const auto d_half = detail::root_length_halves(fac.type, fac.rank);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rs->cartan[fac.offset + i][fac.offset + j] = cartan_f[i][j];
                rs->form[fac.offset + i][fac.offset + j]
                    = (scale / fac.cartan_det) * d_half[i] * fac.cartan_adjugate[i][j];
            }
        for (const auto& rc : detail::positive_root_closure(cartan_f)) {
            Weight fund(std::vector<Int>(N, 0));
            for (std::size_t i = 0; i < n; ++i) {
                Int v = 0;
                for (std::size_t j = 0; j < n; ++j)
                    v += cartan_f[i][j] * rc[j];
                fund[fac.offset + i] = v;
            }
            rs->positive_roots.push_back(fund);
        }
        for (const auto& dc : detail::positive_root_closure(detail::transpose(cartan_f))) {
            std::vector<Int> padded(N, 0);
            for (std::size_t j = 0; j < n; ++j)
                padded[fac.offset + j] = dc[j];
            rs->positive_coroots.push_back(padded);
        }
        rs->coxeter_number = std::max(rs->coxeter_number, fac.coxeter_number);
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (rs->form[i][j] != rs->form[j][i])
                throw error("internal: symmetrized form is not symmetric");

    rs->simple_roots.reserve(N);
    for (std::size_t j = 0; j < N; ++j) {
        Weight a(std::vector<Int>(N, 0));
        for (std::size_t i = 0; i < N; ++i)
            a[i] = rs->cartan[i][j];
        rs->simple_roots.push_back(a);
    }

    rs->rho = Weight(std::vector<Int>(N, 1));
    {
        // half-sum of positive roots must come out as all ones
        std::vector<Int> s(N, 0);
        for (const auto& r : rs->positive_roots)
            for (std::size_t i = 0; i < N; ++i)
                s[i] += r[i];
        for (std::size_t i = 0; i < N; ++i)
            if (s[i] != 2)
                throw error("internal: half-sum of positive roots is not rho");
    }

    rs->dual_perm.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        Weight w(std::vector<Int>(N, 0));
        w[i] = -1;
        const Weight dom = detail::make_dominant_with_cartan(w, rs->cartan);
        std::size_t j = N;
        for (std::size_t k = 0; k < N; ++k)
            if (dom[k] == 1)
                j = k;
        // dominant image of -omega_i is again a fundamental weight
        rs->dual_perm[i] = j;
    }
    for (std::size_t i = 0; i < N; ++i)
        if (rs->dual_perm[rs->dual_perm[i]] != i)
            throw error("internal: dual map is not an involution");

    return rs;
}

inline RootSystemPtr build_root_system(char type, int rank)
{
    return build_root_system(std::vector<std::pair<char, int>>{ { type, rank } });
}

// Accepts "A1", "G2", or products like "A2xB3" (case-insensitive 'x').
inline RootSystemPtr build_root_system(const std::string& label)
{
    std::vector<std::pair<char, int>> factors;
    std::size_t i = 0;
    while (i < label.size()) {
        const char t = static_cast<char>(std::toupper(label[i]));
        if (t < 'A' || t > 'G')
            throw error("bad root system label '" + label + "'");
        ++i;
        std::size_t j = i;
        while (j < label.size() && std::isdigit(label[j]))
            ++j;
        if (j == i)
            throw error("bad root system label '" + label + "': missing rank");
        factors.emplace_back(t, std::stoi(label.substr(i, j - i)));
        i = j;
        if (i < label.size()) {
            if (label[i] != 'x' && label[i] != 'X')
                throw error("bad root system label '" + label + "'");
            ++i;
        }
    }
    return build_root_system(factors);
}

// <lambda, alpha_0^vee> against the highest short root's coroot. For a
// product system this is the maximum over the factors, which is the value
// every alcove/saturation bound in this library needs.
inline Int pairing_alpha0(const Weight& la, const RootSystemData& rs)
{
    if (la.rank() != static_cast<std::size_t>(rs.rank))
        throw error("weight rank mismatch for " + rs.label);
    bool first = true;
    Int best = 0;
    for (const auto& fac : rs.factors) {
        Int v = 0;
        for (int i = 0; i < fac.rank; ++i)
            v = checked_add(v, checked_mul(fac.alpha0_coroot[i], la[fac.offset + i]));
        if (first || v > best)
            best = v;
        first = false;
    }
    return best;
}

struct DominantRep {
    Weight weight;
    int sign = 1; // (-1)^(number of reflections applied); see singular
    bool singular = false; // orbit lies on a wall; sign is then not well defined
};

// Unique dominant representative of the Weyl orbit, with the parity of the
// reducing word. Weights fixed by a reflection are flagged singular.
inline DominantRep make_dominant(Weight la, const RootSystemData& rs)
{
    const std::size_t n = la.rank();
    if (n != static_cast<std::size_t>(rs.rank))
        throw error("weight rank mismatch for " + rs.label);
    DominantRep out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (la[i] < 0) {
                const Int c = la[i];
                for (std::size_t k = 0; k < n; ++k)
                    la[k] = checked_sub(la[k], checked_mul(c, rs.cartan[k][i]));
                out.sign = -out.sign;
                changed = true;
            }
        }
    }
    out.singular = std::any_of(la.coords.begin(), la.coords.end(), [](Int v) { return v == 0; });
    out.weight = std::move(la);
    return out;
}

// lambda* = -w0(lambda); an involution on dominant weights.
inline Weight dual_weight(const Weight& la, const RootSystemData& rs)
{
    if (la.rank() != static_cast<std::size_t>(rs.rank))
        throw error("weight rank mismatch for " + rs.label);
    if (!la.dominant())
        throw error("dual_weight requires a dominant weight, got " + to_string(la));
    Weight r(std::vector<Int>(la.rank(), 0));
    for (std::size_t i = 0; i < la.rank(); ++i)
        r[i] = la[rs.dual_perm[i]];
    return r;
}

// a <= b in the dominance order: b - a is a nonnegative integer combination
// of positive roots.
inline bool dominance_leq(const Weight& a, const Weight& b, const RootSystemData& rs)
{
    if (a.rank() != b.rank() || a.rank() != static_cast<std::size_t>(rs.rank))
        throw error("weight rank mismatch for " + rs.label);
    for (const auto& fac : rs.factors) {
        for (int i = 0; i < fac.rank; ++i) {
            Int u = 0;
            for (int j = 0; j < fac.rank; ++j)
                u = checked_add(u,
                                checked_mul(fac.cartan_adjugate[i][j],
                                            checked_sub(b[fac.offset + j], a[fac.offset + j])));
            if (u < 0 || u % fac.cartan_det != 0)
                return false;
        }
    }
    return true;
}

// All dominant sigma <= la, enumerated over the bounded box of simple-root
// coefficient vectors, ordered by height of la - sigma then lexicographically.
inline std::vector<Weight> dominant_weights_below(const Weight& la, const RootSystemData& rs)
{
    if (la.rank() != static_cast<std::size_t>(rs.rank))
        throw error("weight rank mismatch for " + rs.label);
    if (!la.dominant())
        throw error("dominant_weights_below requires a dominant weight, got " + to_string(la));
    const std::size_t n = la.rank();
    // bound_i = floor((C^{-1} la)_i); valid because the inverse Cartan of an
    // irreducible factor has positive entries and sigma >= 0 coordinatewise
    std::vector<Int> bound(n, 0);
    for (const auto& fac : rs.factors) {
        for (int i = 0; i < fac.rank; ++i) {
            Int u = 0;
            for (int j = 0; j < fac.rank; ++j)
                u = checked_add(u, checked_mul(fac.cartan_adjugate[i][j], la[fac.offset + j]));
            bound[fac.offset + i] = u / fac.cartan_det;
        }
    }
    std::vector<std::pair<Int, Weight>> found; // (height, sigma)
    std::vector<Int> c(n, 0);
    for (;;) {
        Weight sigma = la;
        Int ht = 0;
        for (std::size_t j = 0; j < n; ++j) {
            ht += c[j];
            if (c[j])
                for (std::size_t i = 0; i < n; ++i)
                    sigma[i] = checked_sub(sigma[i], checked_mul(c[j], rs.cartan[i][j]));
        }
        if (sigma.dominant())
            found.emplace_back(ht, std::move(sigma));
        std::size_t k = 0;
        while (k < n && c[k] == bound[k])
            c[k++] = 0;
        if (k == n)
            break;
        ++c[k];
    }
    std::sort(found.begin(), found.end());
    std::vector<Weight> out;
    out.reserve(found.size());
    for (auto& [ht, w] : found)
        out.push_back(std::move(w));
    return out;
}

// lambda = lambda0 + p^r lambda1 with lambda0 r-restricted; coordinatewise
// Euclidean division.
inline std::pair<Weight, Weight> decompose_pr(const Weight& la, Int p, int r)
{
    if (!la.dominant())
        throw error("decompose_pr requires a dominant weight, got " + to_string(la));
    if (p < 2 || r < 1)
        throw error("decompose_pr requires p >= 2 and r >= 1");
    const Int q = checked_pow(p, r);
    Weight lo = la, hi = la;
    for (std::size_t i = 0; i < la.rank(); ++i) {
        lo[i] = la[i] % q;
        hi[i] = la[i] / q;
    }
    return { lo, hi };
}

// Scaled invariant form: rs.form_scale * (x, y) for vectors in
// fundamental-weight coordinates. Exact integer.
inline Int form_pairing(const Weight& x, const Weight& y, const RootSystemData& rs)
{
    Int acc = 0;
    for (std::size_t i = 0; i < x.rank(); ++i) {
        if (x[i] == 0)
            continue;
        Int row = 0;
        for (std::size_t j = 0; j < y.rank(); ++j)
            row = checked_add(row, checked_mul(rs.form[i][j], y[j]));
        acc = checked_add(acc, checked_mul(x[i], row));
    }
    return acc;
}

} // namespace tiltchar
