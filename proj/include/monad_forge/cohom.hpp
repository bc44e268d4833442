#ifndef MONAD_FORGE_COHOM_HPP
#define MONAD_FORGE_COHOM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <monad_forge/algebra.hpp>
#include <monad_forge/certificate.hpp>
#include <monad_forge/linmat.hpp>
#include <monad_forge/numeric.hpp>
#include <monad_forge/serialize.hpp>
#include <monad_forge/sparse.hpp>

namespace monad_forge
{

// h^i as an exact value (lo == hi) or an interval [lo, hi].
struct CohomEntry {
    Integer lo;
    Integer hi;

    bool exact() const
    {
        return lo == hi;
    }
    friend bool operator==(const CohomEntry &, const CohomEntry &) = default;
};

class CohomTable
{
public:
    CohomTable() = default;
    explicit CohomTable(std::size_t dim) : e_(dim + 1, CohomEntry{0, 0}) {}

    static CohomTable exact(std::vector<Integer> dims)
    {
        CohomTable t;
        for (auto &d : dims) {
            t.e_.push_back({d, d});
        }
        return t;
    }

    std::size_t size() const noexcept
    {
        return e_.size();
    }
    const CohomEntry &entry(std::size_t i) const
    {
        return e_.at(i);
    }
    CohomEntry &entry(std::size_t i)
    {
        return e_.at(i);
    }
    bool is_exact(std::size_t i) const
    {
        return e_.at(i).exact();
    }
    bool all_exact() const
    {
        return std::all_of(e_.begin(), e_.end(), [](const auto &e) { return e.exact(); });
    }
    // Exact value of h^i; throws if only an interval is known.
    const Integer &h(std::size_t i) const
    {
        if (!is_exact(i)) {
            throw std::logic_error("h^" + std::to_string(i) + " is only known as an interval");
        }
        return e_.at(i).lo;
    }
    // Zero beyond the top degree.
    Integer h_or_zero(std::size_t i) const
    {
        return i < e_.size() ? h(i) : Integer(0);
    }
    bool is_zero() const
    {
        return std::all_of(e_.begin(), e_.end(), [](const auto &e) { return e.hi == 0; });
    }
    Integer euler() const
    {
        Integer chi = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            chi += (i % 2 == 0 ? 1 : -1) * h(i);
        }
        return chi;
    }

    CohomTable &operator+=(const CohomTable &o)
    {
        if (o.size() != size()) {
            throw DimensionMismatch("cohomology tables of different length");
        }
        for (std::size_t i = 0; i < e_.size(); ++i) {
            e_[i].lo += o.e_[i].lo;
            e_[i].hi += o.e_[i].hi;
        }
        return *this;
    }
    CohomTable scaled(const Integer &m) const
    {
        CohomTable t = *this;
        for (auto &e : t.e_) {
            e.lo *= m;
            e.hi *= m;
        }
        return t;
    }

    friend bool operator==(const CohomTable &, const CohomTable &) = default;

private:
    std::vector<CohomEntry> e_;
};

// Bott formula on P^n: h^0 = C(n+d, n), h^n = C(-d-1, n), everything else 0.
inline CohomTable bott(int n, int d)
{
    if (n < 1) {
        throw std::invalid_argument("bott needs n >= 1");
    }
    CohomTable t(static_cast<std::size_t>(n));
    if (d >= 0) {
        t.entry(0) = {binomial(n + d, n), binomial(n + d, n)};
    }
    if (d <= -n - 1) {
        const auto top = binomial(-d - 1, n);
        t.entry(static_cast<std::size_t>(n)) = {top, top};
    }
    return t;
}

// Kunneth: h^t(O(d)) = sum over q_1 + ... + q_n = t of prod h^{q_i}(P^{a_i}, O(d_i)).
inline CohomTable kunneth(const SpaceSpec &space, const MultiDegree &d)
{
    d.check_space(space);
    std::vector<Integer> acc{1};
    for (std::size_t i = 0; i < space.factors(); ++i) {
        const auto factor = bott(space.factor_dim(i), d[i]);
        std::vector<Integer> next(acc.size() + factor.size() - 1, 0);
        for (std::size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == 0) {
                continue;
            }
            for (std::size_t b = 0; b < factor.size(); ++b) {
                next[a + b] += acc[a] * factor.h(b);
            }
        }
        acc = std::move(next);
    }
    return CohomTable::exact(std::move(acc));
}

// Direct sum of line bundles, degrees deduplicated and kept sorted.
class LineBundleSum
{
public:
    explicit LineBundleSum(SpaceSpec space) : space_(std::move(space)) {}

    LineBundleSum &add(const MultiDegree &d, const Integer &multiplicity)
    {
        d.check_space(space_);
        if (multiplicity < 0) {
            throw std::invalid_argument("negative multiplicity");
        }
        if (multiplicity != 0) {
            summands_[d] += multiplicity;
        }
        return *this;
    }

    const SpaceSpec &space() const noexcept
    {
        return space_;
    }
    const std::map<MultiDegree, Integer> &summands() const noexcept
    {
        return summands_;
    }
    Integer rank() const
    {
        Integer r = 0;
        for (const auto &[d, m] : summands_) {
            r += m;
        }
        return r;
    }
    LineBundleSum twisted(const MultiDegree &t) const
    {
        LineBundleSum out(space_);
        for (const auto &[d, m] : summands_) {
            out.add(d + t, m);
        }
        return out;
    }

    friend bool operator==(const LineBundleSum &, const LineBundleSum &) = default;

private:
    SpaceSpec space_;
    std::map<MultiDegree, Integer> summands_;
};

inline CohomTable cohom_sum(const LineBundleSum &l)
{
    CohomTable t(static_cast<std::size_t>(l.space().dim()));
    for (const auto &[d, m] : l.summands()) {
        t += kunneth(l.space(), d).scaled(m);
    }
    return t;
}

inline Integer euler_char(const LineBundleSum &l)
{
    return cohom_sum(l).euler();
}

// 0 -> S1 -> S2 -> V -> 0; `map` realizes S1 -> S2 when both are single-degree sums.
struct TwoTermResolution {
    LineBundleSum s1;
    LineBundleSum s2;
    std::optional<LinMatrix<RationalField>> map;
    std::string target = "V";
};

// Cohomology of V(t) from the long exact sequence
//   ... -> H^i(S1) -> H^i(S2) -> H^i(V) -> H^{i+1}(S1) -> H^{i+1}(S2) -> ...
// h^i(V) = h^i(S2) - r_i + h^{i+1}(S1) - r_{i+1} with r_i the rank of H^i(S1) -> H^i(S2).
// A rank is known when one side vanishes, or for i = 0 when the map is supplied. Unknown
// ranks give intervals; a single remaining interval is pinned by the Euler characteristic.
inline CohomTable les_cohom(const TwoTermResolution &res, const MultiDegree &twist)
{
    const auto &space = res.s1.space();
    const std::size_t dim = static_cast<std::size_t>(space.dim());
    const auto c1 = cohom_sum(res.s1.twisted(twist));
    const auto c2 = cohom_sum(res.s2.twisted(twist));

    std::vector<std::optional<Integer>> rank(dim + 2);
    std::vector<Integer> rank_max(dim + 2, 0);
    for (std::size_t i = 0; i <= dim + 1; ++i) {
        const auto a = c1.h_or_zero(i);
        const auto b = c2.h_or_zero(i);
        rank_max[i] = std::min(a, b);
        if (rank_max[i] == 0) {
            rank[i] = Integer(0);
        }
    }
    if (!rank[0] && res.map) {
        const auto &m = *res.map;
        if (res.s1.summands().size() != 1 || res.s2.summands().size() != 1) {
            throw std::invalid_argument("resolution map needs single-degree summands");
        }
        const auto &[d1, m1] = *res.s1.summands().begin();
        const auto &[d2, m2] = *res.s2.summands().begin();
        if (m.cols() != m1 || m.rows() != m2 || d1 + m.entry_degree() != d2) {
            throw ShapeMismatch("resolution map does not match its summands");
        }
        rank[0] = Integer(rank_exact(global_sections_map(m, d1 + twist)));
    }

    CohomTable out(dim);
    for (std::size_t i = 0; i <= dim; ++i) {
        const Integer base = c2.h(i) + c1.h_or_zero(i + 1);
        const Integer lo = base - (rank[i] ? *rank[i] : rank_max[i]) - (rank[i + 1] ? *rank[i + 1] : rank_max[i + 1]);
        const Integer hi = base - (rank[i] ? *rank[i] : Integer(0)) - (rank[i + 1] ? *rank[i + 1] : Integer(0));
        out.entry(i) = {std::max(lo, Integer(0)), hi};
    }

    std::size_t open = 0;
    std::size_t open_index = 0;
    Integer known = 0;
    for (std::size_t i = 0; i <= dim; ++i) {
        if (out.is_exact(i)) {
            known += (i % 2 == 0 ? 1 : -1) * out.h(i);
        } else {
            ++open;
            open_index = i;
        }
    }
    if (open == 1) {
        const Integer chi = c2.euler() - c1.euler();
        Integer v = chi - known;
        if (open_index % 2 == 1) {
            v = -v;
        }
        out.entry(open_index) = {v, v};
    }
    return out;
}

// Terms Lambda^{q-j}(O^beta) (x) S^j(O(L)^gamma) = O(jL)^{C(beta, q-j) C(gamma+j-1, j)}, j = 0..q.
inline std::vector<LineBundleSum> wedge_complex_terms(const SpaceSpec &space, int beta, const MultiDegree &l,
                                                      int gamma, int q)
{
    if (q < 1 || q > beta - gamma) {
        throw std::invalid_argument("wedge power q must satisfy 1 <= q <= beta - gamma");
    }
    std::vector<LineBundleSum> terms;
    for (int j = 0; j <= q; ++j) {
        LineBundleSum t(space);
        t.add(j * l, binomial(beta, q - j) * binomial(gamma + j - 1, j));
        terms.push_back(std::move(t));
    }
    return terms;
}

// Euler characteristic of Lambda^q T (x) O(t) from the exact wedge complex.
inline Integer wedge_euler(const SpaceSpec &space, int beta, const MultiDegree &l, int gamma, int q,
                           const MultiDegree &twist)
{
    Integer chi = 0;
    const auto terms = wedge_complex_terms(space, beta, l, gamma, q);
    for (std::size_t j = 0; j < terms.size(); ++j) {
        chi += (j % 2 == 0 ? 1 : -1) * euler_char(terms[j].twisted(twist));
    }
    return chi;
}

namespace detail
{

// q-subsets of {0..n-1} as bitmasks in lexicographic order of their index tuples.
inline std::vector<std::uint64_t> subsets(int n, int q)
{
    std::vector<std::uint64_t> out;
    std::vector<int> idx(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    if (q > n) {
        return out;
    }
    while (true) {
        std::uint64_t mask = 0;
        for (int v : idx) {
            mask |= 1ULL << static_cast<unsigned>(v);
        }
        out.push_back(mask);
        int i = q - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - q + i) {
            --i;
        }
        if (i < 0) {
            return out;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < q; ++t) {
            idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
}

} // namespace detail

// Matrix of H^0(Lambda^q(O^beta)(t)) -> H^0(Lambda^{q-1}(O^beta) (x) O(L)^gamma (t)) induced by
// e_{i_1} ^ ... ^ e_{i_q} |-> sum_s (-1)^s e_{i_1} ^ ..^ (omit i_s) ^ .. ^ e_{i_q} (x) B(e_{i_s}).
// Domain index = subset index * dim S_t + monomial index; codomain index =
// (subset index * gamma + row) * dim S_{t+L} + monomial index.
inline SparseIntMatrix wedge_sections_map(const LinMatrix<RationalField> &b, int q, const MultiDegree &twist)
{
    const int beta = static_cast<int>(b.cols());
    const int gamma = static_cast<int>(b.rows());
    if (q < 1 || q > beta - gamma) {
        throw std::invalid_argument("wedge power q must satisfy 1 <= q <= beta - gamma");
    }
    if (beta > 64) {
        throw std::invalid_argument("wedge sections map supports beta <= 64");
    }
    const auto &space = b.space();
    const auto src = monomial_basis(space, twist);
    const auto dst = monomial_basis(space, twist + b.entry_degree());
    const auto dom_sets = detail::subsets(beta, q);
    const auto cod_sets = detail::subsets(beta, q - 1);
    const std::size_t ns = src.size();
    const std::size_t nd = dst.size();
    const auto ug = static_cast<std::size_t>(gamma);
    if (ns == 0) {
        return SparseIntMatrix(cod_sets.size() * ug * nd, 0);
    }
    std::map<std::uint64_t, std::size_t> cod_index;
    for (std::size_t i = 0; i < cod_sets.size(); ++i) {
        cod_index.emplace(cod_sets[i], i);
    }
    std::map<Monomial, std::size_t> dst_index;
    for (std::size_t i = 0; i < nd; ++i) {
        dst_index.emplace(dst[i], i);
    }
    // Column c of B as (row, monomial, coefficient) triples.
    std::vector<std::vector<std::tuple<std::size_t, Monomial, Integer>>> col_terms(b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (const auto &[mono, coeff] : b.at(r, c).terms()) {
                col_terms[c].emplace_back(r, mono, detail::integral_coefficient(coeff));
            }
        }
    }
    std::vector<SparseEntry> entries;
    for (std::size_t di = 0; di < dom_sets.size(); ++di) {
        const auto mask = dom_sets[di];
        int s = 0;
        for (int i = 0; i < beta; ++i) {
            if (!(mask >> static_cast<unsigned>(i) & 1U)) {
                continue;
            }
            const auto face = cod_index.at(mask & ~(1ULL << static_cast<unsigned>(i)));
            const int sign = s % 2 == 0 ? 1 : -1;
            ++s;
            for (const auto &[row, mono, coeff] : col_terms[static_cast<std::size_t>(i)]) {
                for (std::size_t j = 0; j < ns; ++j) {
                    entries.push_back({(face * ug + row) * nd + dst_index.at(mono * src[j]), di * ns + j, sign * coeff});
                }
            }
        }
    }
    return SparseIntMatrix(cod_sets.size() * ug * nd, dom_sets.size() * ns, std::move(entries));
}

// h^0(Lambda^q T (x) O(t)) for T = ker(B: O^beta -> O(L)^gamma), by left exactness of H^0
// on the wedge complex.
inline Integer h0_wedge_kernel(const LinMatrix<RationalField> &b, int q, const MultiDegree &twist)
{
    return Integer(kernel_dim(wedge_sections_map(b, q, twist)));
}

inline json to_json(const CohomTable &t, const MultiDegree *degree = nullptr)
{
    json dims = json::array();
    json exact = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto &e = t.entry(i);
        if (e.exact()) {
            dims.push_back(integer_to_json(e.lo));
        } else {
            dims.push_back(json::array({integer_to_json(e.lo), integer_to_json(e.hi)}));
        }
        exact.push_back(e.exact());
    }
    json j = {{"schema", schema_id}, {"kind", "cohomology-table"}};
    if (degree != nullptr) {
        j["degree"] = to_json(*degree);
    }
    j["dims"] = std::move(dims);
    j["exact"] = std::move(exact);
    return j;
}

} // namespace monad_forge

#endif
