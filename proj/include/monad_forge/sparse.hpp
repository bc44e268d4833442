#ifndef MONAD_FORGE_SPARSE_HPP
#define MONAD_FORGE_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <monad_forge/errors.hpp>
#include <monad_forge/field.hpp>
#include <monad_forge/numeric.hpp>

namespace monad_forge
{

struct SparseEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer value;

    friend bool operator==(const SparseEntry &, const SparseEntry &) = default;
};

// Integer matrix in coordinate form; entries sorted by (col, row), no zeros, no duplicates.
class SparseIntMatrix
{
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<SparseEntry> entries) : rows_(rows), cols_(cols)
    {
        std::map<std::pair<std::size_t, std::size_t>, Integer> acc;
        for (auto &e : entries) {
            if (e.row >= rows || e.col >= cols) {
                throw ShapeMismatch("sparse entry out of range");
            }
            acc[{e.col, e.row}] += e.value;
        }
        for (auto &[k, v] : acc) {
            if (v != 0) {
                entries_.push_back({k.second, k.first, std::move(v)});
            }
        }
    }

    static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>> &m, std::size_t cols)
    {
        std::vector<SparseEntry> e;
        for (std::size_t r = 0; r < m.size(); ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (m[r].at(c) != 0) {
                    e.push_back({r, c, m[r][c]});
                }
            }
        }
        return SparseIntMatrix(m.size(), cols, std::move(e));
    }

    std::size_t rows() const noexcept
    {
        return rows_;
    }
    std::size_t cols() const noexcept
    {
        return cols_;
    }
    const std::vector<SparseEntry> &entries() const noexcept
    {
        return entries_;
    }
    std::size_t nonzeros() const noexcept
    {
        return entries_.size();
    }

    std::vector<std::vector<Integer>> to_dense() const
    {
        std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_, 0));
        for (const auto &e : entries_) {
            d[e.row][e.col] = e.value;
        }
        return d;
    }

    friend SparseIntMatrix operator*(const SparseIntMatrix &a, const SparseIntMatrix &b)
    {
        if (a.cols_ != b.rows_) {
            throw ShapeMismatch("sparse product shape mismatch");
        }
        std::vector<std::vector<std::pair<std::size_t, Integer>>> a_cols(a.cols_);
        for (const auto &e : a.entries_) {
            a_cols[e.col].emplace_back(e.row, e.value);
        }
        std::vector<SparseEntry> out;
        for (const auto &e : b.entries_) {
            for (const auto &[r, v] : a_cols[e.row]) {
                out.push_back({r, e.col, v * e.value});
            }
        }
        return SparseIntMatrix(a.rows_, b.cols_, std::move(out));
    }

    friend bool operator==(const SparseIntMatrix &, const SparseIntMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseEntry> entries_;
};

namespace detail
{

template <typename T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

struct ModPOps {
    PrimeField field;

    std::uint64_t convert(const Integer &v) const
    {
        return field.from_integer(v);
    }
    bool is_zero(std::uint64_t v) const
    {
        return v == 0;
    }
    // Scale so the leading coefficient is 1.
    void normalize(SparseRow<std::uint64_t> &r) const
    {
        const auto s = field.inv(r.front().second);
        for (auto &[c, v] : r) {
            v = field.mul(v, s);
        }
    }
    // r - r.lead * pivot, pivot has leading coefficient 1.
    SparseRow<std::uint64_t> eliminate(const SparseRow<std::uint64_t> &r, const SparseRow<std::uint64_t> &piv) const
    {
        const auto f = r.front().second;
        SparseRow<std::uint64_t> out;
        out.reserve(r.size() + piv.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < r.size() || j < piv.size()) {
            if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
                out.push_back(r[i++]);
            } else if (i == r.size() || piv[j].first < r[i].first) {
                out.emplace_back(piv[j].first, field.neg(field.mul(f, piv[j].second)));
                ++j;
            } else {
                const auto v = field.sub(r[i].second, field.mul(f, piv[j].second));
                if (v != 0) {
                    out.emplace_back(r[i].first, v);
                }
                ++i;
                ++j;
            }
        }
        return out;
    }
};

// Fraction-free integer elimination; rows are kept primitive to bound coefficient growth.
struct IntegerOps {
    Integer convert(const Integer &v) const
    {
        return v;
    }
    bool is_zero(const Integer &v) const
    {
        return v == 0;
    }
    void normalize(SparseRow<Integer> &r) const
    {
        Integer g = 0;
        for (const auto &[c, v] : r) {
            g = boost::multiprecision::gcd(g, v);
            if (g == 1) {
                break;
            }
        }
        if (r.front().second < 0) {
            g = -g;
        }
        if (g != 1) {
            for (auto &[c, v] : r) {
                v /= g;
            }
        }
    }
    // piv.lead * r - r.lead * pivot.
    SparseRow<Integer> eliminate(const SparseRow<Integer> &r, const SparseRow<Integer> &piv) const
    {
        const Integer &a = piv.front().second;
        const Integer &b = r.front().second;
        const Integer g = boost::multiprecision::gcd(a, b);
        const Integer sa = a / g;
        const Integer sb = b / g;
        SparseRow<Integer> out;
        out.reserve(r.size() + piv.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < r.size() || j < piv.size()) {
            if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
                out.emplace_back(r[i].first, sa * r[i].second);
                ++i;
            } else if (i == r.size() || piv[j].first < r[i].first) {
                out.emplace_back(piv[j].first, -sb * piv[j].second);
                ++j;
            } else {
                Integer v = sa * r[i].second - sb * piv[j].second;
                if (v != 0) {
                    out.emplace_back(r[i].first, std::move(v));
                }
                ++i;
                ++j;
            }
        }
        if (!out.empty()) {
            normalize(out);
        }
        return out;
    }
};

// Online row echelon: each row is reduced against existing pivots until it is zero or
// has a fresh leading column. Stops early once the rank reaches the column count.
template <typename Ops, typename T>
std::size_t echelon_rank(std::vector<SparseRow<T>> rows, std::size_t ncols, const Ops &ops)
{
    std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.size() < b.size(); });
    std::map<std::size_t, SparseRow<T>> pivots;
    std::size_t rank = 0;
    for (auto &r : rows) {
        while (!r.empty()) {
            auto it = pivots.find(r.front().first);
            if (it == pivots.end()) {
                ops.normalize(r);
                pivots.emplace(r.front().first, std::move(r));
                ++rank;
                break;
            }
            r = ops.eliminate(r, it->second);
        }
        if (rank == ncols) {
            break;
        }
    }
    return rank;
}

struct Component {
    std::vector<std::size_t> cols;
    std::vector<std::vector<const SparseEntry *>> rows;
};

// Splits the matrix into blocks that share no rows or columns. Rank is additive over them.
inline std::vector<Component> connected_components(const SparseIntMatrix &m)
{
    std::vector<std::size_t> parent(m.cols());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<std::vector<const SparseEntry *>> by_row(m.rows());
    for (const auto &e : m.entries()) {
        by_row[e.row].push_back(&e);
    }
    for (const auto &row : by_row) {
        for (std::size_t i = 1; i < row.size(); ++i) {
            const auto a = find(row[0]->col);
            const auto b = find(row[i]->col);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::map<std::size_t, std::size_t> index;
    std::vector<Component> comps;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto root = find(c);
        auto [it, fresh] = index.emplace(root, comps.size());
        if (fresh) {
            comps.emplace_back();
        }
        comps[it->second].cols.push_back(c);
    }
    for (auto &row : by_row) {
        if (!row.empty()) {
            std::sort(row.begin(), row.end(), [](auto *a, auto *b) { return a->col < b->col; });
            comps[index.at(find(row[0]->col))].rows.push_back(std::move(row));
        }
    }
    return comps;
}

template <typename Ops>
auto component_rows(const Component &comp, const Ops &ops)
{
    using T = decltype(ops.convert(Integer{}));
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < comp.cols.size(); ++i) {
        local.emplace(comp.cols[i], i);
    }
    std::vector<SparseRow<T>> rows;
    rows.reserve(comp.rows.size());
    for (const auto &row : comp.rows) {
        SparseRow<T> r;
        for (const auto *e : row) {
            auto v = ops.convert(e->value);
            if (!ops.is_zero(v)) {
                r.emplace_back(local.at(e->col), std::move(v));
            }
        }
        if (!r.empty()) {
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

} // namespace detail

// 2^61 - 1.
inline constexpr std::uint64_t default_fast_prime = 2305843009213693951ULL;

inline std::size_t rank_mod_p(const SparseIntMatrix &m, std::uint64_t p = default_fast_prime)
{
    const detail::ModPOps ops{PrimeField(p)};
    std::size_t rank = 0;
    for (const auto &comp : detail::connected_components(m)) {
        rank += detail::echelon_rank(detail::component_rows(comp, ops), comp.cols.size(), ops);
    }
    return rank;
}

// Exact rank over Q. Components that are full column rank mod p skip the integer pass,
// since reduction mod p can only lower the rank.
inline std::size_t rank_exact(const SparseIntMatrix &m, std::uint64_t p = default_fast_prime)
{
    const detail::ModPOps mod_ops{PrimeField(p)};
    const detail::IntegerOps int_ops;
    std::size_t rank = 0;
    for (const auto &comp : detail::connected_components(m)) {
        const auto r = detail::echelon_rank(detail::component_rows(comp, mod_ops), comp.cols.size(), mod_ops);
        if (r == comp.cols.size()) {
            rank += r;
        } else {
            rank += detail::echelon_rank(detail::component_rows(comp, int_ops), comp.cols.size(), int_ops);
        }
    }
    return rank;
}

// Dimension of the right kernel over Q.
inline std::size_t kernel_dim(const SparseIntMatrix &m, std::uint64_t p = default_fast_prime)
{
    return m.cols() - rank_exact(m, p);
}

} // namespace monad_forge

#endif
