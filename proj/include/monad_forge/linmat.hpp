#ifndef MONAD_FORGE_LINMAT_HPP
#define MONAD_FORGE_LINMAT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <monad_forge/algebra.hpp>
#include <monad_forge/errors.hpp>
#include <monad_forge/field.hpp>
#include <monad_forge/parallel.hpp>
#include <monad_forge/sparse.hpp>

namespace monad_forge
{

// Matrix whose nonzero entries are homogeneous of one shared multidegree.
template <Field F>
class LinMatrix
{
public:
    using poly_type = Polynomial<F>;

    LinMatrix(SpaceSpec space, F field, std::size_t rows, std::size_t cols, MultiDegree entry_degree)
        : space_(std::move(space)), field_(std::move(field)), rows_(rows), cols_(cols),
          degree_(std::move(entry_degree)), entries_(rows * cols, poly_type(space_, field_))
    {
        degree_.check_space(space_);
    }

    const SpaceSpec &space() const noexcept
    {
        return space_;
    }
    const F &field() const noexcept
    {
        return field_;
    }
    std::size_t rows() const noexcept
    {
        return rows_;
    }
    std::size_t cols() const noexcept
    {
        return cols_;
    }
    const MultiDegree &entry_degree() const noexcept
    {
        return degree_;
    }

    const poly_type &at(std::size_t r, std::size_t c) const
    {
        check_index(r, c);
        return entries_[r * cols_ + c];
    }

    void set(std::size_t r, std::size_t c, poly_type p)
    {
        check_index(r, c);
        if (!(p.space() == space_) || !(p.field() == field_)) {
            throw RingMismatch("matrix entry over a different ring");
        }
        if (!p.is_zero()) {
            const auto d = p.homogeneous_degree();
            if (!d || *d != degree_) {
                throw DegreeMismatch("entry (" + std::to_string(r) + "," + std::to_string(c)
                                     + ") is not homogeneous of degree " + degree_.to_string());
            }
        }
        entries_[r * cols_ + c] = std::move(p);
    }

    friend bool operator==(const LinMatrix &a, const LinMatrix &b)
    {
        return a.space_ == b.space_ && a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_
               && a.degree_ == b.degree_ && a.entries_ == b.entries_;
    }

    bool is_zero() const
    {
        return std::all_of(entries_.begin(), entries_.end(), [](const poly_type &p) { return p.is_zero(); });
    }

private:
    void check_index(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) {
            throw std::out_of_range("matrix index out of range");
        }
    }

    SpaceSpec space_;
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    MultiDegree degree_;
    std::vector<poly_type> entries_;
};

// Exact symbolic product B * A.
template <Field F>
LinMatrix<F> mat_mul(const LinMatrix<F> &b, const LinMatrix<F> &a)
{
    if (b.cols() != a.rows()) {
        throw ShapeMismatch("cannot multiply " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " by "
                            + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    if (!(b.space() == a.space()) || !(b.field() == a.field())) {
        throw RingMismatch("matrices over different rings");
    }
    LinMatrix<F> out(a.space(), a.field(), b.rows(), a.cols(), b.entry_degree() + a.entry_degree());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Polynomial<F> acc(a.space(), a.field());
            for (std::size_t t = 0; t < b.cols(); ++t) {
                if (!b.at(i, t).is_zero() && !a.at(t, j).is_zero()) {
                    acc += b.at(i, t) * a.at(t, j);
                }
            }
            out.set(i, j, std::move(acc));
        }
    }
    return out;
}

template <Field F>
LinMatrix<F> transpose(const LinMatrix<F> &m)
{
    LinMatrix<F> t(m.space(), m.field(), m.cols(), m.rows(), m.entry_degree());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            t.set(c, r, m.at(r, c));
        }
    }
    return t;
}

template <Field G, Field F>
LinMatrix<G> change_ring(const LinMatrix<F> &m, const G &target)
{
    LinMatrix<G> out(m.space(), target, m.rows(), m.cols(), m.entry_degree());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out.set(r, c, change_ring(m.at(r, c), target));
        }
    }
    return out;
}

template <Field G>
using ScalarMatrix = std::vector<std::vector<typename G::element>>;

template <Field F, Field G>
ScalarMatrix<G> evaluate(const LinMatrix<F> &m, const ProjPoint<G> &pt)
{
    ScalarMatrix<G> out(m.rows(), std::vector<typename G::element>(m.cols(), pt.field().zero()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = evaluate(m.at(r, c), pt);
        }
    }
    return out;
}

// Rank by Gaussian elimination over G.
template <Field G>
std::size_t scalar_rank(const G &g, ScalarMatrix<G> m)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && g.is_zero(m[piv][c])) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(m[piv], m[rank]);
        const auto inv = g.inv(m[rank][c]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (g.is_zero(m[r][c])) {
                continue;
            }
            const auto f = g.mul(m[r][c], inv);
            for (std::size_t k = c; k < cols; ++k) {
                m[r][k] = g.sub(m[r][k], g.mul(f, m[rank][k]));
            }
        }
        ++rank;
    }
    return rank;
}

template <Field F, Field G>
std::size_t rank_at_point(const LinMatrix<F> &m, const ProjPoint<G> &pt)
{
    return scalar_rank(pt.field(), evaluate(m, pt));
}

// Visits every normalized point of X(F_q) for each listed prime q.
struct ExhaustiveStrategy {
    std::vector<std::uint64_t> primes;
    std::uint64_t cap = 10'000'000;
};

// Draws points uniformly from X(F_p) using mt19937_64 seeded with `seed`.
struct SampledStrategy {
    std::uint64_t count = 10'000;
    std::uint64_t prime = 2147483647ULL;
    std::uint64_t seed = 0;
};

using RankStrategy = std::variant<ExhaustiveStrategy, SampledStrategy>;

enum class RankVerdict { pass, fail, inconclusive };

inline std::string to_string(RankVerdict v)
{
    switch (v) {
    case RankVerdict::pass:
        return "pass";
    case RankVerdict::fail:
        return "fail";
    case RankVerdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

struct RankFailure {
    std::uint64_t modulus = 0;
    std::vector<std::vector<std::uint64_t>> point;
    std::size_t rank = 0;

    friend auto operator<=>(const RankFailure &, const RankFailure &) = default;
};

struct RankReport {
    std::size_t expected_rank = 0;
    RankStrategy strategy;
    std::vector<RankFailure> failures; // first max_recorded in visiting order, then sorted
    std::uint64_t failure_count = 0;
    std::uint64_t points_checked = 0;
    RankVerdict verdict = RankVerdict::inconclusive;
    bool monte_carlo = false;
    std::string caveat;
};

inline constexpr std::size_t max_recorded_failures = 32;

namespace detail
{

// Uniform draw in [0, p) without modulo bias; the reduction is spelled out because
// std::uniform_int_distribution is not portable across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t p)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % p;
    while (true) {
        const std::uint64_t v = rng();
        if (v < limit) {
            return v % p;
        }
    }
}

inline ProjPoint<PrimeField> random_point(const SpaceSpec &space, const PrimeField &f, std::mt19937_64 &rng)
{
    std::vector<std::vector<std::uint64_t>> blocks(space.factors());
    for (std::size_t b = 0; b < space.factors(); ++b) {
        auto &coords = blocks[b];
        do {
            coords.assign(space.block_size(b), 0);
            for (auto &v : coords) {
                v = uniform_below(rng, f.modulus());
            }
        } while (std::all_of(coords.begin(), coords.end(), [](std::uint64_t v) { return v == 0; }));
    }
    return ProjPoint<PrimeField>(f, std::move(blocks));
}

struct ChunkResult {
    std::uint64_t failures = 0;
    std::vector<RankFailure> recorded;
};

} // namespace detail

// Semi-decides maximal rank of M on all of X: evidence at F_q-rational points, not a proof
// over the algebraic closure.
template <Field F>
RankReport fiberwise_rank_check(const LinMatrix<F> &m, std::size_t expected, const RankStrategy &strategy)
{
    if (expected > std::min(m.rows(), m.cols())) {
        throw std::invalid_argument("expected rank exceeds matrix size");
    }
    RankReport report;
    report.expected_rank = expected;
    report.strategy = strategy;

    auto record = [&](std::vector<detail::ChunkResult> &&chunks) {
        for (auto &c : chunks) {
            report.failure_count += c.failures;
            // chunks arrive in point order, so this keeps the first failures of the whole sweep
            for (auto &f : c.recorded) {
                if (report.failures.size() < max_recorded_failures) {
                    report.failures.push_back(std::move(f));
                }
            }
        }
    };
    auto failure_of = [](const ProjPoint<PrimeField> &pt, std::size_t rank) {
        return RankFailure{pt.field().modulus(), pt.normalized().blocks(), rank};
    };

    if (const auto *ex = std::get_if<ExhaustiveStrategy>(&strategy)) {
        if (ex->primes.empty()) {
            throw std::invalid_argument("exhaustive strategy needs at least one field");
        }
        std::vector<PointSweep> sweeps;
        for (auto q : ex->primes) {
            sweeps.emplace_back(m.space(), PrimeField(q), ex->cap);
        }
        for (const auto &sweep : sweeps) {
            const auto reduced = change_ring(m, sweep.field());
            record(parallel_chunks(sweep.size(), [&](std::size_t, std::size_t b, std::size_t e) {
                detail::ChunkResult res;
                for (std::size_t i = b; i < e; ++i) {
                    const auto pt = sweep.point(i);
                    const auto r = rank_at_point(reduced, pt);
                    if (r != expected) {
                        ++res.failures;
                        if (res.recorded.size() < max_recorded_failures) {
                            res.recorded.push_back(failure_of(pt, r));
                        }
                    }
                }
                return res;
            }));
            report.points_checked += sweep.size();
        }
        report.caveat = "maximal rank verified at every rational point of the listed finite fields; "
                        "this is evidence, not a proof, over the algebraic closure";
    } else {
        const auto &sm = std::get<SampledStrategy>(strategy);
        const PrimeField f(sm.prime);
        const auto reduced = change_ring(m, f);
        // Points are drawn up front from a single stream so results do not depend on threading.
        std::mt19937_64 rng(sm.seed);
        std::vector<ProjPoint<PrimeField>> pts;
        pts.reserve(sm.count);
        for (std::uint64_t i = 0; i < sm.count; ++i) {
            pts.push_back(detail::random_point(m.space(), f, rng));
        }
        record(parallel_chunks(pts.size(), [&](std::size_t, std::size_t b, std::size_t e) {
            detail::ChunkResult res;
            for (std::size_t i = b; i < e; ++i) {
                const auto r = rank_at_point(reduced, pts[i]);
                if (r != expected) {
                    ++res.failures;
                    if (res.recorded.size() < max_recorded_failures) {
                        res.recorded.push_back(failure_of(pts[i], r));
                    }
                }
            }
            return res;
        }));
        report.points_checked = sm.count;
        report.monte_carlo = true;
        report.caveat = "Monte-Carlo: maximal rank at " + std::to_string(sm.count) + " seeded random points of F_"
                        + std::to_string(sm.prime);
    }
    std::sort(report.failures.begin(), report.failures.end());
    report.verdict = report.failure_count == 0 ? RankVerdict::pass : RankVerdict::fail;
    return report;
}

namespace detail
{

inline Integer integral_coefficient(const Rational &c)
{
    if (boost::multiprecision::denominator(c) != 1) {
        throw std::invalid_argument("global sections map needs integral coefficients, got " + to_string(c));
    }
    return boost::multiprecision::numerator(c);
}

} // namespace detail

// Matrix of H^0(O(t))^cols -> H^0(O(t + deg M))^rows in the canonical monomial bases.
// Domain index = col * dim S_t + basis index; codomain index = row * dim S_{t+e} + basis index.
inline SparseIntMatrix global_sections_map(const LinMatrix<RationalField> &m, const MultiDegree &twist)
{
    const auto &space = m.space();
    const auto src = monomial_basis(space, twist);
    const auto dst = monomial_basis(space, twist + m.entry_degree());
    std::map<Monomial, std::size_t> dst_index;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst_index.emplace(dst[i], i);
    }
    std::vector<SparseEntry> entries;
    if (!src.empty()) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                const auto &p = m.at(r, c);
                for (const auto &[mono, coeff] : p.terms()) {
                    const Integer v = detail::integral_coefficient(coeff);
                    for (std::size_t j = 0; j < src.size(); ++j) {
                        entries.push_back({r * dst.size() + dst_index.at(mono * src[j]), c * src.size() + j, v});
                    }
                }
            }
        }
    }
    return SparseIntMatrix(m.rows() * dst.size(), m.cols() * src.size(), std::move(entries));
}

} // namespace monad_forge

#endif
