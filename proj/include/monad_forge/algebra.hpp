#ifndef MONAD_FORGE_ALGEBRA_HPP
#define MONAD_FORGE_ALGEBRA_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <monad_forge/errors.hpp>
#include <monad_forge/field.hpp>
#include <monad_forge/numeric.hpp>

namespace monad_forge
{

// X = P^{a_1} x ... x P^{a_n}. Block i carries the a_i + 1 homogeneous coordinates of factor i.
class SpaceSpec
{
public:
    SpaceSpec() = default;
    explicit SpaceSpec(std::vector<int> factor_dims) : dims_(std::move(factor_dims))
    {
        if (dims_.empty()) {
            throw std::invalid_argument("a multiprojective space needs at least one factor");
        }
        for (int a : dims_) {
            if (a < 1) {
                throw std::invalid_argument("factor dimensions must be positive");
            }
        }
        offsets_.resize(dims_.size());
        std::size_t off = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            offsets_[i] = off;
            off += static_cast<std::size_t>(dims_[i]) + 1;
        }
        nvars_ = off;
    }
    SpaceSpec(std::initializer_list<int> dims) : SpaceSpec(std::vector<int>(dims)) {}

    std::size_t factors() const noexcept
    {
        return dims_.size();
    }
    int factor_dim(std::size_t i) const
    {
        return dims_.at(i);
    }
    const std::vector<int> &factor_dims() const noexcept
    {
        return dims_;
    }
    int dim() const noexcept
    {
        return std::accumulate(dims_.begin(), dims_.end(), 0);
    }
    std::size_t num_variables() const noexcept
    {
        return nvars_;
    }
    std::size_t block_offset(std::size_t i) const
    {
        return offsets_.at(i);
    }
    std::size_t block_size(std::size_t i) const
    {
        return static_cast<std::size_t>(dims_.at(i)) + 1;
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            s += (i != 0 ? "x" : "") + ("P^" + std::to_string(dims_[i]));
        }
        return s;
    }

    friend bool operator==(const SpaceSpec &a, const SpaceSpec &b)
    {
        return a.dims_ == b.dims_;
    }

private:
    std::vector<int> dims_;
    std::vector<std::size_t> offsets_;
    std::size_t nvars_ = 0;
};

// A class in Pic(X) = Z^n, one component per factor.
class MultiDegree
{
public:
    MultiDegree() = default;
    explicit MultiDegree(std::vector<int> c) : c_(std::move(c)) {}
    MultiDegree(std::initializer_list<int> c) : c_(c) {}

    static MultiDegree zero(std::size_t n)
    {
        return MultiDegree(std::vector<int>(n, 0));
    }
    static MultiDegree constant(std::size_t n, int v)
    {
        return MultiDegree(std::vector<int>(n, v));
    }

    std::size_t size() const noexcept
    {
        return c_.size();
    }
    int operator[](std::size_t i) const
    {
        return c_[i];
    }
    int &operator[](std::size_t i)
    {
        return c_[i];
    }
    const std::vector<int> &components() const noexcept
    {
        return c_;
    }
    bool nonnegative() const
    {
        return std::all_of(c_.begin(), c_.end(), [](int v) { return v >= 0; });
    }
    bool positive() const
    {
        return std::all_of(c_.begin(), c_.end(), [](int v) { return v > 0; });
    }
    long long total() const
    {
        return std::accumulate(c_.begin(), c_.end(), 0LL);
    }
    void check_space(const SpaceSpec &space) const
    {
        if (c_.size() != space.factors()) {
            throw DimensionMismatch("multidegree has " + std::to_string(c_.size()) + " components, space has "
                                    + std::to_string(space.factors()) + " factors");
        }
    }

    MultiDegree &operator+=(const MultiDegree &o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }
    MultiDegree &operator-=(const MultiDegree &o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }
    friend MultiDegree operator+(MultiDegree a, const MultiDegree &b)
    {
        return a += b;
    }
    friend MultiDegree operator-(MultiDegree a, const MultiDegree &b)
    {
        return a -= b;
    }
    friend MultiDegree operator-(MultiDegree a)
    {
        for (auto &v : a.c_) {
            v = -v;
        }
        return a;
    }
    friend MultiDegree operator*(int s, MultiDegree a)
    {
        for (auto &v : a.c_) {
            v *= s;
        }
        return a;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            s += (i != 0 ? "," : "") + std::to_string(c_[i]);
        }
        return s + ")";
    }

    friend auto operator<=>(const MultiDegree &, const MultiDegree &) = default;
    friend bool operator==(const MultiDegree &, const MultiDegree &) = default;

private:
    void check_same(const MultiDegree &o) const
    {
        if (o.c_.size() != c_.size()) {
            throw DimensionMismatch("multidegree length mismatch");
        }
    }

    std::vector<int> c_;
};

// Exponent vector over all variables of a SpaceSpec, blocks concatenated in factor order.
class Monomial
{
public:
    using exponent_type = std::uint16_t;

    Monomial() = default;
    explicit Monomial(std::vector<exponent_type> e) : e_(std::move(e)) {}
    Monomial(std::initializer_list<exponent_type> e) : e_(e) {}

    static Monomial one(const SpaceSpec &space)
    {
        return Monomial(std::vector<exponent_type>(space.num_variables(), 0));
    }
    // The coordinate x_{block,index}.
    static Monomial variable(const SpaceSpec &space, std::size_t block, std::size_t index)
    {
        if (block >= space.factors() || index >= space.block_size(block)) {
            throw DimensionMismatch("variable index out of range");
        }
        auto m = one(space);
        m.e_[space.block_offset(block) + index] = 1;
        return m;
    }

    const std::vector<exponent_type> &exponents() const noexcept
    {
        return e_;
    }
    std::size_t size() const noexcept
    {
        return e_.size();
    }
    exponent_type operator[](std::size_t i) const
    {
        return e_[i];
    }

    MultiDegree multidegree(const SpaceSpec &space) const
    {
        std::vector<int> d(space.factors(), 0);
        for (std::size_t b = 0; b < space.factors(); ++b) {
            for (std::size_t j = 0; j < space.block_size(b); ++j) {
                d[b] += e_[space.block_offset(b) + j];
            }
        }
        return MultiDegree(std::move(d));
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        if (a.e_.size() != b.e_.size()) {
            throw RingMismatch("monomials over different variable sets");
        }
        Monomial r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) {
            r.e_[i] = static_cast<exponent_type>(r.e_[i] + b.e_[i]);
        }
        return r;
    }

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
    friend bool operator==(const Monomial &, const Monomial &) = default;

private:
    std::vector<exponent_type> e_;
};

// Canonical order: lexicographic with x_0 largest, so x_0^d comes first and the
// first block is the most significant digit.
struct CanonicalOrder {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        return a.exponents() > b.exponents();
    }
};

namespace detail
{

inline void block_monomials(int nvars, int degree, std::vector<Monomial::exponent_type> &cur,
                            std::vector<std::vector<Monomial::exponent_type>> &out)
{
    const auto pos = cur.size();
    if (static_cast<int>(pos) == nvars - 1) {
        cur.push_back(static_cast<Monomial::exponent_type>(degree));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur.push_back(static_cast<Monomial::exponent_type>(e));
        block_monomials(nvars, degree - e, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// All monomials of multidegree d in canonical order; empty if some d_i < 0.
inline std::vector<Monomial> monomial_basis(const SpaceSpec &space, const MultiDegree &d)
{
    d.check_space(space);
    if (!d.nonnegative()) {
        return {};
    }
    std::vector<std::vector<std::vector<Monomial::exponent_type>>> blocks(space.factors());
    for (std::size_t b = 0; b < space.factors(); ++b) {
        std::vector<Monomial::exponent_type> cur;
        detail::block_monomials(static_cast<int>(space.block_size(b)), d[b], cur, blocks[b]);
    }
    std::vector<Monomial> out;
    std::vector<std::size_t> idx(space.factors(), 0);
    while (true) {
        std::vector<Monomial::exponent_type> e;
        e.reserve(space.num_variables());
        for (std::size_t b = 0; b < space.factors(); ++b) {
            const auto &blk = blocks[b][idx[b]];
            e.insert(e.end(), blk.begin(), blk.end());
        }
        out.emplace_back(std::move(e));
        // Odometer with the last block fastest.
        std::size_t b = space.factors();
        while (b > 0) {
            --b;
            if (++idx[b] < blocks[b].size()) {
                break;
            }
            idx[b] = 0;
            if (b == 0) {
                return out;
            }
        }
    }
}

// Number of monomials of multidegree d: prod C(a_i + d_i, a_i).
inline Integer basis_size(const SpaceSpec &space, const MultiDegree &d)
{
    d.check_space(space);
    Integer r = 1;
    for (std::size_t i = 0; i < space.factors(); ++i) {
        if (d[i] < 0) {
            return 0;
        }
        r *= binomial(space.factor_dim(i) + d[i], space.factor_dim(i));
    }
    return r;
}

// Sparse polynomial over a field, terms kept in canonical monomial order with no zero coefficients.
template <Field F>
class Polynomial
{
public:
    using element = typename F::element;
    using term_map = std::map<Monomial, element, CanonicalOrder>;

    Polynomial(SpaceSpec space, F field) : space_(std::move(space)), field_(std::move(field)) {}

    static Polynomial monomial(const SpaceSpec &space, const F &field, const Monomial &m, const element &c)
    {
        Polynomial p(space, field);
        p.add_term(m, c);
        return p;
    }
    static Polynomial variable(const SpaceSpec &space, const F &field, std::size_t block, std::size_t index)
    {
        return monomial(space, field, Monomial::variable(space, block, index), field.one());
    }
    static Polynomial constant(const SpaceSpec &space, const F &field, const element &c)
    {
        return monomial(space, field, Monomial::one(space), c);
    }

    const SpaceSpec &space() const noexcept
    {
        return space_;
    }
    const F &field() const noexcept
    {
        return field_;
    }
    const term_map &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    std::size_t num_terms() const noexcept
    {
        return terms_.size();
    }

    void add_term(const Monomial &m, const element &c)
    {
        if (m.size() != space_.num_variables()) {
            throw DimensionMismatch("monomial has wrong number of variables");
        }
        if (field_.is_zero(c)) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = field_.add(it->second, c);
        if (field_.is_zero(it->second)) {
            terms_.erase(it);
        }
    }

    // Multidegree shared by every term; nullopt for the zero polynomial or mixed degrees.
    std::optional<MultiDegree> homogeneous_degree() const
    {
        std::optional<MultiDegree> d;
        for (const auto &[m, c] : terms_) {
            auto md = m.multidegree(space_);
            if (!d) {
                d = std::move(md);
            } else if (*d != md) {
                return std::nullopt;
            }
        }
        return d;
    }
    bool is_homogeneous() const
    {
        return is_zero() || homogeneous_degree().has_value();
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        check_ring(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        check_ring(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, field_.neg(c));
        }
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        return a -= b;
    }
    friend Polynomial operator-(const Polynomial &a)
    {
        Polynomial r(a.space_, a.field_);
        for (const auto &[m, c] : a.terms_) {
            r.terms_.emplace(m, a.field_.neg(c));
        }
        return r;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        a.check_ring(b);
        Polynomial r(a.space_, a.field_);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                r.add_term(ma * mb, a.field_.mul(ca, cb));
            }
        }
        return r;
    }
    Polynomial scaled(const element &s) const
    {
        Polynomial r(space_, field_);
        for (const auto &[m, c] : terms_) {
            r.add_term(m, field_.mul(c, s));
        }
        return r;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.space_ == b.space_ && a.field_ == b.field_ && a.terms_ == b.terms_;
    }

    // Human readable form with variables x{block}{index}.
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            if (!first) {
                s += " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t b = 0; b < space_.factors(); ++b) {
                for (std::size_t j = 0; j < space_.block_size(b); ++j) {
                    const auto e = m[space_.block_offset(b) + j];
                    if (e == 0) {
                        continue;
                    }
                    if (!mono.empty()) {
                        mono += "*";
                    }
                    mono += "x" + std::to_string(b + 1) + std::to_string(j);
                    if (e > 1) {
                        mono += "^" + std::to_string(e);
                    }
                }
            }
            const bool unit = c == field_.one();
            if (mono.empty()) {
                s += field_.to_string(c);
            } else {
                s += unit ? mono : field_.to_string(c) + "*" + mono;
            }
        }
        return s;
    }

private:
    void check_ring(const Polynomial &o) const
    {
        if (!(space_ == o.space_) || !(field_ == o.field_)) {
            throw RingMismatch("polynomials over different rings: " + field_.name() + "[" + space_.to_string()
                               + "] vs " + o.field_.name() + "[" + o.space_.to_string() + "]");
        }
    }

    SpaceSpec space_;
    F field_;
    term_map terms_;
};

// A point of X with coordinates in F, one coordinate vector per factor.
template <Field F>
class ProjPoint
{
public:
    using element = typename F::element;

    ProjPoint(F field, std::vector<std::vector<element>> blocks) : field_(std::move(field)), blocks_(std::move(blocks))
    {
        for (const auto &b : blocks_) {
            if (std::all_of(b.begin(), b.end(), [this](const element &v) { return field_.is_zero(v); })) {
                throw std::invalid_argument("projective point has a zero block");
            }
        }
    }

    const F &field() const noexcept
    {
        return field_;
    }
    const std::vector<std::vector<element>> &blocks() const noexcept
    {
        return blocks_;
    }
    void check_space(const SpaceSpec &space) const
    {
        if (blocks_.size() != space.factors()) {
            throw DimensionMismatch("point has " + std::to_string(blocks_.size()) + " blocks, space has "
                                    + std::to_string(space.factors()) + " factors");
        }
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (blocks_[b].size() != space.block_size(b)) {
                throw DimensionMismatch("point block " + std::to_string(b) + " has wrong length");
            }
        }
    }

    // Scale each block so that its first nonzero coordinate is 1.
    ProjPoint normalized() const
    {
        auto blocks = blocks_;
        for (auto &b : blocks) {
            auto it = std::find_if(b.begin(), b.end(), [this](const element &v) { return !field_.is_zero(v); });
            const element s = field_.inv(*it);
            for (auto &v : b) {
                v = field_.mul(v, s);
            }
        }
        return ProjPoint(field_, std::move(blocks));
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto &b : blocks_) {
            s += "[";
            for (std::size_t i = 0; i < b.size(); ++i) {
                s += (i != 0 ? ":" : "") + field_.to_string(b[i]);
            }
            s += "]";
        }
        return s;
    }

    friend bool operator==(const ProjPoint &, const ProjPoint &) = default;

private:
    F field_;
    std::vector<std::vector<element>> blocks_;
};

// Substitutes the point coordinates; coefficients are embedded into the point field.
template <Field F, Field G>
typename G::element evaluate(const Polynomial<F> &p, const ProjPoint<G> &pt)
{
    pt.check_space(p.space());
    const G &g = pt.field();
    const auto &space = p.space();
    std::vector<typename G::element> coords;
    coords.reserve(space.num_variables());
    for (const auto &b : pt.blocks()) {
        coords.insert(coords.end(), b.begin(), b.end());
    }
    auto acc = g.zero();
    for (const auto &[m, c] : p.terms()) {
        auto v = g.embed(p.field(), c);
        for (std::size_t i = 0; i < coords.size() && !g.is_zero(v); ++i) {
            for (unsigned e = 0; e < m[i]; ++e) {
                v = g.mul(v, coords[i]);
            }
        }
        acc = g.add(acc, v);
    }
    return acc;
}

// Image of a polynomial under reduction of its coefficients into another field.
template <Field G, Field F>
Polynomial<G> change_ring(const Polynomial<F> &p, const G &target)
{
    Polynomial<G> r(p.space(), target);
    for (const auto &[m, c] : p.terms()) {
        r.add_term(m, target.embed(p.field(), c));
    }
    return r;
}

// Normalized F_q points of X, indexable so that sweeps can be split into chunks.
// Within a factor, points are grouped by the position of their leading 1; trailing
// coordinates run as a base-q odometer with the last coordinate fastest.
class PointSweep
{
public:
    static constexpr std::uint64_t default_cap = 50'000'000;

    PointSweep(SpaceSpec space, PrimeField field, std::uint64_t cap = default_cap)
        : space_(std::move(space)), field_(field)
    {
        const std::uint64_t q = field_.modulus();
        Integer total = 1;
        for (std::size_t b = 0; b < space_.factors(); ++b) {
            Integer count = 0;
            Integer pw = 1;
            for (int j = 0; j <= space_.factor_dim(b); ++j) {
                count += pw;
                pw *= q;
            }
            total *= count;
            if (total > cap) {
                throw ResourceCapExceeded("point sweep over " + space_.to_string() + "(F_" + std::to_string(q)
                                          + ") exceeds cap of " + std::to_string(cap) + " points");
            }
            factor_counts_.push_back(count.convert_to<std::uint64_t>());
        }
        size_ = total.convert_to<std::uint64_t>();
    }

    std::uint64_t size() const noexcept
    {
        return size_;
    }
    const PrimeField &field() const noexcept
    {
        return field_;
    }
    const SpaceSpec &space() const noexcept
    {
        return space_;
    }

    ProjPoint<PrimeField> point(std::uint64_t index) const
    {
        if (index >= size_) {
            throw std::out_of_range("point index out of range");
        }
        const std::uint64_t q = field_.modulus();
        std::vector<std::vector<std::uint64_t>> blocks(space_.factors());
        // Mixed radix over factors, first factor most significant.
        for (std::size_t bi = space_.factors(); bi-- > 0;) {
            std::uint64_t local = index % factor_counts_[bi];
            index /= factor_counts_[bi];
            const int a = space_.factor_dim(bi);
            std::vector<std::uint64_t> coords(static_cast<std::size_t>(a) + 1, 0);
            for (int lead = 0; lead <= a; ++lead) {
                std::uint64_t group = 1;
                for (int t = lead + 1; t <= a; ++t) {
                    group *= q;
                }
                if (local < group) {
                    coords[static_cast<std::size_t>(lead)] = 1;
                    for (int t = a; t > lead; --t) {
                        coords[static_cast<std::size_t>(t)] = local % q;
                        local /= q;
                    }
                    break;
                }
                local -= group;
            }
            blocks[bi] = std::move(coords);
        }
        return ProjPoint<PrimeField>(field_, std::move(blocks));
    }

    class iterator
    {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = ProjPoint<PrimeField>;
        using difference_type = std::ptrdiff_t;

        iterator(const PointSweep *s, std::uint64_t i) : s_(s), i_(i) {}
        value_type operator*() const
        {
            return s_->point(i_);
        }
        iterator &operator++()
        {
            ++i_;
            return *this;
        }
        bool operator==(const iterator &o) const
        {
            return i_ == o.i_;
        }

    private:
        const PointSweep *s_;
        std::uint64_t i_;
    };

    iterator begin() const
    {
        return iterator(this, 0);
    }
    iterator end() const
    {
        return iterator(this, size_);
    }

private:
    SpaceSpec space_;
    PrimeField field_;
    std::vector<std::uint64_t> factor_counts_;
    std::uint64_t size_ = 0;
};

inline PointSweep enumerate_points(const SpaceSpec &space, std::uint64_t q, std::uint64_t cap = PointSweep::default_cap)
{
    return PointSweep(space, PrimeField(q), cap);
}

} // namespace monad_forge

#endif
