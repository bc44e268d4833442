#ifndef MONAD_FORGE_MONAD_HPP
#define MONAD_FORGE_MONAD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <monad_forge/algebra.hpp>
#include <monad_forge/certificate.hpp>
#include <monad_forge/errors.hpp>
#include <monad_forge/linmat.hpp>
#include <monad_forge/serialize.hpp>

namespace monad_forge
{

// type_i: copies of one odd-dimensional P^{2n+1} polarized by O(1,...,1).
// type_ii: arbitrary factors and ample weights.
// p1_power: (P^1)^m with N = 2^m - 1 = 2n + 1 and alpha = gamma = k, beta = 2n + 2k.
enum class Flavor { type_i, type_ii, p1_power };

inline std::string to_string(Flavor f)
{
    switch (f) {
    case Flavor::type_i:
        return "type-i";
    case Flavor::type_ii:
        return "type-ii";
    case Flavor::p1_power:
        return "p1-power";
    }
    return "?";
}

inline Flavor flavor_from_string(const std::string &s)
{
    if (s == "type-i" || s == "type1" || s == "typeI" || s == "I") {
        return Flavor::type_i;
    }
    if (s == "type-ii" || s == "type2" || s == "typeII" || s == "II") {
        return Flavor::type_ii;
    }
    if (s == "p1-power" || s == "p1power") {
        return Flavor::p1_power;
    }
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

// Segre dimension N = prod C(a_i + w_i, a_i) - 1 of the embedding by O(w).
inline std::int64_t segre_dimension(const SpaceSpec &space, const MultiDegree &weights)
{
    weights.check_space(space);
    if (!weights.positive()) {
        throw std::invalid_argument("Segre embedding needs ample weights, got " + weights.to_string());
    }
    return to_int64(basis_size(space, weights) - 1);
}

// Sufficient conditions for a linear monad O(-1)^a -> O^b -> O(1)^c on P^N:
// (a) b >= 2c + N - 1 and b >= a + c, or (b) b >= a + c + N.
inline bool existence_condition_a(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n)
{
    return beta >= 2 * gamma + n - 1 && beta >= alpha + gamma;
}

inline bool existence_condition_b(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n)
{
    return beta >= alpha + gamma + n;
}

inline bool exists_monad(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n)
{
    if (alpha < 1 || beta < 1 || gamma < 1 || n < 1) {
        throw std::invalid_argument("exists_monad expects positive inputs");
    }
    return existence_condition_a(alpha, beta, gamma, n) || existence_condition_b(alpha, beta, gamma, n);
}

// "a", "b", "a,b" or "" for the conditions that hold.
inline std::string existence_conditions(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n)
{
    const bool a = existence_condition_a(alpha, beta, gamma, n);
    const bool b = existence_condition_b(alpha, beta, gamma, n);
    return a && b ? "a,b" : a ? "a" : b ? "b" : "";
}

struct DisplayRanks {
    int kernel = 0;         // T = ker B
    int cohomology = 0;     // E = ker B / im A
    int cokernel = 0;       // Q = coker A
    int schwarzenberger = 0; // S = coker A as a Steiner bundle, same rank as Q

    friend bool operator==(const DisplayRanks &, const DisplayRanks &) = default;
};

inline DisplayRanks display_ranks(int alpha, int beta, int gamma)
{
    if (beta <= gamma || beta <= alpha || beta - alpha - gamma < 1) {
        throw std::invalid_argument("display diagram needs beta > alpha + gamma");
    }
    return {beta - gamma, beta - alpha - gamma, beta - alpha, beta - alpha};
}

struct MonadSpec {
    SpaceSpec space;
    MultiDegree weights;
    int alpha = 1;
    int beta = 1;
    int gamma = 1;
    Flavor flavor = Flavor::type_ii;
    int k = 0; // p1_power only

    std::int64_t segre_n() const
    {
        return segre_dimension(space, weights);
    }
    DisplayRanks ranks() const
    {
        return display_ranks(alpha, beta, gamma);
    }

    void validate() const
    {
        weights.check_space(space);
        if (!weights.positive()) {
            throw std::invalid_argument("polarization weights must be positive");
        }
        if (alpha < 1 || beta < 1 || gamma < 1) {
            throw std::invalid_argument("alpha, beta, gamma must be positive");
        }
        const auto &dims = space.factor_dims();
        switch (flavor) {
        case Flavor::type_i:
            for (int a : dims) {
                if (a != dims[0] || a % 2 == 0) {
                    throw std::invalid_argument("type I needs equal odd factor dimensions");
                }
            }
            if (weights != MultiDegree::constant(space.factors(), 1)) {
                throw std::invalid_argument("type I is polarized by O(1,...,1)");
            }
            break;
        case Flavor::type_ii:
            break;
        case Flavor::p1_power: {
            for (int a : dims) {
                if (a != 1) {
                    throw std::invalid_argument("p1-power construction needs all factors P^1");
                }
            }
            if (weights != MultiDegree::constant(space.factors(), 1)) {
                throw std::invalid_argument("p1-power construction is polarized by O(1,...,1)");
            }
            if (space.factors() > 20) {
                throw std::invalid_argument("p1-power construction supports at most 20 factors");
            }
            const int n = (1 << (space.factors() - 1)) - 1;
            if (k < 1 || alpha != k || gamma != k || beta != 2 * n + 2 * k) {
                throw std::invalid_argument("p1-power construction needs alpha = gamma = k and beta = 2n + 2k");
            }
            break;
        }
        }
    }

    friend bool operator==(const MonadSpec &, const MonadSpec &) = default;
};

// Spec of the (P^1)^m construction with n = 2^{m-1} - 1.
inline MonadSpec p1_power_spec(int m, int k)
{
    if (m < 1 || m > 20 || k < 1) {
        throw std::invalid_argument("p1-power needs 1 <= m <= 20 and k >= 1");
    }
    const int n = (1 << (m - 1)) - 1;
    MonadSpec s{SpaceSpec(std::vector<int>(static_cast<std::size_t>(m), 1)),
                MultiDegree::constant(static_cast<std::size_t>(m), 1),
                k,
                2 * n + 2 * k,
                k,
                Flavor::p1_power,
                k};
    return s;
}

// Type I when the space and weights allow it, else type II.
inline Flavor natural_flavor(const SpaceSpec &space, const MultiDegree &weights)
{
    const auto &dims = space.factor_dims();
    bool type_i = weights == MultiDegree::constant(space.factors(), 1);
    for (int a : dims) {
        type_i = type_i && a == dims[0] && a % 2 == 1;
    }
    return type_i ? Flavor::type_i : Flavor::type_ii;
}

struct MonadInstance {
    MonadSpec spec;
    LinMatrix<RationalField> A; // beta x alpha
    LinMatrix<RationalField> B; // gamma x beta

    void validate() const
    {
        spec.validate();
        if (A.rows() != static_cast<std::size_t>(spec.beta) || A.cols() != static_cast<std::size_t>(spec.alpha)
            || B.rows() != static_cast<std::size_t>(spec.gamma) || B.cols() != static_cast<std::size_t>(spec.beta)) {
            throw ShapeMismatch("monad matrices do not match the MonadSpec ranks");
        }
        if (!(A.space() == spec.space) || !(B.space() == spec.space)) {
            throw RingMismatch("monad matrices live on a different space");
        }
        if (A.entry_degree() != spec.weights || B.entry_degree() != spec.weights) {
            throw DegreeMismatch("monad matrix entries must have the polarization degree");
        }
    }
};

// Linear monad on P^{2n+1} with coordinates x_0..x_n, y_0..y_n (indices 0..n, n+1..2n+1).
// B is k x (2n+2k): row i holds x_0..x_n in columns i..i+n and y_0..y_n in columns n+k+i..n+k+i+n.
// A is (2n+2k) x k: column j holds -y_n..-y_0 in rows j..j+n and x_n..x_0 in rows n+k+j..n+k+j+n.
// The reversed bands in A turn each entry of BA into a symmetric convolution, so BA = 0 for every k.
inline MonadInstance build_floystad(int n, int k)
{
    if (n < 0 || k < 1) {
        throw std::invalid_argument("Floystad monad needs n >= 0 and k >= 1");
    }
    const SpaceSpec space({2 * n + 1});
    const RationalField q;
    const MultiDegree one{1};
    const int beta = 2 * n + 2 * k;
    auto x = [&](int s) { return Polynomial<RationalField>::variable(space, q, 0, static_cast<std::size_t>(s)); };
    auto y = [&](int s) {
        return Polynomial<RationalField>::variable(space, q, 0, static_cast<std::size_t>(n + 1 + s));
    };
    LinMatrix<RationalField> b(space, q, static_cast<std::size_t>(k), static_cast<std::size_t>(beta), one);
    LinMatrix<RationalField> a(space, q, static_cast<std::size_t>(beta), static_cast<std::size_t>(k), one);
    const auto uk = static_cast<std::size_t>(k);
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < uk; ++i) {
        for (int s = 0; s <= n; ++s) {
            const auto us = static_cast<std::size_t>(s);
            b.set(i, i + us, x(s));
            b.set(i, un + uk + i + us, y(s));
            a.set(i + us, i, -y(n - s));
            a.set(un + uk + i + us, i, x(n - s));
        }
    }
    MonadSpec spec{space, one, k, beta, k, Flavor::type_i, 0};
    return {std::move(spec), std::move(a), std::move(b)};
}

// Coordinate c of P^N maps to the c-th monomial of multidegree `weights` in canonical order.
struct SegreSubstitution {
    SpaceSpec space;
    MultiDegree weights;
    std::vector<Monomial> images;

    std::size_t size() const noexcept
    {
        return images.size();
    }
    const Monomial &operator()(std::size_t c) const
    {
        return images.at(c);
    }
};

inline SegreSubstitution segre_substitution(const SpaceSpec &space, const MultiDegree &weights)
{
    segre_dimension(space, weights); // validates ampleness
    return {space, weights, monomial_basis(space, weights)};
}

namespace detail
{

// Ring morphism k[z_0..z_N] -> k[X] sending z_c to images[c].
inline Polynomial<RationalField> substitute(const Polynomial<RationalField> &p,
                                            const std::vector<Polynomial<RationalField>> &images,
                                            const SpaceSpec &target)
{
    const RationalField q;
    Polynomial<RationalField> out(target, q);
    for (const auto &[mono, coeff] : p.terms()) {
        auto term = Polynomial<RationalField>::constant(target, q, coeff);
        for (std::size_t c = 0; c < mono.size(); ++c) {
            for (unsigned e = 0; e < mono[c]; ++e) {
                term = term * images.at(c);
            }
        }
        out += term;
    }
    return out;
}

inline LinMatrix<RationalField> substitute(const LinMatrix<RationalField> &m,
                                           const std::vector<Polynomial<RationalField>> &images,
                                           const SpaceSpec &target, const MultiDegree &image_degree)
{
    if (m.space().factors() != 1 || m.space().num_variables() != images.size()) {
        throw DimensionMismatch("substitution size does not match the source projective space");
    }
    LinMatrix<RationalField> out(target, RationalField{}, m.rows(), m.cols(),
                                 m.entry_degree()[0] * image_degree);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out.set(r, c, substitute(m.at(r, c), images, target));
        }
    }
    return out;
}

// Segre images followed by `padding` zero images (for embedding P^N into a larger P^{N+padding}).
inline std::vector<Polynomial<RationalField>> segre_images(const SegreSubstitution &sub, std::size_t padding)
{
    const RationalField q;
    std::vector<Polynomial<RationalField>> images;
    for (const auto &m : sub.images) {
        images.push_back(Polynomial<RationalField>::monomial(sub.space, q, m, q.one()));
    }
    for (std::size_t i = 0; i < padding; ++i) {
        images.emplace_back(sub.space, q);
    }
    return images;
}

template <typename Fn>
LinMatrix<RationalField> select_columns(const LinMatrix<RationalField> &m, std::size_t cols, Fn source_col)
{
    LinMatrix<RationalField> out(m.space(), m.field(), m.rows(), cols, m.entry_degree());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (const auto src = source_col(c); src < m.cols()) {
                out.set(r, c, m.at(r, src));
            }
        }
    }
    return out;
}

} // namespace detail

// Pulls a linear monad on P^N back along the Segre embedding of `sub`.
inline MonadInstance lift_monad(const MonadInstance &inst, const SegreSubstitution &sub)
{
    if (inst.spec.space.factors() != 1 || inst.spec.weights != MultiDegree{1}) {
        throw std::invalid_argument("lift_monad expects a linear monad on a single projective space");
    }
    if (static_cast<std::size_t>(inst.spec.space.factor_dim(0)) + 1 != sub.size()) {
        throw DimensionMismatch("monad lives on P^" + std::to_string(inst.spec.space.factor_dim(0))
                                + " but the substitution has " + std::to_string(sub.size()) + " coordinates");
    }
    const auto images = detail::segre_images(sub, 0);
    MonadSpec spec = inst.spec;
    spec.space = sub.space;
    spec.weights = sub.weights;
    spec.flavor = natural_flavor(sub.space, sub.weights);
    spec.k = 0;
    return {spec, detail::substitute(inst.A, images, sub.space, sub.weights),
            detail::substitute(inst.B, images, sub.space, sub.weights)};
}

// Explicit matrices for a monad spec.
//
// p1_power: the Floystad monad on P^{2^m - 1} lifted through the (P^1)^m Segre table.
// type_i / type_ii: with N' = N rounded up to odd and k = max(alpha, gamma), the Floystad
// monad (n', k) on P^{N'} is trimmed to min(alpha, gamma) columns of A, dualized when
// alpha > gamma, widened by beta - (N' + 2k - 1) extra columns of linear forms in B, and
// pulled back along the Segre embedding (the padding coordinate, if any, maps to 0).
// Requires beta >= N' + 2 max(alpha, gamma) - 1; other ranks throw NotConstructible.
inline MonadInstance build_monad(const MonadSpec &spec)
{
    spec.validate();
    const auto sub = segre_substitution(spec.space, spec.weights);
    const std::int64_t n_segre = static_cast<std::int64_t>(sub.size()) - 1;

    if (spec.flavor == Flavor::p1_power) {
        const int n = static_cast<int>((n_segre - 1) / 2);
        auto base = build_floystad(n, spec.k);
        auto lifted = lift_monad(base, sub);
        lifted.spec = spec;
        return lifted;
    }

    const std::int64_t n_odd = n_segre % 2 == 1 ? n_segre : n_segre + 1;
    const int k = std::max(spec.alpha, spec.gamma);
    const std::int64_t beta0 = n_odd + 2 * k - 1;
    if (spec.beta < beta0) {
        throw NotConstructible("no explicit construction for (alpha, beta, gamma) = (" + std::to_string(spec.alpha)
                               + ", " + std::to_string(spec.beta) + ", " + std::to_string(spec.gamma) + ") with N = "
                               + std::to_string(n_segre) + "; builders need beta >= " + std::to_string(beta0));
    }
    auto base = build_floystad(static_cast<int>((n_odd - 1) / 2), k);
    const auto lo = static_cast<std::size_t>(std::min(spec.alpha, spec.gamma));
    auto a = detail::select_columns(base.A, lo, [](std::size_t c) { return c; });
    auto b = base.B;
    if (spec.alpha > spec.gamma) {
        auto new_b = transpose(a);
        a = transpose(b);
        b = std::move(new_b);
    }
    const auto beta = static_cast<std::size_t>(spec.beta);
    const auto b0 = static_cast<std::size_t>(beta0);
    if (beta > b0) {
        const auto &pspace = b.space();
        const auto coords = static_cast<std::size_t>(n_segre) + 1;
        LinMatrix<RationalField> wide(pspace, b.field(), b.rows(), beta, b.entry_degree());
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (std::size_t c = 0; c < b0; ++c) {
                wide.set(r, c, b.at(r, c));
            }
        }
        for (std::size_t e = 0; e < beta - b0; ++e) {
            const std::size_t row = e % b.rows();
            const std::size_t var = (e / b.rows() + row) % coords;
            wide.set(row, b0 + e, Polynomial<RationalField>::variable(pspace, b.field(), 0, var));
        }
        LinMatrix<RationalField> tall(pspace, a.field(), beta, a.cols(), a.entry_degree());
        for (std::size_t r = 0; r < b0; ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                tall.set(r, c, a.at(r, c));
            }
        }
        a = std::move(tall);
        b = std::move(wide);
    }
    const auto images = detail::segre_images(sub, static_cast<std::size_t>(n_odd - n_segre));
    MonadInstance inst{spec, detail::substitute(a, images, spec.space, spec.weights),
                       detail::substitute(b, images, spec.space, spec.weights)};
    inst.validate();
    return inst;
}

// The monad axioms: BA = 0 symbolically, B of rank gamma and A of rank alpha at every tested point.
inline Certificate verify_monad(const MonadInstance &inst, const RankStrategy &strategy)
{
    Certificate cert;
    cert.subject = "linear monad on " + inst.spec.space.to_string() + " with (alpha, beta, gamma) = ("
                   + std::to_string(inst.spec.alpha) + ", " + std::to_string(inst.spec.beta) + ", "
                   + std::to_string(inst.spec.gamma) + ")";
    const auto product = mat_mul(inst.B, inst.A);
    cert.add({"BA = 0", StepMethod::exact_computation, "symbolic matrix product",
              {{"shape", {product.rows(), product.cols()}}},
              product.is_zero(),
              product.is_zero() ? StepStatus::pass : StepStatus::fail});

    auto rank_step = [&](const std::string &claim, const LinMatrix<RationalField> &m, int expected) {
        CertificateStep step{claim, StepMethod::exact_computation, "pointwise maximal rank (fiberwise rank check)",
                             {{"expected_rank", expected}, {"strategy", to_json(strategy)}}};
        try {
            const auto report = fiberwise_rank_check(m, static_cast<std::size_t>(expected), strategy);
            step.value = to_json(report);
            step.status = report.verdict == RankVerdict::pass ? StepStatus::pass : StepStatus::fail;
        } catch (const ResourceCapExceeded &e) {
            step.value = {{"error", e.what()}};
            step.status = StepStatus::inconclusive;
        }
        cert.add(std::move(step));
    };
    rank_step("B has rank gamma everywhere (surjective)", inst.B, inst.spec.gamma);
    rank_step("A has rank alpha everywhere (injective)", inst.A, inst.spec.alpha);

    cert.verdict = cert.all_pass() ? Verdict::pass
                   : cert.any(StepStatus::fail) ? Verdict::refuted_step
                                                : Verdict::inconclusive;
    return cert;
}

inline json to_json(const MonadSpec &s)
{
    json j = {{"space", to_json(s.space)}, {"weights", to_json(s.weights)}, {"alpha", s.alpha},
              {"beta", s.beta},          {"gamma", s.gamma},               {"flavor", to_string(s.flavor)}};
    if (s.flavor == Flavor::p1_power) {
        j["k"] = s.k;
    }
    j["N"] = s.segre_n();
    if (s.beta > s.alpha + s.gamma) {
        const auto r = s.ranks();
        j["ranks"] = {{"T", r.kernel}, {"E", r.cohomology}, {"Q", r.cokernel}, {"S", r.schwarzenberger}};
    }
    return j;
}

inline MonadSpec monad_spec_from_json(const json &j)
{
    MonadSpec s{space_from_json(j.at("space")),
                multidegree_from_json(j.at("weights")),
                j.at("alpha").get<int>(),
                j.at("beta").get<int>(),
                j.at("gamma").get<int>(),
                flavor_from_string(j.at("flavor").get<std::string>()),
                j.value("k", 0)};
    s.validate();
    return s;
}

inline json to_json(const MonadInstance &inst)
{
    return {{"schema", schema_id}, {"kind", "monad"}, {"spec", to_json(inst.spec)}, {"A", to_json(inst.A)},
            {"B", to_json(inst.B)}};
}

inline MonadInstance monad_from_json(const json &j)
{
    if (j.value("schema", "") != schema_id || j.value("kind", "") != "monad") {
        throw std::invalid_argument("not a monad-forge/1 monad document");
    }
    auto spec = monad_spec_from_json(j.at("spec"));
    auto a = linmat_from_json(j.at("A"), spec.space);
    auto b = linmat_from_json(j.at("B"), spec.space);
    MonadInstance inst{std::move(spec), std::move(a), std::move(b)};
    inst.validate();
    return inst;
}

} // namespace monad_forge

#endif
