#ifndef MONAD_FORGE_SERIALIZE_HPP
#define MONAD_FORGE_SERIALIZE_HPP

#include <string>
#include <vector>

#include <monad_forge/algebra.hpp>
#include <monad_forge/certificate.hpp>
#include <monad_forge/linmat.hpp>
#include <monad_forge/numeric.hpp>

namespace monad_forge
{

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline json integer_to_json(const Integer &v)
{
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

inline Integer integer_from_json(const json &j)
{
    if (j.is_number_integer()) {
        return Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return Integer(j.get<std::string>());
    }
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json to_json(const MultiDegree &d)
{
    return d.components();
}

inline MultiDegree multidegree_from_json(const json &j)
{
    return MultiDegree(j.get<std::vector<int>>());
}

inline json to_json(const SpaceSpec &s)
{
    return s.factor_dims();
}

inline SpaceSpec space_from_json(const json &j)
{
    return SpaceSpec(j.get<std::vector<int>>());
}

inline json to_json(const LinMatrix<RationalField> &m)
{
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            for (const auto &[mono, coeff] : m.at(r, c).terms()) {
                entries.push_back(
                    {{"row", r}, {"col", c}, {"exponents", mono.exponents()}, {"coefficient", to_string(coeff)}});
            }
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entry_degree", to_json(m.entry_degree())},
            {"entries", std::move(entries)}};
}

inline LinMatrix<RationalField> linmat_from_json(const json &j, const SpaceSpec &space)
{
    const RationalField q;
    LinMatrix<RationalField> m(space, q, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                               multidegree_from_json(j.at("entry_degree")));
    std::vector<Polynomial<RationalField>> acc(m.rows() * m.cols(), Polynomial<RationalField>(space, q));
    for (const auto &e : j.at("entries")) {
        const auto r = e.at("row").get<std::size_t>();
        const auto c = e.at("col").get<std::size_t>();
        if (r >= m.rows() || c >= m.cols()) {
            throw std::invalid_argument("matrix entry index out of range");
        }
        Monomial mono(e.at("exponents").get<std::vector<Monomial::exponent_type>>());
        acc[r * m.cols() + c].add_term(mono, parse_rational(e.at("coefficient").get<std::string>()));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m.set(r, c, std::move(acc[r * m.cols() + c]));
        }
    }
    return m;
}

inline json to_json(const RankStrategy &s)
{
    if (const auto *ex = std::get_if<ExhaustiveStrategy>(&s)) {
        return {{"kind", "exhaustive"}, {"fields", ex->primes}, {"cap", ex->cap}};
    }
    const auto &sm = std::get<SampledStrategy>(s);
    return {{"kind", "sampled"}, {"count", sm.count}, {"field", sm.prime}, {"seed", sm.seed}, {"prng", "mt19937_64"}};
}

inline json to_json(const RankReport &r)
{
    json failures = json::array();
    for (const auto &f : r.failures) {
        failures.push_back({{"field", f.modulus}, {"point", f.point}, {"rank", f.rank}});
    }
    return {{"schema", schema_id},
            {"kind", "rank-report"},
            {"expected_rank", r.expected_rank},
            {"strategy", to_json(r.strategy)},
            {"points_checked", r.points_checked},
            {"failure_count", r.failure_count},
            {"failures", std::move(failures)},
            {"verdict", to_string(r.verdict)},
            {"monte_carlo", r.monte_carlo},
            {"caveat", r.caveat}};
}

inline std::string dump(const json &j)
{
    return j.dump(2) + "\n";
}

} // namespace monad_forge

#endif
