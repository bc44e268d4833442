#ifndef MONAD_FORGE_INVARIANTS_HPP
#define MONAD_FORGE_INVARIANTS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <monad_forge/algebra.hpp>
#include <monad_forge/certificate.hpp>
#include <monad_forge/monad.hpp>
#include <monad_forge/numeric.hpp>
#include <monad_forge/serialize.hpp>

namespace monad_forge
{

// Ample class L = sum w_i g_i.
class Polarization
{
public:
    Polarization(SpaceSpec space, MultiDegree weights) : space_(std::move(space)), weights_(std::move(weights))
    {
        weights_.check_space(space_);
        if (!weights_.positive()) {
            throw std::invalid_argument("polarization must be ample (all weights positive), got "
                                        + weights_.to_string());
        }
    }

    const SpaceSpec &space() const noexcept
    {
        return space_;
    }
    const MultiDegree &weights() const noexcept
    {
        return weights_;
    }

private:
    SpaceSpec space_;
    MultiDegree weights_;
};

// Degree of prod_j (sum_i c_{j,i} g_i) in the Chow ring of X, where g_i^{a_i + 1} = 0 and
// g_1^{a_1} ... g_n^{a_n} is the class of a point.
inline Integer intersection_number(const SpaceSpec &space, const std::vector<MultiDegree> &classes)
{
    if (classes.size() != static_cast<std::size_t>(space.dim())) {
        throw DegreeMismatch("intersection needs " + std::to_string(space.dim()) + " divisor classes, got "
                             + std::to_string(classes.size()));
    }
    std::map<std::vector<int>, Integer> acc{{std::vector<int>(space.factors(), 0), Integer(1)}};
    for (const auto &cls : classes) {
        cls.check_space(space);
        std::map<std::vector<int>, Integer> next;
        for (const auto &[e, v] : acc) {
            for (std::size_t i = 0; i < space.factors(); ++i) {
                if (cls[i] == 0 || e[i] == space.factor_dim(i)) {
                    continue;
                }
                auto f = e;
                ++f[i];
                next[f] += v * cls[i];
            }
        }
        acc = std::move(next);
    }
    const auto it = acc.find(space.factor_dims());
    return it == acc.end() ? Integer(0) : it->second;
}

// delta_L(B) = deg_L O(B) = B . L^{dim - 1}.
inline Integer delta_l(const Polarization &pol, const MultiDegree &b)
{
    std::vector<MultiDegree> classes(static_cast<std::size_t>(pol.space().dim()) - 1, pol.weights());
    classes.insert(classes.begin(), b);
    return intersection_number(pol.space(), classes);
}

struct BundleNumerics {
    MultiDegree c1;
    Integer rank;
    Integer degree;
    Rational slope;
    Integer d;                 // deg_L O(1, 0, ..., 0)
    Integer k_norm;            // ceil(slope / d)
    Integer normalized_degree; // deg_L E(-k_norm, 0, ..., 0)
};

inline BundleNumerics bundle_numerics(const Polarization &pol, const MultiDegree &c1, const Integer &rank)
{
    if (rank < 1) {
        throw std::invalid_argument("bundle rank must be positive");
    }
    BundleNumerics n;
    n.c1 = c1;
    n.rank = rank;
    n.degree = delta_l(pol, c1);
    n.slope = Rational(n.degree, rank);
    auto e1 = MultiDegree::zero(pol.space().factors());
    e1[0] = 1;
    n.d = delta_l(pol, e1);
    n.k_norm = ceil(n.slope / Rational(n.d));
    n.normalized_degree = n.degree - n.k_norm * n.d * rank;
    return n;
}

// Numerics of T = ker(O^beta -> O(w)^gamma): c1 = c1(O^beta) - gamma w, rank beta - gamma.
inline BundleNumerics kernel_numerics(const MonadSpec &spec, const Polarization &pol)
{
    if (spec.beta <= spec.gamma) {
        throw std::invalid_argument("kernel bundle needs beta > gamma");
    }
    const auto c1 = MultiDegree::zero(spec.space.factors()) - spec.gamma * spec.weights;
    return bundle_numerics(pol, c1, spec.beta - spec.gamma);
}

inline json to_json(const BundleNumerics &n)
{
    return {{"c1", to_json(n.c1)},
            {"rank", integer_to_json(n.rank)},
            {"degree", integer_to_json(n.degree)},
            {"slope", to_string(n.slope)},
            {"d", integer_to_json(n.d)},
            {"k_norm", integer_to_json(n.k_norm)},
            {"normalized_degree", integer_to_json(n.normalized_degree)}};
}

// Twists B >= 0 with delta_L(B) < -q mu (or <= when `inclusive`). Any twist with a negative
// component has H^0(O(B)) = 0, so H^0 of the ambient Lambda^q(O^beta)(B) already vanishes.
inline std::vector<MultiDegree> candidate_twists(const Polarization &pol, const Rational &slope, int q,
                                                 bool inclusive = false)
{
    if (slope >= 0) {
        throw std::invalid_argument("candidate twists need a negative slope");
    }
    const auto &space = pol.space();
    const Rational bound = -Rational(q) * slope;
    std::vector<Integer> unit(space.factors());
    for (std::size_t i = 0; i < space.factors(); ++i) {
        auto e = MultiDegree::zero(space.factors());
        e[i] = 1;
        unit[i] = delta_l(pol, e);
    }
    std::vector<MultiDegree> out;
    auto cur = MultiDegree::zero(space.factors());
    auto within = [&](const Integer &v) { return inclusive ? Rational(v) <= bound : Rational(v) < bound; };
    auto rec = [&](auto &&self, std::size_t i, const Integer &used) -> void {
        if (i == space.factors()) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; within(used + unit[i] * v); ++v) {
            cur[i] = v;
            self(self, i + 1, used + unit[i] * v);
        }
        cur[i] = 0;
    };
    if (within(0)) {
        rec(rec, 0, Integer(0));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace monad_forge

#endif
