#ifndef MONAD_FORGE_CERTIFY_HPP
#define MONAD_FORGE_CERTIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <monad_forge/cohom.hpp>
#include <monad_forge/invariants.hpp>
#include <monad_forge/monad.hpp>
#include <monad_forge/parallel.hpp>

namespace monad_forge
{

struct StabilityOptions {
    RankStrategy surjectivity = ExhaustiveStrategy{{3}};
    // Cells whose wedge power has more than this many basis elements are skipped.
    std::uint64_t wedge_cap = 100000;
    bool boundary_cells = true;
};

namespace detail
{

struct WedgeCell {
    int q = 0;
    MultiDegree twist;
    Integer delta;
    bool boundary = false;
};

inline std::string wedge_claim(int q, const MultiDegree &b)
{
    return "h0(Lambda^" + std::to_string(q) + " T (x) O" + b.to_string() + ") = 0";
}

inline const char *hoppe = "Hoppe criterion (twisted exterior powers without sections)";

} // namespace detail

// Hoppe-criterion certificate for T = ker(B: O^beta -> O(w)^gamma).
inline Certificate stability_certificate(const MonadInstance &inst, const Polarization &pol,
                                         const StabilityOptions &opt = {})
{
    const auto &spec = inst.spec;
    if (!(pol.space() == spec.space)) {
        throw RingMismatch("polarization lives on a different space");
    }
    Certificate cert;
    cert.subject = "stability of T = ker B on " + spec.space.to_string() + " with respect to L = O"
                   + pol.weights().to_string();

    {
        CertificateStep step{"B has rank gamma everywhere (T is a bundle)", StepMethod::exact_computation,
                             "pointwise maximal rank (fiberwise rank check)",
                             {{"expected_rank", spec.gamma}, {"strategy", to_json(opt.surjectivity)}}};
        try {
            const auto report = fiberwise_rank_check(inst.B, static_cast<std::size_t>(spec.gamma), opt.surjectivity);
            step.value = to_json(report);
            step.status = report.verdict == RankVerdict::pass ? StepStatus::pass : StepStatus::fail;
        } catch (const ResourceCapExceeded &e) {
            step.value = {{"error", e.what()}};
            step.status = StepStatus::inconclusive;
        }
        cert.add(std::move(step));
    }

    const auto num = kernel_numerics(spec, pol);
    const bool normalized = num.degree < 0 && num.k_norm == 0;
    cert.add({"deg_L T < 0 and T is L-normalized", StepMethod::exact_computation,
              "intersection numbers on the Chow ring", {{"polarization", to_json(pol.weights())}}, to_json(num),
              normalized ? StepStatus::pass : StepStatus::fail});

    std::vector<detail::WedgeCell> cells;
    if (num.degree < 0) {
        const int r = to_int64(num.rank) > 0 ? static_cast<int>(to_int64(num.rank)) : 0;
        for (int q = 1; q < r; ++q) {
            const auto strict = candidate_twists(pol, num.slope, q, false);
            for (const auto &b : strict) {
                cells.push_back({q, b, delta_l(pol, b), false});
            }
            if (opt.boundary_cells) {
                for (const auto &b : candidate_twists(pol, num.slope, q, true)) {
                    if (!std::binary_search(strict.begin(), strict.end(), b)) {
                        cells.push_back({q, b, delta_l(pol, b), true});
                    }
                }
            }
        }
    }

    std::vector<CertificateStep> cell_steps(cells.size());
    parallel_chunks(cells.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto &c = cells[i];
            auto &step = cell_steps[i];
            step.claim = (c.boundary ? "boundary: " : "") + detail::wedge_claim(c.q, c.twist);
            step.method = StepMethod::exact_computation;
            step.citation = "kernel of H^0 on the Koszul-type resolution of Lambda^q T";
            const Rational bound = -Rational(c.q) * num.slope;
            step.inputs = {{"q", c.q},
                           {"twist", to_json(c.twist)},
                           {"delta", integer_to_json(c.delta)},
                           {"bound", to_string(bound)},
                           {"boundary", c.boundary}};
            if (binomial(spec.beta, c.q) > opt.wedge_cap) {
                step.value = {{"skipped", "wedge basis exceeds cap"}, {"cap", opt.wedge_cap}};
                step.status = StepStatus::inconclusive;
                continue;
            }
            const auto h0 = h0_wedge_kernel(inst.B, c.q, c.twist);
            step.value = integer_to_json(h0);
            step.status = h0 == 0 ? StepStatus::pass : StepStatus::fail;
        }
        return 0;
    });

    bool stable_ok = true;
    bool stable_fail = false;
    for (const auto &s : cert.steps) {
        stable_ok = stable_ok && s.status == StepStatus::pass;
        stable_fail = stable_fail || s.status == StepStatus::fail;
    }
    bool semistable_ok = stable_ok;
    for (auto &s : cell_steps) {
        const bool boundary = s.inputs.at("boundary").get<bool>();
        semistable_ok = semistable_ok && s.status == StepStatus::pass;
        if (!boundary) {
            stable_ok = stable_ok && s.status == StepStatus::pass;
            stable_fail = stable_fail || s.status == StepStatus::fail;
        }
        cert.add(std::move(s));
    }

    cert.add({"T is L-stable", StepMethod::recorded_implication, detail::hoppe,
              {{"rank", integer_to_json(num.rank)}, {"cells", cells.size()}},
              stable_ok,
              stable_ok ? StepStatus::pass : stable_fail ? StepStatus::fail : StepStatus::inconclusive});
    if (opt.boundary_cells) {
        cert.add({"T is L-semistable", StepMethod::recorded_implication, detail::hoppe, json::object(),
                  semistable_ok, semistable_ok ? StepStatus::pass : StepStatus::inconclusive});
    }

    cert.verdict = stable_ok ? Verdict::stable : stable_fail ? Verdict::refuted_step : Verdict::inconclusive;
    return cert;
}

// Cohomology of T*(t) from 0 -> O(-w)^gamma -> O^beta -> T* -> 0 (the map is B transposed).
inline CohomTable dual_kernel_cohom(const MonadInstance &inst, const MultiDegree &twist)
{
    const auto &spec = inst.spec;
    TwoTermResolution res{LineBundleSum(spec.space), LineBundleSum(spec.space), transpose(inst.B), "T*"};
    res.s1.add(MultiDegree::zero(spec.space.factors()) - spec.weights, spec.gamma);
    res.s2.add(MultiDegree::zero(spec.space.factors()), spec.beta);
    return les_cohom(res, twist);
}

struct SimplicityOptions {
    StabilityOptions stability;
    // Verdict of a stability certificate computed earlier; recomputed when empty.
    std::optional<Verdict> stability_verdict;
};

// h0(E (x) E*) = 1 for the cohomology bundle E of the monad, via the display diagram.
inline Certificate simplicity_certificate(const MonadInstance &inst, const Polarization &pol,
                                          const SimplicityOptions &opt = {})
{
    const auto &spec = inst.spec;
    if (!(pol.space() == spec.space)) {
        throw RingMismatch("polarization lives on a different space");
    }
    const Verdict stab = opt.stability_verdict ? *opt.stability_verdict
                                               : stability_certificate(inst, pol, opt.stability).verdict;
    Certificate cert;
    cert.subject = "simplicity of the cohomology bundle E on " + spec.space.to_string() + " with respect to L = O"
                   + pol.weights().to_string();

    cert.add({"h0(T (x) T*) = 1", StepMethod::recorded_implication, "stable bundles are simple",
              {{"stability_verdict", to_string(stab)}}, stab == Verdict::stable,
              stab == Verdict::stable         ? StepStatus::pass
              : stab == Verdict::refuted_step ? StepStatus::fail
                                              : StepStatus::inconclusive});

    const auto twist = MultiDegree::zero(spec.space.factors()) - pol.weights();
    const auto table = dual_kernel_cohom(inst, twist);
    const bool exact = table.is_exact(0) && table.is_exact(1);
    const bool vanish = exact && table.h(0) == 0 && table.h(1) == 0;
    const bool nonzero = (table.is_exact(0) && table.h(0) != 0) || (table.is_exact(1) && table.h(1) != 0)
                         || table.entry(0).lo > 0 || table.entry(1).lo > 0;
    cert.add({"h0(T*(-w)) = 0 and h1(T*(-w)) = 0", StepMethod::exact_computation,
              "long exact cohomology sequence with Bott and Kunneth",
              {{"twist", to_json(twist)}, {"resolution", "0 -> O(-w)^gamma -> O^beta -> T* -> 0"}},
              to_json(table, &twist),
              vanish ? StepStatus::pass : nonzero ? StepStatus::fail : StepStatus::inconclusive});

    const auto st2 = cert.steps.back().status;
    cert.add({"h0(T (x) T*) = h0(E (x) T*)", StepMethod::recorded_implication,
              "long exact sequence of 0 -> T*(-w)^alpha -> T (x) T* -> E (x) T* -> 0",
              json::object(), st2 == StepStatus::pass, st2});
    cert.add({"h0(E (x) E*) <= h0(E (x) T*)", StepMethod::recorded_implication,
              "left exactness of global sections on 0 -> E (x) E* -> E (x) T* -> E(w)^alpha -> 0",
              json::object(), true, StepStatus::pass});

    const bool all = cert.all_pass();
    const bool fail = cert.any(StepStatus::fail);
    cert.add({"h0(E (x) E*) = 1 (E is simple)", StepMethod::recorded_implication,
              "1 <= h0(E (x) E*) <= h0(E (x) T*) = h0(T (x) T*) = 1", json::object(), all,
              all ? StepStatus::pass : fail ? StepStatus::fail : StepStatus::inconclusive});

    cert.verdict = all ? Verdict::simple : fail ? Verdict::refuted_step : Verdict::inconclusive;
    return cert;
}

} // namespace monad_forge

#endif
