#ifndef MONAD_FORGE_CERTIFICATE_HPP
#define MONAD_FORGE_CERTIFICATE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace monad_forge
{

using json = nlohmann::ordered_json;

inline constexpr const char *schema_id = "monad-forge/1";

enum class StepMethod { exact_computation, recorded_implication };

enum class StepStatus { pass, fail, inconclusive };

enum class Verdict { pass, exists, stable, simple, refuted_step, inconclusive };

inline std::string to_string(StepMethod m)
{
    return m == StepMethod::exact_computation ? "exact-computation" : "recorded-implication";
}

inline std::string to_string(StepStatus s)
{
    switch (s) {
    case StepStatus::pass:
        return "pass";
    case StepStatus::fail:
        return "fail";
    case StepStatus::inconclusive:
        return "inconclusive";
    }
    return "?";
}

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::exists:
        return "exists";
    case Verdict::stable:
        return "stable";
    case Verdict::simple:
        return "simple";
    case Verdict::refuted_step:
        return "refuted-step";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

inline Verdict verdict_from_string(const std::string &s)
{
    for (auto v : {Verdict::pass, Verdict::exists, Verdict::stable, Verdict::simple, Verdict::refuted_step,
                   Verdict::inconclusive}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

struct CertificateStep {
    std::string claim;
    StepMethod method = StepMethod::exact_computation;
    // Named mathematical result the step relies on.
    std::string citation;
    json inputs = json::object();
    json value;
    StepStatus status = StepStatus::pass;
};

// Ordered list of checked steps. The verdict is assigned by the engine that built it.
struct Certificate {
    std::string subject;
    std::vector<CertificateStep> steps;
    Verdict verdict = Verdict::inconclusive;

    CertificateStep &add(CertificateStep s)
    {
        steps.push_back(std::move(s));
        return steps.back();
    }
    bool all_pass() const
    {
        return std::all_of(steps.begin(), steps.end(), [](const auto &s) { return s.status == StepStatus::pass; });
    }
    bool any(StepStatus st) const
    {
        return std::any_of(steps.begin(), steps.end(), [st](const auto &s) { return s.status == st; });
    }
    const CertificateStep *find(const std::string &claim_prefix) const
    {
        for (const auto &s : steps) {
            if (s.claim.rfind(claim_prefix, 0) == 0) {
                return &s;
            }
        }
        return nullptr;
    }
};

inline json to_json(const Certificate &c)
{
    json steps = json::array();
    for (const auto &s : c.steps) {
        steps.push_back({{"claim", s.claim},
                         {"method", to_string(s.method)},
                         {"citation", s.citation},
                         {"inputs", s.inputs},
                         {"value", s.value},
                         {"status", to_string(s.status)}});
    }
    return {{"schema", schema_id}, {"kind", "certificate"}, {"subject", c.subject}, {"verdict", to_string(c.verdict)},
            {"steps", std::move(steps)}};
}

} // namespace monad_forge

#endif
