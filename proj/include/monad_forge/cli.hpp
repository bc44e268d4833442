#ifndef MONAD_FORGE_CLI_HPP
#define MONAD_FORGE_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <monad_forge/certify.hpp>
#include <monad_forge/cohom.hpp>
#include <monad_forge/invariants.hpp>
#include <monad_forge/monad.hpp>
#include <monad_forge/serialize.hpp>

namespace monad_forge::cli
{

enum ExitCode : int { ok = 0, usage = 2, refuted = 3, inconclusive = 4 };

struct JobConfig {
    std::string subcommand;
    std::string space;
    std::string weights;
    std::optional<int> alpha, beta, gamma;
    std::optional<std::int64_t> n_segre;
    std::string flavor;
    std::optional<int> m;
    int k = 1;
    std::string in;
    std::string out;
    std::string exhaustive;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::uint64_t prime = SampledStrategy{}.prime;
    std::uint64_t cap = ExhaustiveStrategy{}.cap;
    std::string degree;
    std::string twist;
    std::string bundle = "T*";
    std::uint64_t wedge_cap = StabilityOptions{}.wedge_cap;
    bool no_boundary = false;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DoesNotExist : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<int> parse_int_list(const std::string &s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoi(tok, &used));
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) {
            throw UsageError("expected a comma separated integer list, got '" + s + "'");
        }
    }
    if (out.empty()) {
        throw UsageError("empty integer list");
    }
    return out;
}

// Turns a JSON config object into flags; placed before the real flags so those win.
inline std::vector<std::string> config_args(const std::string &path)
{
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception &e) {
        throw UsageError("malformed config file: " + std::string(e.what()));
    }
    if (!j.is_object()) {
        throw UsageError("config file must hold a JSON object");
    }
    std::vector<std::string> args;
    for (const auto &[key, v] : j.items()) {
        if (key == "subcommand" || key == "schema") {
            continue;
        }
        const std::string flag = "--" + key;
        if (v.is_boolean()) {
            if (v.get<bool>()) {
                args.push_back(flag);
            }
        } else if (v.is_array()) {
            std::string joined;
            for (const auto &x : v) {
                joined += (joined.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
            }
            args.push_back(flag);
            args.push_back(joined);
        } else if (v.is_string()) {
            args.push_back(flag);
            args.push_back(v.get<std::string>());
        } else if (v.is_number()) {
            args.push_back(flag);
            args.push_back(v.dump());
        } else {
            throw UsageError("unsupported config value for '" + key + "'");
        }
    }
    return args;
}

inline MonadSpec resolve_spec(const JobConfig &c)
{
    if (!c.flavor.empty() && flavor_from_string(c.flavor) == Flavor::p1_power) {
        if (!c.m) {
            throw UsageError("p1-power flavor needs --m");
        }
        return p1_power_spec(*c.m, c.k);
    }
    if (c.space.empty() || !c.alpha || !c.beta || !c.gamma) {
        throw UsageError("need --in, or --space with --alpha --beta --gamma");
    }
    SpaceSpec space(parse_int_list(c.space));
    MultiDegree weights = c.weights.empty() ? MultiDegree::constant(space.factors(), 1)
                                            : MultiDegree(parse_int_list(c.weights));
    weights.check_space(space);
    const Flavor flavor = c.flavor.empty() ? natural_flavor(space, weights) : flavor_from_string(c.flavor);
    MonadSpec s{std::move(space), std::move(weights), *c.alpha, *c.beta, *c.gamma, flavor, 0};
    s.validate();
    return s;
}

inline MonadInstance resolve_instance(const JobConfig &c)
{
    if (!c.in.empty()) {
        std::ifstream f(c.in);
        if (!f) {
            throw UsageError("cannot read '" + c.in + "'");
        }
        try {
            return monad_from_json(json::parse(f));
        } catch (const json::exception &e) {
            throw UsageError("malformed monad file: " + std::string(e.what()));
        }
    }
    const auto spec = resolve_spec(c);
    if (!exists_monad(spec.alpha, spec.beta, spec.gamma, spec.segre_n())) {
        throw DoesNotExist("no linear monad exists for these ranks on P^" + std::to_string(spec.segre_n()));
    }
    return build_monad(spec);
}

inline RankStrategy resolve_strategy(const JobConfig &c)
{
    if (c.samples) {
        if (!c.exhaustive.empty()) {
            throw UsageError("--samples and --exhaustive are exclusive");
        }
        if (!c.seed) {
            throw UsageError("sampled strategy needs an explicit --seed");
        }
        return SampledStrategy{*c.samples, c.prime, *c.seed};
    }
    ExhaustiveStrategy ex{{3}, c.cap};
    if (!c.exhaustive.empty()) {
        ex.primes.clear();
        for (int p : parse_int_list(c.exhaustive)) {
            if (p < 2) {
                throw UsageError("field sizes must be primes");
            }
            ex.primes.push_back(static_cast<std::uint64_t>(p));
        }
    }
    return ex;
}

inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::refuted_step:
        return refuted;
    case Verdict::inconclusive:
        return inconclusive;
    default:
        return ok;
    }
}

inline int run_job(const JobConfig &c, json &result)
{
    const auto &cmd = c.subcommand;
    if (cmd == "exists") {
        if (!c.alpha || !c.beta || !c.gamma) {
            throw UsageError("exists needs --alpha --beta --gamma");
        }
        std::int64_t n = 0;
        if (c.n_segre) {
            n = *c.n_segre;
        } else if (!c.space.empty()) {
            SpaceSpec space(parse_int_list(c.space));
            MultiDegree w = c.weights.empty() ? MultiDegree::constant(space.factors(), 1)
                                              : MultiDegree(parse_int_list(c.weights));
            n = segre_dimension(space, w);
        } else {
            throw UsageError("exists needs --N or --space");
        }
        const bool e = exists_monad(*c.alpha, *c.beta, *c.gamma, n);
        result = {{"schema", schema_id}, {"kind", "existence"}, {"alpha", *c.alpha}, {"beta", *c.beta},
                  {"gamma", *c.gamma},   {"N", n},               {"exists", e},
                  {"condition", existence_conditions(*c.alpha, *c.beta, *c.gamma, n)}};
        return e ? ok : refuted;
    }
    if (cmd == "cohom" && !c.degree.empty()) {
        if (c.space.empty()) {
            throw UsageError("cohom --degree needs --space");
        }
        SpaceSpec space(parse_int_list(c.space));
        MultiDegree d(parse_int_list(c.degree));
        result = to_json(kunneth(space, d), &d);
        result["bundle"] = "O" + d.to_string();
        return ok;
    }

    const auto inst = resolve_instance(c);
    if (cmd == "build") {
        result = to_json(inst);
        return ok;
    }
    if (cmd == "verify") {
        const auto cert = verify_monad(inst, resolve_strategy(c));
        result = to_json(cert);
        return exit_code(cert.verdict);
    }
    if (cmd == "cohom") {
        if (c.bundle != "T*") {
            throw UsageError("cohom supports --bundle T* or --degree");
        }
        MultiDegree t = c.twist.empty() ? MultiDegree::zero(inst.spec.space.factors())
                                        : MultiDegree(parse_int_list(c.twist));
        result = to_json(dual_kernel_cohom(inst, t), &t);
        result["bundle"] = "T*" + t.to_string();
        return ok;
    }
    const Polarization pol(inst.spec.space, inst.spec.weights);
    if (cmd == "invariants") {
        std::vector<MultiDegree> ls(static_cast<std::size_t>(inst.spec.space.dim()), pol.weights());
        result = {{"schema", schema_id},
                  {"kind", "numerics"},
                  {"bundle", "T"},
                  {"spec", to_json(inst.spec)},
                  {"L_top", integer_to_json(intersection_number(inst.spec.space, ls))},
                  {"numerics", to_json(kernel_numerics(inst.spec, pol))}};
        return ok;
    }
    StabilityOptions so;
    so.surjectivity = resolve_strategy(c);
    so.wedge_cap = c.wedge_cap;
    so.boundary_cells = !c.no_boundary;
    if (cmd == "stability") {
        const auto cert = stability_certificate(inst, pol, so);
        result = to_json(cert);
        return exit_code(cert.verdict);
    }
    if (cmd == "simplicity") {
        SimplicityOptions opt{so, std::nullopt};
        const auto cert = simplicity_certificate(inst, pol, opt);
        result = to_json(cert);
        return exit_code(cert.verdict);
    }
    throw UsageError("unknown subcommand '" + cmd + "'");
}

inline void add_spec_options(CLI::App *sub, JobConfig &c)
{
    sub->add_option("--space", c.space, "factor dimensions, e.g. 1,1");
    sub->add_option("--weights", c.weights, "polarization weights (default all 1)");
    sub->add_option("--alpha", c.alpha);
    sub->add_option("--beta", c.beta);
    sub->add_option("--gamma", c.gamma);
    sub->add_option("--flavor", c.flavor, "type-i, type-ii or p1-power");
    sub->add_option("--m", c.m, "number of P^1 factors (p1-power)");
    sub->add_option("--k", c.k, "alpha = gamma = k (p1-power)");
    sub->add_option("--in", c.in, "monad JSON produced by build");
}

inline void add_strategy_options(CLI::App *sub, JobConfig &c)
{
    sub->add_option("--exhaustive", c.exhaustive, "field sizes for an exhaustive sweep, e.g. 3,5");
    sub->add_option("--samples", c.samples, "number of random points (needs --seed)");
    sub->add_option("--seed", c.seed);
    sub->add_option("--prime", c.prime, "field for sampled points");
    sub->add_option("--cap", c.cap, "point cap for exhaustive sweeps");
}

// Runs the command line; returns the process exit code.
inline int run(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err)
{
    JobConfig c;
    CLI::App app("Linear monads on multiprojective spaces", "monad-forge");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config;
    std::vector<CLI::App *> subs;
    auto add = [&](const std::string &name, const std::string &desc) {
        auto *s = app.add_subcommand(name, desc);
        s->add_option("--config", config, "JSON file with flag values");
        s->add_option("--out", c.out, "write the report here instead of stdout");
        subs.push_back(s);
        return s;
    };
    auto *ex = add("exists", "existence of a linear monad");
    ex->add_option("--alpha", c.alpha);
    ex->add_option("--beta", c.beta);
    ex->add_option("--gamma", c.gamma);
    ex->add_option("--N", c.n_segre, "target projective space dimension");
    ex->add_option("--space", c.space);
    ex->add_option("--weights", c.weights);
    add_spec_options(add("build", "construct a monad"), c);
    auto *ve = add("verify", "check BA = 0 and the rank conditions");
    add_spec_options(ve, c);
    add_strategy_options(ve, c);
    auto *co = add("cohom", "cohomology of a line bundle or of T*(t)");
    add_spec_options(co, c);
    co->add_option("--degree", c.degree, "multidegree of a line bundle");
    co->add_option("--bundle", c.bundle, "T* (dual kernel bundle)");
    co->add_option("--twist", c.twist, "twist of T*");
    add_spec_options(add("invariants", "numerics of the kernel bundle"), c);
    for (const std::string name : {"stability", "simplicity"}) {
        auto *s = add(name, name + " certificate");
        add_spec_options(s, c);
        add_strategy_options(s, c);
        s->add_option("--wedge-cap", c.wedge_cap, "skip wedge cells with more basis elements");
        s->add_flag("--no-boundary", c.no_boundary, "skip the semistability boundary cells");
    }

    std::vector<std::string> args = argv;
    try {
        // Pre-scan for --config so its values can be spliced in ahead of the explicit flags.
        for (std::size_t i = 1; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                auto extra = config_args(args[i + 1]);
                args.insert(args.begin() + 2, extra.begin(), extra.end());
                break;
            }
        }
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
        for (auto *s : subs) {
            if (s->parsed()) {
                c.subcommand = s->get_name();
            }
        }
        json result;
        const int code = run_job(c, result);
        const auto text = dump(result);
        if (c.out.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) {
                throw UsageError("cannot write '" + c.out + "'");
            }
            f << text;
        }
        return code;
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    } catch (const ResourceCapExceeded &e) {
        err << "resource cap: " << e.what() << "\n";
        return inconclusive;
    } catch (const DoesNotExist &e) {
        err << e.what() << "\n";
        return refuted;
    } catch (const NotConstructible &e) {
        err << e.what() << "\n";
        return inconclusive;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const json::exception &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

} // namespace monad_forge::cli

#endif
