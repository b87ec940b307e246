#pragma once

// Command-line front end. run_cli parses arguments, runs one subcommand and
// writes its report; the executable in tools/ is a thin wrapper.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "varlab/coherence.hpp"
#include "varlab/fdalg.hpp"
#include "varlab/flatkappa.hpp"

namespace varlab::cli {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { Success = 0, Negative = 1, Usage = 2 };

struct RunConfig {
    std::string variety = "builtin:alg";
    std::optional<int> max_degree;
    std::vector<std::string> caps;  // "VAR=N"
    bool json = false;
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    std::uint64_t seed = 1;

    std::map<VarId, int> parsed_caps() const {
        std::map<VarId, int> out;
        for (auto& c : caps) {
            auto eq = c.find('=');
            if (eq == std::string::npos) throw Error("--cap expects VAR=N, got '" + c + "'");
            int n = 0;
            try {
                std::size_t used = 0;
                n = std::stoi(c.substr(eq + 1), &used);
                if (used != c.size() - eq - 1) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw Error("--cap expects VAR=N, got '" + c + "'");
            }
            if (n < 0) throw Error("--cap value must be nonnegative");
            out[VarId(c.substr(0, eq))] = n;
        }
        return out;
    }

    /// --cache-dir, then VARLAB_CACHE; nothing with --no-cache.
    std::optional<std::filesystem::path> cache_directory() const {
        if (no_cache) return std::nullopt;
        if (cache_dir) return std::filesystem::path(*cache_dir);
        if (const char* env = std::getenv("VARLAB_CACHE"); env && *env) return std::filesystem::path(env);
        return std::nullopt;
    }
};

inline ojson multidegree_json(const Multidegree& d) {
    ojson j = ojson::object();
    for (auto& [v, c] : d.counts()) j[v.name()] = c;
    return j;
}

inline ojson element_json(const StructureAlgebra& a, const Element& e) {
    ojson j = ojson::object();
    for (std::size_t i = 0; i < e.size(); ++i) j[a.basis()[i]] = format_rational(e[i]);
    return j;
}

inline void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

/// Rejects inputs beyond --max-degree or a --cap.
inline void check_limits(const RunConfig& cfg, const Polynomial& p) {
    auto caps = cfg.parsed_caps();
    for (auto& [d, comp] : homogeneous_components(p)) {
        if (cfg.max_degree && d.total() > *cfg.max_degree)
            throw Error("identity has degree " + std::to_string(d.total()) + " above --max-degree " +
                        std::to_string(*cfg.max_degree));
        for (auto& [v, n] : caps)
            if (d[v] > n) throw Error("identity exceeds --cap " + v.name() + "=" + std::to_string(n));
    }
}

inline int cmd_is_law(const RunConfig& cfg, const std::string& identity, ConsequenceCache& cache,
                      std::ostream& out) {
    auto v = load_variety(cfg.variety);
    auto p = parse_polynomial(identity);
    check_limits(cfg, p);
    bool law = true;
    ojson comps = ojson::array();
    for (auto& [d, comp] : homogeneous_components(p)) {
        auto cs = consequence_space(v, d, cache);
        Polynomial nf = cs->normal_form(comp);
        law = law && nf.is_zero();
        comps.push_back({{"multidegree", multidegree_json(d)}, {"law", nf.is_zero()}, {"normal_form", nf.str()}});
    }
    if (cfg.json) {
        emit(out, {{"variety", v.name()}, {"identity", p.str()}, {"law", law}, {"components", comps}});
    } else {
        out << (law ? "true" : "false") << "\n";
        if (!law)
            for (auto& c : comps)
                if (!c["law"].get<bool>())
                    out << "nonzero class: " << c["normal_form"].get<std::string>() << "\n";
    }
    return law ? Success : Negative;
}

inline ojson lambda_json(const std::vector<Rational>& l) {
    ojson j = ojson::array();
    for (auto& c : l) j.push_back(format_rational(c));
    return j;
}

inline std::string lambda_text(const std::vector<Rational>& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? ", " : "") + format_rational(l[i]);
    return s + ")";
}

inline int cmd_coherence(const RunConfig& cfg, ConsequenceCache& cache, std::ostream& out) {
    auto v = load_variety(cfg.variety);
    auto sol = solve_coherence(v, cache);
    if (cfg.json) {
        ojson j{{"variety", v.name()}, {"solvable", sol.solvable}};
        j["terms"] = ojson::array();
        for (auto& t : coherence_terms()) j["terms"].push_back(t.str());
        j["particular"] = sol.particular ? lambda_json(*sol.particular) : ojson(nullptr);
        j["freedom_rank"] = sol.freedom_rank();
        j["freedom"] = ojson::array();
        for (auto& f : sol.freedom) j["freedom"].push_back(lambda_json(f));
        emit(out, j);
    } else {
        out << v.name() << ": " << (sol.solvable ? "solvable" : "unsolvable") << "\n";
        if (sol.particular) out << "lambda = " << lambda_text(*sol.particular) << "\n";
        out << "freedom rank " << sol.freedom_rank() << "\n";
    }
    return sol.solvable ? Success : Negative;
}

inline int cmd_classify(const RunConfig& cfg, ConsequenceCache& cache, std::ostream& out) {
    auto v = load_variety(cfg.variety);
    AlternatingClassification c;
    try {
        c = classify_alternating(v, cache);
    } catch (const NotAlternatingError& e) {
        if (cfg.json)
            emit(out, {{"variety", v.name()}, {"alternating", false}, {"verdict", nullptr}});
        else
            out << e.what() << "\n";
        return Negative;
    }
    bool coherent = is_algebraically_coherent(v, cache);
    std::vector<std::string> derived;
    for (const char* s : {"x*(y*z)", "(x*y)*z"})
        if (is_law(v, parse_polynomial(s), cache)) derived.emplace_back(s);
    if (cfg.json) {
        emit(out, {{"variety", v.name()},
                   {"alternating", true},
                   {"verdict", to_string(c.verdict)},
                   {"jacobi", c.jacobi},
                   {"antiassociative", c.antiassociative},
                   {"coherent", coherent},
                   {"derived_laws", derived}});
    } else {
        out << v.name() << ": " << to_string(c.verdict) << "\n";
        out << "jacobi " << (c.jacobi ? "yes" : "no") << ", antiassociative " << (c.antiassociative ? "yes" : "no")
            << "\n";
        for (auto& d : derived) out << "derived law: " << d << "\n";
        if (!coherent) out << "not algebraically coherent\n";
    }
    return c.verdict == AlternatingClass::Neither ? Negative : Success;
}

struct KappaSizes {
    std::size_t b = 1, x = 1, y = 1;
};

inline ojson report_json(const ComparisonReport& rep) {
    ojson j{{"variety", rep.variety}};
    ojson caps = ojson::object();
    for (auto& [v, n] : rep.bound.caps) caps[v.name()] = n;
    j["bound"] = {{"max_total", rep.bound.max_total}, {"caps", caps}};
    j["components"] = ojson::array();
    for (auto& r : rep.components) {
        ojson c{{"multidegree", multidegree_json(r.multidegree)},
                {"dim_domain", r.dim_domain},
                {"dim_codomain", r.dim_codomain},
                {"rank", r.rank},
                {"injective", r.injective},
                {"surjective", r.surjective},
                {"well_defined", r.well_defined},
                {"witnesses_certified", r.witnesses_certified},
                {"kernel_witnesses", r.kernel_witness_text},
                {"kernel_witnesses_ambient", r.kernel_witness_ambient}};
        c["missing"] = ojson::array();
        for (auto& w : r.missing) c["missing"].push_back(w.str());
        j["components"].push_back(c);
    }
    j["verdict"] = rep.verdict();
    return j;
}

inline int cmd_kappa(const RunConfig& cfg, const KappaSizes& sizes, ConsequenceCache& cache, std::ostream& out) {
    auto v = load_variety(cfg.variety);
    KappaOptions opt{sizes.b, sizes.x, sizes.y, DegreeBound{cfg.max_degree.value_or(3), cfg.parsed_caps()}};
    if (opt.bound.max_total < 1) throw Error("--max-degree must be at least 1");
    auto rep = analyze_kappa(v, opt, cache);
    if (cfg.json) {
        emit(out, report_json(rep));
    } else {
        out << rep.variety << ": " << rep.verdict() << " (total degree <= " << rep.bound.max_total << ")\n";
        for (auto& r : rep.components) {
            out << "  {" << r.multidegree.str() << "} domain " << r.dim_domain << ", codomain " << r.dim_codomain
                << ", rank " << r.rank;
            if (!r.well_defined) out << ", NOT WELL DEFINED";
            out << "\n";
            for (std::size_t i = 0; i < r.kernel_witness_text.size(); ++i)
                out << "    kernel: " << r.kernel_witness_text[i] << "\n"
                    << "      as " << r.kernel_witness_ambient[i] << "\n";
            for (auto& w : r.missing) out << "    missing: " << w.str() << "\n";
        }
    }
    bool ok = rep.injective() && rep.surjective();
    return ok ? Success : Negative;
}

inline int cmd_gray(const RunConfig& cfg, bool mutate, std::ostream& out) {
    auto r = gray_counterexample(mutate);
    if (cfg.json) {
        auto semi = r.action.semidirect();
        emit(out, {{"algebras", {{"B", algebra_to_json(r.B)},
                                 {"X", algebra_to_json(r.X)},
                                 {"M", algebra_to_json(r.M)},
                                 {"B_acting_on_X", algebra_to_json(semi)}}},
                   {"laws_B_acting_on_X", r.laws_B_acting_on_X},
                   {"laws_M", r.laws_M},
                   {"g_is_homomorphism", r.g_is_homomorphism},
                   {"f_value", element_json(r.X, r.f_value)},
                   {"g_of_f", element_json(r.M, r.g_of_f)},
                   {"g_y", element_json(r.M, r.g_y)},
                   {"computed", element_json(r.M, r.computed)},
                   {"required", element_json(r.M, r.required)},
                   {"obstruction", r.obstruction},
                   {"verdict", r.verdict},
                   {"notes", r.notes}});
    } else {
        out << "f(0,b) = " << r.X.format(r.f_value) << "\n"
            << "g(f(0,b)) = " << r.M.format(r.g_of_f) << "\n"
            << "g(y)*p = " << r.M.format(r.computed) << "\n"
            << "required = " << r.M.format(r.required) << "\n"
            << "verdict: " << r.verdict << "\n";
        for (auto& n : r.notes) out << "note: " << n << "\n";
    }
    return r.obstruction ? Success : Negative;
}

struct AuditRow {
    std::vector<std::string> laws;
    bool member = false;
};

/// Is x(yz) + (xy)z a consequence of each law set, at multidegree (1,1,1)?
inline std::vector<AuditRow> audit_lemma34(ConsequenceCache& cache = default_cache()) {
    const auto target = parse_polynomial(identities::antiassociative);
    std::vector<AuditRow> rows{{{"x*(x*y)"}}, {{"x*x", "x*(x*y)"}}, {{}}};
    for (auto& r : rows) {
        auto v = VarietyPresentation::from_strings("audit", r.laws);
        r.member = consequence_space(v, target.multidegree(), cache)->contains(target);
    }
    return rows;
}

inline int cmd_audit_lemma34(const RunConfig& cfg, ConsequenceCache& cache, std::ostream& out) {
    auto rows = audit_lemma34(cache);
    if (cfg.json) {
        ojson j{{"target", parse_polynomial(identities::antiassociative).str()}, {"multidegree", "x:1,y:1,z:1"}};
        j["results"] = ojson::array();
        for (auto& r : rows) j["results"].push_back({{"laws", r.laws}, {"member", r.member}});
        emit(out, j);
    } else {
        for (auto& r : rows) {
            std::string laws;
            for (auto& l : r.laws) laws += (laws.empty() ? "" : ", ") + l;
            out << "laws {" << laws << "}: member " << (r.member ? "true" : "false") << "\n";
        }
    }
    return Success;
}

inline int cmd_check_algebra(const RunConfig& cfg, const std::string& path, std::size_t samples,
                             std::ostream& out) {
    auto v = load_variety(cfg.variety);
    auto a = load_algebra(path);
    auto check = check_laws(a, v);
    std::mt19937_64 rng(cfg.seed);
    std::size_t sample_failures = 0;
    for (std::size_t s = 0; s < samples; ++s)
        for (auto& id : v.identities()) {
            Assignment asg;
            for (auto& x : id.variables()) asg[x] = random_element(a, rng);
            if (!is_zero(eval_polynomial(a, id.polynomial(), asg))) ++sample_failures;
        }
    if (cfg.json) {
        ojson j{{"variety", v.name()}, {"algebra", path}, {"holds", check.holds}};
        if (!check.holds) {
            ojson tuple = ojson::object();
            for (auto& [x, b] : check.failing_tuple) tuple[x.name()] = b;
            j["failing_identity"] = *check.failing_identity;
            j["failing_tuple"] = tuple;
            j["value"] = element_json(a, check.value);
        }
        j["samples"] = samples;
        j["sample_failures"] = sample_failures;
        emit(out, j);
    } else {
        out << (check.holds ? "true" : "false") << "\n";
        if (!check.holds) {
            out << "fails " << *check.failing_identity << " at";
            for (auto& [x, b] : check.failing_tuple) out << " " << x.name() << "=" << b;
            out << " (value " << a.format(check.value) << ")\n";
        }
        if (samples) out << "random samples: " << sample_failures << " failures in " << samples << "\n";
    }
    return check.holds && sample_failures == 0 ? Success : Negative;
}

/// Runs one command line; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"varlab: identities, coherence and kernel comparisons for varieties of algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--variety", cfg.variety, "builtin:<key> or a JSON variety file");
    app.add_option("--max-degree", cfg.max_degree, "total degree bound");
    app.add_option("--cap", cfg.caps, "per-variable cap VAR=N (repeatable)");
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_option("--cache-dir", cfg.cache_dir, "consequence-space cache directory")->envname("VARLAB_CACHE");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_flag("--no-cache", cfg.no_cache, "do not read or write the disk cache");

    std::string identity;
    auto* is_law_cmd = app.add_subcommand("is-law", "decide whether an identity is a law");
    is_law_cmd->add_option("--identity", identity, "identity in the DSL")->required();

    auto* coherence_cmd = app.add_subcommand("coherence", "solve the eight-term coherence equation");
    auto* classify_cmd = app.add_subcommand("classify", "classify an alternating variety");

    KappaSizes sizes;
    auto* kappa_cmd = app.add_subcommand("kappa", "analyze the kernel comparison map up to a degree bound");
    kappa_cmd->add_option("--b-gens", sizes.b, "generators of B")->check(CLI::Range(1, 8));
    kappa_cmd->add_option("--x-gens", sizes.x, "generators of X")->check(CLI::Range(1, 8));
    kappa_cmd->add_option("--y-gens", sizes.y, "generators of Y")->check(CLI::Range(1, 8));

    bool mutate = false;
    auto* gray_cmd = app.add_subcommand("gray", "semidirect-product membership counterexample");
    gray_cmd->add_flag("--mutate", mutate, "use the control fixture with mp = pm = 0");

    auto* audit_cmd = app.add_subcommand("audit-lemma34", "membership of x(yz)+(xy)z under x(xy)=0");

    std::string algebra_path;
    std::size_t samples = 0;
    auto* check_cmd = app.add_subcommand("check-algebra", "check a structure-constant algebra against a variety");
    check_cmd->add_option("--algebra", algebra_path, "JSON structure-algebra file")->required();
    check_cmd->add_option("--samples", samples, "extra random evaluations per identity");

    std::vector<std::string> argv{"varlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> raw;
    for (auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "varlab: " << e.what() << "\n";
        return Usage;
    }

    try {
        if (cfg.max_degree && *cfg.max_degree < 1) throw Error("--max-degree must be at least 1");
        ConsequenceCache cache;
        cache.set_directory(cfg.cache_directory());
        if (*is_law_cmd) return cmd_is_law(cfg, identity, cache, out);
        if (*coherence_cmd) return cmd_coherence(cfg, cache, out);
        if (*classify_cmd) return cmd_classify(cfg, cache, out);
        if (*kappa_cmd) return cmd_kappa(cfg, sizes, cache, out);
        if (*gray_cmd) return cmd_gray(cfg, mutate, out);
        if (*audit_cmd) return cmd_audit_lemma34(cfg, cache, out);
        if (*check_cmd) return cmd_check_algebra(cfg, algebra_path, samples, out);
    } catch (const Error& e) {
        err << "varlab: " << e.what() << "\n";
        return Usage;
    }
    return Usage;
}

}  // namespace varlab::cli
