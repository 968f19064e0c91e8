#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "equiloc/bundles.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/localize.hpp"
#include "equiloc/projective.hpp"
#include "equiloc/schubert.hpp"

namespace equiloc {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario model. The reference serialization is JSON; every rational is an
// exact "p/q" string and every character an integer array, so documents are
// bit-faithful.
// ---------------------------------------------------------------------------

struct SpaceDescriptor {
    enum class Type { projective, flag };
    Type type = Type::projective;
    std::vector<Character> weights; // projective
    std::size_t flag_n = 0;         // flag
};

struct ClassDescriptor {
    enum class Type { complete_intersection, explicit_monomials };
    struct Monomial {
        Rational coefficient{0};
        std::uint32_t h_power = 0;
        std::vector<std::uint32_t> t_powers;
    };
    Type type = Type::complete_intersection;
    std::vector<std::pair<std::int64_t, Character>> cuts; // complete intersection
    std::vector<Monomial> monomials;                      // explicit
};

struct BundleDescriptor {
    enum class Type { tangent, line, pullback, explicit_fibers };
    Type type = Type::tangent;
    // line
    std::int64_t degree = 0;
    std::optional<Character> weight;
    // pullback
    std::shared_ptr<SpaceDescriptor> target;
    std::vector<std::pair<std::size_t, std::size_t>> point_map;
    std::shared_ptr<BundleDescriptor> bundle;
    // explicit fibers
    std::size_t rank = 0;
    std::map<std::size_t, std::vector<Character>> fibers;
};

struct PolynomialTerm {
    struct Factor {
        std::string bundle;
        std::uint32_t index = 1;
        std::uint32_t power = 1;
    };
    Rational coefficient{1};
    std::vector<Factor> factors;
};

struct ModeDescriptor {
    enum class Type { smooth, singular, localize, schubert };
    Type type = Type::smooth;
    std::optional<ClassDescriptor> cls; // singular, localize
    std::vector<std::size_t> on_x;      // singular
    std::size_t dim_x = 0;              // singular
    std::vector<std::size_t> v;         // schubert: one-line notation, 1-based
};

struct Scenario {
    std::size_t torus_rank = 0;
    SpaceDescriptor space;
    std::vector<std::pair<std::string, BundleDescriptor>> bundles; // sorted by name
    std::vector<PolynomialTerm> polynomial;
    ModeDescriptor mode;
};

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

namespace scenario_json {

inline Json character_to_json(const Character& c) {
    Json a = Json::array();
    for (auto x : c.coeffs()) a.push_back(x);
    return a;
}

inline Character character_from_json(const Json& j) {
    std::vector<std::int64_t> v;
    for (const auto& x : j) v.push_back(x.get<std::int64_t>());
    return Character(std::move(v));
}

inline Json space_to_json(const SpaceDescriptor& s) {
    Json j;
    if (s.type == SpaceDescriptor::Type::projective) {
        j["type"] = "projective";
        Json ws = Json::array();
        for (const auto& w : s.weights) ws.push_back(character_to_json(w));
        j["weights"] = ws;
    } else {
        j["type"] = "flag";
        j["n"] = s.flag_n;
    }
    return j;
}

inline SpaceDescriptor space_from_json(const Json& j) {
    SpaceDescriptor s;
    const std::string type = j.at("type").get<std::string>();
    if (type == "projective") {
        s.type = SpaceDescriptor::Type::projective;
        for (const auto& w : j.at("weights")) s.weights.push_back(character_from_json(w));
    } else if (type == "flag") {
        s.type = SpaceDescriptor::Type::flag;
        s.flag_n = j.at("n").get<std::size_t>();
    } else {
        throw ScenarioError("space type must be 'projective' or 'flag', got '" + type + "'");
    }
    return s;
}

inline Json class_to_json(const ClassDescriptor& c) {
    Json j;
    if (c.type == ClassDescriptor::Type::complete_intersection) {
        j["type"] = "complete_intersection";
        Json cuts = Json::array();
        for (const auto& [d, chi] : c.cuts)
            cuts.push_back(Json{{"degree", d}, {"weight", character_to_json(chi)}});
        j["cuts"] = cuts;
    } else {
        j["type"] = "explicit";
        Json ms = Json::array();
        for (const auto& m : c.monomials)
            ms.push_back(Json{{"coefficient", m.coefficient.to_string()},
                              {"h", m.h_power},
                              {"t", m.t_powers}});
        j["monomials"] = ms;
    }
    return j;
}

inline ClassDescriptor class_from_json(const Json& j) {
    ClassDescriptor c;
    const std::string type = j.at("type").get<std::string>();
    if (type == "complete_intersection") {
        c.type = ClassDescriptor::Type::complete_intersection;
        for (const auto& cut : j.at("cuts"))
            c.cuts.emplace_back(cut.at("degree").get<std::int64_t>(),
                                character_from_json(cut.at("weight")));
    } else if (type == "explicit") {
        c.type = ClassDescriptor::Type::explicit_monomials;
        for (const auto& m : j.at("monomials")) {
            ClassDescriptor::Monomial mono;
            mono.coefficient = Rational::parse(m.at("coefficient").get<std::string>());
            mono.h_power = m.at("h").get<std::uint32_t>();
            mono.t_powers = m.at("t").get<std::vector<std::uint32_t>>();
            c.monomials.push_back(std::move(mono));
        }
    } else {
        throw ScenarioError("class type must be 'complete_intersection' or 'explicit'");
    }
    return c;
}

inline Json bundle_to_json(const BundleDescriptor& b) {
    Json j;
    switch (b.type) {
        case BundleDescriptor::Type::tangent:
            j["type"] = "tangent";
            break;
        case BundleDescriptor::Type::line:
            j["type"] = "line";
            j["degree"] = b.degree;
            j["weight"] = character_to_json(*b.weight);
            break;
        case BundleDescriptor::Type::pullback: {
            j["type"] = "pullback";
            j["space"] = space_to_json(*b.target);
            Json pm = Json::array();
            for (const auto& [from, to] : b.point_map) pm.push_back(Json::array({from, to}));
            j["point_map"] = pm;
            j["bundle"] = bundle_to_json(*b.bundle);
            break;
        }
        case BundleDescriptor::Type::explicit_fibers: {
            j["type"] = "explicit";
            j["rank"] = b.rank;
            Json fs = Json::array();
            for (const auto& [p, ws] : b.fibers) {
                Json entry;
                entry["point"] = p;
                Json wj = Json::array();
                for (const auto& w : ws) wj.push_back(character_to_json(w));
                entry["weights"] = wj;
                fs.push_back(entry);
            }
            j["fibers"] = fs;
            break;
        }
    }
    return j;
}

inline BundleDescriptor bundle_from_json(const Json& j) {
    BundleDescriptor b;
    const std::string type = j.at("type").get<std::string>();
    if (type == "tangent") {
        b.type = BundleDescriptor::Type::tangent;
    } else if (type == "line") {
        b.type = BundleDescriptor::Type::line;
        b.degree = j.at("degree").get<std::int64_t>();
        b.weight = character_from_json(j.at("weight"));
    } else if (type == "pullback") {
        b.type = BundleDescriptor::Type::pullback;
        b.target = std::make_shared<SpaceDescriptor>(space_from_json(j.at("space")));
        for (const auto& pm : j.at("point_map"))
            b.point_map.emplace_back(pm.at(0).get<std::size_t>(), pm.at(1).get<std::size_t>());
        b.bundle = std::make_shared<BundleDescriptor>(bundle_from_json(j.at("bundle")));
    } else if (type == "explicit") {
        b.type = BundleDescriptor::Type::explicit_fibers;
        b.rank = j.at("rank").get<std::size_t>();
        for (const auto& f : j.at("fibers")) {
            std::vector<Character> ws;
            for (const auto& w : f.at("weights")) ws.push_back(character_from_json(w));
            b.fibers[f.at("point").get<std::size_t>()] = std::move(ws);
        }
    } else {
        throw ScenarioError("bundle type must be tangent|line|pullback|explicit, got '" + type + "'");
    }
    return b;
}

} // namespace scenario_json

inline Json scenario_to_json(const Scenario& s) {
    Json j;
    j["torus_rank"] = s.torus_rank;
    j["space"] = scenario_json::space_to_json(s.space);
    Json bundles = Json::object();
    for (const auto& [name, b] : s.bundles) bundles[name] = scenario_json::bundle_to_json(b);
    j["bundles"] = bundles;
    Json poly = Json::array();
    for (const auto& term : s.polynomial) {
        Json t;
        t["coefficient"] = term.coefficient.to_string();
        Json fs = Json::array();
        for (const auto& f : term.factors)
            fs.push_back(Json{{"bundle", f.bundle}, {"index", f.index}, {"power", f.power}});
        t["factors"] = fs;
        poly.push_back(t);
    }
    j["chern_polynomial"] = poly;
    Json mode;
    switch (s.mode.type) {
        case ModeDescriptor::Type::smooth:
            mode["type"] = "smooth";
            break;
        case ModeDescriptor::Type::singular:
            mode["type"] = "singular";
            mode["class"] = scenario_json::class_to_json(*s.mode.cls);
            mode["on_x"] = s.mode.on_x;
            mode["dim_x"] = s.mode.dim_x;
            break;
        case ModeDescriptor::Type::localize:
            mode["type"] = "localize";
            mode["class"] = scenario_json::class_to_json(*s.mode.cls);
            break;
        case ModeDescriptor::Type::schubert:
            mode["type"] = "schubert";
            mode["v"] = s.mode.v;
            break;
    }
    j["mode"] = mode;
    return j;
}

// ---------------------------------------------------------------------------
// Semantic validation and construction of engine inputs
// ---------------------------------------------------------------------------

namespace scenario_detail {

inline ProjectiveSpaceAction projective_action(std::size_t rank, const SpaceDescriptor& s) {
    if (s.type != SpaceDescriptor::Type::projective)
        throw ScenarioError("this mode requires a projective space");
    for (const auto& w : s.weights)
        if (w.rank() != rank) throw ScenarioError("weight rank disagrees with torus_rank");
    ProjectiveSpaceAction action(rank, s.weights);
    if (!action.distinct_weights())
        throw ScenarioError("projective weights must be pairwise distinct (RepeatedWeights)");
    return action;
}

inline FixedPointSpace build_space(std::size_t rank, const SpaceDescriptor& s) {
    if (s.type == SpaceDescriptor::Type::projective)
        return projective_fixed_points(projective_action(rank, s));
    if (s.flag_n < 2) throw ScenarioError("flag space needs n >= 2");
    if (rank != s.flag_n) throw ScenarioError("flag space requires torus_rank == n");
    return flag_fixed_points(s.flag_n);
}

inline EquivariantBundle build_bundle(std::size_t rank, const SpaceDescriptor& space,
                                      const BundleDescriptor& b) {
    switch (b.type) {
        case BundleDescriptor::Type::tangent:
            return tangent_bundle(build_space(rank, space));
        case BundleDescriptor::Type::line:
            return line_bundle(projective_action(rank, space), b.degree, *b.weight);
        case BundleDescriptor::Type::pullback: {
            if (!b.target || !b.bundle) throw ScenarioError("pullback bundle needs space and bundle");
            EquivariantBundle inner = build_bundle(rank, *b.target, *b.bundle);
            const FixedPointSpace target_space = build_space(rank, *b.target);
            const FixedPointSpace this_space = build_space(rank, space);
            std::map<std::size_t, std::size_t> pm;
            for (const auto& [from, to] : b.point_map) {
                if (from >= this_space.size())
                    throw ScenarioError("point_map source id out of range");
                if (to >= target_space.size())
                    throw ScenarioError("point_map target id out of range");
                pm[from] = to;
            }
            return pullback_bundle(pm, inner);
        }
        case BundleDescriptor::Type::explicit_fibers: {
            const FixedPointSpace this_space = build_space(rank, space);
            EquivariantBundle out;
            out.rank = b.rank;
            for (const auto& [p, ws] : b.fibers) {
                if (p >= this_space.size()) throw ScenarioError("explicit fiber at unknown point");
                if (ws.size() != b.rank)
                    throw ScenarioError("explicit fiber size differs from declared rank");
                for (const auto& w : ws)
                    if (w.rank() != rank) throw ScenarioError("explicit fiber weight rank mismatch");
                out.fibers[p] = ws;
            }
            return out;
        }
    }
    throw ScenarioError("unknown bundle type");
}

inline EquivariantClass build_class(const ProjectiveSpaceAction& action, const ClassDescriptor& c) {
    if (c.type == ClassDescriptor::Type::complete_intersection) {
        for (const auto& [d, chi] : c.cuts)
            if (chi.rank() != action.rank) throw ScenarioError("cut weight rank mismatch");
        return hypersurface_class(action, c.cuts);
    }
    MultiPoly p(action.nvars());
    for (const auto& m : c.monomials) {
        if (m.t_powers.size() != action.rank)
            throw ScenarioError("monomial t-exponent count differs from torus_rank");
        Exponents e(m.t_powers.begin(), m.t_powers.end());
        e.push_back(m.h_power);
        p.add_term(e, m.coefficient);
    }
    return EquivariantClass(action, std::move(p));
}

inline ChernPolynomial build_polynomial(const Scenario& s,
                                        const std::map<std::string, std::size_t>& bundle_index,
                                        const std::vector<EquivariantBundle>& bundles) {
    if (s.polynomial.empty()) throw ScenarioError("chern_polynomial must have at least one term");
    std::vector<ChernPolynomial::Term> terms;
    std::optional<std::uint32_t> degree;
    for (const auto& term : s.polynomial) {
        ChernPolynomial::Term t;
        t.coefficient = term.coefficient;
        std::uint32_t d = 0;
        for (const auto& f : term.factors) {
            auto it = bundle_index.find(f.bundle);
            if (it == bundle_index.end())
                throw ScenarioError("chern_polynomial references unknown bundle '" + f.bundle + "'");
            if (f.index == 0 || f.index > bundles[it->second].rank)
                throw ScenarioError("chern index " + std::to_string(f.index)
                                    + " out of range for bundle '" + f.bundle + "'");
            t.factors.push_back({it->second, f.index, f.power});
            d += f.index * f.power;
        }
        if (degree && *degree != d)
            throw ScenarioError("chern_polynomial terms have mixed weighted degrees (DegreeMismatch)");
        degree = d;
        terms.push_back(std::move(t));
    }
    return ChernPolynomial(std::move(terms), *degree);
}

} // namespace scenario_detail

// Parses and semantically validates a scenario document. Structural problems
// (missing fields, wrong JSON types) surface as nlohmann exceptions; semantic
// problems as ScenarioError.
inline Scenario parse_scenario(const std::string& text) {
    const Json j = Json::parse(text); // throws Json::parse_error on bad documents
    Scenario s;
    s.torus_rank = j.at("torus_rank").get<std::size_t>();
    if (s.torus_rank == 0) throw ScenarioError("torus_rank must be positive");
    s.space = scenario_json::space_from_json(j.at("space"));

    if (j.contains("bundles"))
        for (const auto& [name, bj] : j.at("bundles").items())
            s.bundles.emplace_back(name, scenario_json::bundle_from_json(bj));

    if (j.contains("chern_polynomial"))
        for (const auto& t : j.at("chern_polynomial")) {
            PolynomialTerm term;
            term.coefficient = Rational::parse(t.at("coefficient").get<std::string>());
            for (const auto& f : t.at("factors")) {
                PolynomialTerm::Factor fac;
                fac.bundle = f.at("bundle").get<std::string>();
                fac.index = f.at("index").get<std::uint32_t>();
                fac.power = f.at("power").get<std::uint32_t>();
                term.factors.push_back(std::move(fac));
            }
            s.polynomial.push_back(std::move(term));
        }

    const Json& mj = j.at("mode");
    const std::string mode = mj.at("type").get<std::string>();
    if (mode == "smooth") {
        s.mode.type = ModeDescriptor::Type::smooth;
    } else if (mode == "singular") {
        s.mode.type = ModeDescriptor::Type::singular;
        s.mode.cls = scenario_json::class_from_json(mj.at("class"));
        s.mode.on_x = mj.at("on_x").get<std::vector<std::size_t>>();
        s.mode.dim_x = mj.at("dim_x").get<std::size_t>();
    } else if (mode == "localize") {
        s.mode.type = ModeDescriptor::Type::localize;
        s.mode.cls = scenario_json::class_from_json(mj.at("class"));
    } else if (mode == "schubert") {
        s.mode.type = ModeDescriptor::Type::schubert;
        s.mode.v = mj.at("v").get<std::vector<std::size_t>>();
    } else {
        throw ScenarioError("mode must be smooth|singular|localize|schubert, got '" + mode + "'");
    }

    // Eager semantic validation: every engine input must be constructible and
    // degree-consistent before any computation runs.
    const FixedPointSpace space = scenario_detail::build_space(s.torus_rank, s.space);
    std::map<std::string, std::size_t> bundle_index;
    std::vector<EquivariantBundle> bundles;
    for (const auto& [name, b] : s.bundles) {
        if (bundle_index.count(name)) throw ScenarioError("duplicate bundle name '" + name + "'");
        bundle_index[name] = bundles.size();
        bundles.push_back(scenario_detail::build_bundle(s.torus_rank, s.space, b));
    }

    switch (s.mode.type) {
        case ModeDescriptor::Type::smooth: {
            auto poly = scenario_detail::build_polynomial(s, bundle_index, bundles);
            if (poly.weighted_degree() != space.dim())
                throw ScenarioError("smooth mode needs weighted degree == dim (DegreeMismatch)");
            break;
        }
        case ModeDescriptor::Type::singular: {
            auto action = scenario_detail::projective_action(s.torus_rank, s.space);
            auto poly = scenario_detail::build_polynomial(s, bundle_index, bundles);
            if (poly.weighted_degree() != s.mode.dim_x)
                throw ScenarioError("singular mode needs weighted degree == dim_x (DegreeMismatch)");
            if (s.mode.dim_x > action.dim())
                throw ScenarioError("dim_x exceeds the ambient dimension");
            auto gamma = scenario_detail::build_class(action, *s.mode.cls);
            long gdeg = -1;
            if (!gamma.poly().is_homogeneous(&gdeg))
                throw ScenarioError("singular class must be homogeneous");
            if (!gamma.poly().is_zero() && gdeg != static_cast<long>(action.dim() - s.mode.dim_x))
                throw ScenarioError("singular class degree must equal the codimension (DegreeMismatch)");
            for (auto p : s.mode.on_x) {
                if (p >= space.size()) throw ScenarioError("on_x id out of range");
                for (const auto& b : bundles)
                    if (!b.fibers.count(p))
                        throw ScenarioError("bundle undefined at on_x point " + std::to_string(p));
            }
            break;
        }
        case ModeDescriptor::Type::localize: {
            auto action = scenario_detail::projective_action(s.torus_rank, s.space);
            (void)scenario_detail::build_class(action, *s.mode.cls);
            break;
        }
        case ModeDescriptor::Type::schubert: {
            if (s.space.type != SpaceDescriptor::Type::flag)
                throw ScenarioError("schubert mode requires a flag space");
            if (s.mode.v.size() != s.space.flag_n)
                throw ScenarioError("schubert permutation must have n entries");
            std::vector<std::size_t> zero_based;
            for (auto x : s.mode.v) {
                if (x < 1 || x > s.space.flag_n)
                    throw ScenarioError("schubert permutation entries must lie in 1..n");
                zero_based.push_back(x - 1);
            }
            try {
                Permutation check(zero_based);
            } catch (const Error&) {
                throw ScenarioError("schubert permutation is not a bijection");
            }
            break;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ValidationRecord {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunReport {
    std::string mode;
    std::optional<std::string> result; // exact rational, scalar modes only
    std::vector<std::pair<std::string, std::string>> contributions;
    std::vector<ValidationRecord> validations;

    bool all_passed() const {
        for (const auto& v : validations)
            if (!v.passed) return false;
        return true;
    }

    std::string to_text() const {
        std::string out = "mode: " + mode + "\n";
        if (result) out += "result: " + *result + "\n";
        if (!contributions.empty()) {
            out += "contributions:\n";
            for (const auto& [label, value] : contributions)
                out += "  " + label + ": " + value + "\n";
        }
        out += "validations:\n";
        for (const auto& v : validations) {
            out += std::string("  [") + (v.passed ? "ok" : "FAIL") + "] " + v.name;
            if (!v.detail.empty()) out += " (" + v.detail + ")";
            out += "\n";
        }
        return out;
    }

    Json to_json() const {
        Json j;
        j["mode"] = mode;
        if (result) j["result"] = *result;
        Json cs = Json::array();
        for (const auto& [label, value] : contributions)
            cs.push_back(Json{{"point", label}, {"value", value}});
        j["contributions"] = cs;
        Json vs = Json::array();
        for (const auto& v : validations)
            vs.push_back(Json{{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
        j["validations"] = vs;
        return j;
    }
};

struct RunOptions {
    int check_substitutions = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1; // per-point contributions; assembly stays ordered
};

namespace scenario_detail {

inline std::vector<std::string> t_names(std::size_t rank) {
    std::vector<std::string> names;
    for (std::size_t k = 1; k <= rank; ++k) names.push_back("t" + std::to_string(k));
    return names;
}

// Redundant numeric cross-check of an exact degree-0 sum: evaluate every
// summand at generic integer points and compare with the exact result.
inline void substitution_checks(RunReport& report, const std::vector<LocalizedClass>& terms,
                                const Rational& exact, std::size_t rank, const RunOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
    for (int check = 0; check < opts.check_substitutions; ++check) {
        for (int attempt = 0;; ++attempt) {
            std::vector<std::int64_t> point(rank);
            for (auto& x : point) x = dist(rng);
            bool degenerate = false;
            Rational total(0);
            for (const auto& term : terms) {
                const Rational den = term.denominator_poly().eval(point);
                if (den.is_zero()) {
                    degenerate = true;
                    break;
                }
                total += term.numerator().eval(point) / den;
            }
            if (degenerate) {
                if (attempt >= 8)
                    throw EvaluationRetryError("substitution check: denominators kept vanishing");
                continue;
            }
            std::string pt = "(";
            for (std::size_t k = 0; k < point.size(); ++k)
                pt += (k ? "," : "") + std::to_string(point[k]);
            pt += ")";
            const bool ok = total == exact;
            report.validations.push_back(
                {"substitution check " + std::to_string(check + 1) + " at t=" + pt, ok,
                 ok ? "agrees with the exact value" : "numeric disagreement"});
            if (!ok) throw NotConstantError("substitution cross-check failed");
            break;
        }
    }
}

} // namespace scenario_detail

// Executes a validated scenario. Throws the math-error family on violated
// preconditions discovered during computation.
inline RunReport run_scenario(const Scenario& s, const RunOptions& opts = {}) {
    RunReport report;
    const auto names = scenario_detail::t_names(s.torus_rank);

    std::map<std::string, std::size_t> bundle_index;
    std::vector<EquivariantBundle> bundles;
    for (const auto& [name, b] : s.bundles) {
        bundle_index[name] = bundles.size();
        bundles.push_back(scenario_detail::build_bundle(s.torus_rank, s.space, b));
    }

    ConstantValueOptions cv;
    cv.seed = opts.seed;

    switch (s.mode.type) {
        case ModeDescriptor::Type::smooth: {
            report.mode = "smooth";
            const FixedPointSpace space = scenario_detail::build_space(s.torus_rank, s.space);
            auto poly = scenario_detail::build_polynomial(s, bundle_index, bundles);
            auto res = bott_residue_detailed(space, bundles, poly, cv, opts.threads);
            report.validations.push_back({"weighted degree equals dimension", true,
                                          std::to_string(poly.weighted_degree())});
            report.validations.push_back({"degree-0 sum is an exact rational", true, ""});
            for (const auto& [label, term] : res.contributions)
                report.contributions.emplace_back(label, term.to_string(names));
            std::vector<LocalizedClass> terms;
            for (const auto& [label, term] : res.contributions) terms.push_back(term);
            scenario_detail::substitution_checks(report, terms, res.value, s.torus_rank, opts);
            report.result = res.value.to_string();
            break;
        }
        case ModeDescriptor::Type::singular: {
            report.mode = "singular";
            auto action = scenario_detail::projective_action(s.torus_rank, s.space);
            auto poly = scenario_detail::build_polynomial(s, bundle_index, bundles);
            auto gamma = scenario_detail::build_class(action, *s.mode.cls);
            auto res = singular_chern_number_detailed(action, gamma, s.mode.on_x, bundles, poly,
                                                      s.mode.dim_x, cv, opts.threads);
            report.validations.push_back({"class degree equals the codimension", true,
                                          std::to_string(action.dim() - s.mode.dim_x)});
            report.validations.push_back({"polynomial weighted degree equals dim X", true,
                                          std::to_string(poly.weighted_degree())});
            for (const auto& [label, ok] : res.vanishing_checks)
                report.validations.push_back(
                    {"class vanishes at off-X point " + label, ok, "necessary support condition"});
            report.validations.push_back({"degree-0 sum is an exact rational", true, ""});
            for (const auto& [label, term] : res.residue.contributions)
                report.contributions.emplace_back(label, term.to_string(names));
            std::vector<LocalizedClass> terms;
            for (const auto& [label, term] : res.residue.contributions) terms.push_back(term);
            scenario_detail::substitution_checks(report, terms, res.residue.value, s.torus_rank, opts);
            report.result = res.residue.value.to_string();
            break;
        }
        case ModeDescriptor::Type::localize: {
            report.mode = "localize";
            auto action = scenario_detail::projective_action(s.torus_rank, s.space);
            auto alpha = scenario_detail::build_class(action, *s.mode.cls);
            auto table = localize_class(action, alpha);
            const FixedPointSpace space = projective_fixed_points(action);
            for (std::size_t p = 0; p < space.size(); ++p)
                report.contributions.emplace_back(space.points[p].label,
                                                  table.entries[p].to_string(names));
            auto diag = verify_localization(action, alpha, table);
            report.validations.push_back({"reconstruction of the class from the table", diag.pass,
                                          diag.message});
            if (!diag.pass) throw NotConstantError("localization table failed to reconstruct");
            break;
        }
        case ModeDescriptor::Type::schubert: {
            report.mode = "schubert";
            const std::size_t n = s.space.flag_n;
            std::vector<std::size_t> zero_based;
            for (auto x : s.mode.v) zero_based.push_back(x - 1);
            const Permutation v(zero_based);
            const auto& conv = calibrated_convention(); // throws CalibrationError on failure
            report.validations.push_back({"convention calibration on S_2 and S_3", true,
                                          conv.to_string()});
            auto table = schubert_localize(n, v);
            const auto perms = all_permutations(n);
            for (std::size_t u = 0; u < perms.size(); ++u)
                report.contributions.emplace_back(perms[u].to_string(),
                                                  table.entries[u].to_string(names));
            break;
        }
    }
    return report;
}

// The worked singular-quadric scenario, bundled as the canonical example of
// the rank-raising encoding for symbolic weights.
inline Scenario quadric_demo_scenario() {
    Scenario s;
    s.torus_rank = 2;
    s.space.type = SpaceDescriptor::Type::projective;
    s.space.weights = {Character({1, 0}), Character({-1, 0}), Character({0, 0}), Character({0, 1})};

    BundleDescriptor ambient;
    ambient.type = BundleDescriptor::Type::tangent;

    BundleDescriptor plane_tangent;
    plane_tangent.type = BundleDescriptor::Type::tangent;

    BundleDescriptor projection;
    projection.type = BundleDescriptor::Type::pullback;
    projection.target = std::make_shared<SpaceDescriptor>();
    projection.target->type = SpaceDescriptor::Type::projective;
    projection.target->weights = {Character({1, 0}), Character({-1, 0}), Character({0, 1})};
    projection.point_map = {{0, 0}, {1, 1}, {3, 2}};
    projection.bundle = std::make_shared<BundleDescriptor>(plane_tangent);

    s.bundles.emplace_back("ambient_tangent", ambient);
    s.bundles.emplace_back("plane_pullback", projection);

    PolynomialTerm term;
    term.coefficient = Rational(1);
    term.factors.push_back({"plane_pullback", 1, 1});
    term.factors.push_back({"ambient_tangent", 1, 1});
    s.polynomial.push_back(term);

    s.mode.type = ModeDescriptor::Type::singular;
    ClassDescriptor cls;
    cls.type = ClassDescriptor::Type::complete_intersection;
    cls.cuts = {{2, Character({0, 0})}};
    s.mode.cls = cls;
    s.mode.on_x = {0, 1, 3};
    s.mode.dim_x = 2;
    return s;
}

} // namespace equiloc
