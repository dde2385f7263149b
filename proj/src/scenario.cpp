#include "mvdp/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace mvdp {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct RawDecomposition {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::string, GradedIndex> index;
    std::map<std::string, std::string> labels;
    std::vector<std::tuple<std::string, std::string, int>> delta; // source, target, q
};

GradedIndex parse_index_entry(const std::string& entry, int line) {
    GradedIndex g;
    std::istringstream is(entry);
    std::string part;
    while (std::getline(is, part, ',')) {
        part = trim(part);
        if (part.empty())
            throw ScenarioParseError(line, "empty degree in index entry '" + entry + "'");
        if (part.size() != 1 || part[0] < '0' || part[0] > '2')
            throw ScenarioParseError(line, "index degree must be 0, 1 or 2, got '" + part + "'");
        g.ranks[std::size_t(part[0] - '0')] = 1;
    }
    return g;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    std::istringstream is(text);
    std::string raw_line;
    int lineno = 0;
    std::string section;
    std::string name = "scenario";
    RawDecomposition decomp[2];
    std::vector<TransitionConstraint> constraints;
    std::optional<std::pair<double, double>> bracket;

    auto scope_of = [&](std::vector<std::string>& toks, int line) -> RawDecomposition& {
        if (toks.empty())
            throw ScenarioParseError(line, "missing scope");
        const std::string scope = toks.front();
        toks.erase(toks.begin());
        if (scope == "before")
            return decomp[0];
        if (scope == "after")
            return decomp[1];
        throw ScenarioParseError(line, "scope must be 'before' or 'after', got '" + scope + "'");
    };

    while (std::getline(is, raw_line)) {
        ++lineno;
        std::string line = trim(raw_line);
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ScenarioParseError(lineno, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }

        auto toks = split_ws(line);
        if (section.empty()) {
            if (toks.size() == 2 && toks[0] == "name") {
                name = toks[1];
                continue;
            }
            throw ScenarioParseError(lineno, "content before any section");
        }

        if (section == "elements") {
            auto& d = scope_of(toks, lineno);
            for (const auto& t : toks)
                d.elements.push_back(t);
        } else if (section == "order") {
            auto& d = scope_of(toks, lineno);
            for (const auto& t : toks) {
                const auto lt = t.find('<');
                if (lt == std::string::npos || lt == 0 || lt + 1 >= t.size())
                    throw ScenarioParseError(lineno, "order entries look like a<b, got '" + t + "'");
                d.order.emplace_back(t.substr(0, lt), t.substr(lt + 1));
            }
        } else if (section == "index") {
            auto& d = scope_of(toks, lineno);
            for (const auto& t : toks) {
                const auto colon = t.find(':');
                if (colon == std::string::npos)
                    throw ScenarioParseError(lineno, "index entries look like elem:q[,q], got '" + t + "'");
                d.index[t.substr(0, colon)] = parse_index_entry(t.substr(colon + 1), lineno);
            }
        } else if (section == "labels") {
            auto& d = scope_of(toks, lineno);
            if (toks.size() < 2)
                throw ScenarioParseError(lineno, "label lines look like: <scope> <elem> <text>");
            std::string text_rest;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (i > 1)
                    text_rest += ' ';
                text_rest += toks[i];
            }
            d.labels[toks[0]] = text_rest;
        } else if (section == "delta") {
            auto& d = scope_of(toks, lineno);
            for (const auto& t : toks) {
                // source->target:q
                const auto arrow = t.find("->");
                const auto colon = t.rfind(':');
                if (arrow == std::string::npos || colon == std::string::npos || colon < arrow)
                    throw ScenarioParseError(lineno,
                                             "delta entries look like src->tgt:q, got '" + t + "'");
                const std::string src = t.substr(0, arrow);
                const std::string tgt = t.substr(arrow + 2, colon - arrow - 2);
                int q = 0;
                try {
                    q = std::stoi(t.substr(colon + 1));
                } catch (...) {
                    throw ScenarioParseError(lineno, "bad degree in '" + t + "'");
                }
                d.delta.emplace_back(src, tgt, q);
            }
        } else if (section == "constraints") {
            // iso t,s:q | iso t:q | zero ...
            if (toks.size() != 2)
                throw ScenarioParseError(lineno, "constraint lines look like: iso|zero entry:q");
            TransitionConstraint c;
            if (toks[0] == "iso")
                c.kind = TransitionConstraint::Kind::Iso;
            else if (toks[0] == "zero")
                c.kind = TransitionConstraint::Kind::Zero;
            else
                throw ScenarioParseError(lineno, "constraint kind must be iso or zero");
            const std::string& t = toks[1];
            const auto colon = t.rfind(':');
            if (colon == std::string::npos)
                throw ScenarioParseError(lineno, "constraint entry looks like t[,s]:q");
            try {
                c.q = std::stoi(t.substr(colon + 1));
            } catch (...) {
                throw ScenarioParseError(lineno, "bad degree in '" + t + "'");
            }
            const std::string pair = t.substr(0, colon);
            const auto comma = pair.find(',');
            if (comma == std::string::npos) {
                c.target = c.source = pair;
            } else {
                c.target = pair.substr(0, comma);
                c.source = pair.substr(comma + 1);
            }
            constraints.push_back(std::move(c));
        } else if (section == "bracket") {
            if (toks.size() != 2)
                throw ScenarioParseError(lineno, "bracket line looks like: <theta_lo> <theta_hi>");
            try {
                bracket = std::make_pair(std::stod(toks[0]), std::stod(toks[1]));
            } catch (...) {
                throw ScenarioParseError(lineno, "bad number in bracket");
            }
        } else {
            throw ScenarioParseError(lineno, "unknown section [" + section + "]");
        }
    }

    for (int i = 0; i < 2; ++i)
        if (decomp[i].elements.empty())
            throw ScenarioParseError(lineno, std::string("missing [elements] for '") +
                                                 (i == 0 ? "before" : "after") + "'");

    auto build = [&](const RawDecomposition& raw) {
        Poset poset = Poset::make(raw.elements, raw.order);
        return MorseDecomposition::make(std::move(poset), raw.index, raw.labels);
    };

    Scenario s{name,
               build(decomp[0]),
               build(decomp[1]),
               GradedZ2Map::connection(build(decomp[0])),
               GradedZ2Map::connection(build(decomp[1])),
               std::move(constraints),
               bracket};
    for (const auto& [src, tgt, q] : decomp[0].delta)
        s.delta_before.set(tgt, src, q, true);
    for (const auto& [src, tgt, q] : decomp[1].delta)
        s.delta_after.set(tgt, src, q, true);
    return s;
}

ScenarioResult run_scenario(const Scenario& s) {
    ScenarioResult r;
    r.before_report = validate_connection_matrix(s.delta_before, s.before);
    r.after_report = validate_connection_matrix(s.delta_after, s.after);
    r.transition =
        solve_transition_matrices(s.delta_before, s.delta_after, s.before, s.after, s.constraints);
    r.certificates = infer_bifurcation(r.transition.forced, s.before, s.after, s.theta_bracket);
    return r;
}

const std::map<std::string, std::string>& scenario_presets() {
    static const std::map<std::string, std::string> presets = {
        {"example4.1", R"(name example4.1
# saddle loop around the origin destroys the cycle: d=0.5, e=2
[elements]
before 1 2 3 pi
after 1 2 3
[order]
before 1<2 pi<2 pi<3
after 1<2 2<3
[index]
before 1:0 2:1 3:2 pi:0,1
after 1:0 2:1 3:2
[labels]
before 1 sink (-2,0)
before 2 saddle (-0.5,0)
before 3 source (0,0)
before pi stable cycle around (0,0)
after 1 sink (-2,0)
after 2 saddle (-0.5,0)
after 3 source (0,0)
[delta]
before 2->1:1 2->pi:1 3->pi:2
after 3->2:2
[constraints]
iso 1:0
iso 3:2
[bracket]
0.02 0.04
)"},
        {"example4.2-het1", R"(name example4.2-het1
# upper-half-plane saddle connection: d=-1, e=2
[elements]
before 1 2 3
after 1 2 3
[order]
before 1<2 1<3
after 1<2
[index]
before 1:0 2:1 3:1
after 1:0 2:1 3:1
[labels]
before 1 sink (0,0)
before 2 saddle (1,0)
before 3 saddle (-2,0)
after 1 sink (0,0)
after 2 saddle (1,0)
after 3 saddle (-2,0)
[delta]
before 2->1:1 3->1:1
after 2->1:1
[constraints]
iso 1:0
iso 2:1
iso 3:1
[bracket]
-0.2 -0.05
)"},
        {"example4.2-hom", R"(name example4.2-hom
# saddle loop around the origin destroys the cycle: d=-1, e=2
[elements]
before 1 2 3 pi
after 1 2 3
[order]
before pi<1 pi<3
after 1<3
[index]
before 1:1 2:1 3:2 pi:0,1
after 1:1 2:1 3:2
[labels]
before 1 saddle (1,0)
before 2 saddle (-2,0)
before 3 source (0,0)
before pi stable cycle around (0,0)
after 1 saddle (1,0)
after 2 saddle (-2,0)
after 3 source (0,0)
[delta]
before 1->pi:1 3->pi:2
after 3->1:2
[constraints]
iso 2:1
iso 3:2
[bracket]
0.1 0.2
)"},
        {"example4.2-het2", R"(name example4.2-het2
# lower-half-plane saddle connection: d=-1, e=2
[elements]
before 1 2 3
after 1 2 3
[order]
before 2<3
after 1<3 2<3
[index]
before 1:1 2:1 3:2
after 1:1 2:1 3:2
[labels]
before 1 saddle (-2,0)
before 2 saddle (1,0)
before 3 source (0,0)
after 1 saddle (-2,0)
after 2 saddle (1,0)
after 3 source (0,0)
[delta]
before 3->2:2
after 3->1:2 3->2:2
[constraints]
iso 1:1
iso 2:1
iso 3:2
[bracket]
1.1 1.2
)"},
    };
    return presets;
}

} // namespace mvdp
