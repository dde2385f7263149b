#include "mvdp/report.hpp"

#include <cstdio>

namespace mvdp {

const char* tool_version() { return "1.0.0"; }

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json Json::object() {
    Json j;
    j.value_ = std::make_shared<ObjectRep>();
    return j;
}

Json Json::array() {
    Json j;
    j.value_ = std::make_shared<ArrayRep>();
    return j;
}

bool Json::is_object() const {
    return std::holds_alternative<std::shared_ptr<ObjectRep>>(value_);
}

bool Json::is_array() const {
    return std::holds_alternative<std::shared_ptr<ArrayRep>>(value_);
}

Json& Json::operator[](const std::string& key) {
    if (!is_object())
        value_ = std::make_shared<ObjectRep>();
    auto& items = std::get<std::shared_ptr<ObjectRep>>(value_)->items;
    for (auto& [k, v] : items)
        if (k == key)
            return v;
    items.emplace_back(key, Json());
    return items.back().second;
}

const Json* Json::find(const std::string& key) const {
    if (!is_object())
        return nullptr;
    const auto& items = std::get<std::shared_ptr<ObjectRep>>(value_)->items;
    for (const auto& [k, v] : items)
        if (k == key)
            return &v;
    return nullptr;
}

void Json::push_back(Json v) {
    if (!is_array())
        value_ = std::make_shared<ArrayRep>();
    std::get<std::shared_ptr<ArrayRep>>(value_)->items.push_back(std::move(v));
}

std::size_t Json::size() const {
    if (is_array())
        return std::get<std::shared_ptr<ArrayRep>>(value_)->items.size();
    if (is_object())
        return std::get<std::shared_ptr<ObjectRep>>(value_)->items.size();
    return 0;
}

namespace {

void escape_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

} // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
    const std::string pad(std::size_t(indent) * std::size_t(depth + 1), ' ');
    const std::string pad_close(std::size_t(indent) * std::size_t(depth), ' ');

    if (std::holds_alternative<std::monostate>(value_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<std::int64_t>(&value_)) {
        out += std::to_string(*i);
    } else if (auto* d = std::get_if<double>(&value_)) {
        out += format_double(*d);
    } else if (auto* s = std::get_if<std::string>(&value_)) {
        escape_string(out, *s);
    } else if (is_array()) {
        const auto& items = std::get<std::shared_ptr<ArrayRep>>(value_)->items;
        if (items.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < items.size(); ++i) {
            out += pad;
            items[i].dump_to(out, indent, depth + 1);
            if (i + 1 < items.size())
                out += ',';
            out += '\n';
        }
        out += pad_close + "]";
    } else {
        const auto& items = std::get<std::shared_ptr<ObjectRep>>(value_)->items;
        if (items.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        for (std::size_t i = 0; i < items.size(); ++i) {
            out += pad;
            escape_string(out, items[i].first);
            out += ": ";
            items[i].second.dump_to(out, indent, depth + 1);
            if (i + 1 < items.size())
                out += ',';
            out += '\n';
        }
        out += pad_close + "}";
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    return out;
}

Json json_state(const State& s) {
    Json j = Json::object();
    j["x"] = s.x;
    j["y"] = s.y;
    return j;
}

Json json_spectral(const SpectralData& ev) {
    auto one = [](const std::complex<double>& l) {
        Json j = Json::object();
        j["re"] = l.real();
        j["im"] = l.imag();
        return j;
    };
    Json j = Json::object();
    j["lambda1"] = one(ev.lambda1);
    j["lambda2"] = one(ev.lambda2);
    return j;
}

Json json_index(const GradedIndex& g) {
    Json j = Json::object();
    j["0"] = g.ranks[0];
    j["1"] = g.ranks[1];
    j["2"] = g.ranks[2];
    return j;
}

Json json_equilibrium_report(const SystemParams& p, EquilibriumId id) {
    const auto [ev, cls] = classify(p, id);
    Json j = Json::object();
    j["id"] = to_string(id);
    j["location"] = json_state(equilibrium(p, id));
    j["eigenvalues"] = json_spectral(ev);
    j["stability"] = to_string(cls.kind);
    if (cls.kind == Stability::Degenerate)
        j["degeneracy"] = cls.degeneracy;
    if (cls.kind == Stability::Sink || cls.kind == Stability::Source ||
        cls.kind == Stability::Saddle)
        j["conley_index"] = json_index(conley_index_of(cls));
    else
        j["conley_index"] = Json();
    return j;
}

Json json_bracket(const BifurcationBracket& b) {
    Json j = Json::object();
    j["kind"] = to_string(b.kind);
    j["theta_lo"] = b.theta_lo;
    j["theta_hi"] = b.theta_hi;
    j["gap_lo"] = b.gap_lo;
    j["gap_hi"] = b.gap_hi;
    j["refined_theta"] = b.refined_theta;
    return j;
}

Json json_map(const GradedZ2Map& m) {
    Json j = Json::object();
    j["degree"] = m.degree();
    Json rows = Json::array();
    for (const auto& v : m.target_basis())
        rows.push_back(m.target().basis_label(v));
    Json cols = Json::array();
    for (const auto& v : m.source_basis())
        cols.push_back(m.source().basis_label(v));
    j["rows"] = rows;
    j["cols"] = cols;
    Json entries = Json::array();
    for (const auto& e : m.entries()) {
        Json je = Json::object();
        je["target"] = e.target;
        je["source"] = e.source;
        je["q"] = e.q;
        entries.push_back(je);
    }
    j["entries"] = entries;
    j["text"] = m.to_text();
    return j;
}

Json json_validation(const ValidationReport& r) {
    Json j = Json::object();
    j["valid"] = r.valid;
    Json v = Json::array();
    for (const auto& s : r.violations)
        v.push_back(s);
    j["violations"] = v;
    Json ih = Json::array();
    for (const auto& [labels, g] : r.interval_homology) {
        Json e = Json::object();
        Json ls = Json::array();
        for (const auto& l : labels)
            ls.push_back(l);
        e["interval"] = ls;
        e["homology"] = json_index(g);
        ih.push_back(e);
    }
    j["interval_homology"] = ih;
    return j;
}

Json json_certificate(const Certificate& c) {
    Json j = Json::object();
    j["kind"] = c.kind == Certificate::Kind::Heteroclinic ? "heteroclinic"
                                                          : "generalized-homoclinic";
    if (c.kind == Certificate::Kind::Heteroclinic) {
        j["source"] = c.source;
        j["target"] = c.target;
    } else {
        j["morse_set"] = c.morse_set;
    }
    if (c.theta_bracket) {
        j["theta_lo"] = c.theta_bracket->first;
        j["theta_hi"] = c.theta_bracket->second;
    }
    j["text"] = c.text();
    return j;
}

Json make_bundle(Json config) {
    Json j = Json::object();
    Json tool = Json::object();
    tool["name"] = "mvdp";
    tool["version"] = tool_version();
    j["tool"] = tool;
    j["config"] = std::move(config);
    return j;
}

} // namespace mvdp
