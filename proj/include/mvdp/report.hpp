#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mvdp/conley.hpp"
#include "mvdp/connection.hpp"
#include "mvdp/limit_cycle.hpp"

namespace mvdp {

/// Order-preserving JSON value with deterministic serialization: doubles are
/// rendered with 17 significant digits so identical inputs give byte
/// identical output.
class Json {
public:
    Json() = default;
    Json(bool b) : value_(b) {}
    Json(int v) : value_(std::int64_t(v)) {}
    Json(std::int64_t v) : value_(v) {}
    Json(std::size_t v) : value_(std::int64_t(v)) {}
    Json(double v) : value_(v) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}

    static Json object();
    static Json array();

    bool is_object() const;
    bool is_array() const;

    Json& operator[](const std::string& key); // object access, inserts
    const Json* find(const std::string& key) const;
    void push_back(Json v);
    std::size_t size() const;

    std::string dump(int indent = 2) const;

private:
    struct ObjectRep {
        std::vector<std::pair<std::string, Json>> items;
    };
    struct ArrayRep {
        std::vector<Json> items;
    };
    using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string,
                               std::shared_ptr<ObjectRep>, std::shared_ptr<ArrayRep>>;
    void dump_to(std::string& out, int indent, int depth) const;

    Value value_;
};

std::string format_double(double v); // %.17g

/// Version string reported in every bundle.
const char* tool_version();

Json json_state(const State& s);
Json json_spectral(const SpectralData& ev);
Json json_index(const GradedIndex& g);
Json json_equilibrium_report(const SystemParams& p, EquilibriumId id);
Json json_bracket(const BifurcationBracket& b);
Json json_map(const GradedZ2Map& m);
Json json_validation(const ValidationReport& r);
Json json_certificate(const Certificate& c);

/// Bundle skeleton: tool block plus the echoed effective config.
Json make_bundle(Json config);

} // namespace mvdp
