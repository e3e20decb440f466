#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "twistaff/module.hpp"
#include "twistaff/quotient.hpp"

namespace twistaff {

// Parsed run configuration. The document keeps the TOML tables as JSON with
// every number as an exact string; command-line overrides sit beside it.
struct RunConfig {
    nlohmann::json doc = nlohmann::json::object();
    std::string source = "<config>";
    std::optional<Degree> cutoff;
    std::optional<long> window;
    unsigned long seed = 7;
    bool timing = false;

    long affine_window() const { return window.value_or(3); }
    long module_window() const { return window.value_or(2); }
    bool has_module() const { return doc.contains("module"); }
    bool has_quotient() const { return doc.contains("quotient"); }
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// validate = false keeps a broken table so the lie suite can report on it
LieAlgebra build_algebra(const RunConfig& cfg, bool validate = true);
TauMatrix build_automorphism_tau(const LieAlgebra& L, const RunConfig& cfg);
AutomorphismData build_automorphism(const LieAlgebra& L, const RunConfig& cfg);
ContextPtr build_context(const RunConfig& cfg);
ModuleSpec build_module_spec(const TwistedContext& ctx, const RunConfig& cfg);
ModulePtr build_module(const ContextPtr& ctx, const RunConfig& cfg);
NullFieldSpec build_null_field(const TwistedContext& ctx, const RunConfig& cfg, const Scalar& level);
Degree quotient_margin(const RunConfig& cfg);

}  // namespace twistaff
