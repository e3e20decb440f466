#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twistaff/quotient.hpp"

namespace twistaff {

enum class Format { tsv, json };
Format parse_format(const std::string& s);

std::string render_report(const Report& r, Format f, bool timing);
std::string render_character(const std::vector<std::pair<Degree, size_t>>& rows, Format f,
                             const std::string& kind, const Degree& cutoff);
std::string render_decomposition(const TwistedContext& ctx, Format f);
std::string render_module_summary(const Module& m, Format f);
std::string render_twist_weights(const Module& m, Format f);

}  // namespace twistaff
