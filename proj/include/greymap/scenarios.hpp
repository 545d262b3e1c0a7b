#pragma once

#include "greymap/engine.hpp"
#include "greymap/grey.hpp"
#include "greymap/matrix.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace greymap {

enum class ScenarioId { Web, WebCase1, WebCase2, Civil, CivilCase1, CivilCase2 };

inline constexpr std::array kAllScenarios{ScenarioId::Web,   ScenarioId::WebCase1,   ScenarioId::WebCase2,
                                          ScenarioId::Civil, ScenarioId::CivilCase1, ScenarioId::CivilCase2};

// "web", "web-case1", "web-case2", "civil", "civil-case1", "civil-case2"
std::string_view to_string(ScenarioId id);
ScenarioId parse_scenario(std::string_view text);

// Greyness half-width used by the built-in maps.
inline constexpr double kBuiltinGreyness = 0.01;

// The crisp matrices the built-in maps start from. Row i lists the weights
// feeding node i.
Matrix<double> web_crisp_weights();
Matrix<double> civil_crisp_weights();

Model builtin(ScenarioId id);

// Each entry becomes [w - g, w + g] clipped to the domain. Entries with
// |w| < g stay degenerate so every interval keeps the sign of its weight.
// Throws InvalidArgument unless g > 0.
Matrix<Interval> inject_greyness(const Matrix<double>& w, double g, const GreyDomain& domain);
std::vector<Interval> inject_greyness(std::span<const double> values, double g, const GreyDomain& domain);

// Model files are JSON. Weight and state entries accept a number, an
// interval [lo, hi], a union [[lo, hi], x, ...], {"intervals": [...],
// "probs": [...]} or {"kernel": k, "greyness": g}.
Model parse_model(std::string_view text);
std::string serialize_model(const Model& model);

// Throws ParseError (with line and field) on malformed input.
Model load_model(const std::filesystem::path& path);
void save_model(const Model& model, const std::filesystem::path& path);

} // namespace greymap
