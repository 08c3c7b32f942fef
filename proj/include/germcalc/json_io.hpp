#pragma once

#include <string>

#include <json.hpp>

#include "germcalc/blowup.hpp"
#include "germcalc/implicit_systems.hpp"
#include "germcalc/jet.hpp"

namespace germcalc {

using nlohmann::json;

/// Wire formats. All rationals are "num/den" strings in lowest terms with a
/// positive denominator, so serialize(parse(x)) is byte-identical on
/// canonical documents.
///
/// Jet:      {"dim":n,"order":k,"base":[["p/q","p/q"],...],
///            "coeffs":[{"alpha":[...],"re":"p/q","im":"p/q"},...]}
/// System:   {"size":n,"vars":d+n,"components":[[MONO,...],...]} with
///           MONO = {"xexp":[...],"yexp":[...],"coeff":{"re":..,"im":..}}
/// Solution: {"base_dim":d,"jets":[JET,...]} where the first d jets are the
///           coordinate germs.
/// Chart:    {"lambda":"p/q+r/s i"} or {"lambda":"inf"}

json jet_to_json(const Jet& jet);
Jet jet_from_json(const json& j);

json system_to_json(const ImplicitSystem& sys);
ImplicitSystem system_from_json(const json& j);

json solution_to_json(const ImplicitSolution& sol);
ImplicitSolution solution_from_json(const json& j);

json chart_to_json(const Chart& chart);
Chart chart_from_json(const json& j);

/// Deterministic rendering (keys sorted, fixed indentation).
std::string canonical_dump(const json& j);

json parse_json_text(const std::string& text);
json load_json_file(const std::string& path);

}  // namespace germcalc
