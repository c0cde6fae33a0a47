#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "relspec/banded.hpp"
#include "relspec/relation.hpp"
#include "relspec/spectra.hpp"

namespace relspec::io {

using json = nlohmann::json;

/// {"dim_x", "dim_y", "kind": "operator"|"pencil"|"graph", "data"}; complex
/// entries are [re, im]. Operator data is the row list of the matrix, pencil
/// data is [A_rows, B_rows], graph data is a list of generator vectors.
Relation relation_from_json(const json& j, double tol = default_tol());
/// Serializes as kind "graph" with the orthonormal frame as generators.
json relation_to_json(const Relation& t);

/// {"space", "symbol": {"k": [re, im]} or {"num": …, "den": …},
///  "perturbation": [{"u", "v"}], "mv_part", "domain_annihilator"};
/// sparse vectors are lists of [index, re, im].
BandedModel model_from_json(const json& j);
json model_to_json(const BandedModel& m);

json fredholm_to_json(const FredholmData& f);
json spectrum_to_json(const Spectrum& s);
json complex_to_json(cplx z);

/// Header re,im,on_curve,winding,component_id,sigma,e1,e2,e2prime,e3,e4,e5;
/// coordinates with %.17g, flags as 0/1.
std::string grid_csv(const RegionGrid& g);
/// Component table sorted by id, plus grid metadata and detected eigenvalues.
json grid_summary(const RegionGrid& g);

/// "1", "-2.5", "0.5+1i", "-1i", "3-0.25i".
cplx parse_complex(const std::string& text);
/// Comma-separated complex numbers.
std::vector<cplx> parse_complex_list(const std::string& text);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Deterministic rendering: sorted keys, two-space indent, round-trip numbers.
std::string dump(const json& j);

}  // namespace relspec::io
