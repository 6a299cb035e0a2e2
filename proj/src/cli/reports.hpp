#pragma once

#include <json.hpp>
#include <string_view>
#include <vector>

#include "tame/base_r.hpp"
#include "tame/classify.hpp"
#include "tame/diff_ops.hpp"
#include "tame/field_synth.hpp"
#include "tame/seqsets.hpp"

namespace tame::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Interval& i);
Json to_json(const SmoothnessCertificate& c);
Json to_json(const ConvexityResult& c);
Json to_json(const RepetitionWitness& w);
Json to_json(const AffineRegions& a);
Json to_json(const TrichotomyReport& t);
Json to_json(const NormalizationProvenance& p);
Json to_json(const AxiomReport& a);
Json to_json(const DimensionReport& d);
Json to_json(const DecayFit& d);
Json to_json(const OmegaOrder& o);
Json to_json(const DigitWord& w);
Json to_json(const TrendReport& t);
Json to_json(const RvaResult& r);
Json to_json(const ModulusTable& m);

/// Automaton document {n, r, states, initial, transitions:[{from, symbol, to}], accepting_sccs}.
/// A symbol is "*" or "⋆", a digit string, or an array of digits.
Rva rva_from_json(const Json& doc);

/// Rows of numeric CSV; a first line that does not parse is taken as a header.
std::vector<std::vector<double>> read_numeric_csv(std::string_view text);

}  // namespace tame::cli
