#pragma once

#include <json.hpp>

#include "lcflow/boosting.hpp"
#include "lcflow/cover.hpp"
#include "lcflow/cuts.hpp"
#include "lcflow/flow.hpp"
#include "lcflow/maxflow.hpp"

namespace lcf {

using Json = nlohmann::ordered_json;

// All rationals serialize as "p/q" strings, never floats.
Json flow_to_json(const MultiFlow& f, const Graph& g);
Json stats_to_json(const FlowStats& s);
Json maxflow_to_json(const MaxflowResult& r, const Graph& g);
Json cover_to_json(const NeighborhoodCover& nc);
Json union_report_to_json(const UnionWitnessReport& r);
Json mincost_to_json(const MincostResult& r, const Graph& g);

// Witness bundle: cuts + demands + sparsities.
Json witness_to_json(const CutSequenceWitness& w);
CutSequenceWitness witness_from_json(const Json& j, const Graph& g);

// Cut file lines: "c <vertex-id> <numerator>/<h_C>".
std::string write_cut(const MovingCut& c);
MovingCut parse_cut(std::istream& in, const Graph& g);

}  // namespace lcf
