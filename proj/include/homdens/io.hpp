#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "homdens/certify.hpp"
#include "homdens/graph.hpp"
#include "homdens/kernel.hpp"
#include "homdens/verify.hpp"

namespace homdens {

using json = nlohmann::ordered_json;

/// Parses JSON text; parse failures rethrow as std::invalid_argument with
/// the position carried through from the parser.
json parse_json(const std::string& text);
json parse_json_file(const std::string& path);

// Readers validate shape and ranges; messages carry the offending field.
Graph read_graph(const json& j);
BipartiteGraph read_bipartite(const json& j);
Hypergraph read_hypergraph(const json& j);
StepKernel read_step_kernel(const json& j);
RectKernel read_rect_kernel(const json& j);
Certificate read_certificate(const json& j);

json write_graph(const Graph& g);
json write_bipartite(const BipartiteGraph& h);
json write_hypergraph(const Hypergraph& g);
json write_step_kernel(const StepKernel& g);
json write_rect_kernel(const RectKernel& h);
json write_certificate(const Certificate& c);
json write_density_result(const DensityResult& r);
json write_report(const VerificationReport& r);

/// Square, header-free, comma-separated matrix.
Eigen::MatrixXd read_matrix_csv(std::istream& in);

/// One row per recorded instance; deterministic %.17g float formatting.
std::string report_csv(const VerificationReport& r,
                       const std::vector<std::pair<long, MarginRecord>>& records);

std::string format_double(double value, int significant = 17);

}  // namespace homdens
