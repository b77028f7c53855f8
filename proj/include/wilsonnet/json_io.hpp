#pragma once

#include <string>

#include "json.hpp"
#include "wilsonnet/diagrams.hpp"
#include "wilsonnet/graph.hpp"
#include "wilsonnet/spin_network.hpp"

// Wire formats. Graph vertices, edges and loop steps are positional and
// 0-based; permutation images and pairing points are also 0-based on the
// wire (1-based in memory).

namespace wilsonnet {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "wilsonnet/1";

Json to_json(const GroupKind& kind);
GroupKind kind_from_json(const Json& j);

Json to_json(const Complex& z);
Complex complex_from_json(const Json& j);

/// Row-major array of [re, im] pairs.
Json to_json(const GroupElement& g);
GroupElement element_from_json(const GroupKind& kind, const Json& j);

Json to_json(const Graph& graph);
Graph graph_from_json(const Json& j);

Json to_json(const Path& path);
Path path_from_json(const Json& j);

/// {"kind": ..., "graph": ..., "values": [element, ...]}
Json to_json(const Configuration& config);
Configuration configuration_from_json(const Json& j);

Json to_json(const Permutation& sigma);
Permutation permutation_from_json(const Json& j);

Json to_json(const Pairing& tau);
Pairing pairing_from_json(const Json& j);

Json to_json(const MixedSignature& signature);
MixedSignature signature_from_json(const Json& j);

Json to_json(const WilsonProduct& product);
WilsonProduct wilson_product_from_json(const Json& j);

/// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace wilsonnet
