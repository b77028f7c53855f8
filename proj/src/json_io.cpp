#include "wilsonnet/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wilsonnet {

Json to_json(const GroupKind& kind) {
  return Json{{"family", std::string(family_name(kind.family))}, {"n", kind.n}};
}

GroupKind kind_from_json(const Json& j) {
  return GroupKind(parse_family(j.at("family").get<std::string>()), j.at("n").get<int>());
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex number must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json to_json(const GroupElement& g) {
  Json out = Json::array();
  const Matrix& m = g.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  return out;
}

GroupElement element_from_json(const GroupKind& kind, const Json& j) {
  const int m = kind.matrix_dim();
  if (!j.is_array() || static_cast<int>(j.size()) != m * m)
    throw std::invalid_argument("element of " + kind.name() + " needs " + std::to_string(m * m) +
                                " entries");
  Matrix mat(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) mat(r, c) = complex_from_json(j[static_cast<std::size_t>(r * m + c)]);
  return GroupElement(kind, std::move(mat));
}

Json to_json(const Graph& graph) {
  Json edges = Json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.source, e.target});
  return Json{{"vertices", graph.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return Graph(j.at("vertices").get<int>(), std::move(edges));
}

Json to_json(const Path& path) {
  Json out = Json::array();
  for (const auto& s : path.steps) out.push_back({s.edge, s.sign});
  return out;
}

Path path_from_json(const Json& j) {
  Path p;
  for (const auto& s : j) p.steps.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
  return p;
}

Json to_json(const Configuration& config) {
  Json values = Json::array();
  for (const auto& g : config.values()) values.push_back(to_json(g));
  return Json{{"kind", to_json(config.kind())}, {"graph", to_json(config.graph())}, {"values", values}};
}

Configuration configuration_from_json(const Json& j) {
  const GroupKind kind = kind_from_json(j.at("kind"));
  std::vector<GroupElement> values;
  for (const auto& v : j.at("values")) values.push_back(element_from_json(kind, v));
  return Configuration(graph_from_json(j.at("graph")), kind, std::move(values));
}

Json to_json(const Permutation& sigma) {
  Json out = Json::array();
  for (int x : sigma.images()) out.push_back(x - 1);
  return out;
}

Permutation permutation_from_json(const Json& j) {
  std::vector<int> images;
  for (const auto& x : j) images.push_back(x.get<int>() + 1);
  return Permutation(std::move(images));
}

Json to_json(const Pairing& tau) {
  Json out = Json::array();
  for (const auto& [a, b] : tau.blocks()) out.push_back({a - 1, b - 1});
  return out;
}

Pairing pairing_from_json(const Json& j) {
  std::vector<std::pair<int, int>> blocks;
  for (const auto& b : j) blocks.emplace_back(b.at(0).get<int>() + 1, b.at(1).get<int>() + 1);
  return Pairing::from_blocks(static_cast<int>(blocks.size()), blocks);
}

Json to_json(const MixedSignature& signature) {
  Json out = Json::array();
  for (const auto& e : signature.edges()) out.push_back({e.p, e.q});
  return out;
}

MixedSignature signature_from_json(const Json& j) {
  std::vector<EdgeDegree> edges;
  for (const auto& e : j) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return MixedSignature(std::move(edges));
}

Json to_json(const WilsonProduct& product) {
  Json loops = Json::array();
  for (const auto& l : product.loops) loops.push_back(to_json(l));
  return Json{{"sign", product.sign}, {"loops", loops}};
}

WilsonProduct wilson_product_from_json(const Json& j) {
  WilsonProduct out;
  out.sign = j.at("sign").get<int>();
  for (const auto& l : j.at("loops")) out.loops.push_back(path_from_json(l));
  return out;
}

namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings.
  out += Json(s).dump();
}

void write_value(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      bool flat = j.size() <= 4;
      for (const auto& v : j) flat = flat && v.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write_value(out, j, indent, 0);
  return out;
}

}  // namespace wilsonnet
