// Copyright 2026 The Refuel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON instance and solution documents, the results CSV, and a seeded
// Euclidean instance generator.

#ifndef REFUEL_INSTANCE_IO_HPP_
#define REFUEL_INSTANCE_IO_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "refuel/network.hpp"

namespace refuel {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using Json = nlohmann::json;

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(path + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline double number(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number()) throw ParseError(path + "." + key + ": expected a number");
  return v.get<double>();
}

inline double nonnegative(const Json& obj, const char* key, const std::string& path) {
  const double v = number(obj, key, path);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ParseError(path + "." + key + ": must be finite and >= 0");
  }
  return v;
}

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace detail

// Parses the instance document. Errors name the offending field.
inline Instance parse_instance(const std::string& text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected an object");
  Instance inst;
  const Json& ranges = detail::field(doc, "ranges", "document");
  inst.ranges.r_max = detail::number(ranges, "r_max", "ranges");
  inst.ranges.rho_orig = detail::number(ranges, "rho_orig", "ranges");
  inst.ranges.rho_dest = detail::number(ranges, "rho_dest", "ranges");
  try {
    inst.ranges.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("ranges: ") + e.what());
  }

  const Json& nodes = detail::field(doc, "nodes", "document");
  if (!nodes.is_array()) throw ParseError("nodes: expected an array");
  std::vector<Node> node_list;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    const Json& n = nodes[i];
    const Json& id = detail::field(n, "id", path);
    if (!id.is_number_integer()) throw ParseError(path + ".id: expected an integer");
    const Json& role = detail::field(n, "role", path);
    if (!role.is_string() || (role != "terminal" && role != "station")) {
      throw ParseError(path + ".role: expected \"terminal\" or \"station\"");
    }
    const bool station = role == "station";
    node_list.push_back({id.get<std::int64_t>(), station ? NodeRole::station : NodeRole::terminal});
    double cost = 0.0;
    double capacity = kInfinity;
    if (n.contains("cost")) cost = detail::nonnegative(n, "cost", path);
    if (n.contains("capacity") && !n.at("capacity").is_null()) {
      const Json& c = n.at("capacity");
      if (!c.is_number() || !(c.get<double>() >= 0.0)) {
        throw ParseError(path + ".capacity: must be >= 0 or null");
      }
      capacity = c.get<double>();
    }
    inst.cost.push_back(station ? cost : 0.0);
    inst.capacity.push_back(capacity);
  }
  std::unordered_map<std::int64_t, NodeIndex> index;
  for (std::size_t i = 0; i < node_list.size(); ++i) {
    if (!index.emplace(node_list[i].id, static_cast<NodeIndex>(i)).second) {
      throw ParseError("nodes[" + std::to_string(i) + "].id: duplicate id " +
                       std::to_string(node_list[i].id));
    }
  }
  auto resolve = [&](const Json& obj, const char* key, const std::string& path) {
    const Json& v = detail::field(obj, key, path);
    if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected a node id");
    auto it = index.find(v.get<std::int64_t>());
    if (it == index.end()) {
      throw ParseError(path + "." + key + ": unknown node id " + v.dump());
    }
    return it->second;
  };

  const Json& arcs = detail::field(doc, "arcs", "document");
  if (!arcs.is_array()) throw ParseError("arcs: expected an array");
  std::vector<Arc> arc_list;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string path = "arcs[" + std::to_string(i) + "]";
    const Json& a = arcs[i];
    arc_list.push_back({resolve(a, "tail", path), resolve(a, "head", path),
                        detail::nonnegative(a, "tau", path), detail::nonnegative(a, "ell", path)});
  }
  try {
    inst.graph = NetworkGraph(std::move(node_list), std::move(arc_list));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("arcs: ") + e.what());
  }

  const Json& pairs = detail::field(doc, "od_pairs", "document");
  if (!pairs.is_array()) throw ParseError("od_pairs: expected an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "od_pairs[" + std::to_string(i) + "]";
    const Json& p = pairs[i];
    OdPair pair;
    pair.origin = resolve(p, "s", path);
    pair.destination = resolve(p, "t", path);
    pair.demand = p.contains("f") ? detail::number(p, "f", path) : 1.0;
    pair.time_bound = detail::number(p, "u", path);
    if (!inst.graph.is_terminal(pair.origin)) {
      throw ParseError(path + ".s: origin must be terminal");
    }
    if (!inst.graph.is_terminal(pair.destination)) {
      throw ParseError(path + ".t: destination must be terminal");
    }
    if (!(pair.demand > 0.0)) throw ParseError(path + ".f: demand must be > 0");
    if (!(pair.time_bound > 0.0)) throw ParseError(path + ".u: time bound must be > 0");
    inst.pairs.push_back(pair);
  }
  if (doc.contains("lambda") && doc.at("lambda").is_number()) {
    inst.deviation = doc.at("lambda").get<double>();
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return inst;
}

inline std::string write_instance(const Instance& inst) {
  using detail::Json;
  Json doc;
  doc["ranges"] = {{"r_max", inst.ranges.r_max},
                   {"rho_orig", inst.ranges.rho_orig},
                   {"rho_dest", inst.ranges.rho_dest}};
  doc["lambda"] = inst.deviation;
  Json nodes = Json::array();
  for (NodeIndex v = 0; v < inst.graph.node_count(); ++v) {
    const Node& n = inst.graph.node(v);
    Json j = {{"id", n.id}, {"role", n.role == NodeRole::station ? "station" : "terminal"}};
    if (n.role == NodeRole::station) {
      j["cost"] = inst.cost[v];
      j["capacity"] = std::isfinite(inst.capacity[v]) ? Json(inst.capacity[v]) : Json(nullptr);
    }
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  Json arcs = Json::array();
  for (const Arc& a : inst.graph.arcs()) {
    arcs.push_back({{"tail", inst.graph.node(a.tail).id},
                    {"head", inst.graph.node(a.head).id},
                    {"tau", a.tau},
                    {"ell", a.ell}});
  }
  doc["arcs"] = std::move(arcs);
  Json pairs = Json::array();
  for (const OdPair& p : inst.pairs) {
    pairs.push_back({{"s", inst.graph.node(p.origin).id},
                     {"t", inst.graph.node(p.destination).id},
                     {"f", p.demand},
                     {"u", p.time_bound}});
  }
  doc["od_pairs"] = std::move(pairs);
  return doc.dump(1);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline Instance load_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

// u_q = (1 + lambda) T_q for every pair.
inline Instance compute_time_bounds(Instance inst, double lambda,
                                    const std::vector<double>& conventional) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (conventional.size() != inst.pairs.size()) {
    throw std::invalid_argument("one conventional time per pair required");
  }
  for (std::size_t q = 0; q < inst.pairs.size(); ++q) {
    if (!(conventional[q] > 0.0)) {
      throw std::invalid_argument("conventional time must be > 0");
    }
    inst.pairs[q].time_bound = (1.0 + lambda) * conventional[q];
  }
  inst.deviation = lambda;
  return inst;
}

// Shortest transit time per pair over the whole graph, any intermediate
// node allowed and no range restriction beyond the arcs present.
inline std::vector<double> conventional_times(const Instance& inst) {
  std::vector<double> out;
  for (const OdPair& p : inst.pairs) {
    const auto dist = detail::network_dijkstra(
        inst.graph, p.origin, true, [](NodeIndex) { return true; }, -1, -1);
    out.push_back(dist[p.destination]);
  }
  return out;
}

// ---- solution documents and results rows ----

inline std::string write_solution(const Instance& inst, const Solution& sol) {
  using detail::Json;
  Json doc;
  doc["objective"] = sol.objective;
  Json open = Json::array();
  for (NodeIndex v : sol.open) open.push_back(inst.graph.node(v).id);
  doc["open"] = std::move(open);
  Json routes = Json::object();
  for (std::size_t q = 0; q < sol.routes.size(); ++q) {
    Json r = Json::array();
    for (NodeIndex v : sol.routes[q]) r.push_back(inst.graph.node(v).id);
    routes[std::to_string(q)] = std::move(r);
  }
  doc["routes"] = std::move(routes);
  Json util = Json::object();
  for (NodeIndex v : sol.open) {
    const double cap = inst.capacity[v];
    util[std::to_string(inst.graph.node(v).id)] =
        std::isfinite(cap) && cap > 0.0 ? sol.load[v] / cap : 0.0;
  }
  doc["utilization"] = std::move(util);
  return doc.dump(1);
}

inline constexpr const char* kResultsHeader =
    "formulation,lambda,kappa,time_s,obj,nodes,gap_pct,utilization_pct";

struct ResultsRow {
  std::string formulation;
  double lambda = 0.0;
  double kappa = kInfinity;
  double time_s = 0.0;
  bool feasible = false;  // false prints "---" markers
  double objective = 0.0;
  std::int64_t nodes = 0;
  double gap_pct = 0.0;
  double utilization_pct = 0.0;
};

inline std::string format_results_row(const ResultsRow& r) {
  std::ostringstream os;
  os << r.formulation << ',' << detail::format_number(r.lambda) << ','
     << detail::format_number(r.kappa) << ',' << std::fixed << std::setprecision(3)
     << r.time_s << ',';
  os.unsetf(std::ios::floatfield);
  if (r.feasible) {
    os << detail::format_number(r.objective) << ',' << r.nodes << ',' << std::fixed
       << std::setprecision(2) << r.gap_pct << ',' << r.utilization_pct;
  } else {
    os << "---," << r.nodes << ",---,---";
  }
  return os.str();
}

// ---- generator ----

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int stations = 12;
  int terminals = 6;
  int pairs = 8;
  double width = 1000.0;
  double height = 1000.0;
  double speed = 1.0;
  double r_max = 400.0;
  double lambda = 0.1;
  double kappa = kInfinity;
  double demand = 1.0;
  std::array<double, 3> mix = {0.7, 0.2, 0.1};  // short, medium, long
  double full_refuel_time = 0.0;                // 0 disables the surcharge
};

namespace detail {

// Platform independent stream: 53-bit doubles from mt19937_64.
class GeneratorRng {
 public:
  explicit GeneratorRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

inline Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.stations <= 0) throw std::invalid_argument("generator: station count must be > 0");
  if (cfg.terminals < 2) throw std::invalid_argument("generator: need at least 2 terminals");
  if (cfg.pairs < 0 || !(cfg.lambda >= 0.0) || !(cfg.speed > 0.0) || !(cfg.r_max > 0.0) ||
      !(cfg.demand > 0.0) || !(cfg.kappa >= 0.0)) {
    throw std::invalid_argument("generator: invalid configuration");
  }
  detail::GeneratorRng rng(cfg.seed);
  const int n = cfg.terminals + cfg.stations;
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (int v = 0; v < n; ++v) {
    xs[v] = rng.uniform() * cfg.width;
    ys[v] = rng.uniform() * cfg.height;
  }
  std::vector<Node> nodes;
  for (int v = 0; v < n; ++v) {
    nodes.push_back({v, v < cfg.terminals ? NodeRole::terminal : NodeRole::station});
  }
  auto dist = [&](int u, int v) { return std::hypot(xs[u] - xs[v], ys[u] - ys[v]); };
  std::vector<Arc> connections;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const double ell = dist(u, v);
      connections.push_back({u, v, ell / cfg.speed, ell});
    }
  }
  Instance inst;
  inst.ranges = RangeParams::half_capacity(cfg.r_max);
  inst.graph = build_expanded_graph(nodes, connections, inst.ranges);
  if (cfg.full_refuel_time > 0.0) {
    inst.graph = apply_refuel_surcharge(inst.graph, cfg.full_refuel_time, cfg.r_max);
  }
  inst.cost.assign(n, 0.0);
  inst.capacity.assign(n, kInfinity);
  for (int v = cfg.terminals; v < n; ++v) {
    inst.cost[v] = 1.0;
    inst.capacity[v] = cfg.kappa;
  }
  inst.deviation = cfg.lambda;

  // Candidate ordered terminal pairs split into distance terciles.
  struct Candidate {
    int s;
    int t;
    double d;
  };
  std::vector<Candidate> all;
  for (int s = 0; s < cfg.terminals; ++s) {
    for (int t = 0; t < cfg.terminals; ++t) {
      if (s != t) all.push_back({s, t, dist(s, t)});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& b) { return a.d < b.d; });
  std::array<std::vector<Candidate>, 3> classes;
  for (std::size_t i = 0; i < all.size(); ++i) classes[i * 3 / all.size()].push_back(all[i]);
  const double weight_sum = cfg.mix[0] + cfg.mix[1] + cfg.mix[2];
  while (static_cast<int>(inst.pairs.size()) < cfg.pairs) {
    std::size_t remaining = 0;
    for (const auto& c : classes) remaining += c.size();
    if (remaining == 0) break;
    const double r = rng.uniform() * weight_sum;
    std::size_t k = r < cfg.mix[0] ? 0 : (r < cfg.mix[0] + cfg.mix[1] ? 1 : 2);
    while (classes[k].empty()) k = (k + 1) % 3;
    const std::size_t pick = rng.index(classes[k].size());
    const Candidate c = classes[k][pick];
    classes[k].erase(classes[k].begin() + static_cast<std::ptrdiff_t>(pick));
    const double conventional = c.d / cfg.speed;
    if (!(conventional > 0.0)) continue;
    OdPair pair{c.s, c.t, cfg.demand, (1.0 + cfg.lambda) * conventional};
    if (build_od_subgraph(inst.graph, pair, 0).empty()) continue;
    inst.pairs.push_back(pair);
  }
  inst.validate();
  return inst;
}

}  // namespace refuel

#endif  // REFUEL_INSTANCE_IO_HPP_
