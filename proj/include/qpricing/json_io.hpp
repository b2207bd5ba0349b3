#pragma once

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "qpricing/core.hpp"
#include "qpricing/error.hpp"

namespace qpricing {

inline nlohmann::json demand_to_json(const Demand& d) {
  nlohmann::json j;
  if (const auto* ex = std::get_if<ExplicitDemand>(&d)) {
    j["type"] = "explicit";
    j["support_sets"] = ex->support_sets;
  } else {
    const auto& g = std::get<CutGraphDemand>(d);
    j["type"] = "cut_graph";
    j["nodes"] = g.node_count;
    j["s"] = g.source;
    j["t"] = g.sink;
    nlohmann::json edges = nlohmann::json::array();
    for (const CutEdge& e : g.edges) {
      nlohmann::json edge;
      edge["from"] = e.from;
      edge["to"] = e.to;
      edge["base_query"] = e.base_query ? nlohmann::json(*e.base_query) : nlohmann::json(nullptr);
      edges.push_back(std::move(edge));
    }
    j["edges"] = std::move(edges);
  }
  return j;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json buyers = nlohmann::json::array();
  for (const Buyer& b : inst.buyers)
    buyers.push_back({{"value", b.value}, {"demand", demand_to_json(b.demand)}});
  return {{"m", inst.m}, {"buyers", std::move(buyers)}};
}

inline Demand demand_from_json(const nlohmann::json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "explicit") {
    ExplicitDemand d;
    d.support_sets = j.at("support_sets").get<std::vector<std::vector<BaseQueryId>>>();
    return d;
  }
  if (type == "cut_graph") {
    CutGraphDemand g;
    g.node_count = j.at("nodes").get<int>();
    g.source = j.at("s").get<int>();
    g.sink = j.at("t").get<int>();
    for (const nlohmann::json& edge : j.at("edges")) {
      CutEdge e;
      e.from = edge.at("from").get<int>();
      e.to = edge.at("to").get<int>();
      const nlohmann::json& label = edge.at("base_query");
      if (!label.is_null()) e.base_query = label.get<BaseQueryId>();
      g.edges.push_back(e);
    }
    return g;
  }
  throw ValidationError("unknown demand type: " + type);
}

inline Instance instance_from_json(const nlohmann::json& j) {
  try {
    int m = j.at("m").get<int>();
    std::vector<Buyer> buyers;
    for (const nlohmann::json& buyer : j.at("buyers"))
      buyers.emplace_back(buyer.at("value").get<double>(), demand_from_json(buyer.at("demand")));
    return Instance(m, std::move(buyers));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed instance JSON: ") + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("instance JSON parse error: ") + e.what());
  }
  return instance_from_json(j);
}

inline void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace qpricing
