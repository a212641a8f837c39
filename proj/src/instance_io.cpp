#include "pkcol/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "pkcol/errors.hpp"

namespace pkcol {

nlohmann::json instance_to_json(const DecoratedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"pi", e.pi.image()}});
  return {{"n", g.n()}, {"k", g.k()}, {"edges", std::move(edges)}};
}

DecoratedGraph instance_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    std::vector<DecoratedEdge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                       Permutation(e.at("pi").get<std::vector<Color>>())});
    return DecoratedGraph(n, k, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParameter(std::string("malformed instance: ") + ex.what());
  }
}

std::string dump_instance(const DecoratedGraph& g) { return instance_to_json(g).dump(); }

DecoratedGraph parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParameter(std::string("instance is not valid JSON: ") + ex.what());
  }
  return instance_from_json(j);
}

void save_instance(const std::filesystem::path& path, const DecoratedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << dump_instance(g) << '\n';
}

DecoratedGraph load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace pkcol
