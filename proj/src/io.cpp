#include "sparsegraph/io.hpp"

#include <json.hpp>
#include <stdexcept>

#include "sparsegraph/canonical.hpp"

namespace sg {

namespace {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& r) { return Json(rat_to_string(r)); }

Rat rat_from_json(const Json& v, bool& exact) {
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
  if (v.is_number_float()) {
    exact = false;
    return rat_of_double(v.get<double>());
  }
  throw std::invalid_argument("kernel json: entries must be \"p/q\" strings or numbers");
}

}  // namespace

std::string kernel_to_json(const FiniteKernel& k) {
  Json out;
  out["mu"] = Json::array();
  for (const Rat& m : k.mu) out["mu"].push_back(rat_json(m));
  out["kappa"] = Json::array();
  for (const auto& row : k.kappa) {
    Json jr = Json::array();
    for (const Rat& v : row) jr.push_back(rat_json(v));
    out["kappa"].push_back(jr);
  }
  if (!k.names.empty()) out["names"] = k.names;
  return out.dump(2) + "\n";
}

FiniteKernel kernel_from_json(const std::string& text) {
  Json in;
  try {
    in = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("kernel json: ") + e.what());
  }
  if (!in.is_object() || !in.contains("mu") || !in.contains("kappa")) {
    throw std::invalid_argument("kernel json: need \"mu\" and \"kappa\"");
  }
  bool exact = true;
  std::vector<Rat> mu;
  for (const Json& v : in["mu"]) mu.push_back(rat_from_json(v, exact));
  std::vector<std::vector<Rat>> kappa;
  for (const Json& row : in["kappa"]) {
    std::vector<Rat> r;
    for (const Json& v : row) r.push_back(rat_from_json(v, exact));
    kappa.push_back(std::move(r));
  }
  std::vector<std::string> names;
  if (in.contains("names")) names = in["names"].get<std::vector<std::string>>();
  return make_kernel(std::move(mu), std::move(kappa), exact, std::move(names));
}

std::string tree_law_to_json(const TreeLaw& law) {
  Json out;
  out["t"] = law.t;
  out["entries"] = Json::array();
  for (const auto& [code, p] : law.p) {
    Json e;
    e["tree"] = code;
    e["p"] = p;
    out["entries"].push_back(e);
  }
  out["truncated"] = law.truncated;
  return out.dump(2) + "\n";
}

std::string support_law_to_json(const FiniteSupportLaw& law) {
  Json out;
  out["support"] = Json::array();
  for (const LawAtom& atom : law.support) {
    Json e;
    if (atom.is_qt) {
      e["qt_matrix"] = atom.spec.a;
      e["root_type"] = atom.root_type;
    } else {
      e["tree"] = rooted_graph_code(adjacency_lists(atom.graph), atom.root);
    }
    out["support"].push_back(e);
  }
  out["weights"] = Json::array();
  for (const Rat& w : law.weights) out["weights"].push_back(rat_json(w));
  return out.dump(2) + "\n";
}

std::string neighbourhood_law_to_json(const NeighbourhoodLaw& law) {
  Json out;
  out["t"] = law.t;
  out["n"] = law.n;
  out["entries"] = Json::array();
  for (const auto& [code, count] : law.counts) {
    Json e;
    e["ball"] = code;
    e["count"] = count;
    e["p"] = static_cast<double>(count) / static_cast<double>(law.n);
    out["entries"].push_back(e);
  }
  return out.dump(2) + "\n";
}

}  // namespace sg
