#include "paracirc/circuit_io.hpp"

#include <json.hpp>
#include <ostream>
#include <sstream>

namespace paracirc {

using nlohmann::json;

std::string circuit_to_json(const circuit& c) {
  json j;
  j["n_inputs"] = c.n_inputs;
  j["outputs"] = c.outputs;
  json gates = json::array();
  for (const auto& [g, gt] : c.gates) {
    json e;
    e["id"] = g;
    auto s = c.structured.find(g);
    if (s != c.structured.end()) e["structured_id"] = s->second;
    e["type"] = gate_type_name(gt.type);
    e["preds"] = gt.preds;
    gates.push_back(std::move(e));
  }
  j["gates"] = std::move(gates);
  return j.dump(2);
}

circuit circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw circuit_error(std::string("bad circuit json: ") + e.what());
  }
  circuit c;
  try {
    c.n_inputs = j.at("n_inputs").get<std::uint64_t>();
    c.outputs = j.at("outputs").get<std::vector<gate_id>>();
    for (const auto& e : j.at("gates")) {
      gate_id g = e.at("id").get<gate_id>();
      auto type = gate_type_from_name(e.at("type").get<std::string>());
      if (!type) throw circuit_error("unknown gate type in json");
      c.add(g, *type, e.at("preds").get<std::vector<gate_id>>());
      if (e.contains("structured_id"))
        c.structured[g] = e.at("structured_id").get<std::vector<std::uint64_t>>();
    }
  } catch (const json::exception& e) {
    throw circuit_error(std::string("bad circuit json: ") + e.what());
  }
  return c;
}

void circuit_to_dot(const circuit& c, std::ostream& os) {
  os << "digraph circuit {\n  rankdir=BT;\n";
  for (const auto& [g, gt] : c.gates) {
    const char* shape = gt.type == gate_type::input ? "plaintext" : "box";
    os << "  g" << g << " [label=\"" << g << ": " << gate_type_name(gt.type)
       << "\", shape=" << shape << "];\n";
  }
  for (const auto& [g, gt] : c.gates)
    for (gate_id p : gt.preds) os << "  g" << p << " -> g" << g << ";\n";
  for (gate_id out : c.outputs)
    os << "  g" << out << " [style=bold];\n";
  os << "}\n";
}

std::string circuit_to_dot(const circuit& c) {
  std::ostringstream ss;
  circuit_to_dot(c, ss);
  return ss.str();
}

}  // namespace paracirc
