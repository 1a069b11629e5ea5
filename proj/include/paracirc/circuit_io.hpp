#pragma once

#include <iosfwd>
#include <string>

#include "paracirc/circuit.hpp"

namespace paracirc {

// JSON interchange:
//   { "n_inputs": n, "outputs": [num],
//     "gates": [{ "id": num, "structured_id"?: [num], "type": str, "preds": [num] }] }
std::string circuit_to_json(const circuit& c);
circuit circuit_from_json(const std::string& text);  // throws circuit_error

// Graphviz export with gate numbers as labels.
void circuit_to_dot(const circuit& c, std::ostream& os);
std::string circuit_to_dot(const circuit& c);

}  // namespace paracirc
