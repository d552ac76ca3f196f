#pragma once

#include <iosfwd>
#include <string>

#include "commsim/protocol_tree.hpp"

namespace commsim {

// Structured text form of a protocol tree: one header line, then per
// component its nodes (type, labeling tables, leaf labels). Stable across
// runs, used for golden-file tests.
std::string serialize_tree(const ProtocolTree& t);
void serialize_tree(std::ostream& os, const ProtocolTree& t);

ProtocolTree parse_tree(const std::string& text);
ProtocolTree parse_tree(std::istream& is);

}  // namespace commsim
