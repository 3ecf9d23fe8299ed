#pragma once

#include <istream>
#include <ostream>
#include <variant>

#include "zbnet/network.hpp"

namespace zbnet {

// Writers emit 1-based ids, quoted labels and shortest round-trip reals. A `%` comment
// line after `*Vertices` records node roles so readers can restore them.
void write_pajek(std::ostream& out, const TwoModeNetwork& n);
void write_pajek(std::ostream& out, const OneModeNetwork& n);
void write_partition(std::ostream& out, const Partition& p);
void write_vector(std::ostream& out, const NodeVector& v);

using PajekNetwork = std::variant<TwoModeNetwork, OneModeNetwork>;

/// `*Vertices n n1` gives a two-mode network, `*Vertices n` a one-mode one. Files with
/// `*Arcs` are directed; files with only `*Edges` are undirected. Duplicate links add
/// up. Throws PajekSyntaxError.
PajekNetwork read_pajek(std::istream& in);
TwoModeNetwork read_two_mode(std::istream& in);
OneModeNetwork read_one_mode(std::istream& in);

Partition read_partition(std::istream& in, NodeSetPtr nodes);
NodeVector read_vector(std::istream& in, NodeSetPtr nodes);

}  // namespace zbnet
