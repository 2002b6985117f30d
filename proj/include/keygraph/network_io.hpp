#pragma once

#include <filesystem>
#include <iosfwd>

#include "keygraph/sampler.hpp"

namespace keygraph {

// Plain-text network dump, space separated:
//
//   n P alpha r
//   mu_1 ... mu_r
//   K_1 ... K_r
//   <class> <keycount> <key_1> ... <key_keycount>     (one line per node)
//   <u> <v>                                            (one line per edge)
//
// Classes are written 1-based; nodes and keys are 0-based. Only the
// intersection graph is stored.

void write_network(std::ostream& out, const SampledNetwork& net);
void write_network(const std::filesystem::path& path, const SampledNetwork& net);

/// Throws std::runtime_error with line context on malformed input.
SampledNetwork read_network(std::istream& in);
SampledNetwork read_network(const std::filesystem::path& path);

}  // namespace keygraph
