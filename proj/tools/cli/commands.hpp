#pragma once

#include <string>
#include <string_view>

#include "certificate.hpp"
#include "instance.hpp"
#include "qfm/error.hpp"
#include "qfm/gallery.hpp"

namespace qfm::cli {

const std::vector<std::string>& command_names();

// Runs one operation. The certificate embeds the printed instance (empty
// for gallery) so that verify can rerun it. Usage problems (missing or
// malformed arguments) throw InvalidArgument.
Certificate run_command(const std::string& command, const Instance& inst, const Args& args);

// Reruns every certificate in `text` and compares outputs and checks.
Certificate verify_certificates(std::string_view text);

// DOT digraph: nodes are quotient points, one edge per moved point and
// generator (map, graph of a relation, or group element). Throws
// UnsupportedCarrier on integer spaces.
std::string export_graph(const Instance& inst, const std::string& name);

// An instance file reproducing a gallery example, with run directives.
Instance gallery_instance(const GalleryInstance& g);

// Kinds that mean "bad input or usage" rather than a failed computation.
bool is_usage_error(ErrorKind kind);

}  // namespace qfm::cli
