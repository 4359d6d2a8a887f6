#ifndef BANDFEM_CONFIG_HPP
#define BANDFEM_CONFIG_HPP

#include <string>
#include <vector>

#include "bandfem/analysis.hpp"

namespace bandfem {

// Parse the flat key = value study description ('#' starts a comment).
// Recognized keys: example, q, gamma, levels, h0, element_order, cg_tol,
// csv, vtk, L. Unknown keys raise std::invalid_argument listing the valid
// ones; so do missing required keys (example, q, h0) and malformed numbers.
StudyConfig parse_config_text(const std::string& text);

// Same, reading the file at path.
StudyConfig parse_config_file(const std::string& path);

// Names of the studies shipped with the tool (reproductions of the published
// experiments at desk scale).
std::vector<std::string> bundled_example_names();

// Config text of a bundled study; throws std::invalid_argument for unknown
// names. Identical to the installed configs/<name>.cfg files.
const std::string& bundled_example(const std::string& name);

// One-line description for list-examples output.
std::string bundled_example_summary(const std::string& name);

} // namespace bandfem

#endif
