#pragma once

#include "vorcal/deffile.hpp"

namespace vorcal {

// Embedded definition files for the three bundled example structures.
const char* builtin_source(const std::string& name);  // "ex1", "ex2", "ex3"
std::vector<std::string> builtin_names();

// All builtin files parsed and merged.
Definitions builtin_definitions(const EngineConfig& config = {});

}  // namespace vorcal
