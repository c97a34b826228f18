#pragma once

#include <string>

#include "mmgeo/space.hpp"

namespace mmgeo {

/// Space file: header record (backend, parameters, n_points, gamma), then
/// for the explicit backend a lower-triangular distance matrix in CSV (row i
/// lists d(i, 0..i-1)), exact rational strings throughout.
std::string space_to_string(const Space& space);
Space space_from_string(const std::string& text);

/// Resolves a --space argument: inline generator expression, "file:<path>"
/// (space file), or "graphfile:<path>[:h=<step>]" (edge list as a unit-step
/// graph space).
Space resolve_space(const std::string& arg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

}  // namespace mmgeo
