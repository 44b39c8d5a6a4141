#pragma once

#include <string>
#include <string_view>

#include "catalytic/density.hpp"

namespace catalytic {

// JSON state format:
//   {"shape":[d1,...], "entries":[[re,im], ...]}   D*D pairs, row-major
//   {"shape":[d1,...], "diag":[p1, ..., pD]}       diagonal states
enum class StateFormat { automatic, entries, diagonal };

// Throws std::invalid_argument on malformed documents.
DensityMatrix parse_state_json(std::string_view text);
DensityMatrix read_state_file(const std::string& path);

// `automatic` writes the diag form when the matrix is exactly diagonal and real.
std::string format_state_json(const DensityMatrix& m, StateFormat format = StateFormat::automatic);
void write_state_file(const std::string& path, const DensityMatrix& m, StateFormat format = StateFormat::automatic);

// Locale-independent shortest-form rendering with `digits` significant digits.
std::string format_number(double x, int digits);

}  // namespace catalytic
