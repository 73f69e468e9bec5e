#pragma once

#include <string>
#include <vector>

#include "mbanach/linalg.hpp"

namespace mbanach {

// Complex literals: `3`, `-0.5`, `2i`, `-i`, `1+2i`, `1.5e-3-4i`.
Complex parse_complex(const std::string& text);
// Shortest form that parses back to the same value (17 significant digits
// at most): `1`, `-2i`, `1+0.5i`.
std::string format_complex(Complex c);

// Rows split on `;`, entries on `,`.
ScalarMatrix parse_scalar_matrix(const std::string& text);

std::vector<std::string> split(const std::string& text, char sep);
std::string trim(const std::string& text);

}  // namespace mbanach
