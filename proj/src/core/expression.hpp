// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "core/scalar_field.hpp"

namespace curv {

// Parses an arithmetic expression in the chart coordinates x1..xn into a
// ScalarField.  Supported: + - * / ^, parentheses, numeric literals, pi,
// and the functions sin cos tan exp log sqrt.  Throws ConfigError on
// malformed input or out-of-range coordinate names.
ScalarField parse_expression(const std::string& text, int dim);

}  // namespace curv
