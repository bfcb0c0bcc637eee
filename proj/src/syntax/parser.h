#pragma once

#include <string_view>

#include "syntax/ast.h"

namespace hnet::syntax {

// Parses exactly one Java method declaration (or constructor) in the supported
// subset. Throws SyntaxError or UnsupportedConstruct.
Ast parse_method(std::string_view source);

}  // namespace hnet::syntax
