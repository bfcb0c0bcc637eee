#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "syntax/ast.h"

namespace hnet::syntax {

// Splits identifier-shaped tokens on camelCase, underscores and digit/letter
// transitions and lowercases the pieces. Any other token comes back unchanged
// as a single piece.
std::vector<std::string> split_subtokens(std::string_view token);

// Leaves whose token splits into several pieces get one `sub_token` child per
// piece and lose their own token; single-piece identifier tokens are
// lowercased in place. Idempotent.
Ast insert_subtoken_nodes(Ast tree);

// The serialized sequence: pre-order node ids and the positions that carry a token.
struct LinearSeq {
  std::vector<int> nodes;
  std::vector<std::size_t> token_positions;
};

LinearSeq linearize(const Ast& tree);

// Tokens at token_positions, in order.
std::vector<std::string> sequence_tokens(const Ast& tree, const LinearSeq& seq);

}  // namespace hnet::syntax
