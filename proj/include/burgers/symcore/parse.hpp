#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Names the parser may resolve. Bare identifiers must be declared
/// parameters unless `implicit_params` is set.
struct ParseContext {
  std::set<std::string> params;
  bool implicit_params = false;
};

/// Parses the expression grammar documented in the README:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := integer | 't' | 'x' | jet | call | ident | '(' expr ')'
///   jet     := 'u' '[' integer ',' integer ']' ('_' ('t' | 'x')+)?
///   call    := elem '(' expr ')' | 'pow' '(' expr ',' rational ')'
///            | 'D' '(' expr (',' ('t' | 'x'))+ ')'
///            | 'd' '(' expr (',' coord)+ ')'
///            | ident '(' coord (',' coord)* ')'
///
/// The printer emits the same syntax, so parse(to_string(e)) == e.
Expr parse(std::string_view text, const ParseContext& ctx = {});

}  // namespace burgers::symcore
