#ifndef RSFT_PARSE_HPP
#define RSFT_PARSE_HPP

#include "rsft/element.hpp"

namespace rsft {
class TensorWord;
}

#include <string_view>

namespace rsft {

/// Parses an element expression such as "2*q:x^2 - 1/3*L^1/2*p:y+".
///
/// Variables are written kind:name with an optional side suffix; a '+' or '-'
/// directly after a variable is read as a suffix when the universe has a side
/// with that suffix and no operand follows it. Errors carry a location offset
/// by (line, column) so that callers can report positions in a larger file.
AlgElement parse_element(const UniversePtr& u, std::string_view text, Space space = Space::Any,
                         const Truncation& trunc = {}, int line = 1, int column = 1);

/// Parses a word expression in the printed form, e.g. "2*1l (+) q:y - q:x".
/// Factors are products joined by "(+)", which binds tighter than '+'.
TensorWord parse_word(const UniversePtr& u, std::string_view text, const Truncation& trunc = {}, int line = 1,
                      int column = 1);

} // namespace rsft

#endif
