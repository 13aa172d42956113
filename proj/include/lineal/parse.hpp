#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lineal/term.hpp"
#include "lineal/type.hpp"

namespace lineal {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

// A source file: `let` definitions (lowercase names bind terms, uppercase
// names bind type aliases), `assume` declarations populating the typing
// context, then at most one main term with an optional `:: TYPE` ascription.
// Names are resolved at parse time; later items see earlier ones.
struct SourceFile {
    std::vector<std::pair<std::string, TermPtr>> term_defs;
    std::vector<std::pair<std::string, TypePtr>> type_defs;
    std::vector<std::pair<std::string, TypePtr>> assumes;  // unit types
    TermPtr main;        // null for definition-only files (preludes)
    TypePtr ascription;  // null if absent

    // Display dictionary built from the definitions (erased terms).
    PrintNames names() const;
};

TermPtr parse_term(std::string_view text);
TypePtr parse_type(std::string_view text);
SourceFile parse_source(std::string_view text, const SourceFile* prelude = nullptr);

}  // namespace lineal
