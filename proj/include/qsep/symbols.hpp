#pragma once

#include <string>
#include <string_view>

namespace qsep {

// Process-wide symbol table. The first ids are fixed so that the lex order
// used for canonical printing does not depend on registration history:
// q, l, L, then auxiliary symbols; anything else is appended on first use.
namespace sym {
inline constexpr int q = 0;
inline constexpr int l = 1;
inline constexpr int L = 2;  // sqrt(l), only for even rank
}  // namespace sym

int symbol_id(std::string_view name);           // interns on demand
const std::string& symbol_name(int id);
int symbol_count();

}  // namespace qsep
