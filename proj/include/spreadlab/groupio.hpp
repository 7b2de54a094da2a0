#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spreadlab/domain.hpp"
#include "spreadlab/grpzoo.hpp"
#include "spreadlab/permgroup.hpp"

namespace spreadlab {

// Cycle notation "(0 1 2)(3 4)" or "images: i0 i1 ... i{n-1}".
Perm parse_generator(std::size_t degree, const std::string& text);

// "perm-group degree N" followed by one generator per line; '#' starts a
// comment line. Orders are always recomputed.
std::string perm_group_to_text(const PermGroup& G, const std::string& comment = "");
PermGroup perm_group_from_text(const std::string& text);

// "matrix-group", "field p f [c0 .. cf]", optional "action projective|vectors",
// then one row-major matrix per line with an optional "semilinear k" suffix.
struct MatrixGroupData {
    FieldPtr field;
    std::size_t dim = 0;
    DomainKind kind = DomainKind::Projective;
    std::vector<SemilinearMap> gens;
};
MatrixGroupData matrix_group_from_text(const std::string& text);
std::string matrix_group_to_text(const MatrixGroupData& data);
PermGroup matrix_group_action(const MatrixGroupData& data);

struct LoadedGroup {
    std::string id;
    PermGroup group;
    std::optional<ClassicalGroup> classical;  // zoo: sources only
};

// "zoo:<spec>", "atlas:<name>", or a path to a perm-group or matrix-group
// file. ParseError carries the line number for file input.
LoadedGroup load_group(const std::string& source);
// Text of either file kind, dispatched on the first non-comment line.
PermGroup group_from_text(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace spreadlab
