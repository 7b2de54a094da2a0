#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/domain.hpp"
#include "spreadlab/forms.hpp"
#include "spreadlab/permgroup.hpp"

namespace spreadlab {

enum class Family { Sp, GSp, SO, Omega };

// theta = delta^[delta] * phi^frob.
struct AutoSpec {
    bool delta = false;
    std::int64_t frob = 0;
    bool trivial() const { return !delta && frob == 0; }
    std::string str() const;
};

struct GroupSpec {
    Family family = Family::Sp;
    unsigned m = 1;  // Sp/GSp of dimension 2m, SO/Omega of dimension 2m+1
    FieldPtr field;
    AutoSpec theta;
    std::optional<DomainKind> domain;  // projective points unless asked otherwise

    unsigned dim() const { return family == Family::Sp || family == Family::GSp ? 2 * m : 2 * m + 1; }
    std::string str() const;
};

// Parses "Sp4(4)", "PSp4(3):delta", "Sp4(4):phi", "GSp4(3)@vectors",
// "Omega5(3):delta*phi^1"; a leading P selects projective points.
GroupSpec parse_group_spec(const std::string& text);

// |Sp|, |GSp|, |SO| or |Omega| as a matrix group.
std::uint64_t classical_order(Family family, unsigned m, std::uint32_t q);

struct ClassicalGroup {
    GroupSpec spec;
    FormSpec form;
    std::shared_ptr<const VectorDomain> domain;
    PermGroup base;   // T
    PermGroup group;  // <T, theta>
    std::vector<SemilinearMap> base_maps;  // parallel to base.gens()
    std::optional<SemilinearMap> theta_map;
    std::optional<Perm> theta;
    std::uint64_t theta_order = 1;  // order of theta modulo T

    Perm perm_of(const SemilinearMap& g) const { return domain->perm_of(g); }
    std::string name() const { return spec.str(); }
};

ClassicalGroup classical_group(const GroupSpec& spec);
// <T, theta>; theta must normalize the point action of T.
ClassicalGroup semilinear_extension(const ClassicalGroup& T, const SemilinearMap& theta);
// Standard lift of theta for T's family.
SemilinearMap theta_map(const ClassicalGroup& T, const AutoSpec& theta);
// Semilinear map inducing p, rescaled to an exact semi-isometry when a
// scalar allows it. ElementNotInGroup when p is not induced by a map.
SemilinearMap map_of_element(const ClassicalGroup& G, const Perm& p);
// Maps parallel to G.group.gens().
std::vector<SemilinearMap> group_gen_maps(const ClassicalGroup& G);

// Transvection x -> x + lambda (x, v) v.
MatF transvection(const FormSpec& form, const Vec& v, Fq lambda);
// Reflection in the anisotropic vector v.
MatF reflection(const FormSpec& form, const Vec& v);

struct AtlasGroup {
    std::string name;
    PermGroup group;
};
// A5 natural on 5 points; A6, S6, PGL29, M10 and PGammaL29 on the 10
// points of the projective line over GF(9).
AtlasGroup atlas_group(const std::string& name);
std::vector<std::string> atlas_names();

// Elements A, B, C, D of dimension 2d over F0 in the standard hyperbolic basis.
MatF element_A(unsigned d, const FieldPtr& F0);
MatF element_B(unsigned d, const FieldPtr& F0);
MatF element_C(unsigned d, const FieldPtr& F0);
MatF element_D(unsigned d, const FieldPtr& F0);

enum class Case { S, O, S4 };
enum class ThetaKind { Field, DiagField, GraphField };

struct Table7Element {
    MatF y;
    FormSpec form;
    std::uint64_t predicted_order = 0;
};
Table7Element table7_element(Case c, unsigned m, const FieldPtr& F0, ThetaKind kind);

}  // namespace spreadlab
