#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/forms.hpp"
#include "spreadlab/grpzoo.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

struct SubgroupHandle {
    std::string label;
    std::vector<Perm> gens;
    PermGroup group;
    std::uint64_t order() const { return group.order(); }
};

// ElementNotInGroup when a generator lies outside G.
SubgroupHandle make_subgroup(const PermGroup& G, std::vector<Perm> gens, std::string label,
                             std::optional<std::uint64_t> known_order = std::nullopt);

// Codimension of the largest eigenspace over the algebraic closure.
unsigned nu(const MatF& x);
// NotLinear for maps with a field part.
unsigned nu(const SemilinearMap& x);

constexpr std::uint64_t kFprBudget = 4000000;

// |x^G ∩ H| for every class x of the table.
std::vector<std::uint64_t> class_counts(const ClassTable& table, const SubgroupHandle& H,
                                        std::uint64_t budget = kFprBudget);
Rational exact_fpr(const PermGroup& G, const ClassTable& table, std::uint32_t x_class, const SubgroupHandle& H,
                   std::uint64_t budget = kFprBudget);
// Independent path: the proportion of g in G with x^g in H.
Rational fpr_by_action(const PermGroup& G, const Perm& x, const SubgroupHandle& H, std::uint64_t budget = kFprBudget);

std::uint64_t normalizer_order(const PermGroup& G, const SubgroupHandle& H, std::uint64_t budget = 100000);
// Number of G-conjugates of a self-normalizing H containing x.
// NotSelfNormalizing is checked by enumeration when |G| <= 10^5.
std::uint64_t overgroup_count(const PermGroup& G, const ClassTable& table, std::uint32_t x_class,
                              const SubgroupHandle& H);
// Same count by listing the conjugates of H; index at most `budget`.
std::uint64_t overgroup_count_direct(const PermGroup& G, const Perm& x, const SubgroupHandle& H,
                                     std::uint64_t budget = 10000);

struct ProbBoundRow {
    std::uint32_t x_class = 0;
    Rational P;
    Rational fpr_sum;  // sum of fpr(x, G/H) over maximal H containing s
};

struct ProbBoundReport {
    std::uint32_t s_class = 0;
    std::vector<std::pair<std::string, std::uint64_t>> overgroups;  // label, conjugates containing s
    std::vector<ProbBoundRow> rows;
    bool inequality_holds = true;
    // Largest k with every k-multiset sum below 1; nothing when unbounded.
    std::optional<std::uint64_t> verdict_k;
    std::optional<std::uint64_t> exact_verdict_k;  // the same using exact P
    std::string to_text() const;
};

// `maximal` lists the maximal subgroups of G up to conjugacy; the conjugates
// containing s are counted from class intersections. HypothesisViolated
// when s lies in no maximal subgroup.
ProbBoundReport prob_bound_report(const PermGroup& G, const ClassTable& table, std::uint32_t s_class,
                                  const std::vector<SubgroupHandle>& maximal);

// Maximal subgroups up to conjugacy by cyclic extension over the full
// subgroup lattice.
std::vector<SubgroupHandle> maximal_subgroups_tiny(const PermGroup& G, std::uint64_t budget = 10000);

// Quadratic forms in even characteristic polarizing to a fixed alternating
// form; a form is coded by its values on the standard basis.
class QuadraticForms {
public:
    explicit QuadraticForms(const FormSpec& symplectic);
    std::uint64_t count() const { return count_; }
    Fq value(std::uint64_t code, const Vec& v) const;
    bool plus_type(std::uint64_t code) const;
    // Q^g(v) = Q(v g^-1)^sigma for g = (A, sigma).
    std::uint64_t act(std::uint64_t code, const SemilinearMap& g) const;
    std::vector<Fq> values(std::uint64_t code) const;
    std::uint64_t code_of(const std::vector<Fq>& values) const;

private:
    FormSpec form_;
    MatF basis_;  // symplectic basis rows
    std::uint64_t count_ = 0;
};

struct QuadraticCensus {
    std::uint64_t forms = 0, plus = 0, minus = 0, orbits = 0;
    std::vector<SubgroupHandle> subgroups;  // stabilizers: plus type first
    std::vector<std::uint64_t> reps;        // form codes, parallel to subgroups
};
// OddCharacteristic for odd q.
QuadraticCensus quadratic_type_subgroups(const ClassicalGroup& G);
// Forms of plus and minus type fixed by x.
std::pair<std::uint64_t, std::uint64_t> fixed_form_counts(const ClassicalGroup& G, const Perm& x);

enum class BoundKind {
    NonSubspaceOmega,      // odd dimension, non-subspace H
    NonSubspaceSp,         // symplectic, non-subspace H
    NonSubspaceSpRefined,  // symplectic, the sharper bound split by nu
    SubfieldTransvection,  // subfield H, nu(x) = 1
    TotallyIsotropic,      // stabilizer of a totally isotropic k-space
    NondegenerateOmega,    // stabilizer of a nondegenerate k-space, odd dimension
    NondegenerateSp,       // stabilizer of a nondegenerate k-space, symplectic
    QuadraticType,         // O+ / O- type in even characteristic
    NondegenerateTwoSpace,
    Sp4NonSubspace,
};

enum class Sp4Type { Generic, WreathOrExtension, Suzuki, OMinusExtension };

struct BoundFormula {
    BoundKind kind = BoundKind::Sp4NonSubspace;
    unsigned m = 2;
    std::uint64_t q = 2;
    unsigned k = 1;
    unsigned witt = 0;
    Rational ell = 1;
    bool linear = true;  // x in PGL(V)
    unsigned nu = 1;
    Sp4Type sp4_type = Sp4Type::Generic;
    bool a2_or_t2 = false;  // the involution classes with the weaker bound
};

struct BoundValue {
    std::optional<Rational> exact;
    long double lo = 0, hi = 0;  // outward-rounded enclosure
    bool strict = true;          // fpr < bound rather than fpr <= bound
    std::string text;
    bool admits(const Rational& fpr) const;
};

// HypothesisViolated when the parameters are outside the formula's range.
BoundValue bound_value(const BoundFormula& f);
// Table value of ell for the symplectic types that carry one (1 otherwise).
Rational ell_for_type(const std::string& type);

// Even q only: B(v, vx) = 0 for every v.
bool is_a_type_involution(const MatF& x, const FormSpec& form);

// Curated maximal subgroups of Sp4(q) or Sp4(q):phi for q = 2^f, f > 1:
// O+4, O-4, Sp2(q) wr S2, Sp2(q^2) and the subfield groups, each with its
// full normalizer in G.
std::vector<SubgroupHandle> curated_maximal_subgroups(const ClassicalGroup& G);

// Random falsification of maximality: false when some g outside H gives a
// proper overgroup <H, g>.
bool sample_maximality(const PermGroup& G, const SubgroupHandle& H, std::uint64_t trials, std::uint64_t seed = 1);

struct FprRecord {
    std::uint32_t x_class = 0;
    std::string label;
    Rational fpr;
    std::string formula;
    std::optional<BoundValue> bound;
    bool satisfied = true;
};
// Every prime-order class against every curated subgroup of Sp4(q)(:phi),
// with the printed bound that applies to the pair.
std::vector<FprRecord> fpr_bound_check(const ClassicalGroup& G, const ClassTable& table,
                                       const std::vector<SubgroupHandle>& subgroups);

std::string subgroups_to_text(const std::vector<SubgroupHandle>& list);
std::vector<SubgroupHandle> subgroups_from_text(const PermGroup& G, const std::string& text);

}  // namespace spreadlab
