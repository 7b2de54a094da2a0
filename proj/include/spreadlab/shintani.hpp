#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/grpzoo.hpp"

namespace spreadlab {

// One statistic compared as sorted multisets.
struct StatisticVerdict {
    std::string name;
    std::vector<std::uint64_t> big, small;
    bool match = false;
};

struct CorrespondenceReport {
    std::string big_id, small_id;
    std::uint64_t e = 1;
    std::uint64_t big_classes = 0, small_classes = 0;
    std::vector<StatisticVerdict> stats;
    // Reported without a verdict: the plus/minus split need not descend.
    std::vector<StatisticVerdict> info;
    bool pairing_perfect = false;
    std::vector<std::string> ambiguities;  // keys shared by several classes
    bool all_match() const;
    std::string to_text() const;
};

enum class SubspaceFlavor { TotallyIsotropic, Nondegenerate };

// Class table of T theta (or of T itself when theta lies in T).
ClassTable coset_or_ordinary(const PermGroup& T, const Perm& theta, std::uint64_t budget = kDefaultEnumerationBudget);

std::vector<std::uint64_t> centralizer_profile(const ClassTable& table);
// Orders of rep^e over the classes of the table.
std::vector<std::uint64_t> epower_order_profile(const ClassTable& table, std::uint64_t e);
// k-spaces of the flavor as sets of projective point indices of the domain.
std::vector<std::vector<std::uint32_t>> subspaces(const VectorDomain& dom, const FormSpec& form, unsigned k,
                                                  SubspaceFlavor flavor, std::uint64_t budget = 1000000);
// Per class: number of listed subspaces fixed by the representative acting
// on the points of a projective domain.
std::vector<std::uint64_t> fixed_subspace_profile(const ClassTable& table,
                                                  const std::vector<std::vector<std::uint32_t>>& spaces);
// Per class: plus-type, minus-type and total counts of fixed quadratic forms.
struct OrthogonalProfile {
    std::vector<std::uint64_t> plus, minus, total;
};
OrthogonalProfile orthogonal_profile(const ClassicalGroup& G, const ClassTable& table);

// tau((g sigma)^e) = N(tau(g)) with sigma = phi^{g.frob} of order e.
// NotASimilarity when the linear part is not a similarity.
bool similarity_norm_identity(const SemilinearMap& gs, const FormSpec& form, std::uint64_t e);
// Random similarity of the standard symplectic form of dimension 2m.
MatF random_similarity(unsigned m, const FieldPtr& F, Rng& rng);
// N maps squares to squares and non-squares to non-squares (odd degree).
bool norm_square_coherence(const FieldPtr& F, const FieldPtr& sub);

struct ShintaniOptions {
    unsigned subspace_k = 1;
    SubspaceFlavor flavor = SubspaceFlavor::TotallyIsotropic;
    bool orthogonal = true;
};
// Big side: classical group with a field automorphism theta; small side:
// the same family over the fixed field.
CorrespondenceReport shintani_verify(const ClassicalGroup& big, const ClassicalGroup& small,
                                     const ShintaniOptions& opt = {});

// Smallest e with theta^e in T.
std::uint64_t order_modulo(const PermGroup& T, const Perm& theta);
// Form-free part of the comparison (class count, centralizers, e-th powers)
// for groups given only as permutations.
CorrespondenceReport shintani_verify_perm(const PermGroup& T, const Perm& theta, const PermGroup& small,
                                          const std::string& big_id, const std::string& small_id);

struct SzCheck {
    std::uint64_t automorphisms_tried = 0;
    std::vector<std::uint64_t> fixed_orders;  // distinct fixed-subgroup orders over outer involutions
    bool found_order_20 = false;
    bool nonabelian = false;
    bool normal_sylow5 = false;
    std::vector<std::uint64_t> element_orders;  // of the order-20 fixed subgroup
};
// Outer involutory automorphisms of Sp4(2) and their fixed subgroups.
SzCheck sz_fixed_subgroup_check();

}  // namespace spreadlab
