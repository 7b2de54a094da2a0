#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spreadlab/permgroup.hpp"

namespace spreadlab {

constexpr std::uint64_t kDefaultEnumerationBudget = 2000000;

struct ConjClass {
    Perm rep;  // least member by image list
    std::uint64_t size = 0;
    std::uint64_t centralizer = 0;  // |C_T(x)| for the acting group T
    std::uint64_t order = 0;
    // (r, class id of rep^r) for primes r dividing the order; empty for
    // coset tables, where powers leave the coset.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> power;
};

// Orbits of T acting by conjugation on T (ordinary classes) or on the coset
// T theta. Members are indexed by the chain rank of t, where the member is
// t theta.
class ClassTable {
public:
    ClassTable() = default;
    ClassTable(PermGroup T, std::optional<Perm> theta, std::vector<ConjClass> classes,
               std::vector<std::uint32_t> id_of_rank);

    const PermGroup& acting() const { return T_; }
    const std::optional<Perm>& theta() const { return theta_; }
    bool is_coset() const { return theta_.has_value(); }
    std::size_t size() const { return classes_.size(); }
    const ConjClass& operator[](std::size_t i) const { return classes_[i]; }
    const std::vector<ConjClass>& classes() const { return classes_; }

    // NotInUnderlyingSet when x is outside T (or T theta).
    std::uint32_t class_of(const Perm& x) const;
    std::optional<std::uint32_t> find_class(const Perm& x) const;
    // Member with the given T-rank.
    Perm member(std::uint64_t rank) const;
    std::uint32_t id_of_rank(std::uint64_t rank) const { return id_of_rank_[rank]; }
    std::vector<std::uint64_t> ranks_of(std::uint32_t id) const;
    std::uint64_t underlying_size() const { return id_of_rank_.size(); }

private:
    PermGroup T_;
    std::optional<Perm> theta_;
    Perm theta_inv_;
    std::vector<ConjClass> classes_;
    std::vector<std::uint32_t> id_of_rank_;
};

ClassTable conjugacy_classes(const PermGroup& G, std::uint64_t budget = kDefaultEnumerationBudget);
// NotNormalizing when theta does not normalize T.
ClassTable coset_classes(const PermGroup& T, const Perm& theta, std::uint64_t budget = kDefaultEnumerationBudget);
inline std::uint32_t class_of(const ClassTable& t, const Perm& x) { return t.class_of(x); }

// Sort key used to match classes across groups.
struct ClassKey {
    std::uint64_t order = 0;
    std::uint64_t centralizer = 0;
    std::vector<std::uint64_t> power_centralizers;  // centralizer orders along the power map
    auto operator<=>(const ClassKey&) const = default;
};
ClassKey class_key(const ClassTable& t, std::uint32_t id);

}  // namespace spreadlab
