#pragma once

#include <optional>

#include "spreadlab/matrix.hpp"
#include "spreadlab/perm.hpp"

namespace spreadlab {

enum class DomainKind { Vectors, Projective };

// Nonzero vectors or projective points of GF(q)^n, ordered by vector code
// (coordinate 0 least significant); projective points are normalized so the
// first nonzero coordinate is 1.
class VectorDomain {
public:
    VectorDomain(FieldPtr field, std::size_t n, DomainKind kind);

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return n_; }
    DomainKind kind() const { return kind_; }
    std::size_t size() const { return points_.size(); }
    const Vec& point(std::size_t i) const { return points_[i]; }
    Vec normalize(Vec v) const;
    std::uint32_t index_of(const Vec& v) const;

    Perm perm_of(const SemilinearMap& g) const;
    // Recovers a semilinear map inducing p (up to scalars on projective
    // points), smallest Frobenius power first.
    std::optional<SemilinearMap> map_of(const Perm& p) const;

private:
    std::uint64_t code(const Vec& v) const;
    FieldPtr field_;
    std::size_t n_;
    DomainKind kind_;
    std::vector<Vec> points_;
    std::vector<std::int32_t> lookup_;
};

}  // namespace spreadlab
