#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/ffield.hpp"
#include "spreadlab/poly.hpp"

namespace spreadlab {

using Vec = std::vector<Fq>;

// Square matrix over a Field, row-major. Vectors are rows and matrices act
// on the right: v -> vA.
class MatF {
public:
    MatF() = default;
    MatF(FieldPtr field, std::size_t n);
    static MatF identity(FieldPtr field, std::size_t n);
    static MatF scalar(FieldPtr field, std::size_t n, Fq c);
    static MatF from_rows(FieldPtr field, const std::vector<Vec>& rows);

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return n_; }
    Fq at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    Fq& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    Vec row(std::size_t i) const;
    const std::vector<Fq>& data() const { return a_; }

    MatF operator*(const MatF& o) const;
    MatF operator+(const MatF& o) const;
    MatF operator-(const MatF& o) const;
    MatF scaled(Fq c) const;
    MatF transpose() const;
    // Entrywise x -> x^{p^i}.
    MatF frob(std::int64_t i) const;
    std::optional<MatF> inverse() const;
    MatF inv() const;  // throws if singular
    MatF pow(std::int64_t k) const;
    Fq det() const;
    std::size_t rank() const;
    bool is_identity() const;
    bool is_scalar() const;
    bool operator==(const MatF& o) const { return field_ == o.field_ && n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const MatF& o) const { return !(*this == o); }
    bool operator<(const MatF& o) const { return a_ < o.a_; }

    Vec apply(const Vec& v) const;  // vA
    Poly charpoly() const;
    // Multiplicative order; throws if above `limit`.
    std::uint64_t order(std::uint64_t limit = 100000000) const;
    // Smallest k with A^k scalar.
    std::uint64_t projective_order(std::uint64_t limit = 100000000) const;
    std::string str() const;

private:
    FieldPtr field_;
    std::size_t n_ = 0;
    std::vector<Fq> a_;
};

// Block diagonal sum.
MatF block_diag(const std::vector<MatF>& blocks);
// Evaluates a polynomial at a matrix.
MatF poly_at(const Poly& p, const MatF& A);
// Dimension of the kernel (rows v with vA = 0).
std::size_t nullity(const MatF& A);
// Row-reduced echelon form of a list of rows; returns the nonzero rows.
std::vector<Vec> rref(const Field& F, std::vector<Vec> rows);
std::optional<Vec> solve_left(const MatF& A, const Vec& b);  // x with xA = b

// (A, i) acting as v -> (vA)^{phi^i} with phi the p-power map; composition
// (A,i)(B,j) = (A B^{phi^-i}, i+j).
struct SemilinearMap {
    MatF A;
    std::int64_t frob = 0;  // reduced mod f

    SemilinearMap() = default;
    SemilinearMap(MatF a, std::int64_t i = 0);
    static SemilinearMap identity(FieldPtr field, std::size_t n) { return {MatF::identity(field, n), 0}; }
    static SemilinearMap field_auto(FieldPtr field, std::size_t n, std::int64_t i) {
        return {MatF::identity(field, n), i};
    }

    SemilinearMap operator*(const SemilinearMap& o) const;
    SemilinearMap inverse() const;
    SemilinearMap pow(std::int64_t k) const;
    Vec apply(const Vec& v) const;
    bool is_linear() const { return frob == 0; }
    bool operator==(const SemilinearMap& o) const { return frob == o.frob && A == o.A; }
    std::uint64_t order(std::uint64_t limit = 100000000) const;
    // Change of basis: rows of M are the new basis in old coordinates.
    SemilinearMap in_basis(const MatF& M) const;
};

}  // namespace spreadlab
