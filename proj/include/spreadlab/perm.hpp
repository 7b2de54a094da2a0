#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace spreadlab {

using Point = std::uint16_t;

// Permutation of {0..n-1} acting on the right: i^(ab) = (i^a)^b, so a*b
// applies a first.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t degree);
    explicit Perm(std::vector<Point> images);
    static Perm from_images(const std::vector<std::size_t>& images);
    // Disjoint-cycle notation such as "(0 1 2)(3 4)"; "()" is the identity.
    static Perm from_cycles(std::size_t degree, const std::string& text);

    std::size_t degree() const { return img_.size(); }
    Point operator[](std::size_t i) const { return img_[i]; }
    const std::vector<Point>& images() const { return img_; }
    bool is_identity() const;
    std::uint64_t order() const;
    std::size_t fixed_points() const;
    std::string cycles() const;

    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    Perm pow(std::int64_t k) const;
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    // Canonical byte string of the image array.
    std::string key() const;

private:
    std::vector<Point> img_;
};

Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
Perm power(const Perm& a, std::int64_t k);
Perm conjugate(const Perm& x, const Perm& g);  // g^-1 x g
Perm commutator(const Perm& a, const Perm& b);  // a^-1 b^-1 a b

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace spreadlab
