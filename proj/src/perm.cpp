#include "spreadlab/perm.hpp"

#include <numeric>
#include <sstream>

#include "spreadlab/error.hpp"

namespace spreadlab {

Perm::Perm(std::size_t degree) : img_(degree) {
    if (degree > 65535) fail(Errc::BudgetExceeded, "degree above 65535");
    std::iota(img_.begin(), img_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (Point p : img_) {
        if (p >= img_.size() || seen[p]) fail(Errc::InvalidArgument, "image array is not a bijection");
        seen[p] = 1;
    }
}

Perm Perm::from_images(const std::vector<std::size_t>& images) {
    if (images.size() > 65535) fail(Errc::BudgetExceeded, "degree above 65535");
    std::vector<Point> v(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i] >= images.size()) fail(Errc::InvalidArgument, "image out of range");
        v[i] = static_cast<Point>(images[i]);
    }
    return Perm(std::move(v));
}

Perm Perm::from_cycles(std::size_t degree, const std::string& text) {
    Perm p(degree);
    std::vector<char> used(degree, 0);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') fail(Errc::ParseError, "expected '(' in cycle notation");
        ++i;
        std::vector<std::size_t> cyc;
        for (;;) {
            skip();
            if (i >= text.size()) fail(Errc::ParseError, "unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            std::size_t start = i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
            if (start == i) fail(Errc::ParseError, std::string("unexpected character '") + text[i] + "'");
            std::size_t v = std::stoul(text.substr(start, i - start));
            if (v >= degree) fail(Errc::ParseError, "point " + std::to_string(v) + " outside degree");
            if (used[v]) fail(Errc::ParseError, "point " + std::to_string(v) + " repeated");
            used[v] = 1;
            cyc.push_back(v);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) p.img_[cyc[k]] = static_cast<Point>(cyc[(k + 1) % cyc.size()]);
        skip();
    }
    return p;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

std::uint64_t Perm::order() const {
    std::vector<char> seen(img_.size(), 0);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::size_t Perm::fixed_points() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] == i;
    return c;
}

std::string Perm::cycles() const {
    std::ostringstream os;
    std::vector<char> seen(img_.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        any = true;
        os << '(';
        for (std::size_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = 1;
            os << (j == i ? "" : " ") << j;
        }
        os << ')';
    }
    if (!any) os << "()";
    return os.str();
}

Perm Perm::operator*(const Perm& o) const {
    if (o.degree() != degree()) fail(Errc::DegreeMismatch, "composing permutations of different degree");
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = o.img_[img_[i]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
    return r;
}

Perm Perm::pow(std::int64_t k) const {
    Perm base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    Perm result(degree());
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string Perm::key() const {
    std::string s;
    if (img_.size() <= 256) {
        s.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) s[i] = static_cast<char>(img_[i]);
    } else {
        s.resize(2 * img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) {
            s[2 * i] = static_cast<char>(img_[i] >> 8);
            s[2 * i + 1] = static_cast<char>(img_[i] & 0xff);
        }
    }
    return s;
}

Perm compose(const Perm& a, const Perm& b) { return a * b; }
Perm inverse(const Perm& a) { return a.inverse(); }
Perm power(const Perm& a, std::int64_t k) { return a.pow(k); }
Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }
Perm commutator(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace spreadlab
