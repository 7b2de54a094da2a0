#include "spreadlab/poly.hpp"

#include <algorithm>
#include <random>

#include "spreadlab/error.hpp"

namespace spreadlab {

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    poly_trim(r);
    return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    poly_trim(r);
    return r;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const Field& F, const Poly& a, Fq c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    poly_trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) fail(Errc::InvalidArgument, "polynomial division by zero");
    Poly rem = a;
    poly_trim(rem);
    if (rem.size() < b.size()) return {{}, rem};
    Poly quo(rem.size() - b.size() + 1, 0);
    Fq lead_inv = F.inv(b.back());
    for (int d = poly_deg(rem); d >= poly_deg(b); --d) {
        Fq c = rem[d];
        if (!c) continue;
        Fq t = F.mul(c, lead_inv);
        int shift = d - poly_deg(b);
        quo[shift] = t;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(t, b[i]));
    }
    poly_trim(rem);
    poly_trim(quo);
    return {quo, rem};
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& m) { return poly_divmod(F, a, m).second; }

Poly poly_monic(const Field& F, const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result{1};
    result = poly_mod(F, result, m);
    Poly b = poly_mod(F, base, m);
    while (e) {
        if (e & 1) result = poly_mod(F, poly_mul(F, result, b), m);
        e >>= 1;
        if (e) b = poly_mod(F, poly_mul(F, b, b), m);
    }
    return result;
}

Fq poly_eval(const Field& F, const Poly& a, Fq x) {
    Fq acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

// Ben-Or: a of degree n is irreducible iff gcd(x^{q^i} - x, a) = 1 for i <= n/2.
bool poly_is_irreducible(const Field& F, const Poly& a) {
    int n = poly_deg(a);
    if (n < 1) return false;
    if (n == 1) return true;
    Poly x{0, 1};
    Poly h = x;
    for (int i = 1; i <= n / 2; ++i) {
        h = poly_powmod(F, h, F.q(), a);
        Poly g = poly_gcd(F, poly_sub(F, h, x), a);
        if (poly_deg(g) > 0) return false;
    }
    return true;
}

namespace {

Poly derivative(const Field& F, const Poly& a) {
    Poly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]));
    poly_trim(d);
    return d;
}

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Field& F, const Poly& a) {
    Poly r;
    for (std::size_t i = 0; i < a.size(); i += F.p()) r.push_back(F.frobenius(a[i], static_cast<std::int64_t>(F.f()) - 1));
    poly_trim(r);
    return r;
}

void squarefree_decompose(const Field& F, const Poly& a, int mult, std::vector<std::pair<Poly, int>>& out) {
    // Yun-style decomposition adapted to positive characteristic.
    if (poly_deg(a) < 1) return;
    Poly d = derivative(F, a);
    if (d.empty()) {
        squarefree_decompose(F, pth_root(F, a), mult * static_cast<int>(F.p()), out);
        return;
    }
    Poly c = poly_gcd(F, a, d);
    Poly w = poly_divmod(F, a, c).first;
    int i = 1;
    while (poly_deg(w) > 0) {
        Poly y = poly_gcd(F, w, c);
        Poly z = poly_divmod(F, w, y).first;
        if (poly_deg(z) > 0) out.emplace_back(poly_monic(F, z), i * mult);
        ++i;
        w = y;
        c = poly_divmod(F, c, y).first;
    }
    if (poly_deg(c) > 0) squarefree_decompose(F, pth_root(F, c), mult * static_cast<int>(F.p()), out);
}

void equal_degree_split(const Field& F, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    int n = poly_deg(g);
    if (n == d) {
        out.push_back(poly_monic(F, g));
        return;
    }
    std::uniform_int_distribution<Fq> coef(0, F.q() - 1);
    for (;;) {
        Poly a(n);
        for (auto& c : a) c = coef(rng);
        poly_trim(a);
        if (poly_deg(a) < 1) continue;
        Poly b;
        if (F.p() == 2) {
            // Trace from GF(q^d) to GF(2).
            Poly t = a, acc = a;
            for (unsigned j = 1; j < F.f() * static_cast<unsigned>(d); ++j) {
                t = poly_mod(F, poly_mul(F, t, t), g);
                acc = poly_add(F, acc, t);
            }
            b = acc;
        } else {
            std::uint64_t e = (checked_pow(F.q(), static_cast<unsigned>(d)) - 1) / 2;
            b = poly_sub(F, poly_powmod(F, a, e, g), Poly{1});
        }
        Poly h = poly_gcd(F, b, g);
        if (poly_deg(h) > 0 && poly_deg(h) < n) {
            equal_degree_split(F, h, d, rng, out);
            equal_degree_split(F, poly_divmod(F, g, h).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& a_in) {
    Poly a = a_in;
    poly_trim(a);
    if (poly_deg(a) < 1) return {};
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(F, poly_monic(F, a), 1, sqf);
    std::vector<std::pair<Poly, int>> out;
    std::mt19937_64 rng(0x5eed);
    for (auto& [f, mult] : sqf) {
        Poly rest = f;
        Poly x{0, 1}, h = x;
        for (int d = 1; poly_deg(rest) >= 2 * d; ++d) {
            h = poly_powmod(F, h, F.q(), rest);
            Poly g = poly_gcd(F, poly_sub(F, h, x), rest);
            if (poly_deg(g) > 0) {
                std::vector<Poly> parts;
                equal_degree_split(F, g, d, rng, parts);
                for (auto& p : parts) out.emplace_back(p, mult);
                rest = poly_divmod(F, rest, g).first;
                h = poly_mod(F, h, rest);
            }
        }
        if (poly_deg(rest) > 0) out.emplace_back(poly_monic(F, rest), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        if (l.first.size() != r.first.size()) return l.first.size() < r.first.size();
        return l.first < r.first;
    });
    // Merge repeats that arrive from different squarefree layers.
    std::vector<std::pair<Poly, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

}  // namespace spreadlab
