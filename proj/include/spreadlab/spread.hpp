#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/conjtab.hpp"
#include "spreadlab/permgroup.hpp"

namespace spreadlab {

using Rational = boost::multiprecision::cpp_rational;
using Bits = boost::dynamic_bitset<>;

constexpr std::uint64_t kExactBudget = 2000;

// x^{n/r} for n = order(x) and r its smallest prime divisor.
Perm reduce_to_prime_order(const Perm& x);

// Generation test against a fixed group: orbit count, then a randomized
// chain build that must reach |G|.
class GenTester {
public:
    explicit GenTester(const PermGroup& G);
    bool operator()(const Perm& a, const Perm& b) const;
    bool operator()(const std::vector<Perm>& elems) const;
    const PermGroup& group() const { return G_; }

private:
    PermGroup G_;
};

// Fully enumerated group for the exact-mode features. Elements are indexed
// by chain rank.
class SmallGroup {
public:
    explicit SmallGroup(const PermGroup& G, std::uint64_t budget = kExactBudget);
    const PermGroup& group() const { return G_; }
    const ClassTable& table() const { return table_; }
    std::size_t size() const { return elems_.size(); }
    const Perm& elem(std::uint64_t r) const { return elems_[r]; }
    std::uint64_t rank(const Perm& g) const { return G_.chain().rank(g); }
    std::uint32_t class_of(std::uint64_t r) const { return table_.id_of_rank(r); }
    // rep(class_of(r))^conj(r) = elem(r)
    const Perm& conj(std::uint64_t r) const { return conj_[r]; }
    // Ranks z with <rep(c), z> = G.
    const Bits& partners(std::uint32_t c) const;
    bool generates(std::uint64_t a, std::uint64_t b) const;
    const GenTester& tester() const { return tester_; }

private:
    PermGroup G_;
    ClassTable table_;
    GenTester tester_;
    std::vector<Perm> elems_;
    std::vector<Perm> conj_;
    mutable std::vector<std::optional<Bits>> partners_;
};

struct BlockerSet {
    std::uint64_t anchor = 0;  // rank
    Bits members;              // ranks z in the universe with <x, z> != G
};

// Anchors: every prime-order element (or every nonidentity element when
// prime_only is false). Universe: one class, or all nonidentity elements.
std::vector<BlockerSet> blocker_sets(const SmallGroup& S, std::optional<std::uint32_t> universe_class,
                                     bool prime_only = true);

// Indices of a minimum cover of `universe`, or nothing if none exists.
std::optional<std::vector<std::size_t>> min_cover(const std::vector<Bits>& sets, const Bits& universe);

struct SpreadResult {
    std::optional<std::uint64_t> value;  // nothing means infinite
    std::vector<Perm> cover;             // anchors of a minimum cover
    bool exhaustive = true;
    std::optional<std::uint32_t> best_class;
    std::vector<std::optional<std::uint64_t>> per_class;  // uniform spread per class
};

SpreadResult exact_spread(const PermGroup& G, bool prime_reduction = true, std::uint64_t budget = kExactBudget);
SpreadResult exact_uniform_spread(const PermGroup& G, bool prime_reduction = true,
                                  std::uint64_t budget = kExactBudget);

struct TupleRep {
    std::vector<Perm> elems;
    std::uint64_t orbit_size = 0;  // size of the diagonal conjugation orbit
};
// One representative per orbit of G on C1 x ... x Ck under diagonal
// conjugation; `table` must be the ordinary class table of G.
std::vector<TupleRep> tuple_orbit_reps(const PermGroup& G, const ClassTable& table,
                                       const std::vector<std::uint32_t>& classes,
                                       std::uint64_t budget = 10000000);

struct GeneratingGraph {
    std::vector<std::uint64_t> vertices;  // ranks of nonidentity elements
    std::vector<Bits> adj;                // indexed like vertices
};
GeneratingGraph generating_graph(const PermGroup& G, std::uint64_t budget = kExactBudget);
// Nothing when disconnected.
std::optional<std::uint64_t> graph_diameter(const GeneratingGraph& g);
std::uint64_t isolated_vertices(const GeneratingGraph& g);

// Probability that x and a random conjugate of s fail to generate,
// computed over the orbits of C_G(s) on x^G.
Rational exact_P(const PermGroup& G, const ClassTable& table, std::uint32_t x_class, std::uint32_t s_class);

// Bound: the class multiset has sum of P below 1.
// Prefix: for the stored prefix (x_1..x_j), the exact fraction of s^G blocked
// by some x_i plus the P values of the remaining classes is below 1.
// Witness / Sweep: z found by random sampling / by scanning s^G.
// Failed: no z exists for the stored (possibly partial) tuple, or none was
// found on the sampling-only path.
struct TupleRecord {
    enum class Status { Bound, Prefix, Witness, Sweep, Failed };
    std::vector<std::uint32_t> classes;  // in processing order
    std::vector<Perm> tuple;             // empty for Bound, a prefix for Prefix
    Status status = Status::Failed;
    std::optional<Perm> witness;
    std::uint64_t blocked = 0;  // Prefix: members of s^G blocked by the prefix
};

struct SpreadCertificate {
    std::string group_id;
    std::uint32_t s_class = 0;
    Perm s_rep;
    std::uint64_t k = 0, N = 0, seed = 0;
    std::vector<std::pair<std::uint32_t, Rational>> p_values;  // prime-order class -> P(x, s)
    std::vector<TupleRecord> records;
    bool success = false;

    std::vector<const TupleRecord*> failing() const;
    std::string to_text() const;
    static SpreadCertificate from_text(const std::string& text);
};

struct CertifyOptions {
    std::uint64_t N = 100;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    bool stage1 = true;
    std::uint64_t sweep_limit = 100000;
    std::uint64_t tuple_budget = 10000000;
    // Up to this class size s^G is indexed and blocker sets are used.
    std::uint64_t exact_class_limit = 4000000;
};

std::vector<std::uint32_t> prime_order_classes(const ClassTable& table);

SpreadCertificate certify_uniform_spread(const PermGroup& G, const ClassTable& table, std::uint32_t s_class,
                                         std::uint64_t k, const CertifyOptions& opt, const std::string& group_id = "");
// Rechecks every witness and every bound claim; false on the first mismatch.
bool replay_certificate(const SpreadCertificate& cert, const PermGroup& G, const ClassTable& table,
                        std::string* why = nullptr);

// Class of s minimizing the largest P(x, s) over prime-order x, among the
// candidates (all nonidentity classes when empty).
std::uint32_t auto_class(const PermGroup& G, const ClassTable& table, const std::vector<std::uint32_t>& candidates);

}  // namespace spreadlab
