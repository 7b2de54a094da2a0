#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <unordered_map>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "spreadlab/error.hpp"
#include "spreadlab/ffield.hpp"
#include "spreadlab/orbit.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

namespace {

// Conjugation on chain ranks of the ambient group.
struct RankConj {
    const StabChain& ch;
    std::vector<Point> base;
    mutable std::vector<Point> img, buf;

    explicit RankConj(const StabChain& c) : ch(c), base(c.base()), img(c.degree()), buf(base.size()) {}

    std::uint64_t operator()(std::uint64_t r, const Perm& g) const {
        ch.unrank_into(r, img.data());
        Perm gi = g.inverse();
        for (std::size_t l = 0; l < base.size(); ++l) buf[l] = g[img[gi[base[l]]]];
        return ch.rank_from_base_images(buf.data());
    }
};

std::size_t index_in(const std::vector<std::uint64_t>& sorted, std::uint64_t r) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), r);
    if (it == sorted.end() || *it != r) fail(Errc::Internal, "conjugate left its class");
    return static_cast<std::size_t>(it - sorted.begin());
}

void require_ordinary(const PermGroup& G, const ClassTable& table) {
    if (table.is_coset() || table.underlying_size() != G.order())
        fail(Errc::InvalidArgument, "an ordinary class table of the group is required");
}

// Nondecreasing k-tuples over `ids`.
std::vector<std::vector<std::uint32_t>> multisets(const std::vector<std::uint32_t>& ids, std::uint64_t k) {
    std::vector<std::vector<std::uint32_t>> out;
    if (ids.empty()) return out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<std::uint32_t> m;
        for (auto i : idx) m.push_back(ids[i]);
        out.push_back(std::move(m));
        std::size_t p = k;
        while (p > 0 && idx[p - 1] == ids.size() - 1) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t j = p; j < k; ++j) idx[j] = idx[p - 1];
    }
    return out;
}

std::string perm_token(const Perm& p) {
    std::string s = p.cycles();
    std::replace(s.begin(), s.end(), ' ', ',');
    return s;
}

const char* status_name(TupleRecord::Status s) {
    switch (s) {
        case TupleRecord::Status::Bound: return "bound";
        case TupleRecord::Status::Prefix: return "prefix";
        case TupleRecord::Status::Witness: return "witness";
        case TupleRecord::Status::Sweep: return "sweep";
        case TupleRecord::Status::Failed: return "failed";
    }
    return "failed";
}

TupleRecord::Status parse_status(const std::string& s) {
    if (s == "bound") return TupleRecord::Status::Bound;
    if (s == "prefix") return TupleRecord::Status::Prefix;
    if (s == "witness") return TupleRecord::Status::Witness;
    if (s == "sweep") return TupleRecord::Status::Sweep;
    if (s == "failed") return TupleRecord::Status::Failed;
    fail(Errc::ParseError, "unknown record status '" + s + "'");
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err) err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

bool generates_all(const GenTester& gen, const std::vector<Perm>& tuple, const Perm& z) {
    for (const auto& x : tuple)
        if (!gen(x, z)) return false;
    return true;
}

}  // namespace

std::vector<std::uint32_t> prime_order_classes(const ClassTable& table) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < table.size(); ++c)
        if (is_prime(table[c].order)) out.push_back(c);
    return out;
}

std::vector<TupleRep> tuple_orbit_reps(const PermGroup& G, const ClassTable& table,
                                       const std::vector<std::uint32_t>& classes, std::uint64_t budget) {
    require_ordinary(G, table);
    if (classes.empty()) fail(Errc::InvalidArgument, "no classes given");
    const StabChain& ch = table.acting().chain();
    RankConj act(ch);

    struct Partial {
        std::vector<Perm> elems;
        PermGroup stab;
    };
    std::vector<Partial> cur;
    {
        const Perm& x = table[classes[0]].rep;
        cur.push_back({{x}, conj_orbit_with_stabilizer(G, x).centralizer});
    }
    for (std::size_t i = 1; i < classes.size(); ++i) {
        std::vector<std::uint64_t> ranks = table.ranks_of(classes[i]);
        std::sort(ranks.begin(), ranks.end());
        std::vector<Partial> next;
        for (const auto& p : cur) {
            std::vector<char> seen(ranks.size(), 0);
            for (std::size_t j = 0; j < ranks.size(); ++j) {
                if (seen[j]) continue;
                auto os = orbit_stabilizer<std::uint64_t>(p.stab, ranks[j], act);
                for (auto r : os.orbit) seen[index_in(ranks, r)] = 1;
                Partial q{p.elems, os.stabilizer};
                q.elems.push_back(table.member(ranks[j]));
                next.push_back(std::move(q));
                if (next.size() > budget) fail(Errc::BudgetExceeded, "too many tuple representatives");
            }
        }
        cur = std::move(next);
    }
    std::vector<TupleRep> out;
    for (auto& p : cur) out.push_back({std::move(p.elems), G.order() / p.stab.order()});
    return out;
}

Rational exact_P(const PermGroup& G, const ClassTable& table, std::uint32_t x_class, std::uint32_t s_class) {
    require_ordinary(G, table);
    const Perm& s = table[s_class].rep;
    PermGroup C = conj_orbit_with_stabilizer(G, s).centralizer;
    std::vector<std::uint64_t> ranks = table.ranks_of(x_class);
    std::sort(ranks.begin(), ranks.end());
    RankConj act(table.acting().chain());

    std::vector<std::uint32_t> parent(ranks.size());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& c : C.gens())
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            auto a = find(static_cast<std::uint32_t>(i));
            auto b = find(static_cast<std::uint32_t>(index_in(ranks, act(ranks[i], c))));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::uint64_t> weight(ranks.size(), 0);
    for (std::size_t i = 0; i < ranks.size(); ++i) ++weight[find(static_cast<std::uint32_t>(i))];
    GenTester gen(G);
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (weight[i] && !gen(table.member(ranks[i]), s)) bad += weight[i];
    return Rational(bad, ranks.size());
}

std::vector<const TupleRecord*> SpreadCertificate::failing() const {
    std::vector<const TupleRecord*> out;
    for (const auto& r : records)
        if (r.status == TupleRecord::Status::Failed) out.push_back(&r);
    return out;
}

namespace {

// s^G indexed by sorted rank, with the members of s^G blocked by each needed
// class representative. Blocked sets of other class members are obtained by
// conjugating along the orbit tree of the representative.
class BlockerIndex {
public:
    BlockerIndex(const PermGroup& G, const ClassTable& table, std::uint32_t s_class)
        : G_(G), table_(table), gen_(G) {
        s_ranks_ = table.ranks_of(s_class);
        std::sort(s_ranks_.begin(), s_ranks_.end());
    }

    std::size_t size() const { return s_ranks_.size(); }
    const std::vector<std::uint64_t>& s_ranks() const { return s_ranks_; }
    const std::vector<std::uint64_t>& class_ranks(std::uint32_t c) const { return entries_.at(c)->ranks; }

    void prepare(const std::vector<std::uint32_t>& classes, unsigned jobs) {
        std::vector<std::uint32_t> todo;
        for (auto c : classes)
            if (!entries_.count(c)) todo.push_back(c);
        std::vector<std::unique_ptr<Entry>> built(todo.size());
        parallel_for(todo.size(), jobs, [&](std::size_t i) { built[i] = build(todo[i]); });
        for (std::size_t i = 0; i < todo.size(); ++i) entries_[todo[i]] = std::move(built[i]);
    }

    void add_blocked(std::uint32_t c, std::uint64_t x_rank, Bits& U, const RankConj& act) const {
        const Entry& e = *entries_.at(c);
        std::uint32_t i = e.pos.at(x_rank);
        if (i == 0) {
            for (auto b : e.blocked) U.set(b);
            return;
        }
        Perm t = e.tree.transversal(G_, i);
        for (auto b : e.blocked) U.set(index_in(s_ranks_, act(s_ranks_[b], t)));
    }

private:
    struct Entry {
        OrbitStab<std::uint64_t> tree;
        std::unordered_map<std::uint64_t, std::uint32_t> pos;
        std::vector<std::uint32_t> blocked;
        std::vector<std::uint64_t> ranks;  // the class, sorted
    };

    std::unique_ptr<Entry> build(std::uint32_t c) const {
        auto e = std::make_unique<Entry>();
        RankConj act(table_.acting().chain());
        const Perm& rep = table_[c].rep;
        e->tree = orbit_stabilizer<std::uint64_t>(G_, G_.chain().rank(rep), act);
        for (std::uint32_t i = 0; i < e->tree.orbit.size(); ++i) e->pos.emplace(e->tree.orbit[i], i);
        e->ranks = e->tree.orbit;
        std::sort(e->ranks.begin(), e->ranks.end());

        // orbits of C_G(rep) on s^G, one generation test per orbit
        const PermGroup& C = e->tree.stabilizer;
        std::vector<std::uint32_t> parent(s_ranks_.size());
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](std::uint32_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (const auto& g : C.gens())
            for (std::size_t i = 0; i < s_ranks_.size(); ++i) {
                auto a = find(static_cast<std::uint32_t>(i));
                auto b = find(static_cast<std::uint32_t>(index_in(s_ranks_, act(s_ranks_[i], g))));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        std::vector<char> bad(s_ranks_.size(), 0);
        for (std::size_t i = 0; i < s_ranks_.size(); ++i)
            if (parent[i] == i) bad[i] = !gen_(rep, table_.member(s_ranks_[i]));
        for (std::size_t i = 0; i < s_ranks_.size(); ++i)
            if (bad[find(static_cast<std::uint32_t>(i))]) e->blocked.push_back(static_cast<std::uint32_t>(i));
        return e;
    }

    const PermGroup& G_;
    const ClassTable& table_;
    GenTester gen_;
    std::vector<std::uint64_t> s_ranks_;
    std::map<std::uint32_t, std::unique_ptr<Entry>> entries_;
};

struct ChildOrbit {
    std::uint64_t rank;
    PermGroup stab;
};

// Orbits of H, acting by conjugation, on a class given by its sorted ranks.
std::vector<ChildOrbit> class_orbits(const PermGroup& H, const std::vector<std::uint64_t>& ranks, const RankConj& act,
                                     bool want_stabilizers) {
    std::vector<char> seen(ranks.size(), 0);
    std::vector<ChildOrbit> out;
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        if (seen[j]) continue;
        auto os = orbit_stabilizer<std::uint64_t>(H, ranks[j], act, 7, want_stabilizers);
        for (auto r : os.orbit) seen[index_in(ranks, r)] = 1;
        out.push_back({ranks[j], want_stabilizers ? os.stabilizer : PermGroup()});
    }
    return out;
}

std::uint64_t stream_index(std::size_t task, std::uint64_t leaf) { return (std::uint64_t{task} << 32) + leaf; }

}  // namespace

SpreadCertificate certify_uniform_spread(const PermGroup& G, const ClassTable& table, std::uint32_t s_class,
                                         std::uint64_t k, const CertifyOptions& opt, const std::string& group_id) {
    require_ordinary(G, table);
    if (k < 1 || opt.N < 1) fail(Errc::InvalidArgument, "k and N must be positive");
    if (s_class >= table.size() || table[s_class].order == 1)
        fail(Errc::InvalidArgument, "s must be a nonidentity class");
    SpreadCertificate cert;
    cert.group_id = group_id;
    cert.s_class = s_class;
    cert.s_rep = table[s_class].rep;
    cert.k = k;
    cert.N = opt.N;
    cert.seed = opt.seed;
    const Perm& s = cert.s_rep;
    auto primes = prime_order_classes(table);

    std::map<std::uint32_t, Rational> P;
    if (opt.stage1) {
        std::vector<Rational> vals(primes.size());
        parallel_for(primes.size(), opt.jobs, [&](std::size_t i) { vals[i] = exact_P(G, table, primes[i], s_class); });
        for (std::size_t i = 0; i < primes.size(); ++i) {
            P[primes[i]] = vals[i];
            cert.p_values.emplace_back(primes[i], vals[i]);
        }
    }

    // Multisets settled by the sum bound, and the remaining tasks with their
    // classes in processing order (largest P first).
    std::vector<std::vector<TupleRecord>> out;
    std::vector<std::vector<std::uint32_t>> tasks;
    std::vector<std::uint32_t> needed;
    for (const auto& m : multisets(primes, k)) {
        std::vector<TupleRecord> recs;
        std::vector<std::uint32_t> order = m;
        if (opt.stage1) {
            Rational sum = 0;
            for (auto c : m) sum += P[c];
            if (sum < 1) {
                TupleRecord rec;
                rec.classes = m;
                rec.status = TupleRecord::Status::Bound;
                recs.push_back(std::move(rec));
                order.clear();
            } else {
                std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return P[a] > P[b]; });
            }
        }
        for (auto c : order) needed.push_back(c);
        out.push_back(std::move(recs));
        tasks.push_back(std::move(order));
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

    GenTester gen(G);
    const std::uint64_t class_size = table[s_class].size;

    if (class_size <= opt.exact_class_limit) {
        BlockerIndex index(G, table, s_class);
        index.prepare(needed, opt.jobs);
        const std::size_t S = index.size();
        parallel_for(tasks.size(), opt.jobs, [&](std::size_t ti) {
            const auto& order = tasks[ti];
            if (order.empty()) return;
            auto& recs = out[ti];
            RankConj act(table.acting().chain());
            std::uint64_t leaf = 0;
            std::vector<Perm> elems;
            auto record = [&](TupleRecord::Status st, std::optional<Perm> w = std::nullopt, std::uint64_t blocked = 0) {
                TupleRecord rec;
                rec.classes = order;
                rec.tuple = elems;
                rec.status = st;
                rec.witness = std::move(w);
                rec.blocked = blocked;
                recs.push_back(std::move(rec));
            };
            std::function<void(std::size_t, const PermGroup&, const Bits&)> dfs = [&](std::size_t j, const PermGroup& H,
                                                                                      const Bits& U) {
                std::size_t cnt = U.count();
                if (cnt == S) return record(TupleRecord::Status::Failed);
                if (j == k) {
                    Rng rng = make_stream(opt.seed, stream_index(ti, leaf++));
                    for (std::uint64_t n = 0; n < opt.N; ++n) {
                        Perm z = conjugate(s, G.random_element(rng));
                        if (!U.test(index_in(index.s_ranks(), G.chain().rank(z))))
                            return record(TupleRecord::Status::Witness, z);
                    }
                    auto free = (~U).find_first();
                    return record(TupleRecord::Status::Sweep, table.member(index.s_ranks()[free]));
                }
                if (j > 0 && opt.stage1) {
                    Rational rest = 0;
                    for (std::size_t i = j; i < k; ++i) rest += P[order[i]];
                    if (Rational(cnt, S) + rest < 1) return record(TupleRecord::Status::Prefix, std::nullopt, cnt);
                }
                std::vector<ChildOrbit> children;
                if (j == 0) {
                    const Perm& rep = table[order[0]].rep;
                    children.push_back({G.chain().rank(rep), conj_orbit_with_stabilizer(G, rep).centralizer});
                } else {
                    children = class_orbits(H, index.class_ranks(order[j]), act, j + 1 < k);
                }
                for (const auto& ch : children) {
                    Bits U2 = U;
                    index.add_blocked(order[j], ch.rank, U2, act);
                    elems.push_back(table.member(ch.rank));
                    dfs(j + 1, ch.stab, U2);
                    elems.pop_back();
                }
            };
            dfs(0, G, Bits(S));
        });
    } else {
        // Sampling with direct generation tests, then a sweep for small classes.
        std::vector<std::uint64_t> sweep_ranks;
        if (class_size <= opt.sweep_limit) {
            sweep_ranks = table.ranks_of(s_class);
            std::sort(sweep_ranks.begin(), sweep_ranks.end());
        }
        parallel_for(tasks.size(), opt.jobs, [&](std::size_t ti) {
            const auto& order = tasks[ti];
            if (order.empty()) return;
            std::uint64_t leaf = 0;
            for (auto& t : tuple_orbit_reps(G, table, order, opt.tuple_budget)) {
                TupleRecord rec;
                rec.classes = order;
                rec.tuple = std::move(t.elems);
                rec.status = TupleRecord::Status::Failed;
                Rng rng = make_stream(opt.seed, stream_index(ti, leaf++));
                for (std::uint64_t n = 0; n < opt.N && !rec.witness; ++n) {
                    Perm z = conjugate(s, G.random_element(rng));
                    if (generates_all(gen, rec.tuple, z)) {
                        rec.status = TupleRecord::Status::Witness;
                        rec.witness = z;
                    }
                }
                for (std::size_t i = 0; i < sweep_ranks.size() && !rec.witness; ++i) {
                    Perm z = table.member(sweep_ranks[i]);
                    if (generates_all(gen, rec.tuple, z)) {
                        rec.status = TupleRecord::Status::Sweep;
                        rec.witness = z;
                    }
                }
                out[ti].push_back(std::move(rec));
            }
        });
    }
    for (auto& recs : out)
        for (auto& r : recs) cert.records.push_back(std::move(r));
    cert.success = cert.failing().empty();
    return cert;
}

bool replay_certificate(const SpreadCertificate& cert, const PermGroup& G, const ClassTable& table,
                        std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    require_ordinary(G, table);
    if (cert.s_rep.degree() != G.degree()) return reject("degree mismatch");
    if (cert.s_class >= table.size()) return reject("class id out of range");
    auto sc = table.find_class(cert.s_rep);
    if (!sc || *sc != cert.s_class) return reject("s is not in the recorded class");

    std::map<std::uint32_t, Rational> P;
    for (const auto& [c, v] : cert.p_values) {
        if (c >= table.size()) return reject("class id out of range");
        if (exact_P(G, table, c, cert.s_class) != v) return reject("P value for class " + std::to_string(c) + " differs");
        P[c] = v;
    }

    auto primes = prime_order_classes(table);
    std::set<std::vector<std::uint32_t>> seen;
    GenTester gen(G);
    std::unique_ptr<BlockerIndex> index;
    RankConj act(table.acting().chain());
    bool any_failed = false;
    for (std::size_t i = 0; i < cert.records.size(); ++i) {
        const auto& rec = cert.records[i];
        std::string where = "record " + std::to_string(i);
        if (rec.classes.size() != cert.k) return reject(where + ": wrong tuple length");
        for (auto c : rec.classes)
            if (c >= table.size() || !is_prime(table[c].order)) return reject(where + ": not a prime-order class");
        if (rec.tuple.size() > cert.k) return reject(where + ": tuple too long");
        for (std::size_t j = 0; j < rec.tuple.size(); ++j) {
            auto c = table.find_class(rec.tuple[j]);
            if (!c || *c != rec.classes[j]) return reject(where + ": tuple entry outside its class");
        }
        auto sorted = rec.classes;
        std::sort(sorted.begin(), sorted.end());
        seen.insert(sorted);
        switch (rec.status) {
            case TupleRecord::Status::Bound: {
                Rational sum = 0;
                for (auto c : rec.classes) {
                    if (!P.count(c)) return reject(where + ": no P value for class " + std::to_string(c));
                    sum += P[c];
                }
                if (sum >= 1) return reject(where + ": bound does not hold");
                break;
            }
            case TupleRecord::Status::Prefix: {
                std::size_t j = rec.tuple.size();
                if (j == 0 || j >= cert.k) return reject(where + ": bad prefix length");
                if (!index) index = std::make_unique<BlockerIndex>(G, table, cert.s_class);
                std::vector<std::uint32_t> cls(rec.classes.begin(), rec.classes.begin() + static_cast<std::ptrdiff_t>(j));
                index->prepare(cls, 1);
                Bits U(index->size());
                for (std::size_t a = 0; a < j; ++a) index->add_blocked(cls[a], G.chain().rank(rec.tuple[a]), U, act);
                if (U.count() != rec.blocked) return reject(where + ": blocked count differs");
                Rational sum(rec.blocked, index->size());
                for (std::size_t a = j; a < cert.k; ++a) {
                    if (!P.count(rec.classes[a])) return reject(where + ": no P value");
                    sum += P[rec.classes[a]];
                }
                if (sum >= 1) return reject(where + ": prefix bound does not hold");
                break;
            }
            case TupleRecord::Status::Witness:
            case TupleRecord::Status::Sweep: {
                if (rec.tuple.size() != cert.k || !rec.witness) return reject(where + ": incomplete record");
                auto wc = table.find_class(*rec.witness);
                if (!wc || *wc != cert.s_class) return reject(where + ": witness outside the class of s");
                if (!generates_all(gen, rec.tuple, *rec.witness)) return reject(where + ": witness does not generate");
                break;
            }
            case TupleRecord::Status::Failed: any_failed = true; break;
        }
    }
    for (const auto& m : multisets(primes, cert.k))
        if (!seen.count(m)) return reject("class multiset not covered by any record");
    if (cert.success == any_failed) return reject("success flag inconsistent with the records");
    return true;
}

std::uint32_t auto_class(const PermGroup& G, const ClassTable& table, const std::vector<std::uint32_t>& candidates) {
    require_ordinary(G, table);
    std::vector<std::uint32_t> cands = candidates;
    if (cands.empty())
        for (std::uint32_t c = 0; c < table.size(); ++c)
            if (table[c].order > 1) cands.push_back(c);
    if (cands.empty()) fail(Errc::InvalidArgument, "no candidate classes");
    auto primes = prime_order_classes(table);
    std::optional<std::pair<Rational, Rational>> best;
    std::uint32_t best_id = cands.front();
    for (auto s : cands) {
        Rational mx = 0, sum = 0;
        for (auto x : primes) {
            Rational p = exact_P(G, table, x, s);
            mx = std::max(mx, p);
            sum += p;
        }
        std::pair<Rational, Rational> key{mx, sum};
        if (!best || key < *best) {
            best = key;
            best_id = s;
        }
    }
    return best_id;
}

// ---------------------------------------------------------------- text form

std::string SpreadCertificate::to_text() const {
    std::ostringstream os;
    os << "spread-certificate 1\n";
    os << "group = " << (group_id.empty() ? "-" : group_id) << "\n";
    os << "degree = " << s_rep.degree() << "\n";
    os << "s_class = " << s_class << "\n";
    os << "s_rep = " << perm_token(s_rep) << "\n";
    os << "k = " << k << "\n";
    os << "N = " << N << "\n";
    os << "seed = " << seed << "\n";
    os << "success = " << (success ? "true" : "false") << "\n";
    for (const auto& [c, v] : p_values) os << "P " << c << " " << v.str() << "\n";
    for (const auto& r : records) {
        os << "record " << status_name(r.status) << " ";
        for (std::size_t i = 0; i < r.classes.size(); ++i) os << (i ? "," : "") << r.classes[i];
        os << " ";
        if (r.tuple.empty()) os << "-";
        for (std::size_t i = 0; i < r.tuple.size(); ++i) os << (i ? ";" : "") << perm_token(r.tuple[i]);
        os << " " << (r.witness ? perm_token(*r.witness) : "-");
        if (r.status == TupleRecord::Status::Prefix) os << " " << r.blocked;
        os << "\n";
    }
    return os.str();
}

SpreadCertificate SpreadCertificate::from_text(const std::string& text) {
    SpreadCertificate c;
    std::istringstream is(text);
    std::string line;
    std::size_t degree = 0;
    bool have_degree = false, header = false;
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream ss(s);
        while (std::getline(ss, cur, sep)) out.push_back(cur);
        return out;
    };
    auto perm = [&](const std::string& tok) {
        if (!have_degree) fail(Errc::ParseError, "degree must precede permutations");
        return Perm::from_cycles(degree, tok);
    };
    auto number = [](const std::string& s) {
        try {
            std::size_t pos = 0;
            auto v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad number '" + s + "'");
        }
    };
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (!header) {
            if (head != "spread-certificate") fail(Errc::ParseError, "not a spread certificate");
            header = true;
            continue;
        }
        if (head == "P") {
            std::string id, val;
            ls >> id >> val;
            try {
                c.p_values.emplace_back(static_cast<std::uint32_t>(number(id)), Rational(val));
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                fail(Errc::ParseError, "bad rational '" + val + "'");
            }
            continue;
        }
        if (head == "record") {
            std::string st, cls, tup, wit;
            if (!(ls >> st >> cls >> tup >> wit)) fail(Errc::ParseError, "short record line");
            TupleRecord r;
            r.status = parse_status(st);
            for (const auto& t : split(cls, ',')) r.classes.push_back(static_cast<std::uint32_t>(number(t)));
            if (tup != "-")
                for (const auto& t : split(tup, ';')) r.tuple.push_back(perm(t));
            if (wit != "-") r.witness = perm(wit);
            if (r.status == TupleRecord::Status::Prefix) {
                std::string b;
                if (!(ls >> b)) fail(Errc::ParseError, "prefix record without a blocked count");
                r.blocked = number(b);
            }
            c.records.push_back(std::move(r));
            continue;
        }
        std::string eq, value;
        ls >> eq >> value;
        if (eq != "=") fail(Errc::ParseError, "expected 'key = value' in line: " + line);
        if (head == "group") c.group_id = value == "-" ? "" : value;
        else if (head == "degree") {
            degree = number(value);
            have_degree = true;
        } else if (head == "s_class") c.s_class = static_cast<std::uint32_t>(number(value));
        else if (head == "s_rep") c.s_rep = perm(value);
        else if (head == "k") c.k = number(value);
        else if (head == "N") c.N = number(value);
        else if (head == "seed") c.seed = number(value);
        else if (head == "success") c.success = value == "true";
        else fail(Errc::ParseError, "unknown key '" + head + "'");
    }
    if (!header) fail(Errc::ParseError, "empty certificate");
    return c;
}

}  // namespace spreadlab
