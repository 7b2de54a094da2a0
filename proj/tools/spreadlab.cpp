// Command-line driver. Reports are "key = value" lines in a fixed order;
// exit status 0 = claim verified, 1 = claim falsified, 2 = usage, parse or
// budget error.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "spreadlab/acceptance.hpp"
#include "spreadlab/conjtab.hpp"
#include "spreadlab/error.hpp"
#include "spreadlab/groupio.hpp"
#include "spreadlab/grpzoo.hpp"
#include "spreadlab/shintani.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/subfpr.hpp"

using namespace spreadlab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Config {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::string out;
    bool timing = false;
};

class Report {
public:
    Report(const std::string& command, const Config& cfg) {
        put("tool", std::string("spreadlab ") + kVersion);
        put("command", command);
        put("seed", cfg.seed);
    }
    template <class T>
    void put(const std::string& key, const T& value) {
        os_ << key << " = " << value << '\n';
    }
    void raw(const std::string& text) { os_ << text; }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

std::string show(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "inf"; }

std::string power_text(const ConjClass& c) {
    if (c.power.empty()) return "-";
    std::string s;
    for (const auto& [r, id] : c.power) s += (s.empty() ? "" : ",") + std::to_string(r) + ":" + std::to_string(id);
    return s;
}

void class_lines(Report& rep, const ClassTable& t) {
    rep.put("classes", t.size());
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        const auto& c = t[i];
        rep.put("class." + std::to_string(i), "order " + std::to_string(c.order) + " size " + std::to_string(c.size) +
                                                  " centralizer " + std::to_string(c.centralizer) + " power " +
                                                  power_text(c));
    }
}

// T and theta for coset work: the zoo base and theta, or the group with an
// explicit generator.
std::pair<PermGroup, Perm> coset_of(const LoadedGroup& g, const std::string& theta) {
    if (!theta.empty()) return {g.group, parse_generator(g.group.degree(), theta)};
    if (g.classical && g.classical->theta) return {g.classical->base, *g.classical->theta};
    fail(Errc::InvalidArgument, g.id + " has no automorphism; pass --theta");
}

std::vector<SubgroupHandle> load_subgroups(const LoadedGroup& g, const std::string& source) {
    if (source == "maximal") return maximal_subgroups_tiny(g.group);
    if (source == "curated") {
        if (!g.classical) fail(Errc::InvalidArgument, "curated subgroups need a zoo: group");
        return curated_maximal_subgroups(*g.classical);
    }
    return subgroups_from_text(g.group, read_file(source));
}

std::uint64_t env_seed() {
    const char* s = std::getenv("SPREADLAB_SEED");
    if (!s || !*s) return 1;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "SPREADLAB_SEED is not a number");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite group spread, fixed point ratio and Shintani descent toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    Config cfg;
    std::optional<std::uint64_t> seed_opt;
    app.add_option("--seed", seed_opt, "Random seed (default: SPREADLAB_SEED or 1)");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "Element enumeration cap");
    app.add_option("--out", cfg.out, "Write the report to this file");
    app.add_flag("--timing", cfg.timing, "Include wall time in the report");

    std::string group, theta, cert_out, subgroups = "maximal", big, small, spaces = "1,isotropic";
    std::uint32_t cls = 0;
    std::uint64_t k = 2, N = 100;
    bool auto_cls = false, no_reduction = false, orthogonal = false, matrix = false, quick = false;
    std::vector<int> only;

    auto* zoo = app.add_subcommand("zoo", "Constructible groups");
    zoo->require_subcommand(1);
    auto* zoo_build = zoo->add_subcommand("build", "Emit a group file for a zoo spec");
    zoo_build->add_option("spec", group, "Spec such as Sp4(4):phi")->required();
    zoo_build->add_flag("--matrix", matrix, "Emit a matrix-group file instead of permutations");

    auto* classes = app.add_subcommand("classes", "Conjugacy class table");
    classes->add_option("group", group, "zoo:, atlas: or group file")->required();

    auto* coset = app.add_subcommand("coset-classes", "Classes of T in the coset T theta");
    coset->add_option("group", group, "T (or a zoo group with an automorphism)")->required();
    coset->add_option("--theta", theta, "Generator normalizing T, in cycle or images: notation");

    auto* spread = app.add_subcommand("spread", "Spread computations");
    spread->require_subcommand(1);
    auto* sp_exact = spread->add_subcommand("exact", "Exact s(G) and u(G)");
    auto* sp_uniform = spread->add_subcommand("uniform", "Exact u(G) per class");
    for (auto* c : {sp_exact, sp_uniform}) {
        c->add_option("group", group)->required();
        c->add_flag("--no-reduction", no_reduction, "Use every nonidentity anchor");
    }
    auto* sp_cert = spread->add_subcommand("certify", "Certify u(G) >= k for one class");
    sp_cert->add_option("group", group)->required();
    auto* cls_opt = sp_cert->add_option("--class", cls, "Class id of s");
    sp_cert->add_flag("--auto-class", auto_cls, "Pick s (outer coset first for zoo groups)")->excludes(cls_opt);
    sp_cert->add_option("-k", k, "Tuple size")->check(CLI::PositiveNumber);
    sp_cert->add_option("-N", N, "Random witness attempts per tuple");
    sp_cert->add_option("--cert", cert_out, "Write the certificate here");
    auto* sp_replay = spread->add_subcommand("replay", "Recheck a certificate");
    sp_replay->add_option("certificate", cert_out)->required();
    sp_replay->add_option("--group", group, "Group (default: the certificate's group)");

    auto* fpr = app.add_subcommand("fpr", "Fixed point ratios of prime-order classes");
    fpr->add_option("--group", group)->required();
    fpr->add_option("--subgroups", subgroups, "Subgroup file, 'maximal' or 'curated'");

    auto* pb = app.add_subcommand("probbound", "P(x, s) against the fpr sum");
    pb->add_option("--group", group)->required();
    pb->add_option("--class", cls, "Class id of s")->required();
    pb->add_option("--subgroups", subgroups, "Maximal subgroup file or 'maximal'");

    auto* graph = app.add_subcommand("graph", "Generating graph");
    graph->require_subcommand(1);
    auto* diam = graph->add_subcommand("diameter", "Diameter of the generating graph");
    diam->add_option("group", group)->required();

    auto* shin = app.add_subcommand("shintani", "Shintani descent checks");
    shin->require_subcommand(1);
    auto* verify = shin->add_subcommand("verify", "Compare coset classes with the small group");
    verify->add_option("--big", big, "T, or a zoo group with an automorphism")->required();
    verify->add_option("--theta", theta, "Generator of the coset when --big is a file");
    verify->add_option("--small", small)->required();
    verify->add_option("--subspaces", spaces, "k,isotropic or k,nondegenerate");
    verify->add_flag("--orthogonal", orthogonal, "Compare fixed quadratic form counts (even q)");

    auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
    accept->add_flag("--quick", quick, "Skip the k = 4 certification on Sp4(4):phi");
    accept->add_option("--only", only, "Criterion numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    std::string text;
    try {
        cfg.seed = seed_opt ? *seed_opt : env_seed();
        if (zoo_build->parsed()) {
            ClassicalGroup Z = classical_group(parse_group_spec(group));
            std::string comment = "zoo:" + group + " order " + std::to_string(Z.group.order());
            if (matrix) {
                MatrixGroupData d;
                d.field = Z.spec.field;
                d.dim = Z.spec.dim();
                d.kind = Z.domain->kind();
                d.gens = group_gen_maps(Z);
                text = "# " + comment + "\n" + matrix_group_to_text(d);
            } else {
                text = perm_group_to_text(Z.group, comment);
                if (Z.theta) text = "# theta " + Z.theta->cycles() + "\n" + text;
            }
        } else if (accept->parsed()) {
            AcceptOptions opt;
            opt.only = only;
            opt.quick = quick;
            opt.jobs = cfg.jobs;
            opt.on_result = [](const CriterionResult& r) {
                std::cout << r.line() << std::endl;
                std::cerr << "criterion " << r.id << " took " << r.seconds << " s\n";
            };
            bool ok = true;
            for (const auto& r : run_acceptance(opt)) ok = ok && r.pass;
            status = ok ? 0 : 1;
        } else {
            Report rep(app.get_subcommands()[0]->get_name() +
                           (app.get_subcommands()[0]->get_subcommands().empty()
                                ? ""
                                : " " + app.get_subcommands()[0]->get_subcommands()[0]->get_name()),
                       cfg);
            if (classes->parsed()) {
                LoadedGroup g = load_group(group);
                rep.put("group", g.id);
                rep.put("order", g.group.order());
                class_lines(rep, conjugacy_classes(g.group, cfg.budget));
            } else if (coset->parsed()) {
                LoadedGroup g = load_group(group);
                auto [T, th] = coset_of(g, theta);
                rep.put("group", g.id);
                rep.put("acting.order", T.order());
                rep.put("theta", th.cycles());
                rep.put("theta.order_mod_T", order_modulo(T, th));
                class_lines(rep, coset_classes(T, th, cfg.budget));
            } else if (sp_exact->parsed() || sp_uniform->parsed()) {
                LoadedGroup g = load_group(group);
                rep.put("group", g.id);
                rep.put("order", g.group.order());
                rep.put("prime_reduction", no_reduction ? "off" : "on");
                if (sp_exact->parsed()) {
                    auto s = exact_spread(g.group, !no_reduction);
                    rep.put("s", show(s.value));
                }
                auto u = exact_uniform_spread(g.group, !no_reduction);
                rep.put("u", show(u.value));
                if (u.best_class) rep.put("u.best_class", *u.best_class);
                for (std::size_t c = 0; c < u.per_class.size(); ++c)
                    rep.put("u.class." + std::to_string(c), show(u.per_class[c]));
            } else if (sp_cert->parsed()) {
                LoadedGroup g = load_group(group);
                ClassTable t = conjugacy_classes(g.group, cfg.budget);
                if (auto_cls) {
                    std::vector<std::uint32_t> cands;
                    if (g.classical && g.classical->theta)
                        for (std::uint32_t c = 0; c < t.size(); ++c)
                            if (!g.classical->base.contains(t[c].rep)) cands.push_back(c);
                    cls = auto_class(g.group, t, cands);
                } else if (cls >= t.size()) {
                    fail(Errc::InvalidArgument, "class id out of range");
                }
                CertifyOptions opt;
                opt.N = N;
                opt.seed = cfg.seed;
                opt.jobs = cfg.jobs;
                SpreadCertificate c = certify_uniform_spread(g.group, t, cls, k, opt, g.id);
                std::map<std::string, std::size_t> counts;
                const char* names[] = {"bound", "prefix", "witness", "sweep", "failed"};
                for (const auto& r : c.records) counts[names[static_cast<int>(r.status)]]++;
                rep.put("group", g.id);
                rep.put("class", cls);
                rep.put("class.order", t[cls].order);
                rep.put("k", k);
                rep.put("N", N);
                rep.put("records", c.records.size());
                for (const auto& [n, v] : counts) rep.put("records." + n, v);
                rep.put("success", c.success ? "true" : "false");
                if (!cert_out.empty()) {
                    std::ofstream(cert_out, std::ios::binary) << c.to_text();
                    rep.put("certificate", cert_out);
                }
                status = c.success ? 0 : 1;
            } else if (sp_replay->parsed()) {
                SpreadCertificate c = SpreadCertificate::from_text(read_file(cert_out));
                if (group.empty()) group = c.group_id;
                if (group.empty()) fail(Errc::InvalidArgument, "certificate names no group; pass --group");
                LoadedGroup g = load_group(group);
                ClassTable t = conjugacy_classes(g.group, cfg.budget);
                std::string why;
                bool ok = replay_certificate(c, g.group, t, &why);
                rep.put("group", g.id);
                rep.put("class", c.s_class);
                rep.put("k", c.k);
                rep.put("records", c.records.size());
                rep.put("certificate.success", c.success ? "true" : "false");
                rep.put("replay", ok ? "ok" : "mismatch");
                if (!ok) rep.put("replay.reason", why);
                status = ok && c.success ? 0 : 1;
            } else if (fpr->parsed()) {
                LoadedGroup g = load_group(group);
                ClassTable t = conjugacy_classes(g.group, cfg.budget);
                auto subs = load_subgroups(g, subgroups);
                rep.put("group", g.id);
                rep.put("subgroups", subs.size());
                for (std::size_t i = 0; i < subs.size(); ++i)
                    rep.put("subgroup." + std::to_string(i), subs[i].label + " ; order " + std::to_string(subs[i].order()));
                std::size_t i = 0;
                if (subgroups == "curated") {
                    for (const auto& r : fpr_bound_check(*g.classical, t, subs)) {
                        std::ostringstream v;
                        v << "x " << r.x_class << " ; " << r.label << " ; fpr " << r.fpr << " ; bound "
                          << (r.bound ? r.bound->text : "-") << " ; " << (r.satisfied ? "satisfied" : "violated");
                        rep.put("record." + std::to_string(i++), v.str());
                        if (!r.satisfied) status = 1;
                    }
                } else {
                    for (const auto& H : subs)
                        for (std::uint32_t x : prime_order_classes(t)) {
                            std::ostringstream v;
                            v << "x " << x << " ; " << H.label << " ; fpr " << exact_fpr(g.group, t, x, H);
                            rep.put("record." + std::to_string(i++), v.str());
                        }
                }
            } else if (pb->parsed()) {
                LoadedGroup g = load_group(group);
                ClassTable t = conjugacy_classes(g.group, cfg.budget);
                if (cls >= t.size()) fail(Errc::InvalidArgument, "class id out of range");
                auto r = prob_bound_report(g.group, t, cls, load_subgroups(g, subgroups));
                rep.put("group", g.id);
                rep.raw(r.to_text());
                status = r.inequality_holds ? 0 : 1;
            } else if (diam->parsed()) {
                LoadedGroup g = load_group(group);
                auto gg = generating_graph(g.group);
                rep.put("group", g.id);
                rep.put("vertices", gg.vertices.size());
                rep.put("isolated", isolated_vertices(gg));
                auto d = graph_diameter(gg);
                rep.put("diameter", d ? std::to_string(*d) : std::string("disconnected"));
            } else if (verify->parsed()) {
                LoadedGroup b = load_group(big), s = load_group(small);
                CorrespondenceReport r;
                if (theta.empty() && b.classical && s.classical) {
                    ShintaniOptions opt;
                    auto comma = spaces.find(',');
                    if (comma == std::string::npos) fail(Errc::InvalidArgument, "--subspaces expects k,flavor");
                    opt.subspace_k = static_cast<unsigned>(std::stoul(spaces.substr(0, comma)));
                    std::string fl = spaces.substr(comma + 1);
                    if (fl != "isotropic" && fl != "nondegenerate")
                        fail(Errc::InvalidArgument, "flavor must be isotropic or nondegenerate");
                    opt.flavor = fl == "isotropic" ? SubspaceFlavor::TotallyIsotropic : SubspaceFlavor::Nondegenerate;
                    opt.orthogonal = orthogonal;
                    r = shintani_verify(*b.classical, *s.classical, opt);
                } else {
                    auto [T, th] = coset_of(b, theta);
                    r = shintani_verify_perm(T, th, s.group, b.id, s.id);
                    rep.put("note", "form statistics need zoo: groups on both sides");
                }
                rep.raw(r.to_text());
                status = r.all_match() ? 0 : 1;
            }
            text = rep.str();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.timing && !text.empty() && !zoo_build->parsed()) text += "time.seconds = " + std::to_string(secs) + '\n';
    else std::cerr << "wall time " << secs << " s\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.out << '\n';
            return 2;
        }
        f << text;
    }
    return status;
}
