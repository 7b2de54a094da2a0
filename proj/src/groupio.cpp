#include "spreadlab/groupio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spreadlab/error.hpp"

namespace spreadlab {

namespace {

struct Line {
    std::size_t no;
    std::string text;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") + 1 - b);
}

std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        out.push_back({no, line});
    }
    return out;
}

[[noreturn]] void fail_at(std::size_t no, const std::string& what) {
    fail(Errc::ParseError, "line " + std::to_string(no) + ": " + what);
}

// Message of a nested error without its code prefix.
std::string bare(const Error& e) {
    std::string w = e.what(), head = std::string(errc_name(e.code())) + ": ";
    return w.rfind(head, 0) == 0 ? w.substr(head.size()) : w;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

unsigned parse_unsigned(const std::string& w, std::size_t no) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        fail_at(no, "expected a number, got '" + w + "'");
    }
}

// Splits matrix entries, keeping "(a, b)" tuples together.
std::vector<std::string> entry_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ' ' || c == '\t') && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

Perm parse_generator(std::size_t degree, const std::string& text) {
    std::string t = trim(text);
    const std::string head = "images:";
    if (t.rfind(head, 0) != 0) return Perm::from_cycles(degree, t);
    std::vector<std::size_t> img;
    std::vector<char> seen(degree, 0);
    for (const auto& w : words(t.substr(head.size()))) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || used == 0) fail(Errc::ParseError, "bad image '" + w + "'");
        if (v >= degree) fail(Errc::ParseError, "image " + w + " outside degree");
        if (seen[v]) fail(Errc::ParseError, "image " + w + " repeated");
        seen[v] = 1;
        img.push_back(v);
    }
    if (img.size() != degree)
        fail(Errc::ParseError, "expected " + std::to_string(degree) + " images, got " + std::to_string(img.size()));
    return Perm::from_images(img);
}

std::string perm_group_to_text(const PermGroup& G, const std::string& comment) {
    std::ostringstream os;
    if (!comment.empty()) os << "# " << comment << '\n';
    os << "perm-group degree " << G.degree() << '\n';
    for (const auto& g : G.gens()) os << g.cycles() << '\n';
    return os.str();
}

PermGroup perm_group_from_text(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) fail(Errc::ParseError, "empty group file");
    auto head = words(lines[0].text);
    if (head.size() != 3 || head[0] != "perm-group" || head[1] != "degree")
        fail_at(lines[0].no, "expected 'perm-group degree N'");
    std::size_t n = parse_unsigned(head[2], lines[0].no);
    if (n == 0 || n > 65535) fail_at(lines[0].no, "degree out of range");
    std::vector<Perm> gens;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        try {
            gens.push_back(parse_generator(n, lines[i].text));
        } catch (const Error& e) {
            fail_at(lines[i].no, bare(e));
        }
    }
    return PermGroup(n, std::move(gens));
}

MatrixGroupData matrix_group_from_text(const std::string& text) {
    auto lines = content_lines(text);
    std::size_t i = 0;
    if (i < lines.size() && lines[i].text == "matrix-group") ++i;
    if (i >= lines.size()) fail(Errc::ParseError, "missing field header");
    MatrixGroupData d;
    {
        std::string t = lines[i].text;
        for (char& c : t)
            if (c == '[' || c == ']') c = ' ';
        auto w = words(t);
        if (w.size() < 3 || w[0] != "field") fail_at(lines[i].no, "expected 'field p f [c0 .. cf]'");
        unsigned p = parse_unsigned(w[1], lines[i].no), f = parse_unsigned(w[2], lines[i].no);
        std::optional<std::vector<unsigned>> irred;
        if (w.size() > 3) {
            irred.emplace();
            for (std::size_t k = 3; k < w.size(); ++k) irred->push_back(parse_unsigned(w[k], lines[i].no));
            if (irred->size() != f + 1) fail_at(lines[i].no, "expected " + std::to_string(f + 1) + " coefficients");
        }
        try {
            d.field = make_field(p, f, irred);
        } catch (const Error& e) {
            fail_at(lines[i].no, bare(e));
        }
        ++i;
    }
    if (i < lines.size() && lines[i].text.rfind("action", 0) == 0) {
        auto w = words(lines[i].text);
        if (w.size() != 2 || (w[1] != "projective" && w[1] != "vectors"))
            fail_at(lines[i].no, "expected 'action projective' or 'action vectors'");
        d.kind = w[1] == "vectors" ? DomainKind::Vectors : DomainKind::Projective;
        ++i;
    }
    for (; i < lines.size(); ++i) {
        const auto no = lines[i].no;
        auto tok = entry_tokens(lines[i].text);
        std::int64_t frob = 0;
        if (tok.size() >= 2 && tok[tok.size() - 2] == "semilinear") {
            frob = parse_unsigned(tok.back(), no) % d.field->f();
            tok.resize(tok.size() - 2);
        }
        std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(tok.size()))));
        if (n == 0 || n * n != tok.size())
            fail_at(no, std::to_string(tok.size()) + " entries do not form a square matrix");
        if (d.dim == 0) d.dim = n;
        if (n != d.dim) fail_at(no, "dimension " + std::to_string(n) + " differs from " + std::to_string(d.dim));
        MatF A(d.field, n);
        for (std::size_t k = 0; k < tok.size(); ++k) {
            try {
                A.at(k / n, k % n) = d.field->parse(tok[k]);
            } catch (const Error& e) {
                fail_at(no, bare(e));
            }
        }
        if (A.det() == 0) fail(Errc::ValidationFailed, "line " + std::to_string(no) + ": singular matrix");
        d.gens.emplace_back(A, frob);
    }
    if (d.gens.empty()) fail(Errc::ParseError, "no generators");
    return d;
}

std::string matrix_group_to_text(const MatrixGroupData& d) {
    std::ostringstream os;
    os << "matrix-group\nfield " << d.field->p() << ' ' << d.field->f();
    if (d.field->f() > 1) {
        os << " [";
        for (std::size_t k = 0; k < d.field->irred().size(); ++k) os << (k ? " " : "") << d.field->irred()[k];
        os << ']';
    }
    os << "\naction " << (d.kind == DomainKind::Vectors ? "vectors" : "projective") << '\n';
    for (const auto& g : d.gens) {
        for (std::size_t k = 0; k < g.A.data().size(); ++k) os << (k ? " " : "") << d.field->format(g.A.data()[k]);
        if (g.frob != 0) os << " semilinear " << g.frob;
        os << '\n';
    }
    return os.str();
}

PermGroup matrix_group_action(const MatrixGroupData& d) {
    VectorDomain dom(d.field, d.dim, d.kind);
    if (dom.size() > 65535) fail(Errc::BudgetExceeded, "action degree above 65535");
    std::vector<Perm> gens;
    for (const auto& g : d.gens) gens.push_back(dom.perm_of(g));
    return PermGroup(dom.size(), std::move(gens));
}

PermGroup group_from_text(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) fail(Errc::ParseError, "empty group file");
    const std::string& first = lines[0].text;
    if (first.rfind("perm-group", 0) == 0) return perm_group_from_text(text);
    if (first == "matrix-group" || first.rfind("field", 0) == 0)
        return matrix_group_action(matrix_group_from_text(text));
    fail_at(lines[0].no, "expected 'perm-group' or 'matrix-group' header");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::InvalidArgument, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LoadedGroup load_group(const std::string& source) {
    LoadedGroup out;
    out.id = source;
    if (source.rfind("zoo:", 0) == 0) {
        out.classical = classical_group(parse_group_spec(source.substr(4)));
        out.group = out.classical->group;
    } else if (source.rfind("atlas:", 0) == 0) {
        out.group = atlas_group(source.substr(6)).group;
    } else {
        out.group = group_from_text(read_file(source));
    }
    return out;
}

}  // namespace spreadlab
