#include "kdt/templates.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace kdt {

using Kind = DiagramError::Kind;

std::optional<CrossingId> TangleTemplate::find_role(Role r) const {
    for (auto& c : crossings)
        if (c.role == r) return c.id;
    return std::nullopt;
}

std::vector<CrossingId> TangleTemplate::roles(std::initializer_list<Role> rs) const {
    std::vector<CrossingId> out;
    for (auto r : rs) {
        auto id = find_role(r);
        if (!id)
            throw DiagramError(Kind::BadArgument,
                               std::string("template lacks role ") + role_name(r));
        out.push_back(*id);
    }
    return out;
}

namespace {

std::vector<std::string> lines_of(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> words_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string w;
    while (is >> w) {
        if (w[0] == '#') break;
        out.push_back(w);
    }
    return out;
}

std::array<ArcId, 4> parse_tuple(const std::string& tok) {
    if (tok.size() < 9 || tok[0] != 'X' || tok[1] != '[' || tok.back() != ']')
        throw DiagramError(Kind::Syntax, "malformed template crossing '" + tok + "'");
    std::array<ArcId, 4> legs{};
    std::size_t i = 2;
    for (int k = 0; k < 4; ++k) {
        std::size_t j = i;
        while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
        if (j == i) throw DiagramError(Kind::Syntax, "malformed template crossing '" + tok + "'");
        legs[k] = static_cast<ArcId>(std::stoul(tok.substr(i, j - i)));
        char expect = k < 3 ? ',' : ']';
        if (j >= tok.size() || tok[j] != expect)
            throw DiagramError(Kind::Syntax, "malformed template crossing '" + tok + "'");
        i = j + 1;
    }
    return legs;
}

}  // namespace

std::vector<TangleTemplate> parse_templates(std::string_view text) {
    std::vector<TangleTemplate> out;
    TangleTemplate* cur = nullptr;
    bool legs_seen = false;
    CrossingId next_id = 1;
    for (auto& line : lines_of(text)) {
        auto w = words_of(line);
        if (w.empty()) continue;
        if (w[0] == "tangle") {
            if (w.size() != 2) throw DiagramError(Kind::Syntax, "tangle header needs a name");
            out.emplace_back();
            cur = &out.back();
            cur->name = w[1];
            legs_seen = false;
            next_id = 1;
        } else if (w[0] == "legs") {
            if (!cur) throw DiagramError(Kind::Syntax, "legs before tangle header");
            if (w.size() != 5) throw DiagramError(Kind::Syntax, "legs needs four arc ids");
            for (int k = 0; k < 4; ++k)
                cur->legs[k] = static_cast<ArcId>(std::stoul(w[k + 1]));
            legs_seen = true;
        } else if (w[0][0] == 'X') {
            if (!cur || !legs_seen)
                throw DiagramError(Kind::Syntax, "crossing before tangle/legs header");
            Crossing c;
            c.id = next_id++;
            c.legs = parse_tuple(w[0]);
            if (w.size() > 1) {
                auto r = role_from_name(w[1]);
                if (!r) throw DiagramError(Kind::Syntax, "unknown role '" + w[1] + "'");
                c.role = *r;
            }
            cur->crossings.push_back(c);
        } else {
            throw DiagramError(Kind::Syntax, "unrecognized template line '" + line + "'");
        }
    }
    for (auto& t : out) {
        // each leg arc must occur exactly once among the crossings; internal twice
        std::map<ArcId, int> occ;
        for (auto& c : t.crossings)
            for (auto l : c.legs) ++occ[l];
        for (auto l : t.legs) ++occ[l];
        for (auto& [a, k] : occ)
            if (k != 2)
                throw DiagramError(Kind::Pairing, "template arc " + std::to_string(a) +
                                                      " used " + std::to_string(k) + " times");
    }
    return out;
}

std::string render_template(const TangleTemplate& t) {
    std::ostringstream os;
    os << "tangle " << t.name << "\n";
    os << "legs " << t.legs[0] << ' ' << t.legs[1] << ' ' << t.legs[2] << ' ' << t.legs[3]
       << "\n";
    for (auto& c : t.crossings) {
        os << "X[" << c.legs[0] << ',' << c.legs[1] << ',' << c.legs[2] << ',' << c.legs[3]
           << ']';
        if (c.role != Role::None) os << ' ' << role_name(c.role);
        os << "\n";
    }
    return os.str();
}

std::string_view builtin_templates_text() {
    // Placeholder identity fragments; superseded by data/templates.tmpl.
    return R"(tangle plus2
legs 1 2 3 4
X[1,2,3,4] C

tangle double
legs 1 2 3 4
X[1,2,3,4] P1
)";
}

TangleTemplate load_template(std::string_view name, const std::string& path) {
    std::string text;
    auto try_file = [&](const std::string& p) {
        if (p.empty()) return false;
        std::ifstream f(p);
        if (!f) return false;
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
        return true;
    };
    const char* env = std::getenv("KDT_TEMPLATES");
    if (!try_file(path) && !try_file(env ? env : "") &&
        !try_file(std::string(KDT_DATA_DIR) + "/templates.tmpl"))
        text = std::string(builtin_templates_text());
    for (auto& t : parse_templates(text))
        if (t.name == name) return t;
    throw DiagramError(Kind::BadArgument, "no template named '" + std::string(name) + "'");
}

namespace {

std::vector<Crossing> flipped_crossings(const TangleTemplate& t,
                                        const std::vector<CrossingId>& flips) {
    auto cs = t.crossings;
    for (auto id : flips) {
        bool found = false;
        for (auto& c : cs)
            if (c.id == id) {
                c.legs = {c.legs[1], c.legs[2], c.legs[3], c.legs[0]};
                found = true;
            }
        if (!found)
            throw DiagramError(Kind::BadArgument, "template flip of unknown crossing");
    }
    return cs;
}

struct MiniUF {
    std::vector<std::size_t> p;
    explicit MiniUF(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

std::vector<ArcId> arc_universe(const std::vector<Crossing>& cs,
                                const std::array<ArcId, 4>& legs) {
    std::vector<ArcId> arcs;
    for (auto& c : cs)
        for (auto l : c.legs) arcs.push_back(l);
    for (auto l : legs) arcs.push_back(l);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return arcs;
}

}  // namespace

Diagram template_closure(const TangleTemplate& t, bool numerator,
                         const std::vector<CrossingId>& flips) {
    auto cs = flipped_crossings(t, flips);
    auto arcs = arc_universe(cs, t.legs);
    auto aidx = [&](ArcId a) {
        return static_cast<std::size_t>(
            std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
    };
    MiniUF uf(arcs.size());
    if (numerator) {
        uf.unite(aidx(t.legs[0]), aidx(t.legs[3]));
        uf.unite(aidx(t.legs[1]), aidx(t.legs[2]));
    } else {
        uf.unite(aidx(t.legs[0]), aidx(t.legs[1]));
        uf.unite(aidx(t.legs[2]), aidx(t.legs[3]));
    }
    // representative per class
    std::vector<ArcId> rep(arcs.size(), 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto r = uf.find(i);
        if (rep[r] == 0 || arcs[i] < rep[r]) rep[r] = arcs[i];
    }
    std::vector<std::size_t> occ(arcs.size(), 0);
    for (auto& c : cs)
        for (auto& l : c.legs) ++occ[uf.find(aidx(l))];
    std::uint32_t circles = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (uf.find(i) == i && occ[i] == 0) ++circles;
    for (auto& c : cs)
        for (auto& l : c.legs) l = rep[uf.find(aidx(l))];
    return Diagram::from_crossings(std::move(cs), circles);
}

TangleBracket tangle_bracket(const TangleTemplate& t, const std::vector<CrossingId>& flips) {
    auto cs = flipped_crossings(t, flips);
    auto arcs = arc_universe(cs, t.legs);
    auto aidx = [&](ArcId a) {
        return static_cast<std::size_t>(
            std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
    };
    const std::size_t n = cs.size();
    if (n > 20) throw DiagramError(Kind::Budget, "tangle too large");
    TangleBracket out;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        MiniUF uf(arcs.size());
        std::size_t merges = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto& legs = cs[i].legs;
            std::pair<ArcId, ArcId> j0, j1;
            if (s >> i & 1) {
                j0 = {legs[0], legs[1]};
                j1 = {legs[2], legs[3]};
            } else {
                j0 = {legs[0], legs[3]};
                j1 = {legs[1], legs[2]};
            }
            for (auto [a, b] : {j0, j1}) {
                auto ra = uf.find(aidx(a)), rb = uf.find(aidx(b));
                if (ra != rb) {
                    uf.unite(ra, rb);
                    ++merges;
                }
            }
        }
        bool horiz = uf.find(aidx(t.legs[0])) == uf.find(aidx(t.legs[3])) &&
                     uf.find(aidx(t.legs[1])) == uf.find(aidx(t.legs[2]));
        bool vert = uf.find(aidx(t.legs[0])) == uf.find(aidx(t.legs[1])) &&
                    uf.find(aidx(t.legs[2])) == uf.find(aidx(t.legs[3]));
        if (horiz == vert)
            throw DiagramError(Kind::Validation, "tangle smoothing has crossed ends");
        // closed loops: arc classes not containing any boundary leg
        // classes total = arcs - merges; the two boundary strands account for 2
        std::size_t loops = arcs.size() - merges - 2;
        int exp = static_cast<int>(n) - 2 * __builtin_popcount(s);
        auto term = LaurentPolynomial::monomial(exp, 1) *
                    LaurentPolynomial::loop_value_pow(static_cast<unsigned>(loops));
        if (horiz)
            out.horizontal += term;
        else
            out.vertical += term;
    }
    return out;
}

Diagram splice_template(const Diagram& d, CrossingId at, const TangleTemplate& t,
                        std::uint16_t gadget) {
    auto cx = d.index_of(at);
    auto target = d.at(cx).legs;
    ArcId arc_base = d.max_arc_id();
    CrossingId id_base = d.max_crossing_id();

    // fresh relabeling of template arcs and ids
    auto arcs = arc_universe(t.crossings, t.legs);
    auto fresh = [&](ArcId a) {
        auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
        return static_cast<ArcId>(arc_base + 1 + (it - arcs.begin()));
    };
    Diagram::Surgery s;
    s.remove = {at};
    CrossingId nid = id_base;
    for (auto c : t.crossings) {
        c.id = ++nid;
        for (auto& l : c.legs) l = fresh(l);
        c.gadget = gadget;
        s.add.push_back(c);
    }
    for (int k = 0; k < 4; ++k) s.joins.emplace_back(target[k], fresh(t.legs[k]));
    return d.apply_surgery(s);
}

void TemplateValidation::add(bool pass, const std::string& what) {
    ok = ok && pass;
    lines.push_back(std::string(pass ? "PASS " : "FAIL ") + what);
}

namespace {

struct ClosureExpect {
    LaurentPolynomial poly;
    std::size_t mu;
};

ClosureExpect single_crossing_closure(bool numerator) {
    TangleTemplate id;
    id.name = "identity";
    id.legs = {1, 2, 3, 4};
    Crossing c;
    c.id = 1;
    c.legs = {1, 2, 3, 4};
    id.crossings = {c};
    auto d = template_closure(id, numerator);
    return {normalized_bracket(d), d.component_count()};
}

}  // namespace

TemplateValidation validate_template(const TangleTemplate& t, const SearchBudget& sb,
                                     const BracketBudget& bb) {
    TemplateValidation v;
    auto expect_n = single_crossing_closure(true);
    auto expect_d = single_crossing_closure(false);

    auto check_same_as_crossing = [&](const std::string& label,
                                      const std::vector<CrossingId>& flips) {
        for (bool num : {true, false}) {
            auto d = template_closure(t, num, flips);
            auto& expect = num ? expect_n : expect_d;
            bool poly_ok = normalized_bracket(d, bb) == expect.poly &&
                           d.component_count() == expect.mu;
            auto verdict = classify_triviality(d, sb, bb);
            v.add(poly_ok && verdict.trivial(),
                  label + (num ? " numerator" : " denominator") +
                      " closure matches the single crossing (" + verdict.name() + ")");
        }
    };

    bool plus2 = t.find_role(Role::C).has_value();
    if (plus2) {
        auto C = t.roles({Role::C});
        auto A = t.roles({Role::A1, Role::A2});
        auto B = t.roles({Role::B1, Role::B2});
        auto cat = [](std::vector<CrossingId> a, const std::vector<CrossingId>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        };
        check_same_as_crossing("G1:", {});
        check_same_as_crossing("G2: {C,A1,A2}", cat(C, A));
        check_same_as_crossing("G2: {C,B1,B2}", cat(C, B));
        check_same_as_crossing("G2: {A1,A2}", A);
        check_same_as_crossing("G2: {B1,B2}", B);
        check_same_as_crossing("G2: all five", cat(cat(C, A), B));
        {
            auto d = template_closure(t, true, C);
            auto verdict = classify_triviality(d, sb, bb);
            v.add(verdict.nontrivial(),
                  std::string("G3: {C} numerator closure stays knotted (") + verdict.name() +
                      ")");
        }
    } else {
        auto P = t.roles({Role::P1, Role::P2});
        check_same_as_crossing("2.7: as spliced,", {});
        check_same_as_crossing("2.7: designated pair {P1,P2}", P);
    }
    return v;
}

}  // namespace kdt
