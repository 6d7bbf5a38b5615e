#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "kdt/diagram.hpp"

namespace kdt {

using Kind = DiagramError::Kind;

namespace {

// Strip '#' comments and split on whitespace.
std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    bool comment = false;
    for (char ch : text) {
        if (ch == '\n') comment = false;
        if (comment) continue;
        if (ch == '#') {
            comment = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::array<ArcId, 4> parse_x_token(const std::string& tok) {
    // X[a,b,c,d]
    if (tok.size() < 9 || (tok[0] != 'X' && tok[0] != 'x') || tok[1] != '[' ||
        tok.back() != ']')
        throw DiagramError(Kind::Syntax, "malformed crossing token '" + tok + "'");
    std::array<ArcId, 4> legs{};
    std::size_t i = 2;
    for (int k = 0; k < 4; ++k) {
        std::size_t j = i;
        while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
        if (j == i) throw DiagramError(Kind::Syntax, "malformed crossing token '" + tok + "'");
        unsigned long v = std::stoul(tok.substr(i, j - i));
        if (v == 0 || v > 0xffffffffUL)
            throw DiagramError(Kind::Syntax, "arc id out of range in '" + tok + "'");
        legs[k] = static_cast<ArcId>(v);
        char expect = k < 3 ? ',' : ']';
        if (j >= tok.size() || tok[j] != expect)
            throw DiagramError(Kind::Syntax, "malformed crossing token '" + tok + "'");
        i = j + 1;
    }
    if (i != tok.size())
        throw DiagramError(Kind::Syntax, "malformed crossing token '" + tok + "'");
    return legs;
}

}  // namespace

Diagram parse_pd(std::string_view text) {
    std::vector<Crossing> cs;
    std::uint32_t circles = 0;
    CrossingId next_id = 1;
    for (auto& tok : tokenize(text)) {
        if (tok == "O" || tok == "o") {
            ++circles;
        } else {
            Crossing c;
            c.id = next_id++;
            c.legs = parse_x_token(tok);
            cs.push_back(c);
        }
    }
    return Diagram::from_crossings(std::move(cs), circles, /*strict_phases=*/true);
}

std::string Diagram::render() const {
    // compact arc relabeling: sorted old ids -> 1..2n
    std::map<ArcId, ArcId> relabel;
    for (std::size_t i = 0; i < arc_ids_.size(); ++i)
        relabel[arc_ids_[i]] = static_cast<ArcId>(i + 1);
    std::ostringstream os;
    bool first = true;
    for (auto& c : crossings_) {
        if (!first) os << ' ';
        first = false;
        os << "X[" << relabel[c.legs[0]] << ',' << relabel[c.legs[1]] << ','
           << relabel[c.legs[2]] << ',' << relabel[c.legs[3]] << ']';
    }
    for (std::uint32_t i = 0; i < free_circles_; ++i) {
        if (!first) os << ' ';
        first = false;
        os << 'O';
    }
    bool any_role = false;
    for (auto& c : crossings_) any_role |= c.role != Role::None;
    if (any_role) {
        os << "\n# roles:";
        for (std::size_t i = 0; i < crossings_.size(); ++i)
            if (crossings_[i].role != Role::None)
                os << ' ' << (i + 1) << '=' << role_name(crossings_[i].role) << '/'
                   << crossings_[i].gadget;
    }
    return os.str();
}

std::vector<std::pair<CrossingId, std::pair<Role, std::uint16_t>>>
parse_roles_comment(std::string_view text) {
    std::vector<std::pair<CrossingId, std::pair<Role, std::uint16_t>>> out;
    std::string t(text);
    auto pos = t.find("# roles:");
    if (pos == std::string::npos) return out;
    std::istringstream is(t.substr(pos + 8));
    std::string item;
    while (is >> item) {
        auto eq = item.find('=');
        auto sl = item.find('/');
        if (eq == std::string::npos || sl == std::string::npos || sl < eq) continue;
        CrossingId id = static_cast<CrossingId>(std::stoul(item.substr(0, eq)));
        auto role = role_from_name(item.substr(eq + 1, sl - eq - 1));
        std::uint16_t gadget = static_cast<std::uint16_t>(std::stoul(item.substr(sl + 1)));
        if (role) out.emplace_back(id, std::make_pair(*role, gadget));
    }
    return out;
}

// --- Gauss codes -----------------------------------------------------------

Diagram parse_gauss(std::string_view text) {
    struct Visit {
        unsigned label;
        bool over;
        int sign;
    };
    std::vector<std::vector<Visit>> comps(1);
    for (auto& tok : tokenize(text)) {
        if (tok == ";") {
            comps.emplace_back();
            continue;
        }
        std::string t = tok;
        bool trailing_sep = false;
        if (t.size() > 1 && t.back() == ';') {
            t.pop_back();
            trailing_sep = true;
        }
        if (t.size() < 3 || (t[0] != 'O' && t[0] != 'U'))
            throw DiagramError(Kind::Syntax, "malformed Gauss token '" + tok + "'");
        char last = t.back();
        if (last != '+' && last != '-')
            throw DiagramError(Kind::Syntax, "Gauss token missing sign: '" + tok + "'");
        for (std::size_t i = 1; i + 1 < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw DiagramError(Kind::Syntax, "malformed Gauss token '" + tok + "'");
        Visit v;
        v.label = static_cast<unsigned>(std::stoul(t.substr(1, t.size() - 2)));
        v.over = t[0] == 'O';
        v.sign = last == '+' ? 1 : -1;
        comps.back().push_back(v);
        if (trailing_sep) comps.emplace_back();
    }
    while (!comps.empty() && comps.back().empty()) comps.pop_back();
    if (comps.empty()) throw DiagramError(Kind::Syntax, "empty Gauss code");
    for (auto& c : comps)
        if (c.empty()) throw DiagramError(Kind::Syntax, "empty Gauss code component");

    // visits per crossing label
    struct Info {
        int over_seen = 0, under_seen = 0;
        int sign = 0;
        End over_entry_arc{}, under_entry_arc{};  // reused as arc slots below
        ArcId over_in = 0, over_out = 0, under_in = 0, under_out = 0;
    };
    std::map<unsigned, Info> info;

    ArcId next_arc = 1;
    for (auto& comp : comps) {
        ArcId first_arc = next_arc;
        std::size_t m = comp.size();
        for (std::size_t i = 0; i < m; ++i) {
            ArcId in = (i == 0) ? first_arc : next_arc;
            ArcId out = (i + 1 == m) ? first_arc : in + 1;
            auto& v = comp[i];
            auto& inf = info[v.label];
            if (inf.sign == 0)
                inf.sign = v.sign;
            else if (inf.sign != v.sign)
                throw DiagramError(Kind::Syntax, "crossing " + std::to_string(v.label) +
                                                     " visited with conflicting signs");
            if (v.over) {
                if (inf.over_seen++)
                    throw DiagramError(Kind::Syntax, "crossing " + std::to_string(v.label) +
                                                         " visited over twice");
                inf.over_in = in;
                inf.over_out = out;
            } else {
                if (inf.under_seen++)
                    throw DiagramError(Kind::Syntax, "crossing " + std::to_string(v.label) +
                                                         " visited under twice");
                inf.under_in = in;
                inf.under_out = out;
            }
            ++next_arc;
        }
    }

    std::vector<Crossing> cs;
    CrossingId cid = 1;
    for (auto& [label, inf] : info) {
        if (inf.over_seen != 1 || inf.under_seen != 1)
            throw DiagramError(Kind::Syntax, "crossing " + std::to_string(label) +
                                                 " must be visited once over and once under");
        Crossing c;
        c.id = cid++;
        c.legs[0] = inf.under_in;
        c.legs[2] = inf.under_out;
        if (inf.sign > 0) {
            c.legs[1] = inf.over_in;
            c.legs[3] = inf.over_out;
        } else {
            c.legs[3] = inf.over_in;
            c.legs[1] = inf.over_out;
        }
        cs.push_back(c);
    }
    return Diagram::from_crossings(std::move(cs), 0, /*strict_phases=*/true);
}

std::string render_gauss(const Diagram& d) {
    std::ostringstream os;
    bool first_comp = true;
    for (auto& cyc : d.component_cycles()) {
        if (!first_comp) os << " ; ";
        first_comp = false;
        bool first = true;
        for (auto e : cyc) {
            if (!first) os << ' ';
            first = false;
            bool over = (e.pos & 1) != 0;
            os << (over ? 'O' : 'U') << (e.cx + 1) << (d.sign(e.cx) > 0 ? '+' : '-');
        }
    }
    for (std::uint32_t i = 0; i < d.free_circles(); ++i) {
        if (!first_comp) os << " ; ";
        // a crossing-free circle has an empty Gauss word; render nothing
    }
    return os.str();
}

}  // namespace kdt
