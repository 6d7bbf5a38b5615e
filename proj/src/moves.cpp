#include "kdt/moves.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace kdt {

using Kind = DiagramError::Kind;

std::string Move::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case MoveKind::R1Down:
            os << "R1-(c" << c[0] << ")";
            break;
        case MoveKind::R2Down:
            os << "R2-(c" << c[0] << ",c" << c[1] << ")";
            break;
        case MoveKind::R3:
            os << "R3(c" << c[0] << "@" << int(p[0]) << ",c" << c[1] << "@" << int(p[1])
               << ",c" << c[2] << "@" << int(p[2]) << ")";
            break;
        case MoveKind::R1Up:
            os << "R1+(a" << arc << ",v" << int(variant) << ")";
            break;
        case MoveKind::R2Up:
            os << "R2+(c" << c[0] << "@" << int(p[0]) << ",c" << c[1] << "@" << int(p[1])
               << (over ? ",over" : ",under") << ")";
            break;
    }
    return os.str();
}

bool operator<(const Move& a, const Move& b) {
    auto key = [](const Move& m) {
        return std::make_tuple(static_cast<int>(m.kind), m.c[0], m.p[0], m.c[1], m.p[1],
                               m.c[2], m.p[2], m.arc, m.variant, m.over);
    };
    return key(a) < key(b);
}

bool operator==(const Move& a, const Move& b) {
    return !(a < b) && !(b < a);
}

namespace {

// over/under parity census of an arc: 2 = over at both ends, 0 = under at
// both, 1 = mixed
int arc_parity(const Diagram& d, ArcId a) {
    auto& ends = d.arc_ends(d.arc_index(a));
    return (ends[0].pos & 1) + (ends[1].pos & 1);
}

struct TrianglePattern {
    // arcs by height of their strand across the triangle
    ArcId top, mid, bot;
    End top_arr, mid_arr, bot_arr;  // arrivals of those arcs on the face
    bool valid = false;
};

TrianglePattern triangle_pattern(const Diagram& d, const Face& f) {
    TrianglePattern t;
    if (f.arrivals.size() != 3) return t;
    End e0 = f.arrivals[0], e1 = f.arrivals[1], e2 = f.arrivals[2];
    if (e0.cx == e1.cx || e1.cx == e2.cx || e0.cx == e2.cx) return t;
    struct P {
        ArcId a;
        End arr;
        int par;
    };
    std::array<P, 3> ps = {P{d.arc_at(e0), e0, 0}, P{d.arc_at(e1), e1, 0},
                           P{d.arc_at(e2), e2, 0}};
    for (auto& pp : ps) pp.par = arc_parity(d, pp.a);
    std::sort(ps.begin(), ps.end(), [](const P& x, const P& y) { return x.par > y.par; });
    if (ps[0].par != 2 || ps[1].par != 1 || ps[2].par != 0) return t;
    t.top = ps[0].a;
    t.mid = ps[1].a;
    t.bot = ps[2].a;
    t.top_arr = ps[0].arr;
    t.mid_arr = ps[1].arr;
    t.bot_arr = ps[2].arr;
    t.valid = true;
    return t;
}

bool bigon_r2_site(const Diagram& d, const Face& f, Move& out) {
    if (f.arrivals.size() != 2) return false;
    End e0 = f.arrivals[0], e1 = f.arrivals[1];
    if (e0.cx == e1.cx) return false;
    ArcId a = d.arc_at(e0), b = d.arc_at(e1);
    if (a == b) return false;
    int pa = arc_parity(d, a), pb = arc_parity(d, b);
    if (!((pa == 2 && pb == 0) || (pa == 0 && pb == 2))) return false;
    CrossingId i1 = d.at(e0.cx).id, i2 = d.at(e1.cx).id;
    out.kind = MoveKind::R2Down;
    out.c[0] = std::min(i1, i2);
    out.c[1] = std::max(i1, i2);
    return true;
}

}  // namespace

std::size_t non_alternating_edges(const Diagram& d) {
    std::size_t k = 0;
    for (auto a : d.arc_ids())
        if (arc_parity(d, a) != 1) ++k;
    return k;
}

std::vector<Move> available_moves(const Diagram& d, bool include_insertions) {
    std::vector<Move> out;

    // R1-: crossings with a monogon
    for (std::size_t cx = 0; cx < d.size(); ++cx) {
        auto& legs = d.at(cx).legs;
        for (int p = 0; p < 4; ++p)
            if (legs[p] == legs[(p + 1) & 3]) {
                Move m;
                m.kind = MoveKind::R1Down;
                m.c[0] = d.at(cx).id;
                out.push_back(m);
                break;
            }
    }

    // R2-: bigon faces with a full over strand
    for (auto& f : d.faces()) {
        Move m;
        if (bigon_r2_site(d, f, m)) out.push_back(m);
    }

    // R3: admissible triangles
    for (auto& f : d.faces()) {
        auto t = triangle_pattern(d, f);
        if (!t.valid) continue;
        Move m;
        m.kind = MoveKind::R3;
        std::array<End, 3> arr = {f.arrivals[0], f.arrivals[1], f.arrivals[2]};
        std::sort(arr.begin(), arr.end(), [&](End x, End y) {
            return std::make_pair(d.at(x.cx).id, x.pos) < std::make_pair(d.at(y.cx).id, y.pos);
        });
        for (int i = 0; i < 3; ++i) {
            m.c[i] = d.at(arr[i].cx).id;
            m.p[i] = arr[i].pos;
        }
        out.push_back(m);
    }

    if (include_insertions) {
        // R1+: four kink variants per arc
        for (auto a : d.arc_ids())
            for (std::uint8_t v = 0; v < 4; ++v) {
                Move m;
                m.kind = MoveKind::R1Up;
                m.arc = a;
                m.variant = v;
                out.push_back(m);
            }
        // R2+: push one face edge across another
        for (auto& f : d.faces()) {
            auto k = f.arrivals.size();
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (i == j) continue;
                    for (bool ov : {true, false}) {
                        Move m;
                        m.kind = MoveKind::R2Up;
                        m.c[0] = d.at(f.arrivals[i].cx).id;
                        m.p[0] = f.arrivals[i].pos;
                        m.c[1] = d.at(f.arrivals[j].cx).id;
                        m.p[1] = f.arrivals[j].pos;
                        m.over = ov;
                        out.push_back(m);
                    }
                }
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

Diagram apply_r1_down(const Diagram& d, const Move& m) {
    auto cx = d.index_of(m.c[0]);
    auto& legs = d.at(cx).legs;
    for (int p = 0; p < 4; ++p) {
        if (legs[p] == legs[(p + 1) & 3]) {
            Diagram::Surgery s;
            s.remove = {m.c[0]};
            s.joins = {{legs[(p + 2) & 3], legs[(p + 3) & 3]}};
            return d.apply_surgery(s);
        }
    }
    throw DiagramError(Kind::BadArgument, "R1- site has no monogon");
}

Diagram apply_r2_down(const Diagram& d, const Move& m) {
    for (auto& f : d.faces()) {
        Move site;
        if (!bigon_r2_site(d, f, site)) continue;
        if (site.c[0] != m.c[0] || site.c[1] != m.c[1]) continue;
        End e0 = f.arrivals[0], e1 = f.arrivals[1];
        std::size_t c1 = e0.cx, c2 = e1.cx;
        // bigon arc a: ends (c1, e0.pos), (c2, e1.pos+1); arc b: (c1, e0.pos+1), (c2, e1.pos)
        std::uint8_t pa1 = e0.pos, pa2 = (e1.pos + 1) & 3;
        std::uint8_t pb1 = (e0.pos + 1) & 3, pb2 = e1.pos;
        Diagram::Surgery s;
        s.remove = {d.at(c1).id, d.at(c2).id};
        s.joins = {{d.at(c1).legs[(pa1 + 2) & 3], d.at(c2).legs[(pa2 + 2) & 3]},
                   {d.at(c1).legs[(pb1 + 2) & 3], d.at(c2).legs[(pb2 + 2) & 3]}};
        return d.apply_surgery(s);
    }
    throw DiagramError(Kind::BadArgument, "R2- site is not an over/under bigon");
}

Diagram apply_r1_up(const Diagram& d, const Move& m) {
    auto arc_idx = d.arc_index(m.arc);  // throws if unknown
    auto ends = d.arc_ends(arc_idx);
    ArcId a1 = d.max_arc_id() + 1, a2 = a1 + 1, loop = a1 + 2;
    CrossingId nid = d.max_crossing_id() + 1;
    Crossing k;
    k.id = nid;
    switch (m.variant) {
        case 0: k.legs = {a1, loop, loop, a2}; break;
        case 1: k.legs = {a1, a2, loop, loop}; break;
        case 2: k.legs = {loop, a1, a2, loop}; break;
        case 3: k.legs = {loop, loop, a2, a1}; break;
        default: throw DiagramError(Kind::BadArgument, "R1+ variant out of range");
    }
    Diagram::Surgery s;
    s.add = {k};
    s.rewrites = {{d.at(ends[0].cx).id, {ends[0].pos, a1}},
                  {d.at(ends[1].cx).id, {ends[1].pos, a2}}};
    return d.apply_surgery(s);
}

Diagram apply_r2_up(const Diagram& d, const Move& m) {
    End se{static_cast<std::uint32_t>(d.index_of(m.c[0])), m.p[0]};
    End sg{static_cast<std::uint32_t>(d.index_of(m.c[1])), m.p[1]};
    if (se == sg) throw DiagramError(Kind::BadArgument, "R2+ needs two distinct corners");
    if (d.face_of_arrival(se) != d.face_of_arrival(sg))
        throw DiagramError(Kind::BadArgument, "R2+ corners must share a face");
    ArcId e = d.arc_at(se), g = d.arc_at(sg);
    ArcId base = d.max_arc_id();
    CrossingId x1 = d.max_crossing_id() + 1, x2 = x1 + 1;
    Diagram::Surgery s;
    Crossing X1, X2;
    X1.id = x1;
    X2.id = x2;
    if (e != g) {
        ArcId ea = base + 1, eb = base + 2, ga = base + 3, gb = base + 4, tip = base + 5,
              mid = base + 6;
        End e_other = d.other_end(se), g_other = d.other_end(sg);
        s.rewrites = {{d.at(se.cx).id, {se.pos, ea}},
                      {d.at(e_other.cx).id, {e_other.pos, eb}},
                      {d.at(sg.cx).id, {sg.pos, ga}},
                      {d.at(g_other.cx).id, {g_other.pos, gb}}};
        X1.legs = {mid, ea, ga, tip};
        X2.legs = {gb, eb, mid, tip};
    } else {
        // pushing an arc across a face over/under itself
        ArcId ea = base + 1, beta = base + 2, gc = base + 3, tip = base + 4, mid = base + 5;
        s.rewrites = {{d.at(se.cx).id, {se.pos, ea}}, {d.at(sg.cx).id, {sg.pos, gc}}};
        X1.legs = {mid, ea, beta, tip};
        X2.legs = {gc, beta, mid, tip};
    }
    if (!m.over) {
        // pushed strand below: rotate both tuples so the other diagonal is under
        X1.legs = {X1.legs[1], X1.legs[2], X1.legs[3], X1.legs[0]};
        X2.legs = {X2.legs[1], X2.legs[2], X2.legs[3], X2.legs[0]};
    }
    s.add = {X1, X2};
    return d.apply_surgery(s);
}

Diagram apply_r3(const Diagram& d, const Move& m) {
    // locate the face
    End a0{static_cast<std::uint32_t>(d.index_of(m.c[0])), m.p[0]};
    auto fid = d.face_of_arrival(a0);
    auto& f = d.faces()[fid];
    if (f.arrivals.size() != 3)
        throw DiagramError(Kind::BadArgument, "R3 site is not a triangle");
    for (int i = 0; i < 3; ++i) {
        End ai{static_cast<std::uint32_t>(d.index_of(m.c[i])), m.p[i]};
        if (d.face_of_arrival(ai) != fid)
            throw DiagramError(Kind::BadArgument, "R3 corners do not share a face");
    }
    auto t = triangle_pattern(d, f);
    if (!t.valid) throw DiagramError(Kind::BadArgument, "R3 pattern not admissible");

    // corner i joins the arriving arc of f.arrivals[i] (at position pos) and
    // the departing arc of the walk (at position pos+1)
    std::size_t x = 0, y = 0, z = 0;  // top/mid, top/bot, mid/bot corners
    std::uint8_t po_x = 0, pm_x = 0, po_y = 0, pu_y = 0, pm_z = 0, pu_z = 0;
    for (int i = 0; i < 3; ++i) {
        End arr = f.arrivals[i];
        ArcId in = d.arc_at(arr);
        std::uint8_t pin = arr.pos, pout = (arr.pos + 1) & 3;
        ArcId outa = d.at(arr.cx).legs[pout];
        auto both = [&](ArcId p, ArcId q) {
            return (in == p && outa == q) || (in == q && outa == p);
        };
        if (both(t.top, t.mid)) {
            x = arr.cx;
            po_x = in == t.top ? pin : pout;
            pm_x = in == t.mid ? pin : pout;
        } else if (both(t.top, t.bot)) {
            y = arr.cx;
            po_y = in == t.top ? pin : pout;
            pu_y = in == t.bot ? pin : pout;
        } else if (both(t.mid, t.bot)) {
            z = arr.cx;
            pm_z = in == t.mid ? pin : pout;
            pu_z = in == t.bot ? pin : pout;
        } else {
            throw DiagramError(Kind::BadArgument, "R3 corner arcs inconsistent");
        }
    }

    ArcId top_ext_x = d.at(x).legs[(po_x + 2) & 3];
    ArcId mid_ext = d.at(x).legs[(pm_x + 2) & 3];
    ArcId top_ext_y = d.at(y).legs[(po_y + 2) & 3];
    ArcId bot_ext = d.at(y).legs[(pu_y + 2) & 3];
    ArcId mid_far = d.at(z).legs[(pm_z + 2) & 3];
    ArcId bot_far = d.at(z).legs[(pu_z + 2) & 3];

    ArcId base = d.max_arc_id();
    ArcId new_top = base + 1, new_mid = base + 2, new_bot = base + 3;

    Crossing nx = d.at(x);  // reuses id; slid across z
    nx.legs[po_x] = new_top;
    nx.legs[pm_x] = new_mid;
    nx.legs[(pm_x + 2) & 3] = mid_far;
    nx.legs[(po_x + 2) & 3] = top_ext_x;

    Crossing ny = d.at(y);
    ny.legs[po_y] = new_top;
    ny.legs[pu_y] = new_bot;
    ny.legs[(pu_y + 2) & 3] = bot_far;
    ny.legs[(po_y + 2) & 3] = top_ext_y;

    Diagram::Surgery s;
    s.remove = {d.at(x).id, d.at(y).id};
    s.add = {nx, ny};
    s.joins = {{t.mid, mid_ext}, {t.bot, bot_ext}};
    s.rewrites = {{d.at(z).id, {(pm_z + 2) & 3, new_mid}},
                  {d.at(z).id, {(pu_z + 2) & 3, new_bot}}};
    return d.apply_surgery(s);
}

}  // namespace

Diagram apply_move(const Diagram& d, const Move& m) {
    switch (m.kind) {
        case MoveKind::R1Down: return apply_r1_down(d, m);
        case MoveKind::R2Down: return apply_r2_down(d, m);
        case MoveKind::R3: return apply_r3(d, m);
        case MoveKind::R1Up: return apply_r1_up(d, m);
        case MoveKind::R2Up: return apply_r2_up(d, m);
    }
    throw DiagramError(Kind::BadArgument, "unknown move kind");
}

Diagram replay_moves(const Diagram& d, const std::vector<Move>& moves) {
    Diagram cur = d;
    for (auto& m : moves) cur = apply_move(cur, m);
    return cur;
}

TrivialityVerdict classify_triviality(const Diagram& d, const SearchBudget& sb,
                                      const BracketBudget& bb) {
    TrivialityVerdict out;

    auto rep = report(d);
    for (auto& [i, j, v] : rep.lk)
        if (v != 0) {
            out.verdict = TrivialityVerdict::V::Nontrivial;
            out.obstruction = "lk(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") = " + std::to_string(v);
            return out;
        }
    try {
        if (!is_unlink_polynomial(d, bb)) {
            out.verdict = TrivialityVerdict::V::Nontrivial;
            out.obstruction = "normalized bracket differs from the unlink polynomial";
            return out;
        }
    } catch (const DiagramError& err) {
        if (err.kind != Kind::Budget) throw;
    }

    // best-first simplification search
    struct Node {
        Diagram d;
        int parent;
        Move via;
        std::size_t depth;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> visited;
    using Prio = std::tuple<std::size_t, std::size_t, std::string, std::size_t>;
    std::priority_queue<Prio, std::vector<Prio>, std::greater<Prio>> pq;

    const std::size_t c_max = d.size() + static_cast<std::size_t>(std::max(0, sb.slack));
    auto push = [&](Diagram nd, int parent, const Move& via, std::size_t depth) {
        std::string key = nd.canonical_key(false);
        if (visited.count(key)) return;
        if (visited.size() >= sb.visited_cap) return;
        visited.emplace(key, nodes.size());
        Prio pr{nd.size(), non_alternating_edges(nd), key, nodes.size()};
        nodes.push_back(Node{std::move(nd), parent, via, depth});
        pq.push(std::move(pr));
    };
    push(d, -1, Move{}, 0);

    bool capped = false;
    while (!pq.empty()) {
        auto [csize, nae, key, idx] = pq.top();
        pq.pop();
        const Node& cur = nodes[idx];
        if (cur.d.size() == 0) {
            // reconstruct and verify
            std::vector<Move> path;
            for (std::size_t i = idx; nodes[i].parent >= 0;
                 i = static_cast<std::size_t>(nodes[i].parent))
                path.push_back(nodes[i].via);
            std::reverse(path.begin(), path.end());
            Diagram check = replay_moves(d, path);
            if (check.size() != 0)
                throw DiagramError(Kind::Validation, "certificate replay failed");
            out.verdict = TrivialityVerdict::V::Trivial;
            out.moves = std::move(path);
            return out;
        }
        if (cur.depth >= sb.max_depth) continue;
        if (visited.size() >= sb.visited_cap) {
            capped = true;
            break;
        }

        auto reducing = available_moves(cur.d, /*include_insertions=*/false);
        std::size_t n_reducing = 0;
        for (auto& m : reducing)
            if (m.kind == MoveKind::R1Down || m.kind == MoveKind::R2Down) ++n_reducing;
        bool expand_insertions = n_reducing == 0;
        std::vector<Move> all =
            expand_insertions ? available_moves(cur.d, true) : std::move(reducing);
        Diagram snapshot = cur.d;  // nodes may reallocate during push
        for (auto& m : all) {
            std::size_t c_after = snapshot.size();
            switch (m.kind) {
                case MoveKind::R1Down: c_after -= 1; break;
                case MoveKind::R2Down: c_after -= 2; break;
                case MoveKind::R3: break;
                case MoveKind::R1Up: c_after += 1; break;
                case MoveKind::R2Up: c_after += 2; break;
            }
            if (c_after > c_max) continue;
            push(apply_move(snapshot, m), static_cast<int>(idx), m, nodes[idx].depth + 1);
        }
    }

    out.verdict = TrivialityVerdict::V::Unknown;
    out.note = capped || visited.size() >= sb.visited_cap
                   ? "visited cap exhausted"
                   : "move space within slack exhausted";
    return out;
}

}  // namespace kdt
