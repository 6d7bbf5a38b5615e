#include "kdt/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace kdt {

using Kind = DiagramError::Kind;

const char* role_name(Role r) {
    switch (r) {
        case Role::None: return "-";
        case Role::C: return "C";
        case Role::A1: return "A1";
        case Role::A2: return "A2";
        case Role::B1: return "B1";
        case Role::B2: return "B2";
        case Role::P1: return "P1";
        case Role::P2: return "P2";
        case Role::F1: return "F1";
        case Role::F2: return "F2";
        case Role::F3: return "F3";
    }
    return "?";
}

std::optional<Role> role_from_name(std::string_view s) {
    static const std::pair<const char*, Role> table[] = {
        {"-", Role::None}, {"C", Role::C},   {"A1", Role::A1}, {"A2", Role::A2},
        {"B1", Role::B1},  {"B2", Role::B2}, {"P1", Role::P1}, {"P2", Role::P2},
        {"F1", Role::F1},  {"F2", Role::F2}, {"F3", Role::F3},
    };
    for (auto& [name, role] : table)
        if (s == name) return role;
    return std::nullopt;
}

namespace {

std::array<ArcId, 4> rotate_legs(const std::array<ArcId, 4>& legs, unsigned k) {
    return {legs[k & 3], legs[(k + 1) & 3], legs[(k + 2) & 3], legs[(k + 3) & 3]};
}

struct ArcUF {
    std::vector<std::size_t> parent;
    explicit ArcUF(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram Diagram::from_crossings(std::vector<Crossing> cs, std::uint32_t free_circles,
                                bool strict_phases) {
    Diagram d;
    d.crossings_ = std::move(cs);
    d.free_circles_ = free_circles;
    d.derive(strict_phases);
    return d;
}

void Diagram::derive(bool strict_phases) {
    const std::size_t n = crossings_.size();
    if (n == 0 && free_circles_ == 0)
        throw DiagramError(Kind::Validation, "empty diagram");

    {
        std::set<CrossingId> ids;
        for (auto& c : crossings_)
            if (!ids.insert(c.id).second)
                throw DiagramError(Kind::Validation,
                                   "duplicate crossing id " + std::to_string(c.id));
    }

    for (int attempt = 0;; ++attempt) {
        if (attempt > 2)
            throw DiagramError(Kind::Validation, "phase normalization did not converge");

        arc_ids_.clear();
        arc_ends_.clear();
        over_entry_.assign(n, 0);
        cycles_.clear();
        comp_of_arc_.clear();
        comp_of_entry_.assign(4 * n, 0);
        faces_.clear();
        face_of_.assign(4 * n, 0);
        graph_comp_of_.assign(n, 0);
        graph_comps_ = 0;
        writhe_ = 0;

        // --- arc pairing ---
        std::map<ArcId, std::vector<End>> occ;
        for (std::size_t cx = 0; cx < n; ++cx)
            for (std::uint8_t p = 0; p < 4; ++p) {
                ArcId a = crossings_[cx].legs[p];
                if (a == 0) throw DiagramError(Kind::Syntax, "arc id 0 is not allowed");
                occ[a].push_back(End{static_cast<std::uint32_t>(cx), p});
            }
        for (auto& [a, ends] : occ) {
            if (ends.size() != 2)
                throw DiagramError(Kind::Pairing, "arc " + std::to_string(a) + " used " +
                                                      std::to_string(ends.size()) +
                                                      " times (expected 2)");
            arc_ids_.push_back(a);
            arc_ends_.push_back({ends[0], ends[1]});
        }
        if (n == 0) return;

        // --- traversal cycles over the 4n entry states ---
        auto next_state = [&](End e) {
            End exit{e.cx, static_cast<std::uint8_t>((e.pos + 2) & 3)};
            return other_end(exit);
        };
        std::vector<int> cycle_of(4 * n, -1);
        std::vector<std::vector<End>> raw_cycles;
        for (std::size_t s = 0; s < 4 * n; ++s) {
            if (cycle_of[s] >= 0) continue;
            int cid = static_cast<int>(raw_cycles.size());
            raw_cycles.emplace_back();
            End e{static_cast<std::uint32_t>(s / 4), static_cast<std::uint8_t>(s & 3)};
            while (cycle_of[e.cx * 4 + e.pos] < 0) {
                cycle_of[e.cx * 4 + e.pos] = cid;
                raw_cycles[cid].push_back(e);
                e = next_state(e);
            }
        }

        auto violations = [&](const std::vector<End>& cyc) {
            std::size_t v = 0;
            for (auto e : cyc)
                if (e.pos == 2) ++v;
            return v;
        };
        std::vector<char> cycle_done(raw_cycles.size(), 0);
        std::vector<std::size_t> rotate_set;
        std::vector<std::vector<End>> chosen;
        for (std::size_t ci = 0; ci < raw_cycles.size(); ++ci) {
            if (cycle_done[ci]) continue;
            End head = raw_cycles[ci][0];
            End rev{head.cx, static_cast<std::uint8_t>((head.pos + 2) & 3)};
            std::size_t cj = cycle_of[rev.cx * 4 + rev.pos];
            assert(cj != ci && !cycle_done[cj]);
            cycle_done[ci] = cycle_done[cj] = 1;
            std::size_t vi = violations(raw_cycles[ci]);
            std::size_t vj = violations(raw_cycles[cj]);
            std::size_t pick;
            if (vi == 0 || vj == 0) {
                pick = vi == 0 ? (vj == 0 ? std::min(ci, cj) : ci) : cj;
            } else if (strict_phases) {
                throw DiagramError(Kind::Orientation,
                                   "tuples are not phased to the incoming under-arc");
            } else {
                pick = vi < vj ? ci : (vj < vi ? cj : std::min(ci, cj));
                for (auto e : raw_cycles[pick])
                    if (e.pos == 2) rotate_set.push_back(e.cx);
            }
            chosen.push_back(raw_cycles[pick]);
        }
        if (!rotate_set.empty()) {
            for (auto cx : rotate_set)
                crossings_[cx].legs = rotate_legs(crossings_[cx].legs, 2);
            continue;  // re-derive with fixed phases
        }

        // --- orientation data ---
        for (auto& cyc : chosen)
            for (auto e : cyc)
                if (e.pos == 1 || e.pos == 3) over_entry_[e.cx] = e.pos;
        for (std::size_t cx = 0; cx < n; ++cx) {
            if (over_entry_[cx] == 0)
                throw DiagramError(Kind::Validation, "over-strand direction underived");
            writhe_ += sign(cx);
        }

        // --- components ordered by smallest arc id ---
        std::vector<std::pair<ArcId, std::size_t>> order;
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            ArcId m = std::numeric_limits<ArcId>::max();
            for (auto e : chosen[k]) m = std::min(m, arc_at(e));
            order.emplace_back(m, k);
        }
        std::sort(order.begin(), order.end());
        comp_of_arc_.assign(arc_ids_.size(), 0);
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            auto& cyc = chosen[order[rank].second];
            cycles_.push_back(cyc);
            for (auto e : cyc) {
                comp_of_arc_[arc_index(arc_at(e))] = rank;
                comp_of_entry_[e.cx * 4 + e.pos] = rank;
                comp_of_entry_[e.cx * 4 + ((e.pos + 2) & 3)] = rank;
            }
        }

        // --- faces: arrive at (cx,p), depart via legs[p+1] ---
        std::vector<char> seen(4 * n, 0);
        for (std::size_t s = 0; s < 4 * n; ++s) {
            if (seen[s]) continue;
            Face f;
            End e{static_cast<std::uint32_t>(s / 4), static_cast<std::uint8_t>(s & 3)};
            while (!seen[e.cx * 4 + e.pos]) {
                seen[e.cx * 4 + e.pos] = 1;
                face_of_[e.cx * 4 + e.pos] = faces_.size();
                f.arrivals.push_back(e);
                End depart{e.cx, static_cast<std::uint8_t>((e.pos + 1) & 3)};
                e = other_end(depart);
            }
            faces_.push_back(std::move(f));
        }

        // --- connectivity and the sphere condition F = n + 2 per component ---
        ArcUF uf(n);
        for (auto& ends : arc_ends_) uf.unite(ends[0].cx, ends[1].cx);
        std::map<std::size_t, std::size_t> comp_ix;
        for (std::size_t cx = 0; cx < n; ++cx) {
            auto root = uf.find(cx);
            auto it = comp_ix.emplace(root, comp_ix.size()).first;
            graph_comp_of_[cx] = it->second;
        }
        graph_comps_ = comp_ix.size();
        std::vector<std::size_t> comp_n(graph_comps_, 0), comp_f(graph_comps_, 0);
        for (std::size_t cx = 0; cx < n; ++cx) ++comp_n[graph_comp_of_[cx]];
        for (auto& f : faces_) ++comp_f[graph_comp_of_[f.arrivals.front().cx]];
        for (std::size_t g = 0; g < graph_comps_; ++g)
            if (comp_f[g] != comp_n[g] + 2)
                throw DiagramError(
                    Kind::Genus, "face count " + std::to_string(comp_f[g]) + " != crossings " +
                                     std::to_string(comp_n[g]) +
                                     " + 2: not a diagram on the 2-sphere");
        return;
    }
}

std::size_t Diagram::index_of(CrossingId id) const {
    for (std::size_t i = 0; i < crossings_.size(); ++i)
        if (crossings_[i].id == id) return i;
    throw DiagramError(Kind::BadArgument, "unknown crossing id " + std::to_string(id));
}

bool Diagram::has_crossing(CrossingId id) const {
    for (auto& c : crossings_)
        if (c.id == id) return true;
    return false;
}

CrossingId Diagram::max_crossing_id() const {
    CrossingId m = 0;
    for (auto& c : crossings_) m = std::max(m, c.id);
    return m;
}

ArcId Diagram::max_arc_id() const {
    return arc_ids_.empty() ? 0 : arc_ids_.back();
}

std::size_t Diagram::arc_index(ArcId a) const {
    auto it = std::lower_bound(arc_ids_.begin(), arc_ids_.end(), a);
    if (it == arc_ids_.end() || *it != a)
        throw DiagramError(Kind::BadArgument, "unknown arc id " + std::to_string(a));
    return static_cast<std::size_t>(it - arc_ids_.begin());
}

End Diagram::other_end(End e) const {
    auto& ends = arc_ends_[arc_index(arc_at(e))];
    return ends[0] == e ? ends[1] : ends[0];
}

std::size_t Diagram::component_of_entry(End e) const {
    return comp_of_entry_[e.cx * 4 + e.pos];
}

bool Diagram::is_split() const {
    if (size() == 0) return free_circles_ > 1;
    return graph_comps_ > 1 || free_circles_ > 0;
}

bool Diagram::is_alternating() const {
    for (auto& ends : arc_ends_) {
        bool u0 = (ends[0].pos & 1) == 0;
        bool u1 = (ends[1].pos & 1) == 0;
        if (u0 == u1) return false;
    }
    return true;
}

bool Diagram::is_nugatory(CrossingId id) const {
    auto cx = index_of(id);
    return face_of_[cx * 4 + 0] == face_of_[cx * 4 + 2] ||
           face_of_[cx * 4 + 1] == face_of_[cx * 4 + 3];
}

bool Diagram::is_reduced() const {
    for (auto& c : crossings_)
        if (is_nugatory(c.id)) return false;
    return true;
}

Diagram Diagram::crossing_change(CrossingId id) const {
    return change_set({id});
}

Diagram Diagram::change_set(const std::vector<CrossingId>& ids) const {
    auto cs = crossings_;
    for (auto id : ids) {
        auto cx = index_of(id);
        cs[cx].legs = rotate_legs(cs[cx].legs, over_entry_[cx]);
    }
    return from_crossings(std::move(cs), free_circles_);
}

Diagram Diagram::smooth_oriented(CrossingId id) const {
    auto cx = index_of(id);
    return smooth_state(id, over_entry_[cx] == 1);
}

Diagram Diagram::smooth_state(CrossingId id, bool type_a) const {
    auto cx = index_of(id);
    auto& legs = crossings_[cx].legs;
    Surgery s;
    s.remove = {id};
    if (type_a)
        s.joins = {{legs[0], legs[3]}, {legs[1], legs[2]}};
    else
        s.joins = {{legs[0], legs[1]}, {legs[2], legs[3]}};
    return apply_surgery(s);
}

Diagram Diagram::mirror() const {
    auto cs = crossings_;
    for (auto& c : cs) c.legs = {c.legs[0], c.legs[3], c.legs[2], c.legs[1]};
    return from_crossings(std::move(cs), free_circles_);
}

Diagram Diagram::with_role(CrossingId id, Role role, std::uint16_t gadget) const {
    auto cs = crossings_;
    auto cx = index_of(id);
    cs[cx].role = role;
    cs[cx].gadget = gadget;
    return from_crossings(std::move(cs), free_circles_);
}

Diagram Diagram::without_roles() const {
    auto cs = crossings_;
    for (auto& c : cs) {
        c.role = Role::None;
        c.gadget = 0;
    }
    return from_crossings(std::move(cs), free_circles_);
}

Diagram Diagram::disjoint_union(const Diagram& a, const Diagram& b) {
    auto cs = a.crossings_;
    ArcId arc_off = a.max_arc_id();
    CrossingId id_off = a.max_crossing_id();
    for (auto c : b.crossings_) {
        c.id += id_off;
        for (auto& l : c.legs) l += arc_off;
        cs.push_back(c);
    }
    return from_crossings(std::move(cs), a.free_circles_ + b.free_circles_);
}

Diagram Diagram::apply_surgery(const Surgery& s) const {
    for (auto id : s.remove) index_of(id);  // existence check
    std::set<CrossingId> removed(s.remove.begin(), s.remove.end());

    std::vector<Crossing> work = crossings_;
    for (auto& c : s.add) {
        if (has_crossing(c.id) || removed.count(c.id))
            throw DiagramError(Kind::BadArgument, "added crossing id already in use");
        work.push_back(c);
    }
    auto find_work = [&](CrossingId id) -> Crossing& {
        for (auto& c : work)
            if (c.id == id) return c;
        throw DiagramError(Kind::BadArgument, "rewrite of unknown crossing");
    };
    for (auto& [id, rw] : s.rewrites) {
        if (removed.count(id))
            throw DiagramError(Kind::BadArgument, "rewrite of removed crossing");
        find_work(id).legs[rw.first] = rw.second;
    }
    std::vector<Crossing> kept;
    for (auto& c : work)
        if (!removed.count(c.id)) kept.push_back(c);

    // arc universe: original arcs plus everything mentioned by the surgery
    std::vector<ArcId> arcs = arc_ids_;
    for (auto& c : kept)
        for (auto l : c.legs) arcs.push_back(l);
    for (auto& [a, b] : s.joins) {
        arcs.push_back(a);
        arcs.push_back(b);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    auto aidx = [&](ArcId a) {
        return static_cast<std::size_t>(
            std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
    };

    ArcUF uf(arcs.size());
    for (auto& [a, b] : s.joins) uf.unite(aidx(a), aidx(b));

    std::vector<std::size_t> slot_count(arcs.size(), 0);
    for (auto& c : kept)
        for (auto l : c.legs) ++slot_count[aidx(l)];

    std::vector<std::size_t> cls_slots(arcs.size(), 0), cls_joins(arcs.size(), 0),
        cls_members(arcs.size(), 0);
    std::vector<ArcId> cls_rep(arcs.size(), 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto r = uf.find(i);
        cls_slots[r] += slot_count[i];
        ++cls_members[r];
        if (cls_rep[r] == 0 || arcs[i] < cls_rep[r]) cls_rep[r] = arcs[i];
    }
    for (auto& [a, b] : s.joins) ++cls_joins[uf.find(aidx(a))];

    std::int64_t new_circles = 0;
    for (std::size_t r = 0; r < arcs.size(); ++r) {
        if (uf.find(r) != r) continue;
        if (2 * cls_members[r] < 2 * cls_joins[r] + cls_slots[r])
            throw DiagramError(Kind::Validation, "inconsistent surgery joins");
        std::size_t dangling = 2 * cls_members[r] - 2 * cls_joins[r] - cls_slots[r];
        if (cls_slots[r] == 2) continue;  // surviving arc (possibly a fused chain)
        if (cls_slots[r] != 0)
            throw DiagramError(Kind::Validation, "surgery leaves an arc with " +
                                                     std::to_string(cls_slots[r]) + " ends");
        if (cls_joins[r] == 0) continue;  // consumed by removed crossings, dropped
        if (dangling == 0)
            ++new_circles;  // fused arcs closed into a circle
        else
            throw DiagramError(Kind::Validation, "surgery joins leave dangling ends");
    }
    for (auto& c : kept)
        for (auto& l : c.legs) l = cls_rep[uf.find(aidx(l))];

    std::int64_t circles =
        static_cast<std::int64_t>(free_circles_) + new_circles + s.free_circle_delta;
    if (circles < 0) throw DiagramError(Kind::Validation, "negative circle count");
    return from_crossings(std::move(kept), static_cast<std::uint32_t>(circles));
}

long DiagramReport::total_abs_lk() const {
    long t = 0;
    for (auto& [i, j, v] : lk) {
        (void)i;
        (void)j;
        t += std::abs(v);
    }
    return t;
}

}  // namespace kdt
