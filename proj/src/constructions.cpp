#include "kdt/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

namespace kdt {

using Kind = DiagramError::Kind;

Diagram torus_2p(unsigned p) {
    if (p == 0) return Diagram::from_crossings({}, 2);
    // left/right vertical arcs of the closed 2-braid; crossing i sits between
    // levels i-1 and i (cyclically)
    auto l = [&](unsigned i) { return static_cast<ArcId>(2 * (i % p) + 1); };
    auto r = [&](unsigned i) { return static_cast<ArcId>(2 * (i % p) + 2); };
    std::vector<Crossing> cs;
    for (unsigned i = 1; i <= p; ++i) {
        Crossing c;
        c.id = i;
        c.legs = {r(i - 1), l(i - 1), l(i), r(i)};
        cs.push_back(c);
    }
    return Diagram::from_crossings(std::move(cs), 0);
}

Diagram chain_link(unsigned rings) {
    if (rings < 2) throw DiagramError(Kind::BadArgument, "chain needs at least two rings");
    // clasp j (1-based) has crossings P_j (ring j over ring j+1) and Q_j
    // (ring j+1 over ring j); ring j passes P_{j-1}, Q_{j-1}, P_j, Q_j in order
    const unsigned clasps = rings - 1;
    std::vector<Crossing> cs(2 * clasps);
    for (unsigned j = 0; j < clasps; ++j) {
        cs[2 * j].id = 2 * j + 1;      // P_{j+1}
        cs[2 * j + 1].id = 2 * j + 2;  // Q_{j+1}
    }
    ArcId next_arc = 0;
    // visit lists per ring: (crossing index, under?) in traversal order
    for (unsigned ring = 0; ring < rings; ++ring) {
        struct V {
            std::size_t cx;
            bool under;
        };
        std::vector<V> visits;
        if (ring > 0) {
            visits.push_back({2 * (ring - 1), true});       // P_{ring} as under
            visits.push_back({2 * (ring - 1) + 1, false});  // Q_{ring} as over
        }
        if (ring + 1 < rings) {
            visits.push_back({2 * ring, false});     // P_{ring+1} as over
            visits.push_back({2 * ring + 1, true});  // Q_{ring+1} as under
        }
        std::vector<ArcId> arcs(visits.size());
        for (auto& a : arcs) a = ++next_arc;
        for (std::size_t t = 0; t < visits.size(); ++t) {
            ArcId in = arcs[(t + visits.size() - 1) % visits.size()];
            ArcId out = arcs[t];
            auto& c = cs[visits[t].cx];
            if (visits[t].under) {
                c.legs[0] = in;
                c.legs[2] = out;
            } else {
                c.legs[1] = in;
                c.legs[3] = out;
            }
        }
    }
    return Diagram::from_crossings(std::move(cs), 0);
}

TransformResult plus_two_transform(const Diagram& d, const std::vector<CrossingId>& min_set,
                                   const TangleTemplate& tmpl, bool verify_minimality,
                                   const USearchOptions& opt) {
    if (d.size() == 0)
        throw DiagramError(Kind::BadArgument, "transform needs a diagram with crossings");
    if (min_set.empty())
        throw DiagramError(Kind::BadArgument,
                           "transform needs a nonempty minimal unlinking set");
    for (auto id : min_set) d.index_of(id);
    if (verify_minimality) {
        auto res = unknotting_number_of_diagram(d, opt);
        if (!res.exact() || res.k != min_set.size())
            throw DiagramError(Kind::BadArgument,
                               "supplied set is not a minimal unlinking set");
        auto verdict = classify_triviality(d.change_set(min_set), opt.search, opt.bracket);
        if (!verdict.trivial())
            throw DiagramError(Kind::BadArgument,
                               "supplied set could not be certified as unlinking");
    }

    std::set<CrossingId> in_set(min_set.begin(), min_set.end());
    CrossingId chosen = *in_set.rbegin();  // the set member that gets a gadget
    std::vector<CrossingId> targets;
    targets.push_back(chosen);
    for (auto& c : d.crossings())
        if (!in_set.count(c.id)) targets.push_back(c.id);
    std::sort(targets.begin(), targets.end());

    TransformResult out;
    Diagram cur = d;
    std::uint16_t g = 0;
    for (auto id : targets) cur = splice_template(cur, id, tmpl, ++g);
    out.gadgets = g;

    // certificate: the untouched set members plus {C, A1, A2} of the chosen
    // member's gadget
    std::uint16_t chosen_gadget = 0;
    {
        std::uint16_t gi = 0;
        for (auto id : targets) {
            ++gi;
            if (id == chosen) chosen_gadget = gi;
        }
    }
    for (auto id : min_set)
        if (id != chosen) out.trivializing_set.push_back(id);
    for (auto& c : cur.crossings())
        if (c.gadget == chosen_gadget &&
            (c.role == Role::C || c.role == Role::A1 || c.role == Role::A2))
            out.trivializing_set.push_back(c.id);
    std::sort(out.trivializing_set.begin(), out.trivializing_set.end());

    std::size_t expect =
        d.size() + (tmpl.crossings.size() - 1) * (d.size() - min_set.size() + 1);
    if (cur.size() != expect)
        throw DiagramError(Kind::Validation, "unexpected transformed crossing count");
    out.diagram = std::move(cur);
    return out;
}

TransformResult iterate_plus_two(const Diagram& d, unsigned m, const TangleTemplate& tmpl,
                                 const USearchOptions& opt) {
    auto res = unknotting_number_of_diagram(d, opt);
    if (!res.exact())
        throw DiagramError(Kind::BadArgument,
                           "iterated transform needs an exact unlinking number");
    TransformResult out;
    out.diagram = d;
    out.trivializing_set = res.witness;
    for (unsigned step = 0; step < m; ++step) {
        // the carried set is minimal by construction; skip re-verification
        out = plus_two_transform(out.diagram, out.trivializing_set, tmpl,
                                 /*verify_minimality=*/false, opt);
    }
    return out;
}

Diagram doubling_transform(const Diagram& d, const TangleTemplate& tmpl) {
    Diagram cur = d;
    std::vector<CrossingId> ids;
    for (auto& c : d.crossings()) ids.push_back(c.id);
    std::uint16_t g = 0;
    for (auto id : ids) cur = splice_template(cur, id, tmpl, ++g);
    return cur;
}

LaurentPolynomial transformed_bracket(
    const Diagram& base, const std::vector<std::pair<CrossingId, const TangleTemplate*>>& slots,
    const BracketBudget& bb) {
    auto table = StateTable::build(base, bb);
    std::vector<TangleBracket> weights(base.size(), TangleBracket::bare_crossing());
    for (auto& [id, tmpl] : slots) weights[base.index_of(id)] = tangle_bracket(*tmpl);
    return bracket_with_slot_weights(table, weights);
}

bool is_knot_equality_diagram(const Diagram& d) {
    if (d.component_count() != 1)
        throw DiagramError(Kind::BadArgument, "knot recognizer needs a one-component diagram");
    const std::size_t c = d.size();
    if (c == 0) return false;  // the bound (c-1)/2 is about diagrams with crossings
    if (c == 1) return true;
    if (!d.is_alternating() || !d.is_reduced()) return false;
    // standard (2,p) pattern: the two visits of every crossing are c apart
    const auto& cyc = d.component_cycles()[0];
    std::vector<long> first(d.size(), -1);
    for (std::size_t t = 0; t < cyc.size(); ++t) {
        auto cx = cyc[t].cx;
        if (first[cx] < 0)
            first[cx] = static_cast<long>(t);
        else if (t - static_cast<std::size_t>(first[cx]) != c)
            return false;
    }
    return true;
}

bool is_link_equality_diagram(const Diagram& d) {
    if (d.component_count() < 2)
        throw DiagramError(Kind::BadArgument, "link recognizer needs >= 2 components");
    // every component a simple closed curve: no self-crossings at all
    for (std::size_t cx = 0; cx < d.size(); ++cx) {
        auto cu = d.component_of_entry(End{static_cast<std::uint32_t>(cx), 0});
        auto co = d.component_of_entry(End{static_cast<std::uint32_t>(cx), 1});
        if (cu == co) return false;
    }
    // each pair: no crossings, or alternating along both components
    const auto& cycles = d.component_cycles();
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = 0; j < cycles.size(); ++j) {
            if (i == j) continue;
            std::vector<int> pattern;
            for (auto e : cycles[i]) {
                auto other = d.component_of_entry(
                    End{e.cx, static_cast<std::uint8_t>((e.pos + 1) & 3)});
                if (other == j) pattern.push_back(e.pos & 1);
            }
            for (std::size_t t = 0; t + 1 < pattern.size(); ++t)
                if (pattern[t] == pattern[t + 1]) return false;
            if (pattern.size() >= 2 && pattern.front() == pattern.back()) return false;
        }
    return true;
}

namespace {

struct ShadowEnumerator {
    std::size_t n;
    std::vector<int> match;  // end index -> matched end, -1 if open
    std::function<void(const std::vector<int>&)> leaf;

    void run() {
        match.assign(4 * n, -1);
        rec(0);
    }

    void rec(std::size_t touched) {
        std::size_t e = 0;
        while (e < 4 * n && match[e] >= 0) ++e;
        if (e == 4 * n) {
            leaf(match);
            return;
        }
        // e pairs with any later open end; a fresh vertex may only be entered
        // at its slot 0 and must be the lowest unused vertex
        for (std::size_t f = e + 1; f < 4 * n; ++f) {
            if (match[f] >= 0) continue;
            std::size_t fv = f / 4;
            if (fv >= touched) {
                if (fv != touched || f % 4 != 0) continue;
            }
            match[e] = static_cast<int>(f);
            match[f] = static_cast<int>(e);
            rec(std::max(touched, fv + 1));
            match[e] = match[f] = -1;
        }
    }
};

}  // namespace

void enumerate_knot_diagrams(std::size_t max_crossings,
                             const std::function<void(EnumerationItem&&)>& sink) {
    if (max_crossings > 6)
        throw DiagramError(Kind::Budget, "enumeration capped at 6 crossings");
    std::unordered_set<std::string> seen;
    for (std::size_t n = 1; n <= max_crossings; ++n) {
        std::size_t shadow_idx = 0;
        ShadowEnumerator en;
        en.n = n;
        en.leaf = [&](const std::vector<int>& match) {
            ++shadow_idx;
            // arcs from matched pairs
            std::vector<Crossing> cs(n);
            for (std::size_t i = 0; i < n; ++i) cs[i].id = static_cast<CrossingId>(i + 1);
            ArcId arc = 0;
            for (std::size_t e = 0; e < 4 * n; ++e) {
                if (static_cast<std::size_t>(match[e]) < e) continue;
                ++arc;
                cs[e / 4].legs[e % 4] = arc;
                std::size_t f = static_cast<std::size_t>(match[e]);
                cs[f / 4].legs[f % 4] = arc;
            }
            for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
                auto cs2 = cs;
                for (std::size_t i = 0; i < n; ++i)
                    if (bits >> i & 1)
                        cs2[i].legs = {cs2[i].legs[1], cs2[i].legs[2], cs2[i].legs[3],
                                       cs2[i].legs[0]};
                Diagram d;
                try {
                    d = Diagram::from_crossings(std::move(cs2), 0);
                } catch (const DiagramError&) {
                    continue;  // nonspherical pairing
                }
                if (d.component_count() != 1) continue;
                std::string key = d.canonical_key(/*include_reflection=*/true);
                if (!seen.insert(key).second) continue;
                EnumerationItem item;
                item.diagram = std::move(d);
                item.canonical = std::move(key);
                item.provenance = "n=" + std::to_string(n) + " shadow=" +
                                  std::to_string(shadow_idx) + " bits=" + std::to_string(bits);
                sink(std::move(item));
            }
        };
        en.run();
    }
}

std::vector<EnumerationItem> enumerate_knot_diagram_list(std::size_t max_crossings) {
    std::vector<EnumerationItem> out;
    enumerate_knot_diagrams(max_crossings,
                            [&](EnumerationItem&& i) { out.push_back(std::move(i)); });
    return out;
}

Diagram scramble(const Diagram& d, std::size_t count, std::uint64_t seed, int slack) {
    std::mt19937_64 rng(seed);
    Diagram cur = d;
    const std::size_t c_max = d.size() + static_cast<std::size_t>(std::max(0, slack));
    for (std::size_t step = 0; step < count; ++step) {
        if (cur.size() == 0) break;
        auto moves = available_moves(cur, /*include_insertions=*/true);
        std::vector<Move> legal;
        for (auto& m : moves) {
            std::size_t after = cur.size();
            switch (m.kind) {
                case MoveKind::R1Down: after -= 1; break;
                case MoveKind::R2Down: after -= 2; break;
                case MoveKind::R3: break;
                case MoveKind::R1Up: after += 1; break;
                case MoveKind::R2Up: after += 2; break;
            }
            if (after <= c_max) legal.push_back(m);
        }
        if (legal.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
        cur = apply_move(cur, legal[pick(rng)]);
    }
    return cur;
}

}  // namespace kdt
