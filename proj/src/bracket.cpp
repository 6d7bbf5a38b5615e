#include "kdt/bracket.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace kdt {

using Kind = DiagramError::Kind;

StateTable StateTable::build(const Diagram& d, const BracketBudget& b) {
    const std::size_t n = d.size();
    if (n > b.max_crossings || n > 31)
        throw DiagramError(Kind::Budget,
                           "state table over crossing cap (" + std::to_string(n) + " > " +
                               std::to_string(std::min<std::size_t>(b.max_crossings, 31)) + ")");
    StateTable t;
    t.base_ = d;
    t.signs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.signs_[i] = d.sign(i);

    const std::size_t arcs = d.arc_count();
    // per crossing: arc indices joined by the A- and B-smoothing
    struct Joins {
        std::uint32_t a0, a1, a2, a3;
    };
    std::vector<Joins> j(n);
    for (std::uint32_t cx = 0; cx < n; ++cx) {
        auto ai = [&](std::uint8_t p) {
            return static_cast<std::uint32_t>(
                d.arc_index(d.arc_at(End{cx, p})));
        };
        j[cx] = {ai(0), ai(1), ai(2), ai(3)};
    }

    const std::uint32_t states = n == 0 ? 1 : (1u << n);
    t.loops_.resize(states);
    std::vector<std::uint32_t> parent(arcs);
    for (std::uint32_t s = 0; s < states; ++s) {
        for (std::uint32_t i = 0; i < arcs; ++i) parent[i] = i;
        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::uint32_t merges = 0;
        for (std::uint32_t cx = 0; cx < n; ++cx) {
            std::uint32_t p0, p1, q0, q1;
            if (s >> cx & 1) {  // B: join (0,1),(2,3)
                p0 = j[cx].a0, p1 = j[cx].a1, q0 = j[cx].a2, q1 = j[cx].a3;
            } else {  // A: join (0,3),(1,2)
                p0 = j[cx].a0, p1 = j[cx].a3, q0 = j[cx].a1, q1 = j[cx].a2;
            }
            auto ra = find(p0), rb = find(p1);
            if (ra != rb) parent[ra] = rb, ++merges;
            ra = find(q0), rb = find(q1);
            if (ra != rb) parent[ra] = rb, ++merges;
        }
        // each arc has 2 ends, every end is consumed by exactly one join;
        // the 1-manifold has (arcs - merges) circles
        std::uint32_t circles =
            (n == 0 ? 0 : static_cast<std::uint32_t>(arcs) - merges) + d.free_circles();
        assert(circles >= 1 && circles < 255);
        t.loops_[s] = static_cast<std::uint8_t>(circles);
    }
    return t;
}

LaurentPolynomial StateTable::variant_bracket(std::uint32_t flips) const {
    const int n = static_cast<int>(crossing_count());
    // counts indexed by (A-count, loop count)
    std::size_t max_loops = 0;
    for (auto l : loops_) max_loops = std::max<std::size_t>(max_loops, l);
    std::vector<std::vector<std::int64_t>> cnt(
        n + 1, std::vector<std::int64_t>(max_loops + 1, 0));
    const std::uint32_t states = loops_.size();
    const int fbits = static_cast<int>(__builtin_popcount(flips));
    for (std::uint32_t s = 0; s < states; ++s) {
        int b = __builtin_popcount(s);
        int bf = __builtin_popcount(s & flips);
        // exponent = sum over crossings of +-1; flipped crossings contribute
        // with the opposite smoothing letter
        int a_eff = n - b - fbits + 2 * bf;  // adjusted A-count
        cnt[a_eff][loops_[s]] += 1;
    }
    LaurentPolynomial out;
    for (int a = 0; a <= n; ++a)
        for (std::size_t l = 1; l <= max_loops; ++l) {
            if (!cnt[a][l]) continue;
            int exp = 2 * a - n;  // a - (n - a)
            LaurentPolynomial term =
                LaurentPolynomial::monomial(exp, cnt[a][l]) *
                LaurentPolynomial::loop_value_pow(static_cast<unsigned>(l - 1));
            out += term;
        }
    return out;
}

int StateTable::variant_writhe(std::uint32_t flips) const {
    int w = base_.writhe();
    for (std::size_t i = 0; i < signs_.size(); ++i)
        if (flips >> i & 1) w -= 2 * signs_[i];
    return w;
}

LaurentPolynomial StateTable::variant_normalized(std::uint32_t flips) const {
    return normalized_from_bracket(variant_bracket(flips), variant_writhe(flips));
}

std::uint32_t StateTable::mask_of(const std::vector<CrossingId>& ids) const {
    std::uint32_t m = 0;
    for (auto id : ids) m |= 1u << base_.index_of(id);
    return m;
}

LaurentPolynomial bracket_state_sum(const Diagram& d, const BracketBudget& b) {
    if (d.size() == 0)
        return LaurentPolynomial::loop_value_pow(d.free_circles() - 1);
    return StateTable::build(d, b).bracket();
}

LaurentPolynomial bracket(const Diagram& d, const BracketBudget& b) {
    if (d.size() > b.max_crossings)
        throw DiagramError(Kind::Budget, "bracket over crossing cap (c = " +
                                             std::to_string(d.size()) + ")");
    return bracket_state_sum(d, b);
}

namespace {

struct SkeinCtx {
    std::unordered_map<std::string, LaurentPolynomial> memo;
    std::size_t nodes = 0;
    std::size_t node_cap;
};

// one R1 reduction: returns multiplier, or zero polynomial if none found
bool reduce_r1(Diagram& d, LaurentPolynomial& factor) {
    for (std::size_t cx = 0; cx < d.size(); ++cx) {
        auto& legs = d.at(cx).legs;
        for (int p = 0; p < 4; ++p) {
            if (legs[p] == legs[(p + 1) & 3]) {
                // removing a kink of sign s divides the bracket by (-A^3)^s
                int s = d.sign(cx);
                factor *= LaurentPolynomial::monomial(3 * s, -1);
                Diagram::Surgery surg;
                surg.remove = {d.at(cx).id};
                int q0 = (p + 2) & 3, q1 = (p + 3) & 3;
                surg.joins = {{legs[q0], legs[q1]}};
                d = d.apply_surgery(surg);
                return true;
            }
        }
    }
    return false;
}

bool r2_site(const Diagram& d, const Face& f, std::size_t& c1, std::size_t& c2) {
    if (f.arrivals.size() != 2) return false;
    End e0 = f.arrivals[0], e1 = f.arrivals[1];
    if (e0.cx == e1.cx) return false;
    ArcId a = d.arc_at(e0), b = d.arc_at(e1);
    if (a == b) return false;
    auto parity = [&](ArcId arc) {
        auto& ends = d.arc_ends(d.arc_index(arc));
        int odd = (ends[0].pos & 1) + (ends[1].pos & 1);
        return odd;  // 2 = over-over, 0 = under-under, 1 = mixed
    };
    int pa = parity(a), pb = parity(b);
    if (!((pa == 2 && pb == 0) || (pa == 0 && pb == 2))) return false;
    c1 = e0.cx;
    c2 = e1.cx;
    return true;
}

bool reduce_r2(Diagram& d) {
    for (auto& f : d.faces()) {
        std::size_t c1, c2;
        if (!r2_site(d, f, c1, c2)) continue;
        End e0 = f.arrivals[0], e1 = f.arrivals[1];
        std::uint8_t pa1 = e0.pos, pa2 = (e1.pos + 1) & 3;
        std::uint8_t pb1 = (e0.pos + 1) & 3, pb2 = e1.pos;
        Diagram::Surgery s;
        s.remove = {d.at(c1).id, d.at(c2).id};
        s.joins = {{d.at(c1).legs[(pa1 + 2) & 3], d.at(c2).legs[(pa2 + 2) & 3]},
                   {d.at(c1).legs[(pb1 + 2) & 3], d.at(c2).legs[(pb2 + 2) & 3]}};
        d = d.apply_surgery(s);
        return true;
    }
    return false;
}

LaurentPolynomial skein_rec(Diagram d, SkeinCtx& ctx) {
    if (++ctx.nodes > ctx.node_cap)
        throw DiagramError(Kind::Budget, "skein node budget exceeded");
    LaurentPolynomial factor = LaurentPolynomial::one();
    for (;;) {
        if (d.size() == 0) return factor * LaurentPolynomial::loop_value_pow(d.free_circles() - 1);
        if (reduce_r1(d, factor)) continue;
        if (reduce_r2(d)) continue;
        break;
    }
    if (d.size() <= 5) return factor * bracket_state_sum(d);
    std::string key = d.canonical_key(false);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return factor * it->second;

    // smooth a crossing on the smallest face
    std::size_t best_face = 0;
    for (std::size_t i = 1; i < d.faces().size(); ++i)
        if (d.faces()[i].arrivals.size() < d.faces()[best_face].arrivals.size()) best_face = i;
    CrossingId x = d.at(d.faces()[best_face].arrivals[0].cx).id;

    LaurentPolynomial p =
        LaurentPolynomial::monomial(1, 1) * skein_rec(d.smooth_state(x, true), ctx) +
        LaurentPolynomial::monomial(-1, 1) * skein_rec(d.smooth_state(x, false), ctx);
    ctx.memo.emplace(std::move(key), p);
    return factor * p;
}

}  // namespace

LaurentPolynomial bracket_skein(const Diagram& d, const BracketBudget& b) {
    SkeinCtx ctx;
    ctx.node_cap = b.skein_node_cap;
    return skein_rec(d, ctx);
}

LaurentPolynomial normalized_from_bracket(const LaurentPolynomial& br, int writhe) {
    LaurentPolynomial norm = LaurentPolynomial::monomial(-3 * writhe, (writhe % 2) ? -1 : 1);
    return norm * br;
}

LaurentPolynomial normalized_bracket(const Diagram& d, const BracketBudget& b) {
    return normalized_from_bracket(bracket(d, b), d.writhe());
}

LaurentPolynomial unlink_normalized_polynomial(std::size_t mu) {
    return LaurentPolynomial::loop_value_pow(static_cast<unsigned>(mu - 1));
}

bool is_unlink_polynomial(const Diagram& d, const BracketBudget& b) {
    return normalized_bracket(d, b) == unlink_normalized_polynomial(d.component_count());
}

LaurentPolynomial bracket_with_slot_weights(const StateTable& t,
                                            const std::vector<TangleBracket>& weights) {
    const std::size_t n = t.crossing_count();
    if (weights.size() != n)
        throw DiagramError(Kind::BadArgument, "one weight vector per crossing required");
    LaurentPolynomial out;
    // DFS over crossings so partial products are shared across states
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t state,
                   const LaurentPolynomial& prod) -> void {
        if (prod.is_zero()) return;
        if (i == n) {
            out += prod * LaurentPolynomial::loop_value_pow(t.loops(state) - 1);
            return;
        }
        self(self, i + 1, state, prod * weights[i].horizontal);
        self(self, i + 1, state | (1u << i), prod * weights[i].vertical);
    };
    rec(rec, 0, 0, LaurentPolynomial::one());
    return out;
}

}  // namespace kdt
