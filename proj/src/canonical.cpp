#include <algorithm>
#include <deque>

#include "kdt/diagram.hpp"

namespace kdt {

namespace {

// Flag-BFS encoding of one underlying-graph component starting from the flag
// (start, spos), scanning leg offsets in direction dir (+1, or -1 for the
// reflected reading).  Crossings are labeled in discovery order; the
// encoding lists, per crossing, whether its entry position is on the under
// diagonal plus, for each leg offset, the neighbor label and the offset of
// the matching end relative to the neighbor's entry.
std::string encode_component(const Diagram& d, const std::vector<std::uint32_t>& comp,
                             std::uint32_t start, std::uint8_t spos, int dir) {
    constexpr std::uint32_t unset = 0xffffffff;
    std::vector<std::uint32_t> label(d.size(), unset);
    std::vector<std::uint8_t> entry(d.size(), 0);
    std::vector<std::uint32_t> order;
    order.reserve(comp.size());

    auto offset_pos = [&](std::uint8_t base, int i) {
        return static_cast<std::uint8_t>((base + dir * i + 8) & 3);
    };

    label[start] = 0;
    entry[start] = spos;
    order.push_back(start);
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        std::uint32_t cx = order[qi];
        for (int i = 0; i < 4; ++i) {
            End e{cx, offset_pos(entry[cx], i)};
            End o = d.other_end(e);
            if (label[o.cx] == unset) {
                label[o.cx] = static_cast<std::uint32_t>(order.size());
                entry[o.cx] = o.pos;
                order.push_back(o.cx);
            }
        }
    }

    std::string enc;
    enc.reserve(order.size() * 9);
    for (auto cx : order) {
        enc.push_back(static_cast<char>((entry[cx] & 1) == 0));  // under-diagonal entry?
        for (int i = 0; i < 4; ++i) {
            End e{cx, offset_pos(entry[cx], i)};
            End o = d.other_end(e);
            std::uint32_t lab = label[o.cx];
            int rel = dir * (static_cast<int>(o.pos) - static_cast<int>(entry[o.cx]));
            enc.push_back(static_cast<char>(lab & 0xff));
            enc.push_back(static_cast<char>((lab >> 8) & 0xff));
            enc.push_back(static_cast<char>((rel + 8) & 3));
        }
    }
    return enc;
}

}  // namespace

std::string Diagram::canonical_key(bool include_reflection) const {
    // group crossings by underlying-graph component
    std::vector<std::vector<std::uint32_t>> comps(graph_comps_);
    for (std::uint32_t cx = 0; cx < size(); ++cx)
        comps[graph_comp_of_[cx]].push_back(cx);

    std::vector<std::string> keys;
    for (auto& comp : comps) {
        std::string best;
        for (auto cx : comp)
            for (std::uint8_t p = 0; p < 4; ++p)
                for (int dir : {1, -1}) {
                    if (dir == -1 && !include_reflection) continue;
                    std::string e = encode_component(*this, comp, cx, p, dir);
                    if (best.empty() || e < best) best = std::move(e);
                }
        keys.push_back(std::move(best));
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto& k : keys) {
        out += k;
        out.push_back('|');
    }
    out += std::to_string(free_circles_);
    return out;
}

}  // namespace kdt
