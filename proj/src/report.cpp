#include <map>

#include "kdt/diagram.hpp"

namespace kdt {

DiagramReport report(const Diagram& d) {
    DiagramReport r;
    r.c = d.size();
    r.mu = d.component_count();
    r.writhe = d.writhe();
    r.alternating = d.is_alternating();
    r.reduced = d.is_reduced();
    r.split = d.is_split();

    std::map<std::pair<std::size_t, std::size_t>, int> sums;
    for (std::size_t cx = 0; cx < d.size(); ++cx) {
        std::size_t cu = d.component_of_entry(End{static_cast<std::uint32_t>(cx), 0});
        std::size_t co = d.component_of_entry(End{static_cast<std::uint32_t>(cx), 1});
        if (cu == co) continue;
        auto key = std::minmax(cu, co);
        sums[{key.first, key.second}] += d.sign(cx);
    }
    for (std::size_t i = 0; i < r.mu; ++i)
        for (std::size_t j = i + 1; j < r.mu; ++j) {
            auto it = sums.find({i, j});
            int twice = it == sums.end() ? 0 : it->second;
            if (twice % 2 != 0)
                throw DiagramError(DiagramError::Kind::Validation,
                                   "odd inter-component sign sum");
            r.lk.emplace_back(i, j, twice / 2);
        }
    return r;
}

}  // namespace kdt
