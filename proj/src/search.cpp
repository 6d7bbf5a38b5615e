#include "kdt/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <thread>

namespace kdt {

using Kind = DiagramError::Kind;

AscendingResult ascending_number_of_diagram(const Diagram& d) {
    if (d.component_count() != 1 || d.curve_components() != 1) {
        if (d.size() == 0 && d.free_circles() == 1) return AscendingResult{};
        if (d.curve_components() != 1 || d.free_circles() > 0)
            throw DiagramError(Kind::BadArgument,
                               "ascending number is defined here for knot diagrams only");
    }
    if (d.size() == 0) return AscendingResult{};

    const auto& cycle = d.component_cycles()[0];
    const std::size_t m = cycle.size();  // 2c passes
    AscendingResult best;
    bool have = false;
    for (int rev = 0; rev < 2; ++rev) {
        std::vector<End> seq(cycle);
        if (rev) std::reverse(seq.begin(), seq.end());
        for (std::size_t b = 0; b < m; ++b) {
            std::vector<char> seen(d.size(), 0);
            std::vector<CrossingId> changes;
            for (std::size_t t = 0; t < m; ++t) {
                End e = seq[(b + t) % m];
                if (seen[e.cx]) continue;
                seen[e.cx] = 1;
                if (e.pos & 1) changes.push_back(d.at(e.cx).id);  // first visit on top
            }
            if (!have || changes.size() < best.value) {
                best.value = changes.size();
                best.basepoint = seq[b];
                best.reversed = rev != 0;
                std::sort(changes.begin(), changes.end());
                best.changes = std::move(changes);
                have = true;
            }
        }
    }
    return best;
}

std::vector<CrossingId> descending_change_set(const Diagram& d) {
    if (d.size() == 0) return {};
    if (d.curve_components() == 1 && d.free_circles() == 0)
        return ascending_number_of_diagram(d).changes;

    // stacked monotone links: component i entirely over component j for i < j,
    // each component monotone from its cycle start; and the complementary choice
    std::vector<CrossingId> primary, complement;
    std::vector<char> seen(d.size(), 0);
    for (std::size_t cx = 0; cx < d.size(); ++cx) {
        End under{static_cast<std::uint32_t>(cx), 0};
        End over{static_cast<std::uint32_t>(cx), d.over_entry(cx)};
        std::size_t cu = d.component_of_entry(under);
        std::size_t co = d.component_of_entry(over);
        if (cu == co) continue;
        if (co > cu)
            primary.push_back(d.at(cx).id);  // want the earlier component on top
        else
            complement.push_back(d.at(cx).id);
    }
    for (auto& cyc : d.component_cycles()) {
        std::fill(seen.begin(), seen.end(), 0);
        for (auto e : cyc) {
            if (seen[e.cx]) continue;
            seen[e.cx] = 1;
            std::size_t cu = d.component_of_entry(End{e.cx, 0});
            std::size_t co = d.component_of_entry(End{e.cx, d.over_entry(e.cx)});
            if (cu != co) continue;  // inter-component handled above
            if (e.pos & 1)
                primary.push_back(d.at(e.cx).id);
            else
                complement.push_back(d.at(e.cx).id);
        }
    }
    auto& pick = primary.size() <= complement.size() ? primary : complement;
    std::sort(pick.begin(), pick.end());
    return pick;
}

namespace {

// lexicographic k-subsets of 0..n-1
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

UDiagramResult unknotting_number_of_diagram(const Diagram& d, const USearchOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    UDiagramResult res;
    const std::size_t n = d.size();
    auto rep = report(d);
    const std::size_t lk_lower = static_cast<std::size_t>(rep.total_abs_lk());
    const auto unlink_poly = unlink_normalized_polynomial(rep.mu);

    auto desc = descending_change_set(d);
    std::size_t cutoff = std::min<std::size_t>(desc.size(), (n + 1) / 2 + 1);
    cutoff = std::min(cutoff, opt.level_cap);
    cutoff = std::min(cutoff, n);

    bool table_ok = opt.use_state_table && n <= opt.bracket.max_crossings && n <= 31;
    std::unique_ptr<StateTable> table;
    if (table_ok) table = std::make_unique<StateTable>(StateTable::build(d, opt.bracket));

    std::vector<CrossingId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = d.at(i).id;

    bool saw_unknown = false;
    std::size_t first_unknown_level = 0;

    auto finish = [&](UDiagramResult& r) -> UDiagramResult& {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    for (std::size_t k = 0; k <= cutoff; ++k) {
        LevelStats ls;
        ls.level = k;
        if (k < lk_lower) {
            // any unlinking set needs at least sum |lk| changes
            ls.bound_pruned = 1;
            res.levels.push_back(ls);
            continue;
        }

        // gather subsets of size k
        std::vector<std::vector<CrossingId>> survivors;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        bool more = n > 0 || k == 0;
        while (more) {
            ++ls.total;
            std::vector<CrossingId> subset(k);
            for (std::size_t i = 0; i < k; ++i) subset[i] = ids[idx[i]];
            if (table) {
                std::uint32_t mask = 0;
                for (auto i : idx) mask |= 1u << i;
                if (table->variant_normalized(mask) != unlink_poly)
                    ++ls.nontrivial_bracket;
                else
                    survivors.push_back(std::move(subset));
            } else {
                survivors.push_back(std::move(subset));
            }
            if (k == 0) break;
            more = next_combination(idx, n);
        }

        // escalate survivors (deterministic order; parallel workers by slot)
        std::vector<TrivialityVerdict> verdicts(survivors.size());
        unsigned workers = std::max(1u, opt.workers);
        if (workers == 1 || survivors.size() <= 1) {
            for (std::size_t i = 0; i < survivors.size(); ++i)
                verdicts[i] = classify_triviality(d.change_set(survivors[i]), opt.search,
                                                  opt.bracket);
        } else {
            std::atomic<std::size_t> next{0};
            auto run = [&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= survivors.size()) break;
                    verdicts[i] = classify_triviality(d.change_set(survivors[i]), opt.search,
                                                      opt.bracket);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
            for (auto& t : pool) t.join();
        }

        long found = -1;
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            switch (verdicts[i].verdict) {
                case TrivialityVerdict::V::Trivial:
                    ++ls.trivial;
                    if (found < 0) found = static_cast<long>(i);
                    break;
                case TrivialityVerdict::V::Nontrivial:
                    ++ls.nontrivial_full;
                    break;
                case TrivialityVerdict::V::Unknown:
                    ++ls.unknown;
                    break;
            }
        }
        if (found < 0 && ls.unknown > 0) {
            // only unknowns strictly below the eventual witness level matter
            if (!saw_unknown) first_unknown_level = k;
            saw_unknown = true;
            for (std::size_t i = 0; i < survivors.size(); ++i)
                if (verdicts[i].unknown()) res.unresolved.push_back(survivors[i]);
        }
        res.levels.push_back(ls);
        if (found >= 0) {
            res.witness = survivors[static_cast<std::size_t>(found)];
            res.witness_verdict = verdicts[static_cast<std::size_t>(found)];
            res.k = k;
            if (saw_unknown && first_unknown_level < k) {
                res.status = UDiagramResult::Status::Interval;
                res.lo = first_unknown_level;
            } else {
                res.status = UDiagramResult::Status::Exact;
                res.lo = k;
            }
            return finish(res);
        }
    }

    res.status = UDiagramResult::Status::LowerBoundOnly;
    res.lo = saw_unknown ? first_unknown_level : cutoff + 1;
    return finish(res);
}

bool verify_upper_bound(const Diagram& d, const USearchOptions& opt) {
    auto res = unknotting_number_of_diagram(d, opt);
    if (!res.has_upper()) return false;
    std::size_t c = d.size();
    if (d.component_count() == 1) {
        if (c == 0) return res.k == 0;
        return 2 * res.k <= c - 1;
    }
    return 2 * res.k <= c;
}

}  // namespace kdt
