#pragma once

#include <limits>

#include "kdt/moves.hpp"

namespace kdt {

struct LevelStats {
    std::size_t level = 0;
    std::size_t total = 0;
    std::size_t bound_pruned = 0;        // whole level certified by the linking bound
    std::size_t nontrivial_bracket = 0;  // certified by the shared state table
    std::size_t nontrivial_full = 0;     // certified by classify_triviality
    std::size_t trivial = 0;
    std::size_t unknown = 0;
};

/// Result of the cardinality-ordered subset search for u(D).
struct UDiagramResult {
    enum class Status { Exact, Interval, LowerBoundOnly };

    Status status = Status::LowerBoundOnly;
    std::size_t k = 0;   // Exact value; upper end for Interval
    std::size_t lo = 0;  // lower bound for Interval / LowerBoundOnly
    std::vector<CrossingId> witness;
    TrivialityVerdict witness_verdict;
    std::vector<std::vector<CrossingId>> unresolved;  // Unknown subsets below the upper end
    std::vector<LevelStats> levels;
    double seconds = 0;

    bool exact() const { return status == Status::Exact; }
    /// Best proven upper value (k) when one exists.
    bool has_upper() const { return status != Status::LowerBoundOnly; }
    std::size_t lower() const { return status == Status::Exact ? k : lo; }
};

struct USearchOptions {
    SearchBudget search;
    BracketBudget bracket;
    std::size_t level_cap = std::numeric_limits<std::size_t>::max();
    unsigned workers = 1;
    bool use_state_table = true;  // disable to force the slow classify-only oracle
};

/// Exact u(D) by enumerating crossing sets by size, with the state-table
/// bracket fast path certifying Nontrivial variants and classify_triviality
/// escalation for the rest.
UDiagramResult unknotting_number_of_diagram(const Diagram& d, const USearchOptions& opt = {});

struct AscendingResult {
    std::size_t value = 0;
    End basepoint{};      // first pass after the basepoint
    bool reversed = false;  // traversal direction achieving the minimum
    std::vector<CrossingId> changes;
};

/// Minimum over basepoints and orientations of the crossings first visited on
/// the over-strand; changing them makes the diagram monotone, hence trivial.
AscendingResult ascending_number_of_diagram(const Diagram& d);

/// A change set that makes the diagram monotone: the ascending witness for
/// knots; for links, components are stacked in order with each one monotone,
/// taking the cheaper of the two complementary stackings.
std::vector<CrossingId> descending_change_set(const Diagram& d);

/// Checks the computed upper value against u(D) <= (c-1)/2 (knots, c >= 1)
/// or u(D) <= c/2 (links).
bool verify_upper_bound(const Diagram& d, const USearchOptions& opt = {});

}  // namespace kdt
