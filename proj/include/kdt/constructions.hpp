#pragma once

#include <functional>

#include "kdt/search.hpp"
#include "kdt/templates.hpp"

namespace kdt {

/// Standard closed 2-braid diagram with p crossings: alternating and reduced;
/// a knot for odd p, a 2-component link for even p >= 2; p = 0 gives two
/// crossing-free circles.
Diagram torus_2p(unsigned p);

/// Chain of `rings` circles, consecutive ones clasped with linking number 1;
/// every component is a simple closed curve and every clasp alternates.
Diagram chain_link(unsigned rings);

struct TransformResult {
    Diagram diagram;
    /// Changing these crossings provably yields a trivial link (the
    /// certificate carried along by the construction).
    std::vector<CrossingId> trivializing_set;
    std::size_t gadgets = 0;
};

/// Splices the plus-two gadget over one member of the minimal unknotting set
/// and every crossing outside it; u goes up by exactly two.  min_set must be
/// a minimal unlinking set of d (verified with a subset search unless
/// verify_minimality is false).
TransformResult plus_two_transform(const Diagram& d, const std::vector<CrossingId>& min_set,
                                   const TangleTemplate& tmpl, bool verify_minimality = true,
                                   const USearchOptions& opt = {});

/// Applies plus_two_transform m times, extending the trivializing set as in
/// the construction; the initial minimal set comes from an exact search.
TransformResult iterate_plus_two(const Diagram& d, unsigned m, const TangleTemplate& tmpl,
                                 const USearchOptions& opt = {});

/// Replaces every crossing by the doubling gadget; represents the same link.
Diagram doubling_transform(const Diagram& d, const TangleTemplate& tmpl);

/// Exact bracket of the diagram obtained from `base` by replacing the listed
/// crossings with template fragments; cost is 2^c(base), independent of the
/// size of the transformed diagram.
LaurentPolynomial transformed_bracket(
    const Diagram& base,
    const std::vector<std::pair<CrossingId, const TangleTemplate*>>& slots,
    const BracketBudget& bb = {});

/// True iff the knot diagram realizes u(D) = (c-1)/2: one crossing, or a
/// reduced alternating diagram whose Gauss sequence is the standard closed
/// 2-braid pattern (the two visits of every crossing are c apart).
bool is_knot_equality_diagram(const Diagram& d);

/// True iff every component is a simple closed curve and every component
/// pair either never crosses or alternates along both components.
bool is_link_equality_diagram(const Diagram& d);

struct EnumerationItem {
    Diagram diagram;
    std::string canonical;   // reflection-inclusive key
    std::string provenance;  // generation path
};

/// Every spherically-realizable one-component diagram with 1..max_crossings
/// crossings and every over/under assignment, deduplicated by canonical form
/// including reflection.  max_crossings is capped at 6.
void enumerate_knot_diagrams(std::size_t max_crossings,
                             const std::function<void(EnumerationItem&&)>& sink);
std::vector<EnumerationItem> enumerate_knot_diagram_list(std::size_t max_crossings);

/// Applies `count` uniformly random legal moves (insertions gated by slack
/// over the seed diagram's crossing number); deterministic in `seed`.
Diagram scramble(const Diagram& d, std::size_t count, std::uint64_t seed, int slack = 6);

}  // namespace kdt
