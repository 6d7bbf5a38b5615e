#pragma once

#include <cstdint>
#include <vector>

#include "kdt/diagram.hpp"
#include "kdt/laurent.hpp"

namespace kdt {

struct BracketBudget {
    std::size_t max_crossings = 24;       // cap for 2^c state enumeration
    std::size_t skein_node_cap = 2000000;  // node budget for the skein recursion
};

/// Bracket vector of a 4-ended tangle fragment in the crossingless basis:
/// `horizontal` multiplies the resolution joining leg positions (0,3),(1,2)
/// (the A-smoothing shape of a crossing), `vertical` the (0,1),(2,3) one.
struct TangleBracket {
    LaurentPolynomial horizontal;
    LaurentPolynomial vertical;

    static TangleBracket bare_crossing() {
        return {LaurentPolynomial::monomial(1, 1), LaurentPolynomial::monomial(-1, 1)};
    }
};

/// Loop counts for all 2^c smoothing states of a fixed diagram, shared by
/// every crossing-change variant: a crossing change swaps which smoothing of
/// that crossing counts as A, so only exponents move, never loop counts.
class StateTable {
public:
    static StateTable build(const Diagram& d, const BracketBudget& b = {});

    const Diagram& base() const { return base_; }
    std::size_t crossing_count() const { return base_.size(); }
    /// State bit i set means the B-smoothing is chosen at crossing index i.
    std::uint8_t loops(std::uint32_t state) const { return loops_[state]; }

    LaurentPolynomial bracket() const { return variant_bracket(0); }
    /// Exact bracket of the base with the crossings in `flips` changed.
    LaurentPolynomial variant_bracket(std::uint32_t flips) const;
    int variant_writhe(std::uint32_t flips) const;
    LaurentPolynomial variant_normalized(std::uint32_t flips) const;

    std::uint32_t mask_of(const std::vector<CrossingId>& ids) const;

private:
    Diagram base_;
    std::vector<std::uint8_t> loops_;
    std::vector<int> signs_;
};

/// Kauffman bracket with <unknot> = 1, <D u O> = delta <D>, delta = -A^2 - A^-2.
/// Dispatches to the 2^c state sum; throws Budget above the crossing cap.
LaurentPolynomial bracket(const Diagram& d, const BracketBudget& b = {});

LaurentPolynomial bracket_state_sum(const Diagram& d, const BracketBudget& b = {});

/// Memoized skein recursion with R1/R2 simplification between smoothings.
/// Agrees with the state sum; usable beyond the state-sum cap.
LaurentPolynomial bracket_skein(const Diagram& d, const BracketBudget& b = {});

/// (-A^3)^(-w(D)) * bracket(D); invariant under all Reidemeister moves.
LaurentPolynomial normalized_bracket(const Diagram& d, const BracketBudget& b = {});

LaurentPolynomial normalized_from_bracket(const LaurentPolynomial& br, int writhe);

/// Normalized bracket of the mu-component unlink: delta^(mu-1).
LaurentPolynomial unlink_normalized_polynomial(std::size_t mu);

/// True iff normalized_bracket(D) equals the unlink polynomial for D's
/// component count; false certifies D is not the trivial link.
bool is_unlink_polynomial(const Diagram& d, const BracketBudget& b = {});

/// Generalized state sum: bracket of the diagram obtained from the table's
/// base by replacing crossing i with a fragment of bracket vector weights[i].
/// With all weights = bare_crossing() this equals bracket(base).
LaurentPolynomial bracket_with_slot_weights(const StateTable& t,
                                            const std::vector<TangleBracket>& weights);

}  // namespace kdt
