#pragma once

#include <array>
#include <string>
#include <vector>

#include "kdt/bracket.hpp"
#include "kdt/diagram.hpp"

namespace kdt {

enum class MoveKind : std::uint8_t { R1Down, R2Down, R3, R1Up, R2Up };

/// A Reidemeister move with its application site.
///  R1Down: c[0] = crossing with a monogon
///  R2Down: c[0], c[1] = the bigon crossings
///  R3:     (c[i], p[i]) = the three arrivals of the triangle face
///  R1Up:   arc = split arc, variant 0..3 = loop placement and kink sign
///  R2Up:   (c[0],p[0]) arrival corner of the pushed arc, (c[1],p[1]) of the
///          crossed arc (same face); over = pushed strand on top
struct Move {
    MoveKind kind = MoveKind::R1Down;
    std::array<CrossingId, 3> c{};
    std::array<std::uint8_t, 3> p{};
    ArcId arc = 0;
    std::uint8_t variant = 0;
    bool over = false;

    std::string to_string() const;
    friend bool operator<(const Move& a, const Move& b);
    friend bool operator==(const Move& a, const Move& b);
};

/// All legal moves on d, deterministically ordered (reducing moves first).
std::vector<Move> available_moves(const Diagram& d, bool include_insertions = true);

Diagram apply_move(const Diagram& d, const Move& m);

Diagram replay_moves(const Diagram& d, const std::vector<Move>& moves);

struct SearchBudget {
    int slack = 2;                     // allowed crossings above the input's count
    std::size_t visited_cap = 200000;  // distinct canonical diagrams
    std::size_t max_depth = 10000;     // certificate length cap
};

struct TrivialityVerdict {
    enum class V { Trivial, Nontrivial, Unknown };

    V verdict = V::Unknown;
    std::vector<Move> moves;  // Trivial: replays to a crossing-free diagram
    std::string obstruction;  // Nontrivial: invariant obstruction
    std::string note;         // Unknown: exhausted budget

    bool trivial() const { return verdict == V::Trivial; }
    bool nontrivial() const { return verdict == V::Nontrivial; }
    bool unknown() const { return verdict == V::Unknown; }
    const char* name() const {
        switch (verdict) {
            case V::Trivial: return "Trivial";
            case V::Nontrivial: return "Nontrivial";
            case V::Unknown: return "Unknown";
        }
        return "?";
    }
};

/// Three-valued triviality: linking numbers and the normalized bracket give
/// Nontrivial certificates; a best-first simplification search gives Trivial
/// ones (verified by replay); Unknown absorbs budget exhaustion.
TrivialityVerdict classify_triviality(const Diagram& d, const SearchBudget& sb = {},
                                      const BracketBudget& bb = {});

/// Number of arcs whose two ends have the same over/under parity (0 for
/// alternating diagrams); secondary key of the search ordering.
std::size_t non_alternating_edges(const Diagram& d);

}  // namespace kdt
