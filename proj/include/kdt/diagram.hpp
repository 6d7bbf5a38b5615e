#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kdt {

using ArcId = std::uint32_t;
using CrossingId = std::uint32_t;

/// Gadget role labels carried by crossings produced by template splicing.
enum class Role : std::uint8_t { None, C, A1, A2, B1, B2, P1, P2, F1, F2, F3 };

const char* role_name(Role r);
std::optional<Role> role_from_name(std::string_view s);

/// One crossing of a diagram. legs lists the four incident arcs in
/// counterclockwise order starting at the incoming under-strand arc, so the
/// under-strand occupies positions 0 -> 2 and the over-strand positions 1, 3.
struct Crossing {
    CrossingId id = 0;
    std::array<ArcId, 4> legs{};
    Role role = Role::None;
    std::uint16_t gadget = 0;
};

/// An arc end: position pos (0..3) at the crossing with index cx (index into
/// Diagram::crossings(), not the CrossingId).
struct End {
    std::uint32_t cx = 0;
    std::uint8_t pos = 0;

    friend bool operator==(End a, End b) { return a.cx == b.cx && a.pos == b.pos; }
    friend bool operator!=(End a, End b) { return !(a == b); }
    friend bool operator<(End a, End b) {
        return a.cx != b.cx ? a.cx < b.cx : a.pos < b.pos;
    }
};

class DiagramError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,       // malformed token
        Pairing,      // an arc id used != 2 times
        Genus,        // face count does not match a sphere embedding
        Orientation,  // arc directions cannot be consistently assigned
        Validation,   // other structural failure
        Budget,       // configured resource cap exceeded
        BadArgument,  // unknown crossing id etc.
    };

    DiagramError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}

    Kind kind;
};

/// A face of the sphere embedding, as the cyclic list of arc arrivals along
/// its boundary walk.  Arrival (cx,p) means: travel along legs[p] into cx,
/// occupying the corner between legs p and p+1; the walk departs via p+1.
struct Face {
    std::vector<End> arrivals;
};

/// A link diagram on the 2-sphere: a PD code with rotation system plus a
/// count of crossing-free circles.  Validated at construction (arc pairing,
/// sphere embedding via face tracing, orientability); immutable afterwards.
/// All operations are pure and return new diagrams.
class Diagram {
public:
    Diagram() = default;

    /// Validates and derives orientation, faces, components, signs.
    /// With strict_phases, a tuple whose position 0 is not the incoming
    /// under-arc under the traced orientation is an Orientation error;
    /// otherwise tuples are silently rotated by two into standard phase.
    static Diagram from_crossings(std::vector<Crossing> cs, std::uint32_t free_circles,
                                  bool strict_phases = false);

    std::size_t size() const { return crossings_.size(); }
    std::uint32_t free_circles() const { return free_circles_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    const Crossing& at(std::size_t cx) const { return crossings_[cx]; }

    std::size_t index_of(CrossingId id) const;  // throws BadArgument if absent
    bool has_crossing(CrossingId id) const;
    CrossingId max_crossing_id() const;
    ArcId max_arc_id() const;

    // --- arcs -------------------------------------------------------------
    std::size_t arc_count() const { return arc_ids_.size(); }
    const std::vector<ArcId>& arc_ids() const { return arc_ids_; }  // sorted
    std::size_t arc_index(ArcId a) const;
    ArcId arc_at(End e) const { return crossings_[e.cx].legs[e.pos]; }
    const std::array<End, 2>& arc_ends(std::size_t arc_idx) const { return arc_ends_[arc_idx]; }
    /// The other occurrence of the arc at end e.
    End other_end(End e) const;

    // --- orientation and signs ---------------------------------------------
    /// Position (1 or 3) at which the over-strand enters crossing cx.
    std::uint8_t over_entry(std::size_t cx) const { return over_entry_[cx]; }
    /// Crossing sign: +1 when a counterclockwise quarter turn takes the
    /// under-strand direction to the over-strand direction.
    int sign(std::size_t cx) const { return over_entry_[cx] == 1 ? 1 : -1; }
    int writhe() const { return writhe_; }

    // --- components ---------------------------------------------------------
    /// mu: closed curves including crossing-free circles.
    std::size_t component_count() const { return cycles_.size() + free_circles_; }
    std::size_t curve_components() const { return cycles_.size(); }
    /// Traversal pass cycles in the chosen orientation, one per curve
    /// component, ordered by smallest arc id.  Entries are crossing entries:
    /// (cx, p) with p the entry position.
    const std::vector<std::vector<End>>& component_cycles() const { return cycles_; }
    std::size_t component_of_arc(std::size_t arc_idx) const { return comp_of_arc_[arc_idx]; }
    /// Component of the strand entering at (cx,pos) in the chosen orientation.
    std::size_t component_of_entry(End e) const;

    // --- faces ---------------------------------------------------------------
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t face_of_arrival(End e) const { return face_of_[e.cx * 4 + e.pos]; }

    // --- predicates ----------------------------------------------------------
    bool is_split() const;
    bool is_alternating() const;
    bool is_reduced() const;
    /// True iff a simple closed curve meets the diagram only at this
    /// crossing: some face touches two opposite corners of it.
    bool is_nugatory(CrossingId id) const;

    // --- elementary surgery ----------------------------------------------------
    Diagram crossing_change(CrossingId id) const;
    Diagram change_set(const std::vector<CrossingId>& ids) const;
    /// Remove the crossing, reconnecting strands so orientation is respected.
    Diagram smooth_oriented(CrossingId id) const;
    /// Kauffman smoothing: type A joins leg pairs (0,3),(1,2); B joins (0,1),(2,3).
    Diagram smooth_state(CrossingId id, bool type_a) const;
    /// Reverses the rotation system (reflected diagram; writhe negates).
    Diagram mirror() const;
    Diagram with_role(CrossingId id, Role role, std::uint16_t gadget) const;
    Diagram without_roles() const;

    static Diagram disjoint_union(const Diagram& a, const Diagram& b);

    // --- generic rebuild (used by moves and template splicing) -----------------
    /// Removes crossings, rewrites legs, adds crossings, fuses arc pairs.
    /// Arcs whose remaining ends chain into a closed cycle become free
    /// circles; arcs fully consumed by removed crossings are dropped.
    struct Surgery {
        std::vector<CrossingId> remove;
        std::vector<std::pair<CrossingId, std::pair<int, ArcId>>> rewrites;  // (id, (pos, arc))
        std::vector<Crossing> add;
        std::vector<std::pair<ArcId, ArcId>> joins;
        std::int32_t free_circle_delta = 0;
    };
    Diagram apply_surgery(const Surgery& s) const;

    /// Lexicographically minimal flag-BFS encoding over all starting flags
    /// (and, optionally, reflection).  Equal keys == equal diagrams up to
    /// relabeling and sphere symmetry.
    std::string canonical_key(bool include_reflection = false) const;

    /// PD text: whitespace-separated X[a,b,c,d] tokens (arcs renumbered
    /// compactly) followed by one O per free circle.  Role labels, when
    /// present, are appended as a "# roles:" comment line.
    std::string render() const;

private:
    std::vector<Crossing> crossings_;
    std::uint32_t free_circles_ = 0;

    // derived
    std::vector<ArcId> arc_ids_;
    std::vector<std::array<End, 2>> arc_ends_;
    std::vector<std::uint8_t> over_entry_;
    std::vector<std::vector<End>> cycles_;
    std::vector<std::size_t> comp_of_arc_;
    std::vector<std::size_t> comp_of_entry_;  // by cx*4+pos, chosen direction only
    std::vector<Face> faces_;
    std::vector<std::size_t> face_of_;
    std::vector<std::size_t> graph_comp_of_;  // underlying-graph component per crossing
    std::size_t graph_comps_ = 0;
    int writhe_ = 0;

    void derive(bool strict_phases);
};

// --- text formats --------------------------------------------------------------

/// Parse PD text: X[a,b,c,d] tokens (a = incoming under-arc, counterclockwise)
/// and O tokens for crossing-free circles.  '#' starts a comment to end of line.
Diagram parse_pd(std::string_view text);

/// Parse a signed Gauss code: tokens like O3+ / U3- (over/under visit of
/// crossing 3 with sign), components separated by ';'.
Diagram parse_gauss(std::string_view text);

/// Emit a signed Gauss code for a diagram (inverse of parse_gauss up to
/// relabeling).
std::string render_gauss(const Diagram& d);

/// Crossing roles from a "# roles:" comment emitted by render().
std::vector<std::pair<CrossingId, std::pair<Role, std::uint16_t>>>
parse_roles_comment(std::string_view text);

// --- reports ---------------------------------------------------------------------

struct DiagramReport {
    std::size_t c = 0;
    std::size_t mu = 0;
    int writhe = 0;
    /// Pairwise linking numbers for all component pairs i < j.
    std::vector<std::tuple<std::size_t, std::size_t, int>> lk;
    bool alternating = false;
    bool reduced = false;
    bool split = false;

    /// Sum of |lk(i,j)| over all pairs.
    long total_abs_lk() const;
};

DiagramReport report(const Diagram& d);

}  // namespace kdt
