#pragma once

#include <optional>

#include "kdt/moves.hpp"

namespace kdt {

/// A 2-string tangle fragment with four boundary legs, spliced in place of a
/// crossing.  legs[k] is the boundary stub matching leg position k of the
/// crossing it replaces; internal arcs are local to the template.  Crossings
/// carry role labels (C/A1/A2/B1/B2 for the plus-two gadget; P1/P2 plus
/// fillers for the doubling gadget).
struct TangleTemplate {
    std::string name;
    std::array<ArcId, 4> legs{};
    std::vector<Crossing> crossings;

    std::optional<CrossingId> find_role(Role r) const;
    std::vector<CrossingId> roles(std::initializer_list<Role> rs) const;
};

/// Parse the template file format:
///   tangle <name>
///   legs <a0> <a1> <a2> <a3>
///   X[a,b,c,d] <role>
///   ...
/// '#' comments allowed; several named templates per file.
std::vector<TangleTemplate> parse_templates(std::string_view text);
std::string render_template(const TangleTemplate& t);

/// Templates shipped with the library (same content as the data files).
std::string_view builtin_templates_text();

/// Load a named template: explicit path if given, else $KDT_TEMPLATES, else
/// the data directory copy, else the built-in text.
TangleTemplate load_template(std::string_view name, const std::string& path = "");

/// Numerator closure joins leg positions (0,3) and (1,2); denominator joins
/// (0,1) and (2,3).  Crossings listed in `flips` are changed first.
Diagram template_closure(const TangleTemplate& t, bool numerator,
                         const std::vector<CrossingId>& flips = {});

/// Bracket vector of the (possibly flipped) fragment in the crossingless
/// tangle basis; frame-aligned with StateTable slot weights.
TangleBracket tangle_bracket(const TangleTemplate& t,
                             const std::vector<CrossingId>& flips = {});

/// Replace crossing `at` by the template; internal arcs and crossing ids are
/// relabeled fresh, role labels recorded with the given gadget index.
Diagram splice_template(const Diagram& d, CrossingId at, const TangleTemplate& t,
                        std::uint16_t gadget);

struct TemplateValidation {
    bool ok = true;
    std::vector<std::string> lines;  // one per check, "PASS ..." / "FAIL ..."

    void add(bool pass, const std::string& what);
};

/// Closure contracts of the plus-two gadget (G1: same tangle as one crossing;
/// G2: designated triples give the opposite crossing; G3: changing C alone
/// leaves a knotted closure) or of the doubling gadget (same-tangle check and
/// the designated-pair contract).  Verdicts must be Trivial/Nontrivial only.
TemplateValidation validate_template(const TangleTemplate& t, const SearchBudget& sb = {},
                                     const BracketBudget& bb = {});

}  // namespace kdt
