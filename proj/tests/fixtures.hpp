#pragma once

#include "laplim/limits.hpp"
#include "laplim/tree_model.hpp"

namespace laplim::fixtures {

/// Star stream with constant [1] tail closed by [1,1]: the caterpillar
/// family whose radii converge to the lower nasty-interval endpoint.
inline SequenceSpec lemma34() {
    SequenceSpec s;
    s.prefix = {Starlike({1, 1, 1})};
    s.tail_kind = TailKind::ConstantTail;
    s.tail_stars = {Starlike({1})};
    s.closing = ClosingRule::ExplicitList;
    s.closing_list = {Starlike({1, 1})};
    return s;
}

/// Recorded 100-step random run against 5.4 (zero tail, shift closing).
inline SequenceSpec recorded_run_54() {
    SequenceSpec s;
    const char* lit =
        "[[1],[1,2],[1],[0],[0],[1],[1],[0],[1],[2],[2],[2],[1],[1],[2],[2],[2],[1],[2],[1],"
        "[2],[1],[2],[2],[1],[2],[1],[2],[2],[2],[2],[2],[2],[2],[1],[1],[2],[1],[2],[2],[1],"
        "[2],[2],[2],[1],[2],[2],[2],[2],[2],[1],[2],[2],[2],[2],[2],[2],[1],[2],[2],[1],[1],"
        "[2],[2],[2],[2],[2],[2],[2],[1],[2],[2],[1],[2],[1],[1],[2],[2],[2],[1],[1],[1],[1],"
        "[1],[1],[2],[2],[1],[1],[2],[2],[1],[2],[2],[1],[2],[1],[2],[2],[2]]";
    s.prefix = parse_linear_tree(lit).stars();
    return s;
}

/// 30-term stream found by a genetic search against 5.4.
inline SequenceSpec genetic29() {
    SequenceSpec s;
    const char* lit =
        "[[0],[1,1],[1],[7],[5],[6],[7],[7],[2],[3],[5],[6],[2],[5],[4],[4],[6],[6],[6],[0],"
        "[6],[1,1],[0],[6],[0],[3],[4],[4],[7],[1,1]]";
    s.prefix = parse_linear_tree(lit).stars();
    return s;
}

} // namespace laplim::fixtures
