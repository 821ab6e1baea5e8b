#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "laplim/limits.hpp"
#include "laplim/shearer.hpp"
#include "laplim/spectral.hpp"
#include "laplim/variational.hpp"

namespace laplim {

using nlohmann::json;

namespace detail {

template <class Real>
json real_list(const std::vector<Real>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(RealOps<Real>::str(x));
    return arr;
}

inline json star_list(const std::vector<Starlike>& v) {
    json arr = json::array();
    for (const auto& s : v) arr.push_back(s.str());
    return arr;
}

} // namespace detail

inline json poly_json(const Polynomial& p) {
    json arr = json::array();
    for (const auto& c : p.primitive_int_coeffs()) arr.push_back(c.get_str());
    return {{"coeffs_low_to_high", arr}, {"text", p.str("x")}};
}

template <class Real>
json to_json(const ShearerRun<Real>& run) {
    json j{{"schema", "laplim/shearer-run/1"},
           {"mode", shearer_mode_name(run.mode)},
           {"target", RealOps<Real>::str(run.target)},
           {"experimental", run.experimental},
           {"stars", detail::star_list(run.stars)},
           {"s_trace", detail::real_list(run.s_trace)},
           {"radii", detail::real_list(run.radii)},
           {"first_k", run.first_k},
           {"tree", run.tree().str()}};
    if (!run.caterpillar.empty()) j["caterpillar"] = run.caterpillar;
    return j;
}

template <class Real>
json to_json(const RadiusResult<Real>& r) {
    return {{"schema", "laplim/radius/1"},
            {"value", RealOps<Real>::str(r.value)},
            {"bracket", {RealOps<Real>::str(r.lo), RealOps<Real>::str(r.hi)}},
            {"iterations", r.iterations},
            {"kind", matrix_kind_name(r.kind)},
            {"tolerance", RealOps<Real>::str(r.tol)},
            {"exact", r.exact}};
}

inline json to_json(const LimitEstimate& est) {
    return {{"schema", "laplim/limit-estimate/1"},
            {"gamma", est.gamma},
            {"cauchy_gap", est.cauchy_gap},
            {"radii", est.radii}};
}

inline json to_json(const AlgebraicLimit& al) {
    json j{{"schema", "laplim/algebraic-limit/1"},
           {"degenerate", al.degenerate},
           {"numeric_check", al.numeric_check},
           {"numeric_gap", al.numeric_gap}};
    if (!al.note.empty()) j["note"] = al.note;
    if (!al.degenerate) {
        j["defining_polynomial"] = poly_json(al.defining);
        j["selected_root"] = al.selected_root.str();
        j["isolation"] = {rat_str(al.isolation.lo), rat_str(al.isolation.hi)};
        json cands = json::array();
        for (const auto& r : al.candidate_roots) cands.push_back(r.str());
        j["candidate_roots"] = cands;
    }
    return j;
}

inline json to_json(const Certificate& cert) {
    json j{{"schema", "laplim/certificate/1"},
           {"mu", cert.mu.str()},
           {"k", cert.k},
           {"precision_bits", cert.precision_bits},
           {"verdict", cert.verdict == Verdict::ConvergesToMu ? "converges-to-mu"
                                                              : "stalled-below"},
           {"verdict_evidence", cert.verdict_evidence.str()},
           {"alpha_closing", cert.alpha_closing.str()},
           {"S_closing", cert.S_closing.str()},
           {"X_closing", cert.X_closing.str()}};
    return j;
}

inline std::string spec_literal(const SequenceSpec& spec) {
    std::string out = "[";
    for (std::size_t i = 0; i < spec.prefix.size(); ++i) {
        if (i) out += ",";
        out += spec.prefix[i].str();
    }
    out += "]";
    switch (spec.tail_kind) {
        case TailKind::ZeroTail: out += ";tail=[0]"; break;
        case TailKind::ConstantTail: out += ";tail=" + spec.tail_stars[0].str(); break;
        case TailKind::PeriodicTail: {
            out += ";tail=(";
            for (std::size_t i = 0; i < spec.tail_stars.size(); ++i) {
                if (i) out += ",";
                out += spec.tail_stars[i].str();
            }
            out += ")";
            break;
        }
    }
    if (spec.closing == ClosingRule::ShiftOfT) {
        out += ";close=shift";
    } else {
        out += ";close=(";
        for (std::size_t i = 0; i < spec.closing_list.size(); ++i) {
            if (i) out += ",";
            out += spec.closing_list[i].str();
        }
        out += ")";
    }
    return out;
}

/// Parse "<tree-literal>;tail=...;close=..." (tail and close optional,
/// defaulting to [0] and shift).
inline SequenceSpec parse_spec_literal(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.empty() || parts[0].empty()) throw ParseError("empty spec literal", 0);
    SequenceSpec spec;
    spec.prefix = parse_linear_tree(parts[0]).stars();

    auto parse_star_group = [](const std::string& v) {
        std::vector<Starlike> stars;
        if (!v.empty() && v.front() == '(') {
            if (v.back() != ')') throw ParseError("unterminated star group", v.size());
            std::string inner = v.substr(1, v.size() - 2);
            stars = parse_linear_tree("[" + inner + "]").stars();
        } else {
            stars.push_back(parse_star(v));
        }
        return stars;
    };

    for (std::size_t p = 1; p < parts.size(); ++p) {
        const std::string& part = parts[p];
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in spec literal", 0);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "tail") {
            auto stars = parse_star_group(val);
            if (stars.size() == 1 && stars[0].is_empty()) {
                spec.tail_kind = TailKind::ZeroTail;
            } else if (stars.size() == 1) {
                spec.tail_kind = TailKind::ConstantTail;
                spec.tail_stars = stars;
            } else {
                spec.tail_kind = TailKind::PeriodicTail;
                spec.tail_stars = stars;
            }
        } else if (key == "close") {
            if (val == "shift") {
                spec.closing = ClosingRule::ShiftOfT;
            } else {
                spec.closing = ClosingRule::ExplicitList;
                spec.closing_list = parse_star_group(val);
            }
        } else {
            throw ParseError("unknown spec key '" + key + "'", 0);
        }
    }
    return spec;
}

} // namespace laplim
