#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "laplim/errors.hpp"

namespace laplim {

constexpr long kMaxPathLength = 1000000;

/// Bundle of paths attached at one back node, written [q1,...,qr] with the
/// vertex counts sorted ascending. The empty bundle is written "[0]".
class Starlike {
public:
    Starlike() = default;

    explicit Starlike(std::vector<int> path_lengths) : q_(std::move(path_lengths)) {
        for (int q : q_) {
            if (q < 1) throw std::domain_error("starlike path length must be positive");
            if (q > kMaxPathLength) throw std::domain_error("starlike path length too large");
        }
        std::sort(q_.begin(), q_.end());
    }

    static Starlike empty() { return Starlike(); }

    bool is_empty() const { return q_.empty(); }
    int width() const { return static_cast<int>(q_.size()); }
    int height() const { return q_.empty() ? 0 : q_.back(); }
    int vertex_count() const {
        int n = 0;
        for (int q : q_) n += q;
        return n;
    }

    const std::vector<int>& path_lengths() const { return q_; }

    /// Multiset domination: every path of `this` fits inside a distinct path
    /// of `other`.
    bool contained_in(const Starlike& other) const {
        if (width() > other.width()) return false;
        // both sorted ascending; match largest-to-largest
        int off = other.width() - width();
        for (int i = 0; i < width(); ++i)
            if (q_[i] > other.q_[off + i]) return false;
        return true;
    }

    std::string str() const {
        if (q_.empty()) return "[0]";
        std::string out = "[";
        for (std::size_t i = 0; i < q_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(q_[i]);
        }
        return out + "]";
    }

    friend bool operator==(const Starlike& a, const Starlike& b) { return a.q_ == b.q_; }
    friend auto operator<=>(const Starlike& a, const Starlike& b) = default;

private:
    std::vector<int> q_;
};

/// A tree whose high-degree vertices all lie on one path; star j hangs off
/// back node v_j. The star list order is significant and never reordered.
class LinearTree {
public:
    explicit LinearTree(std::vector<Starlike> stars) : stars_(std::move(stars)) {
        if (stars_.empty()) throw std::domain_error("linear tree needs at least one star");
    }

    int length() const { return static_cast<int>(stars_.size()); }

    int vertex_count() const {
        int n = length();
        for (const auto& s : stars_) n += s.vertex_count();
        return n;
    }

    const std::vector<Starlike>& stars() const { return stars_; }
    const Starlike& star(int j) const { return stars_.at(j - 1); }  // 1-based, as on the main path

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < stars_.size(); ++i) {
            if (i) out += ",";
            out += stars_[i].str();
        }
        return out + "]";
    }

    friend bool operator==(const LinearTree& a, const LinearTree& b) { return a.stars_ == b.stars_; }

private:
    std::vector<Starlike> stars_;
};

enum class MatrixKind { Adjacency, Laplacian, SignlessLaplacian };

inline const char* matrix_kind_name(MatrixKind k) {
    switch (k) {
        case MatrixKind::Adjacency: return "adjacency";
        case MatrixKind::Laplacian: return "laplacian";
        case MatrixKind::SignlessLaplacian: return "signless";
    }
    return "?";
}

/// Explicit rooted tree in bottom-up elimination order: every child index is
/// smaller than its parent's, the root (the last back node) comes last.
struct RootedTree {
    std::vector<int> parent;             // -1 for the root
    std::vector<int> degree;
    std::vector<int> diag;               // matrix diagonal entry per vertex
    std::vector<std::vector<int>> children;

    int size() const { return static_cast<int>(parent.size()); }
};

inline RootedTree realize(const LinearTree& g, MatrixKind kind) {
    RootedTree t;
    int k = g.length();
    int prev_back = -1;
    for (int j = 1; j <= k; ++j) {
        std::vector<int> tops;
        for (int q : g.star(j).path_lengths()) {
            // path vertices leaf-first; each points at the next one inward
            for (int i = 0; i < q; ++i) {
                t.parent.push_back(static_cast<int>(t.parent.size()) + 1);
                t.degree.push_back(i == 0 ? 1 : 2);
            }
            tops.push_back(static_cast<int>(t.parent.size()) - 1);
        }
        int back = static_cast<int>(t.parent.size());
        for (int top : tops) t.parent[top] = back;
        t.parent.push_back(-1);
        t.degree.push_back(g.star(j).width() + (j > 1 ? 1 : 0) + (j < k ? 1 : 0));
        if (prev_back >= 0) t.parent[prev_back] = back;
        prev_back = back;
    }
    t.diag.resize(t.parent.size());
    for (std::size_t i = 0; i < t.parent.size(); ++i)
        t.diag[i] = (kind == MatrixKind::Adjacency) ? 0 : t.degree[i];
    t.children.assign(t.parent.size(), {});
    for (std::size_t i = 0; i < t.parent.size(); ++i)
        if (t.parent[i] >= 0) t.children[t.parent[i]].push_back(static_cast<int>(i));
    return t;
}

/// Caterpillar [r1,...,rk]: star j is r_j pendant leaves.
inline LinearTree from_caterpillar(const std::vector<int>& r) {
    if (r.empty()) throw std::domain_error("caterpillar needs at least one back node");
    std::vector<Starlike> stars;
    stars.reserve(r.size());
    for (int rj : r) {
        if (rj < 0) throw std::domain_error("caterpillar leaf count must be nonnegative");
        stars.emplace_back(std::vector<int>(rj, 1));
    }
    return LinearTree(std::move(stars));
}

namespace detail {

class LiteralParser {
public:
    explicit LiteralParser(const std::string& text) : s_(text) {}

    LinearTree parse_linear_tree() {
        skip_ws();
        expect('[');
        std::vector<Starlike> stars;
        stars.push_back(parse_star());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            stars.push_back(parse_star());
            skip_ws();
        }
        expect(']');
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters after tree literal");
        return LinearTree(std::move(stars));
    }

    Starlike parse_star() {
        skip_ws();
        expect('[');
        std::vector<long> vals;
        vals.push_back(parse_uint());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            vals.push_back(parse_uint());
            skip_ws();
        }
        expect(']');
        if (vals.size() == 1 && vals[0] == 0) return Starlike::empty();
        std::vector<int> q;
        for (long v : vals) {
            if (v == 0) fail("0 may only appear alone as the empty star \"[0]\"");
            q.push_back(static_cast<int>(v));
        }
        return Starlike(std::move(q));
    }

    Starlike parse_star_whole() {
        Starlike s = parse_star();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters after star literal");
        return s;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    long parse_uint() {
        skip_ws();
        if (!isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        long v = 0;
        while (isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > kMaxPathLength) fail("path length exceeds limit");
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse the tree-literal grammar, e.g. "[[1,1,1],[1],[0],[1,1],[1,1]]".
inline LinearTree parse_linear_tree(const std::string& text) {
    return detail::LiteralParser(text).parse_linear_tree();
}

/// Parse a single star literal, e.g. "[1,2]" or "[0]".
inline Starlike parse_star(const std::string& text) {
    return detail::LiteralParser(text).parse_star_whole();
}

/// Whether g embeds into h as a subgraph with the main paths aligned at v1,
/// for h one back node longer. Interior stars must be dominated star-by-star;
/// the last star of g may route at most one of its paths through h's extra
/// back node.
inline bool is_subtree_step(const LinearTree& g, const LinearTree& h) {
    if (h.length() != g.length() + 1)
        throw std::domain_error("is_subtree_step requires len(h) == len(g) + 1");
    int m = g.length();
    for (int j = 1; j < m; ++j)
        if (!g.star(j).contained_in(h.star(j))) return false;
    const Starlike& last = g.star(m);
    if (last.contained_in(h.star(m))) return true;
    // try routing one path of g's last star through h's back node v_{m+1}
    const auto& q = last.path_lengths();
    int spare = 1 + h.star(m + 1).height();
    for (std::size_t drop = 0; drop < q.size(); ++drop) {
        if (q[drop] > spare) continue;
        std::vector<int> rest;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (i != drop) rest.push_back(q[i]);
        if (Starlike(std::move(rest)).contained_in(h.star(m))) return true;
    }
    return false;
}

} // namespace laplim
