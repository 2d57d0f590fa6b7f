#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/interval.hpp"

namespace magic_angles {

// Chord of the unit disk named by its two boundary angles (unordered;
// degenerate when equal).  Stored with a <= b.
struct Leaf {
    Angle a, b;

    Leaf() = default;
    Leaf(Angle x, Angle y) : a(std::move(x)), b(std::move(y)) {
        if (b < a) std::swap(a, b);
    }

    bool degenerate() const { return a == b; }

    // f(L) = {D(a), D(b)}.
    Leaf image() const { return Leaf(a.doubled(), b.doubled()); }

    bool touches(const Angle& x) const { return x == a || x == b; }

    friend bool operator==(const Leaf& l, const Leaf& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator!=(const Leaf& l, const Leaf& r) { return !(l == r); }
    friend bool operator<(const Leaf& l, const Leaf& r) {
        return l.a < r.a || (l.a == r.a && l.b < r.b);
    }
};

// Side of the chord on which boundary point x lies: +1 strictly inside
// the arc (a, b), -1 strictly inside (b, a), 0 on an endpoint.
inline int chord_side(const Leaf& l, const Angle& x) {
    if (x == l.a || x == l.b) return 0;
    return (l.a < x && x < l.b) ? +1 : -1;
}

namespace detail {

// Sides of the chord on which leaf p can entirely sit, endpoints of p
// on the chord being compatible with either side.  Bit 1 = side -1,
// bit 2 = side +1; 0 means p crosses the chord.
inline unsigned feasible_sides(const Leaf& l, const Leaf& p) {
    unsigned mask = 3;
    for (const Angle* x : {&p.a, &p.b}) {
        int s = chord_side(l, *x);
        if (s == +1) mask &= 2;
        else if (s == -1) mask &= 1;
    }
    return mask;
}

} // namespace detail

// Closed-side separation: the chord l separates p from q when their
// endpoints can be placed in different *closed* half-disks.  Leaves
// sharing an endpoint with l are allowed; a degenerate l separates
// nothing.
inline bool separates_closed(const Leaf& l, const Leaf& p, const Leaf& q) {
    if (l.degenerate()) return false;
    unsigned fp = detail::feasible_sides(l, p);
    unsigned fq = detail::feasible_sides(l, q);
    return ((fp & 1) && (fq & 2)) || ((fp & 2) && (fq & 1));
}

// Strict separation predicate; rejects configurations whose meaning
// would depend on an endpoint convention.
inline bool separates(const Leaf& l, const Leaf& p, const Leaf& q) {
    if (l.degenerate()) throw hypothesis_error("separating leaf is degenerate");
    for (const Leaf* other : {&p, &q})
        if (other->touches(l.a) || other->touches(l.b))
            throw hypothesis_error("incident leaves");
    return separates_closed(l, p, q);
}

// Chords cross iff exactly one endpoint of one lies strictly inside
// the arc cut off by the other (shared endpoints do not cross).
inline bool leaves_cross(const Leaf& l, const Leaf& m) {
    return chord_side(l, m.a) * chord_side(l, m.b) < 0;
}

// Membership of l in the combinatorial segment [e1, e2]: the endpoints
// themselves, plus every leaf separating e1 from e2.
inline bool segment_contains(const Leaf& e1, const Leaf& e2, const Leaf& l) {
    return l == e1 || l == e2 || separates_closed(l, e1, e2);
}

namespace detail {

// Forward orbit of a leaf up to (excluding) the first repetition.
inline std::vector<Leaf> leaf_orbit(const Leaf& m, std::size_t max_iter) {
    std::vector<Leaf> orbit;
    std::set<Leaf> seen;
    Leaf cur = m;
    while (seen.insert(cur).second) {
        orbit.push_back(cur);
        if (orbit.size() > max_iter)
            throw hypothesis_error("leaf orbit did not close");
        cur = cur.image();
    }
    return orbit;
}

// Number of ends of the tree spanned by the leaf orbit: orbit leaves
// that do not separate two other orbit leaves.  A single
// non-degenerate leaf spans a segment, which has two ends.
inline std::size_t count_tree_ends(const std::vector<Leaf>& orbit) {
    if (orbit.size() == 1) return orbit.front().degenerate() ? 1 : 2;
    std::size_t ends = 0;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        bool interior = false;
        for (std::size_t j = 0; j < orbit.size() && !interior; ++j) {
            if (j == i) continue;
            for (std::size_t k = j + 1; k < orbit.size() && !interior; ++k) {
                if (k == i) continue;
                interior = separates_closed(orbit[i], orbit[j], orbit[k]);
            }
        }
        if (!interior) ++ends;
    }
    return ends;
}

} // namespace detail

// Combinatorial Hubbard tree data for a minor leaf: the iterates up
// to the closure index (the minimal N with f^{N+1}(m) inside the union
// of segments [beta, f^i(m)], i <= N), the full forward orbit, and the
// end count of the tree spanned by the orbit.
struct HubbardTree {
    Leaf minor;
    std::vector<Leaf> iterates; // f^0(m) ... f^N(m)
    std::vector<Leaf> orbit;    // forward orbit until cycle closure
    std::size_t closure_index = 0;
    std::size_t ends = 0;
};

inline HubbardTree hubbard_tree(const Leaf& m, std::size_t max_iter = 4096) {
    const Leaf beta{Angle(), Angle()};

    HubbardTree t;
    t.minor = m;
    t.orbit = detail::leaf_orbit(m, max_iter);
    t.ends = detail::count_tree_ends(t.orbit);

    std::vector<Leaf> h = {m};
    Leaf next = m.image();
    for (std::size_t n = 0;; ++n) {
        if (n >= max_iter) throw hypothesis_error("tree did not close");
        bool inside = false;
        for (const Leaf& li : h)
            if (segment_contains(beta, li, next)) {
                inside = true;
                break;
            }
        if (inside) {
            t.closure_index = n;
            break;
        }
        h.push_back(next);
        next = next.image();
    }
    t.iterates.assign(h.begin(), h.end());
    return t;
}

// End count of the tree of a dyadic tip: complexity + 1.
inline std::size_t ends_dyadic(const Angle& theta0) {
    if (!theta0.is_dyadic()) throw hypothesis_error("not dyadic");
    if (theta0.is_zero()) throw hypothesis_error("ends of the zero angle are undefined");
    return dyadic_complexity(theta0) + 1;
}

// Pairwise disjointness of the open arcs (D^k a, D^k b), k < q.
inline bool arcs_disjoint(const Leaf& pair, std::size_t q) {
    if (pair.degenerate()) throw hypothesis_error("arc test requires a nondegenerate pair");
    std::vector<CircularInterval> arcs;
    Angle lo = pair.a, hi = pair.b;
    for (std::size_t k = 0; k < q; ++k) {
        arcs.emplace_back(lo, hi);
        lo = lo.doubled();
        hi = hi.doubled();
    }
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            const CircularInterval &x = arcs[i], &y = arcs[j];
            if (x.contains(y.start()) || y.contains(x.start()) || x.start() == y.start())
                return false;
        }
    return true;
}

} // namespace magic_angles
