#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/expansion.hpp"
#include "magic_angles/interval.hpp"
#include "magic_angles/lamination.hpp"
#include "magic_angles/parse.hpp"
#include "magic_angles/word.hpp"

namespace magic_angles {

// Two periodic angles whose rays land together, with their period-long
// expansion words.  The period-1 entry is the degenerate (0, 0) pair
// carrying the words "0" and "1".
struct RayPair {
    std::size_t period = 0;
    Angle lower, upper;
    BinaryWord word_lower, word_upper;

    Leaf leaf() const { return Leaf(lower, upper); }
};

// Non-crossing pairing of all periodic angles up to a period bound.
// Periods are processed increasingly; within a period, the pairing
// repeatedly joins the two *consecutive* unpaired angles with the
// smallest gap whose chord crosses nothing drawn so far (ties resolved
// toward the smaller angle).  Chords drawn within the current period
// can never cross a later consecutive candidate (their endpoints were
// adjacent among the unpaired angles when drawn), so only chords from
// earlier periods are tested, on plain int64 numerators.
class RayPairTable {
public:
    explicit RayPairTable(std::size_t max_period) : max_period_(max_period) {
        if (max_period < 1 || max_period > 16)
            throw hypothesis_error("ray pair enumeration supports periods 1..16");

        pairs_.push_back(RayPair{1, Angle(), Angle(), BinaryWord("0"), BinaryWord("1")});

        std::vector<Chord> drawn;

        for (std::size_t k = 2; k <= max_period; ++k) {
            const std::int64_t den = (std::int64_t{1} << k) - 1;

            std::vector<std::int64_t> cand;
            for (std::int64_t j = 1; j < den; ++j)
                if (exact_period(j, den) == k) cand.push_back(j);

            // Doubly linked list over cand indices; blocked status of an
            // adjacency is memoized (the earlier-period chord set is
            // fixed for the whole pass).
            std::vector<std::size_t> next(cand.size() + 1), prev(cand.size() + 1);
            const std::size_t head = cand.size(); // sentinel
            for (std::size_t i = 0; i <= cand.size(); ++i) {
                next[i] = (i + 1) % (cand.size() + 1);
                prev[(i + 1) % (cand.size() + 1)] = i;
            }
            std::map<std::pair<std::size_t, std::size_t>, bool> blocked_memo;
            auto blocked = [&](std::size_t i, std::size_t j) {
                auto it = blocked_memo.find({i, j});
                if (it != blocked_memo.end()) return it->second;
                bool b = false;
                for (const Chord& c : drawn)
                    if (chords_cross(c, cand[i], cand[j], den)) {
                        b = true;
                        break;
                    }
                blocked_memo[{i, j}] = b;
                return b;
            };

            std::size_t remaining = cand.size();
            while (remaining > 0) {
                std::size_t best_i = head;
                std::int64_t best_gap = 0;
                for (std::size_t i = next[head]; next[i] != head; i = next[i]) {
                    std::int64_t gap = cand[next[i]] - cand[i];
                    if ((best_i == head || gap < best_gap) && !blocked(i, next[i])) {
                        best_i = i;
                        best_gap = gap;
                    }
                }
                if (best_i == head)
                    throw internal_error("ray pair cascade stalled before pairing all angles");

                std::size_t best_j = next[best_i];
                RayPair rp;
                rp.period = k;
                rp.lower = Angle(cand[best_i], den);
                rp.upper = Angle(cand[best_j], den);
                // j/(2^k - 1) = .~W with W the k-digit binary form of j.
                rp.word_lower = BinaryWord::from_integer(Integer(cand[best_i]), k);
                rp.word_upper = BinaryWord::from_integer(Integer(cand[best_j]), k);
                pairs_.push_back(std::move(rp));
                drawn.push_back(Chord{cand[best_i], cand[best_j], den});

                next[prev[best_i]] = next[best_j];
                prev[next[best_j]] = prev[best_i];
                remaining -= 2;
            }
        }
        std::sort(pairs_.begin(), pairs_.end(), [](const RayPair& x, const RayPair& y) {
            return x.period != y.period ? x.period < y.period : x.lower < y.lower;
        });
    }

    std::size_t max_period() const noexcept { return max_period_; }
    const std::vector<RayPair>& pairs() const noexcept { return pairs_; }

    std::vector<RayPair> of_period(std::size_t k) const {
        std::vector<RayPair> out;
        for (const RayPair& rp : pairs_)
            if (rp.period == k) out.push_back(rp);
        return out;
    }

    std::optional<RayPair> pair_of_angle(const Angle& theta) const {
        for (const RayPair& rp : pairs_)
            if (rp.lower == theta || rp.upper == theta) return rp;
        return std::nullopt;
    }

private:
    struct Chord {
        std::int64_t lo, hi, den;
    };

    static std::size_t exact_period(std::int64_t j, std::int64_t den) {
        std::int64_t x = j;
        std::size_t t = 0;
        do {
            x = (x * 2) % den;
            ++t;
        } while (x != j);
        return t;
    }

    // Does the chord (c.lo/c.den, c.hi/c.den) cross (x/den, y/den)?
    // Denominators differ across periods, so no shared endpoints; the
    // test is whether exactly one of x, y lies strictly inside the arc.
    static bool chords_cross(const Chord& c, std::int64_t x, std::int64_t y,
                             std::int64_t den) {
        auto inside = [&](std::int64_t v) {
            return c.lo * den < v * c.den && v * c.den < c.hi * den;
        };
        return inside(x) != inside(y);
    }

    std::size_t max_period_;
    std::vector<RayPair> pairs_;
};

// The unique doubling orbit of size q on which the map acts with
// combinatorial rotation number p/q; its minimal gap bounds the
// critical-value sector and names the corresponding limb root.
struct RotationSet {
    std::size_t p = 0, q = 0;
    std::vector<Angle> points;    // sorted ascending
    std::size_t root_index = 0;   // minimal gap is (points[i], points[i+1])

    const Angle& root_lower() const { return points[root_index]; }
    const Angle& root_upper() const { return points[root_index + 1]; }
};

inline RotationSet rotation_set(std::size_t p, std::size_t q) {
    if (q < 2 || p == 0 || p >= q || std::gcd(p, q) != 1)
        throw hypothesis_error("rotation number must be p/q in lowest terms with 0 < p < q");
    if (q > 20) throw hypothesis_error("rotation set search supports q <= 20");

    const std::int64_t den = (std::int64_t{1} << q) - 1;
    std::vector<bool> visited(static_cast<std::size_t>(den), false);
    std::optional<RotationSet> found;

    for (std::int64_t j = 1; j < den; ++j) {
        if (visited[static_cast<std::size_t>(j)]) continue;

        std::vector<std::int64_t> orbit;
        std::int64_t x = j;
        do {
            visited[static_cast<std::size_t>(x)] = true;
            orbit.push_back(x);
            x = (x * 2) % den;
        } while (x != j);
        if (orbit.size() != q) continue;

        std::sort(orbit.begin(), orbit.end());
        auto index_of = [&](std::int64_t v) {
            return static_cast<std::size_t>(
                std::lower_bound(orbit.begin(), orbit.end(), v) - orbit.begin());
        };
        std::size_t r = index_of(orbit[0] * 2 % den);
        bool rotates = true;
        for (std::size_t i = 0; i < orbit.size() && rotates; ++i)
            rotates = index_of(orbit[i] * 2 % den) == (i + r) % q;
        if (!rotates || r != p) continue;

        if (found) throw internal_error("rotation set is not unique");
        RotationSet rs;
        rs.p = p;
        rs.q = q;
        for (std::int64_t v : orbit) rs.points.emplace_back(v, den);
        std::int64_t best_gap = den;
        for (std::size_t i = 0; i + 1 < orbit.size(); ++i) {
            std::int64_t gap = orbit[i + 1] - orbit[i];
            if (gap < best_gap) {
                best_gap = gap;
                rs.root_index = i;
            }
        }
        found = std::move(rs);
    }
    if (!found) throw internal_error("no orbit realizes the requested rotation number");
    return *found;
}

// Hyperbolic component identified by its root ray pair (a, b) with
// a = .~A, b = .~B; the main cardioid is the degenerate period-1 case
// with both roots at angle 0.
class HyperbolicComponent {
public:
    static HyperbolicComponent cardioid() {
        return HyperbolicComponent(BinaryWord("0"), BinaryWord("1"), Angle(), Angle());
    }

    static HyperbolicComponent from_ray_pair(const RayPair& rp) {
        if (rp.period == 1) return cardioid();
        return HyperbolicComponent(rp.word_lower, rp.word_upper, rp.lower, rp.upper);
    }

    // Validates against the enumeration unless |trusted|.
    static HyperbolicComponent from_words(BinaryWord a, BinaryWord b, bool trusted = false) {
        if (a.empty() || a.size() != b.size())
            throw hypothesis_error("component words must be nonempty and of equal length");
        if (a.size() == 1) {
            if ((a.bits() == "0" && b.bits() == "1") || (a.bits() == "1" && b.bits() == "0"))
                return cardioid();
            throw hypothesis_error("period-1 words must be 0 and 1");
        }
        Angle ra = Expansion::from_words(BinaryWord(), a).to_angle();
        Angle rb = Expansion::from_words(BinaryWord(), b).to_angle();
        if (rb < ra) {
            std::swap(a, b);
            std::swap(ra, rb);
        }
        if (ra == rb) throw hypothesis_error("component words name the same angle");
        if (!trusted) {
            RayPairTable table(a.size());
            auto rp = table.pair_of_angle(ra);
            if (!rp || rp->lower != ra || rp->upper != rb ||
                rp->word_lower != a || rp->word_upper != b)
                throw hypothesis_error("words do not form an enumerated ray pair");
        }
        return HyperbolicComponent(std::move(a), std::move(b), std::move(ra), std::move(rb));
    }

    const BinaryWord& word_a() const noexcept { return word_a_; }
    const BinaryWord& word_b() const noexcept { return word_b_; }
    const Angle& root_a() const noexcept { return root_a_; }
    const Angle& root_b() const noexcept { return root_b_; }
    std::size_t period() const noexcept { return word_a_.size(); }
    bool is_cardioid() const { return period() == 1; }

    // Roots of the period-doubling satellite: .~(AB) and .~(BA); they
    // bound the sectors on which the component's boundary map acts.
    Angle satellite_a() const {
        return Expansion::from_words(BinaryWord(), word_a_ + word_b_).to_angle();
    }
    Angle satellite_b() const {
        return Expansion::from_words(BinaryWord(), word_b_ + word_a_).to_angle();
    }

    std::string str() const { return word_a_.bits() + ":" + word_b_.bits(); }

private:
    HyperbolicComponent(BinaryWord a, BinaryWord b, Angle ra, Angle rb)
        : word_a_(std::move(a)), word_b_(std::move(b)),
          root_a_(std::move(ra)), root_b_(std::move(rb)) {}

    BinaryWord word_a_, word_b_;
    Angle root_a_, root_b_;
};

enum class HalfPlane { upper, lower, real_axis };

struct Classification {
    HalfPlane half = HalfPlane::real_axis;
    bool in_half_limb = false;
};

// First digits of the root words decide the half plane (components
// straddling the real axis have words starting with different digits);
// the 1/2-limb is the closed sector of root angles within [1/3, 2/3].
inline Classification classify(const HyperbolicComponent& h) {
    Classification c;
    if (!h.is_cardioid()) {
        int d0 = h.word_a().digit(0), d1 = h.word_b().digit(0);
        if (d0 == 0 && d1 == 0) c.half = HalfPlane::upper;
        else if (d0 == 1 && d1 == 1) c.half = HalfPlane::lower;
        c.in_half_limb = Angle(1, 3) <= h.root_a() && h.root_b() <= Angle(2, 3);
    }
    return c;
}

// Tuning: substitute the root words for the binary digits of theta
// (terminating expansion for dyadics, so trailing zeros become copies
// of the lower word).
inline Angle tune(const HyperbolicComponent& h, const Angle& theta) {
    return substituted(Expansion::of(theta), h.word_a(), h.word_b()).to_angle();
}

// Combinatorial vein named by its dyadic tip.
struct Vein {
    Angle center;
    std::size_t complexity = 0; // complexity(center) - 1

    std::string str() const { return center.str(); }
};

inline Vein vein_of(const Angle& theta0) {
    if (!theta0.is_dyadic() || theta0.is_zero())
        throw hypothesis_error("vein center must be a nonzero dyadic");
    std::size_t q = dyadic_complexity(theta0);
    Vein v{theta0, q - 1};
    if (theta0.doubled(v.complexity) != Angle(1, 2))
        throw internal_error("vein complexity does not step the center to 1/2");
    return v;
}

// A ray pair belongs to the vein when its pseudocenter is the vein's
// tip and its tree has as many ends as the tip's tree.
inline bool vein_contains(const Vein& v, const Leaf& pair) {
    if (pair.degenerate()) throw hypothesis_error("vein membership requires a ray pair");
    if (pseudocenter(CircularInterval(pair.a, pair.b)) != v.center) return false;
    return hubbard_tree(pair).ends == ends_dyadic(v.center);
}

// Component literal: "A:B" binary root words, or "root=<angle>" with
// the partner angle recovered from the enumeration.
inline HyperbolicComponent parse_component(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (i != colon && text[i] != '0' && text[i] != '1')
                throw parse_error("expected binary digit in component words", i);
        return HyperbolicComponent::from_words(BinaryWord(text.substr(0, colon)),
                                               BinaryWord(text.substr(colon + 1)));
    }
    if (text.rfind("root=", 0) == 0) {
        Angle root = parse_angle(text.substr(5));
        if (root.is_zero()) return HyperbolicComponent::cardioid();
        if (root.is_dyadic())
            throw hypothesis_error("root angle must be periodic under doubling");
        std::size_t k = doubling_period(root);
        if (k > 16) throw hypothesis_error("root period exceeds the enumeration bound");
        RayPairTable table(k);
        auto rp = table.pair_of_angle(root);
        if (!rp) throw hypothesis_error("angle is not a root in the enumeration");
        return HyperbolicComponent::from_ray_pair(*rp);
    }
    throw parse_error("expected 'A:B' words or 'root=<angle>'", 0);
}

} // namespace magic_angles
