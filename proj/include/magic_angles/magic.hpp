#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "magic_angles/angle.hpp"
#include "magic_angles/components.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/expansion.hpp"
#include "magic_angles/word.hpp"
#include "magic_angles/words.hpp"

namespace magic_angles {

// Forward orbit of an angle under doubling until the first repetition,
// with the exact minimum distance to 1/2 over the whole orbit.
struct OrbitReport {
    Angle angle;
    std::vector<Angle> orbit;     // distinct values theta, D(theta), ...
    std::size_t cycle_start = 0;  // index the orbit returns to
    Rational min_distance;
    std::size_t argmin_index = 0; // first index attaining the minimum
};

inline OrbitReport orbit_report(const Angle& theta) {
    OrbitReport r;
    r.angle = theta;
    std::map<Angle, std::size_t> seen;
    Angle cur = theta;
    while (true) {
        auto [it, fresh] = seen.emplace(cur, r.orbit.size());
        if (!fresh) {
            r.cycle_start = it->second;
            break;
        }
        r.orbit.push_back(cur);
        cur = cur.doubled();
    }
    r.min_distance = r.orbit[0].distance_to_half();
    for (std::size_t i = 1; i < r.orbit.size(); ++i) {
        Rational d = r.orbit[i].distance_to_half();
        if (d < r.min_distance) {
            r.min_distance = d;
            r.argmin_index = i;
        }
    }
    return r;
}

// The ray of theta meets the real slice exactly when no forward
// iterate comes strictly closer to 1/2 than theta itself.
inline bool is_real_angle(const Angle& theta) {
    Rational d0 = theta.distance_to_half();
    std::set<Angle> seen;
    Angle cur = theta;
    while (seen.insert(cur).second) {
        cur = cur.doubled();
        if (cur.distance_to_half() < d0) return false;
    }
    return true;
}

// Psi(x) = 1/2 + min_k |D^k(x) - 1/2|; its value is always a real
// angle.
inline Angle psi(const Angle& x) {
    return Angle(Rational(1, 2) + orbit_report(x).min_distance);
}

// Piecewise-affine map sending cardioid angles to real angles:
// theta/4 + 1/2 below 1/2, theta/4 + 1/4 above; undefined at 1/2.
inline Angle douady_T(const Angle& theta) {
    if (theta == Angle(1, 2)) throw membership_error("undefined at 1/2");
    Rational quarter = theta.value() / 4;
    if (theta < Angle(1, 2)) return Angle(quarter + Rational(1, 2));
    return Angle(quarter + Rational(1, 4));
}

// Boundary-to-real map of a component: (BA).theta on the closed sector
// [rootA, .~(AB)], (AB).theta on [.~(BA), rootB].  For the cardioid
// the two sectors meet at 1/2 and the map coincides with douady_T.
inline Angle ble_cabrera_TH(const HyperbolicComponent& h, const Angle& theta) {
    if (h.is_cardioid()) {
        if (theta == Angle(1, 2)) throw membership_error("not in component sectors");
        return concat(theta < Angle(1, 2) ? BinaryWord("10") : BinaryWord("01"), theta);
    }
    if (h.root_a() <= theta && theta <= h.satellite_a())
        return concat(h.word_b() + h.word_a(), theta);
    if (h.satellite_b() <= theta && theta <= h.root_b())
        return concat(h.word_a() + h.word_b(), theta);
    throw membership_error("not in component sectors");
}

namespace detail {

inline void check_phi_hypotheses(const HyperbolicComponent& h, const Vein& v) {
    Classification c = classify(h);
    if (c.in_half_limb) throw hypothesis_error("component in 1/2-limb");
    if (c.half != HalfPlane::upper) throw hypothesis_error("component in lower half plane");
    if (!vein_contains(v, Leaf(h.root_a(), h.root_b())))
        throw hypothesis_error("wrong vein");
}

} // namespace detail

// Magic formula: D^{delta}((BA).theta) for theta on the upper boundary
// sector [rootA, .~(AB)] of a component lying on vein v in the upper
// half plane outside the 1/2-limb.  The cardioid with the real vein
// reproduces douady_T on [0, 1/2).
inline Angle phi_H(const HyperbolicComponent& h, const Vein& v, const Angle& theta) {
    if (h.is_cardioid()) {
        if (v.center != Angle(1, 2)) throw hypothesis_error("wrong vein");
        if (!(theta < Angle(1, 2))) throw membership_error("angle not on upper part");
        return concat(BinaryWord("10"), theta);
    }
    detail::check_phi_hypotheses(h, v);
    if (!(h.root_a() <= theta && theta <= h.satellite_a()))
        throw membership_error("angle not on upper part");
    return concat(h.word_b() + h.word_a(), theta).doubled(v.complexity);
}

// The word W with phi_H(theta) = W.theta: BA with the first delta
// digits removed (delta < |BA| because the pseudocenter of a period-p
// pair has complexity at most p).
inline BinaryWord phi_word(const HyperbolicComponent& h, const Vein& v) {
    if (h.is_cardioid()) {
        if (v.center != Angle(1, 2)) throw hypothesis_error("wrong vein");
        return BinaryWord("10");
    }
    detail::check_phi_hypotheses(h, v);
    return (h.word_b() + h.word_a()).drop_front(v.complexity);
}

// Alternate affine formula (0 then 2p-1 ones).theta, valid on the
// tuned angles of a component of period p >= 2.
inline Angle alternate_phi(const HyperbolicComponent& h, const Angle& theta) {
    std::size_t p = h.period();
    if (p < 2) throw hypothesis_error("requires period at least 2");
    if (!tuned_decomposition(Expansion::of(theta), h.word_a(), h.word_b()))
        throw membership_error("angle is not tuned by this component");
    return concat(BinaryWord("0" + std::string(2 * p - 1, '1')), theta);
}

} // namespace magic_angles
