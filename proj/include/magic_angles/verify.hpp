#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "magic_angles/angle.hpp"
#include "magic_angles/components.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/magic.hpp"
#include "magic_angles/words.hpp"

namespace magic_angles {

struct SweepFailure {
    std::string sweep;
    std::string component; // "A:B", or "-" when not applicable
    std::string vein;      // center as "p/q", or "-"
    std::string input;
    std::string output;
    std::string predicate;
};

// Per-sweep tallies; every examined angle lands in exactly one of
// passes / hypothesis_violations / failures.
struct SweepSection {
    std::string name;
    std::size_t components_tested = 0;
    std::size_t angles_tested = 0;
    std::size_t passes = 0;
    std::size_t hypothesis_violations = 0;
    std::size_t failures = 0;
};

struct VerifyParams {
    std::size_t max_period = 6;            // phi / index / side sweeps
    std::size_t max_rotation_q = 5;        // tuned angle sources for phi
    std::size_t alternate_max_period = 5;  // alternate-formula sweep
    std::size_t alternate_tuning_depth = 4;// eta denominators 2^j - 1, j <= depth
    std::size_t renorm_max_q = 8;          // decomposition scan on phi images
};

struct SweepReport {
    VerifyParams params;
    std::vector<SweepSection> sections;
    std::vector<SweepFailure> failure_list;

    std::size_t total_failures() const {
        std::size_t n = 0;
        for (const SweepSection& s : sections) n += s.failures;
        return n;
    }
};

namespace detail {

inline void check_section(const SweepSection& s) {
    if (s.passes + s.hypothesis_violations + s.failures != s.angles_tested)
        throw internal_error("sweep counts do not reconcile in section " + s.name);
}

inline std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace detail

// Upper-sector angle sources for a component: its lower root plus the
// tunings of every rotation-set root angle with q <= max_q.
inline std::vector<Angle> phi_sweep_angles(const HyperbolicComponent& h,
                                           const std::vector<RotationSet>& sets) {
    std::vector<Angle> out{h.root_a()};
    for (const RotationSet& rs : sets) {
        out.push_back(tune(h, rs.root_lower()));
        out.push_back(tune(h, rs.root_upper()));
    }
    return out;
}

inline std::vector<RotationSet> rotation_sets_up_to(std::size_t max_q) {
    std::vector<RotationSet> sets;
    for (std::size_t q = 2; q <= max_q; ++q)
        for (std::size_t p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) sets.push_back(rotation_set(p, q));
    return sets;
}

// Main-formula sweep: evaluates phi_H on every enumerated component
// of period <= max_period with its derived vein, feeding the root
// angle and tuned rotation-set roots; hypothesis and membership
// rejections are tallied separately from genuine predicate failures.
// Each successful image of a non-cardioid component is also scanned
// for renormalizability (none is expected), reported as its own
// section; cardioid images land in the 1/2-limb where small copies
// do absorb them (e.g. douady_T(1/3) = 7/12 is the basilica copy's
// tip angle), so they are exempt.
inline std::pair<SweepSection, SweepSection> phi_sweep(const VerifyParams& params,
                                                       const RayPairTable& table,
                                                       std::vector<SweepFailure>& failures) {
    SweepSection phi{"phi"};
    SweepSection renorm{"renorm"};
    std::vector<RotationSet> sets = rotation_sets_up_to(params.max_rotation_q);

    for (const RayPair& rp : table.pairs()) {
        if (rp.period > params.max_period) continue;
        HyperbolicComponent h = HyperbolicComponent::from_ray_pair(rp);
        Vein v = h.is_cardioid()
                     ? vein_of(Angle(1, 2))
                     : vein_of(pseudocenter(CircularInterval(h.root_a(), h.root_b())));
        ++phi.components_tested;
        bool contributed = false;

        for (const Angle& theta : phi_sweep_angles(h, sets)) {
            ++phi.angles_tested;
            Angle image;
            try {
                image = phi_H(h, v, theta);
            } catch (const hypothesis_error&) {
                ++phi.hypothesis_violations;
                continue;
            } catch (const membership_error&) {
                ++phi.hypothesis_violations;
                continue;
            }
            if (is_real_angle(image)) {
                ++phi.passes;
            } else {
                ++phi.failures;
                failures.push_back(SweepFailure{"phi", h.str(), v.str(), theta.str(),
                                                image.str(), "is_real_angle"});
            }
            if (h.is_cardioid()) continue;

            ++renorm.angles_tested;
            contributed = true;
            RenormResult rr = is_renormalizable(Expansion::of(image),
                                                params.renorm_max_q, table);
            if (!rr.renormalizable) {
                ++renorm.passes;
            } else {
                ++renorm.failures;
                failures.push_back(SweepFailure{
                    "renorm", h.str(), v.str(), theta.str(), image.str(),
                    "not renormalizable (decomposed by " + rr.witness->word_lower.bits() +
                        ":" + rr.witness->word_upper.bits() + ")"});
            }
        }
        if (contributed) ++renorm.components_tested;
    }
    detail::check_section(phi);
    detail::check_section(renorm);
    return {phi, renorm};
}

// Vein-membership sweep: for every ray pair whose pseudocenter is
// below 1/3 and which belongs to that pseudocenter's vein, the
// vein-many-times-doubled upper angle must be real.
inline SweepSection index_sweep(const VerifyParams& params, const RayPairTable& table,
                                std::vector<SweepFailure>& failures) {
    SweepSection s{"index"};
    for (const RayPair& rp : table.pairs()) {
        if (rp.period < 2 || rp.period > params.max_period) continue;
        Angle pc = pseudocenter(CircularInterval(rp.lower, rp.upper));
        if (!(pc < Angle(1, 3))) continue;
        ++s.components_tested;
        ++s.angles_tested;
        Vein v = vein_of(pc);
        if (!vein_contains(v, rp.leaf())) {
            ++s.hypothesis_violations;
            continue;
        }
        Angle image = rp.upper.doubled(v.complexity);
        if (is_real_angle(image)) {
            ++s.passes;
        } else {
            ++s.failures;
            failures.push_back(SweepFailure{"index", rp.word_lower.bits() + ":" +
                                                rp.word_upper.bits(),
                                            v.str(), rp.upper.str(), image.str(),
                                            "is_real_angle after vein doubling"});
        }
    }
    detail::check_section(s);
    return s;
}

// Gap-asymmetry sweep: pairs with pseudocenter below 1/3 have their
// upper gap strictly smaller than the lower gap.
inline SweepSection side_sweep(const VerifyParams& params, const RayPairTable& table,
                               std::vector<SweepFailure>& failures) {
    SweepSection s{"side"};
    for (const RayPair& rp : table.pairs()) {
        if (rp.period < 2 || rp.period > params.max_period) continue;
        Angle pc = pseudocenter(CircularInterval(rp.lower, rp.upper));
        if (!(pc < Angle(1, 3))) continue;
        ++s.components_tested;
        ++s.angles_tested;
        Rational upper_gap = rp.upper.value() - pc.value();
        Rational lower_gap = pc.value() - rp.lower.value();
        if (upper_gap < lower_gap) {
            ++s.passes;
        } else {
            ++s.failures;
            failures.push_back(SweepFailure{
                "side", rp.word_lower.bits() + ":" + rp.word_upper.bits(), pc.str(),
                rp.lower.str() + ".." + rp.upper.str(),
                detail::rational_str(upper_gap) + " vs " + detail::rational_str(lower_gap),
                "upper gap < lower gap"});
        }
    }
    detail::check_section(s);
    return s;
}

// Alternate-formula sweep: every tuned angle of a component of period
// 2..alternate_max_period keeps its orbit at distance >= 2^{-2p} from
// 1/2, and the alternate affine image is real.
inline SweepSection alternate_sweep(const VerifyParams& params, const RayPairTable& table,
                                    std::vector<SweepFailure>& failures) {
    SweepSection s{"alternate"};
    for (const RayPair& rp : table.pairs()) {
        if (rp.period < 2 || rp.period > params.alternate_max_period) continue;
        HyperbolicComponent h = HyperbolicComponent::from_ray_pair(rp);
        ++s.components_tested;

        std::set<Angle> etas;
        for (std::size_t j = 1; j <= params.alternate_tuning_depth; ++j) {
            Integer den = pow2(j) - 1;
            for (Integer k = 0; k < den; ++k) etas.insert(Angle(k, den));
        }

        Rational bound = Rational(1, pow2(2 * rp.period));
        for (const Angle& eta : etas) {
            ++s.angles_tested;
            Angle theta = tune(h, eta);
            Angle image;
            try {
                image = alternate_phi(h, theta);
            } catch (const error&) {
                ++s.hypothesis_violations;
                continue;
            }
            bool far = orbit_report(theta).min_distance >= bound;
            bool real = is_real_angle(image);
            if (far && real) {
                ++s.passes;
            } else {
                ++s.failures;
                failures.push_back(SweepFailure{
                    "alternate", h.str(), "-", theta.str(), image.str(),
                    far ? "is_real_angle" : "orbit distance >= 2^{-2p}"});
            }
        }
    }
    detail::check_section(s);
    return s;
}

inline SweepReport run_verification(const VerifyParams& params) {
    SweepReport report;
    report.params = params;

    std::size_t table_period = std::max({params.max_period, params.renorm_max_q,
                                         params.alternate_max_period});
    RayPairTable table(table_period);

    auto [phi, renorm] = phi_sweep(params, table, report.failure_list);
    report.sections.push_back(phi);
    report.sections.push_back(index_sweep(params, table, report.failure_list));
    report.sections.push_back(side_sweep(params, table, report.failure_list));
    report.sections.push_back(alternate_sweep(params, table, report.failure_list));
    report.sections.push_back(renorm);

    if (report.total_failures() != report.failure_list.size())
        throw internal_error("failure list does not reconcile with section counts");
    return report;
}

inline std::string render_text(const SweepReport& r) {
    std::ostringstream out;
    out << "verification report\n";
    out << "  parameters: max_period=" << r.params.max_period
        << " max_rotation_q=" << r.params.max_rotation_q
        << " alternate_max_period=" << r.params.alternate_max_period
        << " alternate_tuning_depth=" << r.params.alternate_tuning_depth
        << " renorm_max_q=" << r.params.renorm_max_q << "\n";
    for (const SweepSection& s : r.sections) {
        out << "  sweep " << s.name << ": components=" << s.components_tested
            << " angles=" << s.angles_tested << " passes=" << s.passes
            << " hypothesis_violations=" << s.hypothesis_violations
            << " failures=" << s.failures << "\n";
    }
    if (r.failure_list.empty()) {
        out << "  failures: none\n";
    } else {
        for (const SweepFailure& f : r.failure_list)
            out << "  failure sweep=" << f.sweep << " component=" << f.component
                << " vein=" << f.vein << " input=" << f.input << " output=" << f.output
                << " predicate=" << f.predicate << "\n";
    }
    out << "verdict: " << (r.failure_list.empty() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace magic_angles
