#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "magic_angles/magic_angles.hpp"

namespace ma = magic_angles;
using nlohmann::json;

namespace {

// Presentation-only decimals carry 12 significant digits; exact
// fractions are always printed alongside.
std::string decimal(const ma::Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", r.template convert_to<double>());
    return buf;
}

std::string decimal(const ma::Angle& a) { return decimal(a.value()); }

ma::Integer denominator_cap() {
    const char* env = std::getenv("MAGIC_ANGLES_MAX_DENOM");
    if (env == nullptr || *env == '\0') return ma::pow2(24);
    try {
        ma::Integer cap{std::string(env)};
        if (cap < 1) throw std::runtime_error("not positive");
        return cap;
    } catch (const std::exception&) {
        throw ma::parse_error("MAGIC_ANGLES_MAX_DENOM is not a positive integer", 0);
    }
}

ma::Angle parse_capped(const std::string& text) {
    ma::Angle a = ma::parse_angle(text);
    if (a.denominator() > denominator_cap())
        throw ma::parse_error("denominator exceeds MAGIC_ANGLES_MAX_DENOM", 0);
    return a;
}

void emit(bool as_json, const json& j, const std::vector<std::string>& text_lines) {
    if (as_json) {
        std::cout << j.dump() << "\n";
    } else {
        for (const std::string& line : text_lines) std::cout << line << "\n";
    }
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Vein a component is tested against: the pseudocenter of its root
// arc; the cardioid gets the degenerate vein at 1/2.
ma::Vein component_vein(const ma::HyperbolicComponent& h) {
    if (h.is_cardioid()) return ma::vein_of(ma::Angle(1, 2));
    return ma::vein_of(ma::pseudocenter(ma::CircularInterval(h.root_a(), h.root_b())));
}

// Arguments of rays landing on the upper boundary arc before tuning:
// the endpoints 0 and 1/3 plus rotation-set roots with p/q < 1/2,
// filled in (q, p) order and reported ascending.  At most 128 exist
// below the rotation-number bound.
std::vector<ma::Angle> landing_arguments(std::size_t count) {
    std::vector<ma::Angle> args{ma::Angle(), ma::Angle(1, 3)};
    if (count < args.size()) args.resize(count);
    for (std::size_t q = 3; args.size() < count && q <= 20; ++q)
        for (std::size_t p = 1; 2 * p < q && args.size() < count; ++p) {
            if (std::gcd(p, q) != 1) continue;
            ma::RotationSet rs = ma::rotation_set(p, q);
            args.push_back(rs.root_lower());
            if (args.size() < count) args.push_back(rs.root_upper());
        }
    std::sort(args.begin(), args.end());
    return args;
}

int run_angle(const std::string& spec, bool as_json) {
    ma::Angle theta = parse_capped(spec);
    ma::OrbitReport r = ma::orbit_report(theta);
    ma::Angle closest = r.orbit[r.argmin_index];
    bool real = ma::is_real_angle(theta);
    json j{{"angle", theta.str()},
           {"expansion", ma::binary_expansion(theta).str()},
           {"orbit_length", r.orbit.size()},
           {"min_distance", ma::Angle(r.min_distance).str()},
           {"min_distance_decimal", decimal(r.min_distance)},
           {"closest_iterate", closest.str()},
           {"real", real}};
    emit(as_json, j,
         {"angle: " + theta.str(), "expansion: " + ma::binary_expansion(theta).str(),
          "orbit length: " + std::to_string(r.orbit.size()),
          "min distance to 1/2: " + ma::Angle(r.min_distance).str() + " (" +
              decimal(r.min_distance) + ")",
          "closest iterate: " + closest.str(), "real: " + bool_str(real)});
    return 0;
}

int run_phi(const std::string& comp_spec, const std::string& theta_spec,
            const std::string& vein_spec, bool as_json) {
    ma::HyperbolicComponent h = ma::parse_component(comp_spec);
    ma::Angle theta = parse_capped(theta_spec);
    ma::Vein v = vein_spec.empty() ? component_vein(h) : ma::vein_of(parse_capped(vein_spec));

    ma::Angle image = ma::phi_H(h, v, theta);
    ma::BinaryWord concat_word =
        h.is_cardioid() ? ma::BinaryWord("10") : h.word_b() + h.word_a();
    ma::Angle intermediate = ma::concat(concat_word, theta);
    ma::BinaryWord affine = ma::phi_word(h, v);
    ma::Rational offset(ma::Integer(affine.to_integer()), ma::pow2(affine.size()));
    ma::Rational scale(ma::Integer(1), ma::pow2(affine.size()));
    bool real = ma::is_real_angle(image);
    ma::RenormResult renorm =
        ma::is_renormalizable(ma::Expansion::of(image), 8, ma::RayPairTable(8));

    json j{{"component", h.str()},
           {"vein", v.center.str()},
           {"delta", v.complexity},
           {"word", affine.bits()},
           {"intermediate", intermediate.str()},
           {"phi", image.str()},
           {"phi_decimal", decimal(image)},
           {"affine_offset", ma::Angle(offset).str()},
           {"affine_scale", ma::Angle(scale).str()},
           {"real", real},
           {"renormalizable_q8", renorm.renormalizable}};
    emit(as_json, j,
         {"component: " + h.str(),
          "vein: " + v.center.str() + " (delta " + std::to_string(v.complexity) + ")",
          "word: " + affine.bits(), "intermediate: " + intermediate.str(),
          "phi: " + image.str() + " (" + decimal(image) + ")",
          "affine: " + ma::Angle(offset).str() + " + theta*" + ma::Angle(scale).str(),
          "real: " + bool_str(real),
          "renormalizable (q <= 8): " + bool_str(renorm.renormalizable)});
    return 0;
}

int run_th(const std::string& comp_spec, const std::string& theta_spec, bool as_json) {
    ma::HyperbolicComponent h = ma::parse_component(comp_spec);
    ma::Angle theta = parse_capped(theta_spec);
    ma::Angle image = ma::ble_cabrera_TH(h, theta);
    bool upper_branch = h.is_cardioid() ? theta < ma::Angle(1, 2)
                                        : (h.root_a() <= theta && theta <= h.satellite_a());
    json j{{"component", h.str()},
           {"theta", theta.str()},
           {"branch", upper_branch ? "upper" : "lower"},
           {"image", image.str()},
           {"image_decimal", decimal(image)},
           {"doubled", image.doubled().str()}};
    emit(as_json, j,
         {"component: " + h.str(), "theta: " + theta.str(),
          std::string("branch: ") + (upper_branch ? "upper" : "lower"),
          "image: " + image.str() + " (" + decimal(image) + ")",
          "doubled: " + image.doubled().str()});
    return 0;
}

int run_alt_phi(const std::string& comp_spec, const std::string& theta_spec, bool as_json) {
    ma::HyperbolicComponent h = ma::parse_component(comp_spec);
    ma::Angle theta = parse_capped(theta_spec);
    ma::Angle image = ma::alternate_phi(h, theta);
    ma::OrbitReport r = ma::orbit_report(theta);
    ma::Rational bound(ma::Integer(1), ma::pow2(2 * h.period()));
    bool real = ma::is_real_angle(image);
    json j{{"component", h.str()},
           {"theta", theta.str()},
           {"image", image.str()},
           {"image_decimal", decimal(image)},
           {"orbit_min_distance", ma::Angle(r.min_distance).str()},
           {"distance_bound", ma::Angle(bound).str()},
           {"bound_satisfied", r.min_distance >= bound},
           {"real", real}};
    emit(as_json, j,
         {"component: " + h.str(), "theta: " + theta.str(),
          "image: " + image.str() + " (" + decimal(image) + ")",
          "orbit min distance: " + ma::Angle(r.min_distance).str() + " (bound " +
              ma::Angle(bound).str() + ", satisfied " + bool_str(r.min_distance >= bound) +
              ")",
          "real: " + bool_str(real)});
    return 0;
}

int run_pseudocenter(const std::string& lo_spec, const std::string& hi_spec, bool as_json) {
    ma::Angle lo = parse_capped(lo_spec), hi = parse_capped(hi_spec);
    ma::Angle center = ma::pseudocenter(ma::CircularInterval(lo, hi));
    std::size_t complexity = ma::dyadic_complexity(center);
    json j{{"interval_low", lo.str()},
           {"interval_high", hi.str()},
           {"pseudocenter", center.str()},
           {"complexity", complexity}};
    emit(as_json, j,
         {"interval: (" + lo.str() + ", " + hi.str() + ")",
          "pseudocenter: " + center.str(), "complexity: " + std::to_string(complexity)});
    return 0;
}

int run_ends(const std::string& lo_spec, const std::string& hi_spec, bool as_json) {
    ma::Angle lo = parse_capped(lo_spec);
    if (hi_spec.empty() && lo.is_dyadic()) {
        std::size_t ends = ma::ends_dyadic(lo);
        json j{{"angle", lo.str()}, {"ends", ends}};
        emit(as_json, j, {"angle: " + lo.str(), "ends: " + std::to_string(ends)});
        return 0;
    }
    ma::Angle hi = hi_spec.empty() ? lo : parse_capped(hi_spec);
    ma::HubbardTree t = ma::hubbard_tree(ma::Leaf(lo, hi));
    json j{{"leaf_low", lo.str()},
           {"leaf_high", hi.str()},
           {"ends", t.ends},
           {"closure_index", t.closure_index},
           {"orbit_length", t.orbit.size()}};
    emit(as_json, j,
         {"leaf: (" + lo.str() + ", " + hi.str() + ")",
          "ends: " + std::to_string(t.ends),
          "closure index: " + std::to_string(t.closure_index),
          "orbit length: " + std::to_string(t.orbit.size())});
    return 0;
}

int run_vein(const std::string& center_spec, const std::string& lo_spec,
             const std::string& hi_spec, bool as_json) {
    ma::Vein v = ma::vein_of(parse_capped(center_spec));
    json j{{"vein", v.center.str()},
           {"complexity", v.complexity},
           {"ends", ma::ends_dyadic(v.center)}};
    std::vector<std::string> lines{"vein: " + v.center.str(),
                                   "complexity: " + std::to_string(v.complexity),
                                   "ends: " + std::to_string(ma::ends_dyadic(v.center))};
    if (!lo_spec.empty()) {
        ma::Angle lo = parse_capped(lo_spec), hi = parse_capped(hi_spec);
        bool contained = ma::vein_contains(v, ma::Leaf(lo, hi));
        j["pair_low"] = lo.str();
        j["pair_high"] = hi.str();
        j["contains"] = contained;
        lines.push_back("contains (" + lo.str() + ", " + hi.str() +
                        "): " + bool_str(contained));
    }
    emit(as_json, j, lines);
    return 0;
}

int run_pairs(std::size_t max_period, bool as_json) {
    ma::RayPairTable table(max_period);
    for (const ma::RayPair& rp : table.pairs()) {
        json j{{"period", rp.period},
               {"lower", rp.lower.str()},
               {"upper", rp.upper.str()},
               {"word_lower", rp.word_lower.bits()},
               {"word_upper", rp.word_upper.bits()}};
        emit(as_json, j,
             {"period " + std::to_string(rp.period) + ": " + rp.lower.str() + " (" +
              rp.word_lower.bits() + ") .. " + rp.upper.str() + " (" +
              rp.word_upper.bits() + ")"});
    }
    return 0;
}

int run_verify(std::size_t max_period, std::size_t max_rotation_q, bool as_json) {
    ma::VerifyParams params;
    params.max_period = max_period;
    params.max_rotation_q = max_rotation_q;
    params.alternate_max_period = std::min<std::size_t>(max_period, 5);
    ma::SweepReport report = ma::run_verification(params);
    if (as_json) {
        json p{{"record", "parameters"},
               {"max_period", params.max_period},
               {"max_rotation_q", params.max_rotation_q},
               {"alternate_max_period", params.alternate_max_period},
               {"alternate_tuning_depth", params.alternate_tuning_depth},
               {"renorm_max_q", params.renorm_max_q}};
        std::cout << p.dump() << "\n";
        for (const ma::SweepSection& s : report.sections) {
            json js{{"record", "section"},
                    {"name", s.name},
                    {"components_tested", s.components_tested},
                    {"angles_tested", s.angles_tested},
                    {"passes", s.passes},
                    {"hypothesis_violations", s.hypothesis_violations},
                    {"failures", s.failures}};
            std::cout << js.dump() << "\n";
        }
        for (const ma::SweepFailure& f : report.failure_list) {
            json jf{{"record", "failure"},   {"sweep", f.sweep},
                    {"component", f.component}, {"vein", f.vein},
                    {"input", f.input},      {"output", f.output},
                    {"predicate", f.predicate}};
            std::cout << jf.dump() << "\n";
        }
        json v{{"record", "verdict"},
               {"failures", report.total_failures()},
               {"pass", report.total_failures() == 0}};
        std::cout << v.dump() << "\n";
    } else {
        std::cout << ma::render_text(report);
    }
    return report.total_failures() == 0 ? 0 : 1;
}

// Exact psi over a uniform grid: min orbit distance to 1/2 of k/den is
// min |2j - den| / (2 den) over the doubling orbit j of k modulo den.
ma::Rational grid_psi(std::int64_t k, std::int64_t den) {
    std::int64_t best = std::abs(2 * k - den);
    std::int64_t slow = k, fast = k;
    do {
        slow = (2 * slow) % den;
        fast = (4 * fast) % den;
        best = std::min(best, std::abs(2 * slow - den));
    } while (slow != fast);
    // slow is now on the cycle; one more lap collects the cycle minimum
    std::int64_t start = slow;
    do {
        slow = (2 * slow) % den;
        best = std::min(best, std::abs(2 * slow - den));
    } while (slow != start);
    ma::Rational psi(ma::Integer(den + best), ma::Integer(2 * den));
    return psi - ma::floor_rat(psi);
}

int run_psi_plot(std::int64_t grid, const std::vector<std::string>& overlays,
                 std::size_t samples, const std::string& output) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (output != "-") {
        file.open(output);
        if (!file) throw ma::parse_error("cannot open output path " + output, 0);
        out = &file;
    }
    *out << "series,x,x_decimal,y,y_decimal\n";
    for (std::int64_t k = 0; k < grid; ++k) {
        ma::Angle x(k, grid);
        ma::Angle y(grid_psi(k, grid));
        *out << "psi," << x.str() << "," << decimal(x) << "," << y.str() << ","
             << decimal(y) << "\n";
    }
    for (const std::string& spec : overlays) {
        ma::HyperbolicComponent h = ma::parse_component(spec);
        ma::Vein v = component_vein(h);
        // graph points over the tuned landing arguments: every image
        // is a real angle at least 1/2, hence a fixed point of psi
        for (const ma::Angle& x : landing_arguments(samples)) {
            ma::Angle theta = ma::tune(h, x);
            ma::Angle y = ma::phi_H(h, v, theta);
            *out << h.str() << "," << theta.str() << "," << decimal(theta) << ","
                 << y.str() << "," << decimal(y) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact external-angle computations for the Mandelbrot set"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "one JSON object per output line");

    std::string angle_spec, comp_spec, theta_spec, vein_spec;
    std::string lo_spec, hi_spec, center_spec, output = "-";
    std::size_t max_period = 6, max_rotation_q = 5, samples = 32;
    std::int64_t grid = 256;
    std::vector<std::string> overlays;

    CLI::App* c_angle = app.add_subcommand("angle", "expansion and orbit of an angle");
    c_angle->add_option("angle", angle_spec, "angle as p/q or .pre~per")->required();

    CLI::App* c_phi = app.add_subcommand("phi", "main magic formula");
    c_phi->add_option("--component", comp_spec, "component as A:B or root=p/q")
        ->required();
    c_phi->add_option("--vein", vein_spec, "vein center (default: derived)");
    c_phi->add_option("theta", theta_spec, "angle on the upper boundary arc")->required();

    CLI::App* c_th = app.add_subcommand("th", "boundary halving map");
    c_th->add_option("--component", comp_spec, "component as A:B or root=p/q")->required();
    c_th->add_option("theta", theta_spec, "angle in the component sectors")->required();

    CLI::App* c_alt = app.add_subcommand("alt-phi", "alternate affine magic formula");
    c_alt->add_option("--component", comp_spec, "component as A:B or root=p/q")
        ->required();
    c_alt->add_option("theta", theta_spec, "tuned angle of the component")->required();

    CLI::App* c_psi = app.add_subcommand("psi-plot", "tabulate the psi graph as CSV");
    c_psi->add_option("--grid", grid, "grid denominator")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 16));
    c_psi->add_option("--overlay", overlays, "components whose phi graph to overlay");
    c_psi->add_option("--samples", samples, "points per overlay")
        ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    c_psi->add_option("output", output, "output path or - for stdout");

    CLI::App* c_pc = app.add_subcommand("pseudocenter", "minimal-complexity dyadic in an arc");
    c_pc->add_option("low", lo_spec, "arc start")->required();
    c_pc->add_option("high", hi_spec, "arc end")->required();

    CLI::App* c_ends = app.add_subcommand("ends", "endpoint count of the postcritical tree");
    c_ends->add_option("lower", lo_spec, "angle, or lower leaf endpoint")->required();
    c_ends->add_option("upper", hi_spec, "upper leaf endpoint");

    CLI::App* c_vein = app.add_subcommand("vein", "vein data and membership");
    c_vein->add_option("center", center_spec, "dyadic vein center")->required();
    c_vein->add_option("lower", lo_spec, "ray pair lower angle");
    c_vein->add_option("upper", hi_spec, "ray pair upper angle");

    CLI::App* c_pairs = app.add_subcommand("pairs", "enumerate ray pairs");
    c_pairs->add_option("--max-period", max_period, "largest period")
        ->check(CLI::Range(std::size_t{1}, std::size_t{12}));

    CLI::App* c_verify = app.add_subcommand("verify", "run the verification sweeps");
    c_verify->add_option("--max-period", max_period, "component period bound")
        ->check(CLI::Range(std::size_t{1}, std::size_t{12}));
    c_verify->add_option("--max-rotation-q", max_rotation_q, "rotation set order bound")
        ->check(CLI::Range(std::size_t{1}, std::size_t{12}));

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_angle->parsed()) return run_angle(angle_spec, as_json);
        if (c_phi->parsed()) return run_phi(comp_spec, theta_spec, vein_spec, as_json);
        if (c_th->parsed()) return run_th(comp_spec, theta_spec, as_json);
        if (c_alt->parsed()) return run_alt_phi(comp_spec, theta_spec, as_json);
        if (c_psi->parsed()) return run_psi_plot(grid, overlays, samples, output);
        if (c_pc->parsed()) return run_pseudocenter(lo_spec, hi_spec, as_json);
        if (c_ends->parsed()) return run_ends(lo_spec, hi_spec, as_json);
        if (c_vein->parsed()) return run_vein(center_spec, lo_spec, hi_spec, as_json);
        if (c_pairs->parsed()) return run_pairs(max_period, as_json);
        if (c_verify->parsed()) return run_verify(max_period, max_rotation_q, as_json);
    } catch (const ma::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ma::hypothesis_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ma::membership_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ma::internal_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
