#include <catch2/catch_amalgamated.hpp>

#include "magic_angles/magic_angles.hpp"

using namespace magic_angles;

TEST_CASE("rotation set roots enumerate by denominator", "[verify]") {
    auto sets = rotation_sets_up_to(5);
    // q = 2..5 with p coprime: 1 + 2 + 2 + 4.
    CHECK(sets.size() == 9);
    CHECK(sets.front().root_lower() == Angle(1, 3));
}

TEST_CASE("default verification run is clean and deterministic", "[verify]") {
    SweepReport report = run_verification(VerifyParams{});
    CHECK(report.total_failures() == 0);
    CHECK(report.failure_list.empty());
    REQUIRE(report.sections.size() == 5);

    auto expect = [&](std::size_t idx, const std::string& name, std::size_t components,
                      std::size_t angles, std::size_t passes, std::size_t violations) {
        const SweepSection& s = report.sections[idx];
        INFO("section " << name);
        CHECK(s.name == name);
        CHECK(s.components_tested == components);
        CHECK(s.angles_tested == angles);
        CHECK(s.passes == passes);
        CHECK(s.hypothesis_violations == violations);
        CHECK(s.failures == 0);
        CHECK(s.passes + s.hypothesis_violations + s.failures == s.angles_tested);
    };
    expect(0, "phi", 53, 1007, 150, 857);
    expect(1, "index", 17, 17, 14, 3);
    expect(2, "side", 17, 17, 17, 0);
    expect(3, "alternate", 25, 525, 525, 0);
    expect(4, "renorm", 14, 140, 140, 0);

    // Renormalization images tested = phi passes of non-cardioid
    // components; the cardioid's 10 real-vein images are exempt.
    CHECK(report.sections[4].angles_tested ==
          report.sections[0].passes - 10);

    SweepReport second = run_verification(VerifyParams{});
    CHECK(render_text(report) == render_text(second));
    CHECK(render_text(report).find("verdict: PASS") != std::string::npos);
}

TEST_CASE("reduced verification runs stay reconciled", "[verify]") {
    VerifyParams small;
    small.max_period = 2;
    small.max_rotation_q = 2;
    small.alternate_max_period = 2;
    small.renorm_max_q = 2;
    SweepReport report = run_verification(small);
    CHECK(report.total_failures() == 0);

    const SweepSection& phi = report.sections[0];
    CHECK(phi.components_tested == 2); // cardioid + basilica
    CHECK(phi.angles_tested == 6);
    CHECK(phi.passes == 2);
    CHECK(phi.hypothesis_violations == 4); // the basilica sits in the 1/2-limb

    const SweepSection& alternate = report.sections[3];
    CHECK(alternate.components_tested == 1);
    CHECK(alternate.angles_tested == 21); // distinct k/(2^j - 1), j <= 4
    CHECK(alternate.passes == 21);

    VerifyParams tiny;
    tiny.max_period = 1;
    tiny.max_rotation_q = 1;
    tiny.alternate_max_period = 1;
    tiny.renorm_max_q = 2;
    SweepReport cardioid_only = run_verification(tiny);
    CHECK(cardioid_only.total_failures() == 0);
    CHECK(cardioid_only.sections[0].components_tested == 1);
    CHECK(cardioid_only.sections[0].angles_tested == 1);
    CHECK(cardioid_only.sections[0].passes == 1);
    CHECK(cardioid_only.sections[3].angles_tested == 0);
}

TEST_CASE("index and side sweeps scale to period ten", "[verify]") {
    VerifyParams params;
    params.max_period = 10;
    RayPairTable table(10);
    std::vector<SweepFailure> failures;

    SweepSection index = index_sweep(params, table, failures);
    CHECK(index.angles_tested == 327);
    CHECK(index.passes == 177);
    CHECK(index.hypothesis_violations == 150);
    CHECK(index.failures == 0);

    SweepSection side = side_sweep(params, table, failures);
    CHECK(side.angles_tested == 327);
    CHECK(side.passes == 327);
    CHECK(side.failures == 0);

    CHECK(failures.empty());
}

TEST_CASE("failure records carry the offending sweep", "[verify]") {
    // No failure occurs on the default run, so exercise the record
    // type directly: the text renderer echoes every field.
    SweepReport report;
    report.sections.push_back(SweepSection{"phi"});
    report.failure_list.push_back(
        SweepFailure{"phi", "0011:0100", "1/4", "1/5", "21/40", "is_real_angle"});
    report.sections[0].angles_tested = 1;
    report.sections[0].failures = 1;
    std::string text = render_text(report);
    CHECK(text.find("verdict: FAIL") != std::string::npos);
    CHECK(text.find("sweep=phi") != std::string::npos);
    CHECK(text.find("component=0011:0100") != std::string::npos);
    CHECK(text.find("predicate=is_real_angle") != std::string::npos);
}
