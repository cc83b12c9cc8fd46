#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obsprob/extension.hpp"
#include "obsprob/scenarios.hpp"

using namespace obsprob;

namespace {

Scalar rat(long num, long den = 1) { return Scalar(make_rational(num, den)); }

Scalar scal(long a_num, long a_den, long b_num, long b_den) {
    return Scalar(make_rational(a_num, a_den), make_rational(b_num, b_den));
}

const Scalar& prob_of(const ScenarioBundle& bundle, const std::string& ensemble,
                      const std::vector<std::string>& part_labels) {
    const Frame& f = bundle.observed.frame;
    const Event part = Event::of_labels(f.space, part_labels);
    for (std::size_t i = 0; i < f.ensembles.size(); ++i) {
        if (f.ensembles[i].name != ensemble) continue;
        for (std::size_t k = 0; k < f.ensembles[i].partition.parts.size(); ++k) {
            if (f.ensembles[i].partition.parts[k] == part) {
                return bundle.observed.part_prob(i, k);
            }
        }
    }
    throw std::runtime_error("no such part");
}

}  // namespace

TEST_CASE("cos2 takes the five exact values") {
    CHECK(cos2(EighthAngle(0)) == Scalar(1));
    CHECK(cos2(EighthAngle(1)) == scal(2, 4, 1, 4));
    CHECK(cos2(EighthAngle(2)) == rat(1, 2));
    CHECK(cos2(EighthAngle(3)) == scal(2, 4, -1, 4));
    CHECK(cos2(EighthAngle(4)) == Scalar(0));

    for (int k = 0; k <= 4; ++k) {
        CHECK(cos2(EighthAngle(k)) + cos2(EighthAngle(4 - k)) == Scalar(1));
    }
    CHECK_THROWS_AS(EighthAngle(5), std::invalid_argument);
    CHECK_THROWS_AS(EighthAngle(-1), std::invalid_argument);
}

TEST_CASE("piponi bundle matches its defining table") {
    const auto bundle = piponi();
    CHECK(validate_observed(bundle.observed).ok);
    CHECK(bundle.observed.frame.ensembles.size() == 3);
    CHECK(bundle.observed.frame.space->size() == 4);

    CHECK(prob_of(bundle, "first", {"00", "01"}) == rat(0));
    CHECK(prob_of(bundle, "first", {"10", "11"}) == rat(1));
    CHECK(prob_of(bundle, "second", {"01", "11"}) == rat(1));
    CHECK(prob_of(bundle, "equal", {"00", "11"}) == rat(0));
    CHECK(prob_of(bundle, "equal", {"01", "10"}) == rat(1));

    CHECK(common_refinement(bundle.observed.frame).parts.size() == 4);
    CHECK(bundle.notes.size() == bundle.observed.table.size());

    const auto res = solve_signed(build_system(bundle.observed));
    REQUIRE(res.status == SolveStatus::unique);
    CHECK(*res.witness ==
          std::vector<Scalar>{rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2)});
}

TEST_CASE("default bell tables carry the exact pair probabilities") {
    const auto bundle = bell();
    CHECK(validate_observed(bundle.observed).ok);
    REQUIRE(bundle.observed.frame.ensembles.size() == 3);
    CHECK(bundle.observed.frame.space->size() == 8);
    CHECK(bundle.observed.frame.space->label(0) == "+++");
    CHECK(bundle.observed.frame.space->label(7) == "---");

    // Quarter turn between the first two analyzers: everything 1/4.
    for (const Scalar& p : bundle.observed.table[0]) CHECK(p == rat(1, 4));

    // Eighth turn: agreeing pairs (2+sqrt2)/8, disagreeing (2-sqrt2)/8.
    CHECK(prob_of(bundle, "BC", {"+++", "-++"}) == scal(2, 8, 1, 8));
    CHECK(prob_of(bundle, "BC", {"++-", "-+-"}) == scal(2, 8, -1, 8));

    // Three-eighths turn: the other way around.
    CHECK(prob_of(bundle, "AC", {"+++", "+-+"}) == scal(2, 8, -1, 8));
    CHECK(prob_of(bundle, "AC", {"++-", "+--"}) == scal(2, 8, 1, 8));

    CHECK(common_refinement(bundle.observed.frame).parts.size() == 8);
}

TEST_CASE("bell at equal angles concentrates on agreement") {
    const auto bundle = bell(EighthAngle(0), EighthAngle(0), EighthAngle(0));
    CHECK(validate_observed(bundle.observed).ok);
    for (const auto& row : bundle.observed.table) {
        REQUIRE(row.size() == 4);
        CHECK(row[0] == rat(1, 2));  // ++
        CHECK(row[1] == rat(0));     // +-
        CHECK(row[2] == rat(0));     // -+
        CHECK(row[3] == rat(1, 2));  // --
        CHECK(row[0] + row[3] == Scalar(1));
    }
}

TEST_CASE("bell system is signed-feasible with one free direction") {
    const auto bundle = bell();
    const auto sys = build_system(bundle.observed);
    CHECK(sys.rows() == 13);
    CHECK(sys.vars() == 8);

    const auto res = solve_signed(sys);
    REQUIRE(res.status == SolveStatus::family);
    CHECK(res.nullspace.size() == 1);

    // The weights of +-+ and -+- always total (1-sqrt2)/4.
    const auto& w = *res.witness;
    CHECK(w[2] + w[5] == scal(1, 4, -1, 4));
    CHECK(res.nullspace[0][2] + res.nullspace[0][5] == Scalar(0));

    CHECK(solve_traditional(sys).status == SolveStatus::infeasible);
}

TEST_CASE("letter flip is a bell automorphism and the group is tiny") {
    const auto bundle = bell();
    const Permutation flip = {7, 6, 5, 4, 3, 2, 1, 0};
    CHECK(is_automorphism(bundle.observed, flip));
    CHECK_FALSE(is_automorphism(bundle.observed, {1, 0, 2, 3, 4, 5, 6, 7}));

    const auto group = enumerate_automorphisms(bundle.observed);
    CHECK(group.size() == 4);
    CHECK(std::find(group.begin(), group.end(), flip) != group.end());
    CHECK(is_permutation_group(group, 8));
}

TEST_CASE("symmetrizing any bell witness gives the closed-form average") {
    const auto bundle = bell();
    const auto sys = build_system(bundle.observed);
    const auto res = solve_signed(sys);
    const auto q = to_distribution(sys, *res.witness);

    const Scalar eighth = rat(1, 8);
    const Scalar lo = scal(1, 8, -1, 8);  // (1-sqrt2)/8
    const Scalar hi = scal(1, 8, 1, 8);   // (1+sqrt2)/8
    const std::vector<Scalar> expected = {eighth, eighth, lo, hi, hi, lo, eighth, eighth};

    const Permutation flip = {7, 6, 5, 4, 3, 2, 1, 0};
    const auto averaged = symmetrize(bundle.observed, q, {identity_permutation(8), flip});
    CHECK(averaged.weights() == expected);
    CHECK_FALSE(averaged.is_traditional());

    // A different starting witness lands on the same average.
    std::vector<Scalar> shifted = *res.witness;
    for (std::size_t i = 0; i < 8; ++i) {
        shifted[i] += rat(3, 7) * res.nullspace[0][i];
    }
    const auto averaged2 =
        symmetrize(bundle.observed, to_distribution(sys, shifted),
                   {identity_permutation(8), flip});
    CHECK(averaged2.weights() == expected);

    // Averaging over the full four-element group changes nothing more.
    const auto full = enumerate_automorphisms(bundle.observed);
    CHECK(symmetrize(bundle.observed, q, full).weights() == expected);
}

TEST_CASE("hardy weights are a quarter of the conditional table") {
    const auto bundle = hardy();
    CHECK(validate_observed(bundle.observed).ok);
    const auto space = bundle.observed.frame.space;
    REQUIRE(space->size() == 16);
    REQUIRE(bundle.observed.frame.ensembles.size() == 1);
    CHECK(bundle.observed.frame.ensembles[0].partition.parts.size() == 16);

    auto conditional = [&](const std::string& label) {
        return bundle.observed.table[0][space->index_of(label)] * Scalar(4);
    };
    // Same-basis settings: a 1/3 triple with one impossible pair.
    CHECK(conditional("ZZ:++") == rat(1, 3));
    CHECK(conditional("ZZ:+-") == rat(1, 3));
    CHECK(conditional("ZZ:-+") == rat(1, 3));
    CHECK(conditional("ZZ:--") == rat(0));
    // Mixed settings.
    CHECK(conditional("ZX:++") == rat(0));
    CHECK(conditional("ZX:+-") == rat(2, 3));
    CHECK(conditional("ZX:-+") == rat(1, 6));
    CHECK(conditional("ZX:--") == rat(1, 6));
    CHECK(conditional("XZ:++") == rat(0));
    CHECK(conditional("XZ:+-") == rat(1, 6));
    CHECK(conditional("XZ:-+") == rat(2, 3));
    CHECK(conditional("XZ:--") == rat(1, 6));
    // Both rotated.
    CHECK(conditional("XX:++") == rat(1, 12));
    CHECK(conditional("XX:+-") == rat(1, 12));
    CHECK(conditional("XX:-+") == rat(1, 12));
    CHECK(conditional("XX:--") == rat(3, 4));
}

TEST_CASE("hardy direct space extends traditionally") {
    const auto bundle = hardy();
    const auto sys = build_system(bundle.observed);
    const auto res = solve_traditional(sys);
    REQUIRE(res.status == SolveStatus::unique);
    CHECK(*res.witness == bundle.observed.table[0]);
    CHECK(to_distribution(sys, *res.witness).is_traditional());
}

TEST_CASE("hidden-variable hardy space refuses traditional extensions") {
    const auto bundle = hardy_hidden();
    CHECK(validate_observed(bundle.observed).ok);
    CHECK(bundle.observed.frame.space->size() == 16);
    CHECK(bundle.observed.frame.ensembles.size() == 4);
    CHECK(common_refinement(bundle.observed.frame).parts.size() == 16);

    const auto sys = build_system(bundle.observed);
    CHECK(sys.rows() == 17);

    const auto lp = solve_traditional(sys);
    REQUIRE(lp.status == SolveStatus::infeasible);
    REQUIRE(lp.certificate.has_value());
    CHECK(certifies_infeasibility(sys, *lp.certificate));

    const auto signed_res = solve_signed(sys);
    REQUIRE(signed_res.status == SolveStatus::family);
    CHECK(signed_res.nullspace.size() == 7);  // rank 9 over 16 unknowns
    CHECK(satisfies(sys, *signed_res.witness));
}

TEST_CASE("scenario lookup resolves the four names") {
    CHECK(scenario_by_name("piponi", std::nullopt).has_value());
    CHECK(scenario_by_name("bell", std::nullopt).has_value());
    CHECK(scenario_by_name("hardy", std::nullopt).has_value());
    CHECK(scenario_by_name("hardy-hidden", std::nullopt).has_value());
    CHECK_FALSE(scenario_by_name("unknown", std::nullopt).has_value());

    const auto custom = scenario_by_name("bell", std::vector<int>{0, 0, 0});
    REQUIRE(custom.has_value());
    CHECK(custom->observed.table[0][0] == rat(1, 2));

    CHECK_THROWS_AS(scenario_by_name("piponi", std::vector<int>{0, 1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scenario_by_name("bell", std::vector<int>{0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scenario_by_name("bell", std::vector<int>{0, 2, 9}),
                    std::invalid_argument);
}
