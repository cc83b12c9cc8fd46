#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "obsprob/kscheck.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

using namespace obsprob;

namespace {

Ray ray(long long a, long long b, long long c, long long d) {
    return Ray::canonical({a, b, c, d});
}

Basis basis(Ray a, Ray b, Ray c, Ray d) { return Basis{{a, b, c, d}}; }

// The 18-ray, 9-basis orthogonality structure used by the bundled data
// file, transcribed independently here so the two copies check each other.
BasisSystem eighteen_ray_fixture() {
    BasisSystem s;
    s.bases = {
        basis(ray(0, 0, 0, 1), ray(0, 0, 1, 0), ray(1, 1, 0, 0), ray(1, -1, 0, 0)),
        basis(ray(0, 0, 0, 1), ray(0, 1, 0, 0), ray(1, 0, 1, 0), ray(1, 0, -1, 0)),
        basis(ray(1, -1, 1, -1), ray(1, -1, -1, 1), ray(1, 1, 0, 0), ray(0, 0, 1, 1)),
        basis(ray(1, -1, 1, -1), ray(1, 1, 1, 1), ray(1, 0, -1, 0), ray(0, 1, 0, -1)),
        basis(ray(0, 0, 1, 0), ray(0, 1, 0, 0), ray(1, 0, 0, 1), ray(1, 0, 0, -1)),
        basis(ray(1, -1, -1, 1), ray(1, 1, 1, 1), ray(1, 0, 0, -1), ray(0, 1, -1, 0)),
        basis(ray(1, 1, -1, 1), ray(1, 1, 1, -1), ray(1, -1, 0, 0), ray(0, 0, 1, 1)),
        basis(ray(1, 1, -1, 1), ray(-1, 1, 1, 1), ray(1, 0, 1, 0), ray(0, 1, 0, -1)),
        basis(ray(1, 1, 1, -1), ray(-1, 1, 1, 1), ray(1, 0, 0, 1), ray(0, 1, -1, 0)),
    };
    return s;
}

// Slow reference: enumerate all 4^bases picks and keep the ones where any
// two equal rays are either both picked or both passed over. The odometer
// walks picks in lexicographic order, which find_selections also promises.
std::vector<Selection> oracle_selections(const BasisSystem& s) {
    const std::size_t n = s.bases.size();
    std::vector<Selection> found;
    Selection pick(n, 0);
    while (true) {
        bool ok = true;
        for (std::size_t b = 0; b < n && ok; ++b) {
            for (std::size_t i = 0; i < 4 && ok; ++i) {
                for (std::size_t b2 = 0; b2 < n && ok; ++b2) {
                    for (std::size_t i2 = 0; i2 < 4 && ok; ++i2) {
                        if (s.bases[b].rays[i] == s.bases[b2].rays[i2] &&
                            (pick[b] == i) != (pick[b2] == i2)) {
                            ok = false;
                        }
                    }
                }
            }
        }
        if (ok) found.push_back(pick);

        std::size_t digit = n;
        while (digit > 0) {
            if (++pick[digit - 1] < 4) break;
            pick[digit - 1] = 0;
            --digit;
        }
        if (digit == 0) break;
    }
    return found;
}

}  // namespace

TEST_CASE("canonical ray divides out the gcd and fixes the leading sign") {
    CHECK(ray(2, -2, 0, 4).coords == std::array<long long, 4>{1, -1, 0, 2});
    CHECK(ray(0, 0, 0, 5).coords == std::array<long long, 4>{0, 0, 0, 1});
    CHECK(ray(-1, 1, 1, 1).coords == std::array<long long, 4>{1, -1, -1, -1});
    CHECK(ray(0, -3, 3, 0).coords == std::array<long long, 4>{0, 1, -1, 0});
    CHECK(ray(7, 0, 0, 0).coords == std::array<long long, 4>{1, 0, 0, 0});
}

TEST_CASE("proportional representatives collapse to the same ray") {
    CHECK(ray(1, 0, -1, 0) == ray(-4, 0, 4, 0));
    CHECK(ray(1, 1, 1, 1) == ray(3, 3, 3, 3));
    CHECK(ray(1, 1, 0, 0) != ray(1, -1, 0, 0));
}

TEST_CASE("the zero vector is rejected as a ray") {
    CHECK_THROWS_AS(Ray::canonical({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("dot is the exact integer inner product") {
    CHECK(dot(ray(1, 2, 3, 4), ray(4, -3, 2, 1)) == Integer(8));
    CHECK(dot(ray(1, -1, 1, -1), ray(1, 1, 1, 1)).is_zero());
    // Products of large coordinates must not wrap around.
    const Ray big = Ray::canonical({3'000'000'011, 0, 0, 1});
    CHECK(dot(big, big) == Integer(3'000'000'011) * 3'000'000'011 + 1);
}

TEST_CASE("a basis is orthogonal exactly when all pairs have zero dot") {
    CHECK(basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1))
              .orthogonal());
    CHECK(basis(ray(1, 1, 1, 1), ray(1, 1, -1, -1), ray(1, -1, 1, -1), ray(1, -1, -1, 1))
              .orthogonal());
    CHECK_FALSE(
        basis(ray(1, 0, 0, 0), ray(1, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1))
            .orthogonal());
}

TEST_CASE("the 18-ray system validates as 9 orthogonal bases, each ray twice") {
    const StructuralReport report = validate_system(eighteen_ray_fixture());
    CHECK(report.basis_count == 9);
    CHECK(report.rays.size() == 18);
    CHECK(report.occurrence_count.size() == 18);
    for (std::size_t count : report.occurrence_count) CHECK(count == 2);
    for (bool ok : report.basis_orthogonal) CHECK(ok);
    CHECK(report.all_orthogonal);
    CHECK(report.every_ray_twice);
    CHECK(report.eighteen_nine_profile);
}

TEST_CASE("validation pinpoints a basis that is not orthogonal") {
    BasisSystem s = eighteen_ray_fixture();
    s.bases[3].rays[0] = ray(1, 1, 0, 1);  // breaks basis 3 only
    const StructuralReport report = validate_system(s);
    CHECK_FALSE(report.all_orthogonal);
    CHECK_FALSE(report.basis_orthogonal[3]);
    CHECK(report.basis_orthogonal[2]);
    CHECK_FALSE(report.eighteen_nine_profile);  // the swapped ray now occurs once
    CHECK_FALSE(report.every_ray_twice);
}

TEST_CASE("a lone basis yields the four singleton selections in order") {
    BasisSystem s;
    s.bases = {basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1))};
    const auto selections = find_selections(s);
    REQUIRE(selections.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(selections[i] == Selection{i});
}

TEST_CASE("two bases with no common ray pick independently") {
    BasisSystem s;
    s.bases = {
        basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1)),
        basis(ray(1, 1, 0, 0), ray(1, -1, 0, 0), ray(0, 0, 1, 1), ray(0, 0, 1, -1)),
    };
    const auto selections = find_selections(s);
    REQUIRE(selections.size() == 16);
    CHECK(selections.front() == Selection{0, 0});
    CHECK(selections.back() == Selection{3, 3});
    CHECK(std::is_sorted(selections.begin(), selections.end()));
}

TEST_CASE("a ray shared by two bases is picked in both or neither") {
    const Ray shared = ray(0, 0, 1, 1);
    BasisSystem s;
    s.bases = {
        basis(shared, ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, -1)),
        // The shared ray sits at a different slot here; (2,2,2,-2) merely
        // collapses onto (1,1,1,-1), so exactly one ray is common.
        basis(ray(1, 1, 0, 0), shared, ray(1, -1, 0, 0), ray(2, 2, 2, -2)),
    };
    const auto selections = find_selections(s);
    // Both pick the shared ray (1 way) or neither does (3 * 3 ways).
    REQUIRE(selections.size() == 10);
    CHECK(selections.front() == Selection{0, 1});
    for (const Selection& sel : selections) {
        CHECK((sel[0] == 0) == (sel[1] == 1));
    }
    CHECK(selections == oracle_selections(s));
}

TEST_CASE("selections match a brute-force oracle on random small systems") {
    const std::vector<Ray> pool = {
        ray(1, 0, 0, 0), ray(0, 1, 0, 0),  ray(0, 0, 1, 0),  ray(0, 0, 0, 1),
        ray(1, 1, 0, 0), ray(1, -1, 0, 0), ray(1, 0, 1, 0),  ray(0, 1, 0, -1),
        ray(1, 1, 1, 1), ray(1, -1, -1, 1),
    };
    std::mt19937 rng(20260814u);
    for (int trial = 0; trial < 120; ++trial) {
        BasisSystem s;
        const std::size_t bases = 1 + rng() % 3;
        for (std::size_t b = 0; b < bases; ++b) {
            std::vector<std::size_t> ids(pool.size());
            std::iota(ids.begin(), ids.end(), 0);
            std::shuffle(ids.begin(), ids.end(), rng);
            s.bases.push_back(
                basis(pool[ids[0]], pool[ids[1]], pool[ids[2]], pool[ids[3]]));
        }
        CAPTURE(trial);
        CHECK(find_selections(s) == oracle_selections(s));
    }
}

TEST_CASE("the limit parameter truncates the lexicographic enumeration") {
    BasisSystem s;
    s.bases = {
        basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1)),
        basis(ray(1, 1, 0, 0), ray(1, -1, 0, 0), ray(0, 0, 1, 1), ray(0, 0, 1, -1)),
    };
    const auto all = find_selections(s);
    const auto three = find_selections(s, 3);
    REQUIRE(three.size() == 3);
    CHECK(std::equal(three.begin(), three.end(), all.begin()));
    CHECK(find_selections(s, 0).empty());
}

TEST_CASE("an empty system has exactly the empty selection") {
    const auto selections = find_selections(BasisSystem{});
    REQUIRE(selections.size() == 1);
    CHECK(selections.front().empty());
}

TEST_CASE("duplicated bases force the same pick twice") {
    const Basis b =
        basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1));
    BasisSystem s;
    s.bases = {b, b};
    const auto selections = find_selections(s);
    REQUIRE(selections.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(selections[i] == Selection{i, i});
    // Every ray occurs twice across an even number of bases: no parity bar.
    CHECK(parity_obstruction(s) == ParityVerdict::no_obstruction);
}

TEST_CASE("an odd ray-twice system is barred by parity and has no selection") {
    // Six rays, three bases, every ray in exactly two of them.
    const Ray x1 = ray(1, 0, 0, 0), x2 = ray(0, 1, 0, 0), x3 = ray(0, 0, 1, 0),
              x4 = ray(0, 0, 0, 1), x5 = ray(1, 1, 0, 0), x6 = ray(1, 0, 1, 0);
    BasisSystem s;
    s.bases = {basis(x1, x2, x3, x4), basis(x1, x2, x5, x6), basis(x3, x4, x5, x6)};
    CHECK(validate_system(s).every_ray_twice);
    CHECK(parity_obstruction(s) == ParityVerdict::obstruction);
    CHECK(find_selections(s).empty());
    CHECK_FALSE(model_exists(s));
}

TEST_CASE("parity says nothing when some ray is not in exactly two bases") {
    BasisSystem s;
    s.bases = {basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1))};
    CHECK(parity_obstruction(s) == ParityVerdict::not_applicable);
    CHECK(model_exists(s));
}

TEST_CASE("the 18-ray system admits no selection at all") {
    const BasisSystem s = eighteen_ray_fixture();
    CHECK(parity_obstruction(s) == ParityVerdict::obstruction);
    CHECK(find_selections(s).empty());
    CHECK_FALSE(model_exists(s));
}

TEST_CASE("dropping one basis from the 18-ray system restores selections") {
    BasisSystem s = eighteen_ray_fixture();
    s.bases.pop_back();
    CHECK(parity_obstruction(s) == ParityVerdict::not_applicable);
    CHECK(model_exists(s));
    // Whatever comes back must still respect the shared-ray constraint.
    const auto selections = find_selections(s, 5);
    REQUIRE_FALSE(selections.empty());
    for (const Selection& sel : selections) {
        REQUIRE(sel.size() == s.bases.size());
        for (std::size_t b = 0; b < s.bases.size(); ++b) {
            for (std::size_t b2 = 0; b2 < s.bases.size(); ++b2) {
                for (std::size_t i = 0; i < 4; ++i) {
                    for (std::size_t i2 = 0; i2 < 4; ++i2) {
                        if (s.bases[b].rays[i] == s.bases[b2].rays[i2]) {
                            CHECK((sel[b] == i) == (sel[b2] == i2));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("the selection search refuses oversized systems") {
    const Basis b =
        basis(ray(1, 0, 0, 0), ray(0, 1, 0, 0), ray(0, 0, 1, 0), ray(0, 0, 0, 1));
    BasisSystem s;
    s.bases.assign(max_selection_bases + 1, b);
    CHECK_THROWS_AS(find_selections(s), std::length_error);
    s.bases.pop_back();
    CHECK_NOTHROW(find_selections(s, 2));
}
