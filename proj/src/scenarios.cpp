#include "obsprob/scenarios.hpp"

#include "obsprob/extension.hpp"

#include <stdexcept>

namespace obsprob {

EighthAngle::EighthAngle(int k) : k_(k) {
    if (k < 0 || k > 4) {
        throw std::invalid_argument("angle multiplier must be between 0 and 4, got " +
                                    std::to_string(k));
    }
}

Scalar cos2(EighthAngle angle) {
    switch (angle.k()) {
        case 0: return Scalar(1);
        case 1: return Scalar(make_rational(2, 4), make_rational(1, 4));
        case 2: return Scalar(make_rational(1, 2));
        case 3: return Scalar(make_rational(2, 4), make_rational(-1, 4));
        default: return Scalar(0);
    }
}

namespace {

Scalar rat(long num, long den = 1) { return Scalar(make_rational(num, den)); }

/// Generators must hand out spaces that validate; anything else is a
/// construction bug, not a data error.
ScenarioBundle checked(ObservedDistribution obs, std::vector<std::vector<std::string>> notes) {
    const ValidationReport report = validate_observed(obs);
    if (!report.ok) {
        throw std::logic_error("scenario generator produced invalid data: " + report.message);
    }
    return ScenarioBundle{std::move(obs), std::move(notes)};
}

}  // namespace

ScenarioBundle piponi() {
    auto space = SampleSpace::make({"00", "01", "10", "11"});
    Frame frame;
    frame.space = space;
    frame.ensembles = {
        {"first", Partition::of_labels(space, {{"00", "01"}, {"10", "11"}})},
        {"second", Partition::of_labels(space, {{"00", "10"}, {"01", "11"}})},
        {"equal", Partition::of_labels(space, {{"00", "11"}, {"01", "10"}})},
    };
    ObservedDistribution obs{frame, {{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}}};
    std::vector<std::vector<std::string>> notes = {
        {"first bit is never 0", "first bit is always 1"},
        {"second bit is never 0", "second bit is always 1"},
        {"bits never agree", "bits always differ"},
    };
    return checked(std::move(obs), std::move(notes));
}

ScenarioBundle bell(EighthAngle a, EighthAngle b, EighthAngle c) {
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) {
        std::string word;
        word += (i & 4) ? '-' : '+';
        word += (i & 2) ? '-' : '+';
        word += (i & 1) ? '-' : '+';
        labels.push_back(word);
    }
    auto space = SampleSpace::make(labels);

    const Scalar half = rat(1, 2);
    ObservedDistribution obs;
    obs.frame.space = space;
    std::vector<std::vector<std::string>> notes;

    // One ensemble per analyzer pair; parts are the four value pairs
    // (++, +-, -+, --) of the two watched letters.
    struct Pair {
        std::string name;
        int left, right;  // letter positions, 0-based
        int delta;        // angle difference in eighth turns
    };
    const std::vector<Pair> pairs = {
        {"AB", 0, 1, std::abs(a.k() - b.k())},
        {"BC", 1, 2, std::abs(b.k() - c.k())},
        {"AC", 0, 2, std::abs(a.k() - c.k())},
    };
    for (const Pair& pair : pairs) {
        const Scalar agree = half * cos2(EighthAngle(pair.delta));
        const Scalar differ = half - agree;  // (1/2)sin^2 of the same angle

        Ensemble ens;
        ens.name = pair.name;
        ens.partition.space = space;
        std::vector<Scalar> probs;
        std::vector<std::string> derivations;
        for (int left_sign = 0; left_sign < 2; ++left_sign) {
            for (int right_sign = 0; right_sign < 2; ++right_sign) {
                std::uint64_t bits = 0;
                for (int i = 0; i < 8; ++i) {
                    const int letter_left = (i >> (2 - pair.left)) & 1;
                    const int letter_right = (i >> (2 - pair.right)) & 1;
                    if (letter_left == left_sign && letter_right == right_sign) {
                        bits |= std::uint64_t{1} << i;
                    }
                }
                ens.partition.parts.emplace_back(space, bits);
                const bool same = left_sign == right_sign;
                probs.push_back(same ? agree : differ);
                derivations.push_back(std::string(same ? "agree" : "differ") +
                                      " at angle " + std::to_string(pair.delta) +
                                      "*pi/8: (1/2)" + (same ? "cos^2" : "sin^2") + " = " +
                                      format_scalar(same ? agree : differ));
            }
        }
        obs.frame.ensembles.push_back(std::move(ens));
        obs.table.push_back(std::move(probs));
        notes.push_back(std::move(derivations));
    }
    return checked(std::move(obs), std::move(notes));
}

ScenarioBundle bell() { return bell(EighthAngle(0), EighthAngle(2), EighthAngle(3)); }

namespace {

const char* const setting_names[4] = {"ZZ", "ZX", "XZ", "XX"};
const char* const result_names[4] = {"++", "+-", "-+", "--"};

/// Conditional probability of each result pair given each setting pair,
/// from the shared two-particle state: rows ZZ, ZX, XZ, XX; columns ++,
/// +-, -+, --.
std::vector<std::vector<Scalar>> conditional_table() {
    auto r = [](long num, long den) { return Scalar(make_rational(num, den)); };
    return {
        {r(1, 3), r(1, 3), r(1, 3), r(0, 1)},
        {r(0, 1), r(2, 3), r(1, 6), r(1, 6)},
        {r(0, 1), r(1, 6), r(2, 3), r(1, 6)},
        {r(1, 12), r(1, 12), r(1, 12), r(3, 4)},
    };
}

}  // namespace

ScenarioBundle hardy() {
    const auto conditionals = conditional_table();
    const Scalar quarter = rat(1, 4);

    std::vector<std::string> labels;
    std::vector<Scalar> weights;
    std::vector<std::string> derivations;
    for (int s = 0; s < 4; ++s) {
        for (int v = 0; v < 4; ++v) {
            labels.push_back(std::string(setting_names[s]) + ":" + result_names[v]);
            weights.push_back(quarter * conditionals[s][v]);
            derivations.push_back("(1/4)*P(" + std::string(result_names[v]) + "|" +
                                  setting_names[s] + ") = (1/4)*" +
                                  format_scalar(conditionals[s][v]));
        }
    }
    auto space = SampleSpace::make(labels);

    // Settings and both results are revealed on every run, so all 16
    // outcomes are jointly observable: one ensemble of singletons.
    Ensemble joint;
    joint.name = "joint";
    joint.partition.space = space;
    for (std::size_t i = 0; i < 16; ++i) {
        joint.partition.parts.push_back(Event::singleton(space, i));
    }
    ObservedDistribution obs{Frame{space, {std::move(joint)}}, {std::move(weights)}};
    return checked(std::move(obs), {std::move(derivations)});
}

ScenarioBundle hardy_hidden() {
    // Outcome i encodes the hidden assignment (z_l, x_l, z_r, x_r) via
    // its four bits, '+' for a clear bit, most significant first.
    std::vector<std::string> labels;
    for (int i = 0; i < 16; ++i) {
        std::string word;
        for (int bit = 3; bit >= 0; --bit) word += ((i >> bit) & 1) ? '-' : '+';
        labels.push_back(word);
    }
    auto space = SampleSpace::make(labels);

    const auto conditionals = conditional_table();

    // Setting pair s reveals one value per particle: bit 3 or 2 (left Z
    // or X) and bit 1 or 0 (right Z or X).
    const int left_bit[4] = {3, 3, 2, 2};
    const int right_bit[4] = {1, 0, 1, 0};

    ObservedDistribution obs;
    obs.frame.space = space;
    std::vector<std::vector<std::string>> notes;
    for (int s = 0; s < 4; ++s) {
        Ensemble ens;
        ens.name = setting_names[s];
        ens.partition.space = space;
        std::vector<std::string> derivations;
        for (int v = 0; v < 4; ++v) {
            const int left_sign = (v >> 1) & 1;
            const int right_sign = v & 1;
            std::uint64_t bits = 0;
            for (int i = 0; i < 16; ++i) {
                if (((i >> left_bit[s]) & 1) == left_sign &&
                    ((i >> right_bit[s]) & 1) == right_sign) {
                    bits |= std::uint64_t{1} << i;
                }
            }
            ens.partition.parts.emplace_back(space, bits);
            derivations.push_back("assignments revealing " + std::string(result_names[v]) +
                                  " under " + setting_names[s] + ": P = " +
                                  format_scalar(conditionals[s][v]));
        }
        obs.frame.ensembles.push_back(std::move(ens));
        obs.table.push_back(conditionals[s]);
        notes.push_back(std::move(derivations));
    }
    return checked(std::move(obs), std::move(notes));
}

std::optional<ScenarioBundle> scenario_by_name(const std::string& name,
                                               const std::optional<std::vector<int>>& angles) {
    if (name == "bell") {
        if (!angles) return bell();
        if (angles->size() != 3) {
            throw std::invalid_argument("bell needs exactly three angles");
        }
        return bell(EighthAngle((*angles)[0]), EighthAngle((*angles)[1]),
                    EighthAngle((*angles)[2]));
    }
    if (angles) {
        throw std::invalid_argument("--angles only applies to the bell scenario");
    }
    if (name == "piponi") return piponi();
    if (name == "hardy") return hardy();
    if (name == "hardy-hidden") return hardy_hidden();
    return std::nullopt;
}

}  // namespace obsprob
