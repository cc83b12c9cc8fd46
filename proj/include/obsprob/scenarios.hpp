#pragma once

#include "obsprob/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace obsprob {

/// An angle k*pi/8 with k in 0..4 — the range whose squared cosine stays
/// inside the scalar field.
class EighthAngle {
public:
    explicit EighthAngle(int k);
    int k() const { return k_; }

private:
    int k_;
};

/// Exact cos^2(k*pi/8): 1, (2+sqrt2)/4, 1/2, (2-sqrt2)/4, 0.
Scalar cos2(EighthAngle angle);

/// A built-in observation space plus human-readable derivation notes,
/// one note per table entry (parallel to observed.table).
struct ScenarioBundle {
    ObservedDistribution observed;
    std::vector<std::vector<std::string>> notes;
};

/// Two bits observed through three two-part ensembles (first bit, second
/// bit, equality), with probability 0 on "first is 0", "second is 0" and
/// "bits equal". The only signed extension puts weight -1/2 on outcome 00.
ScenarioBundle piponi();

/// Three two-valued analyzers at angles a,b,c measured pairwise on eight
/// +/- words: each pair's agreeing outcomes carry (1/2)cos^2 of the angle
/// difference, disagreeing ones (1/2)sin^2.
ScenarioBundle bell(EighthAngle a, EighthAngle b, EighthAngle c);

/// bell with the standard angles 0, pi/4, 3pi/8.
ScenarioBundle bell();

/// Two-particle setup with settings ZZ/ZX/XZ/XX chosen uniformly: 16
/// outcomes (setting pair x result pair), all jointly observable through
/// a single ensemble of singletons.
ScenarioBundle hardy();

/// Hidden-variable version of hardy(): outcomes are the 16 value
/// assignments (z_l, x_l, z_r, x_r) in {+,-}^4 and each setting pair is
/// an ensemble partitioning them by the revealed pair.
ScenarioBundle hardy_hidden();

/// Lookup used by the command line: piponi | bell | hardy | hardy-hidden.
/// bell accepts optional angles; others reject them.
std::optional<ScenarioBundle> scenario_by_name(const std::string& name,
                                               const std::optional<std::vector<int>>& angles);

}  // namespace obsprob
