#pragma once

#include "obsprob/space.hpp"

#include <string>
#include <utility>
#include <vector>

namespace obsprob {

/// A partition of a sample space into nonempty, pairwise disjoint events
/// covering everything. Constructors don't enforce that; validate_frame
/// reports violations so callers can surface them as diagnostics.
struct Partition {
    SpacePtr space;
    std::vector<Event> parts;

    static Partition of_labels(SpacePtr space,
                               const std::vector<std::vector<std::string>>& part_labels);
};

/// Order-insensitive comparison: same parts as sets of events.
bool same_partition(const Partition& a, const Partition& b);

/// A named way of observing the space: the measurement's possible
/// readings are the parts of the partition.
struct Ensemble {
    std::string name;
    Partition partition;
};

/// A sample space together with its ensembles. Which event sets are
/// jointly observable is derived from the partitions (see
/// is_coobservable), never stored explicitly.
struct Frame {
    SpacePtr space;
    std::vector<Ensemble> ensembles;
};

struct ValidationReport {
    bool ok = true;
    std::string message;  // names the first violated invariant when !ok

    static ValidationReport good() { return {}; }
    static ValidationReport bad(std::string why) { return {false, std::move(why)}; }
};

/// Algebra enumeration is 2^parts, so ensembles are capped hard.
constexpr std::size_t max_parts_per_ensemble = 16;

/// Checks partition invariants for every ensemble, distinct ensemble
/// names, no duplicated partitions, and the part-count cap.
ValidationReport validate_frame(const Frame& f);

/// All unions of parts (the Boolean algebra the ensemble generates),
/// 2^parts events in subset order. Throws std::length_error beyond the cap.
std::vector<Event> ensemble_algebra(const Partition& p);

/// True iff e is a union of parts of some ensemble's partition.
bool is_observable(const Frame& f, const Event& e);

/// True iff one single ensemble's algebra contains every listed event.
bool is_coobservable(const Frame& f, const std::vector<Event>& events);

/// The coarsest partition refining every ensemble partition; parts are
/// the nonempty intersections of one part per ensemble, ordered by their
/// smallest outcome index.
Partition common_refinement(const Frame& f);

/// Observed probabilities: one scalar per part per ensemble.
struct ObservedDistribution {
    Frame frame;
    std::vector<std::vector<Scalar>> table;

    const Scalar& part_prob(std::size_t ensemble, std::size_t part) const {
        return table.at(ensemble).at(part);
    }
};

/// Frame validation plus: table shape matches, entries >= 0, each
/// ensemble sums to 1, and any event lying in two ensembles' algebras
/// gets the same probability from both.
ValidationReport validate_observed(const ObservedDistribution& obs);

/// Merges outcomes that no ensemble can tell apart (outcomes sharing a
/// part of the common refinement) into one outcome whose label joins the
/// originals with "+" in sorted order. Idempotent; the table's values are
/// unchanged, only re-indexed.
ObservedDistribution normalize_fat_outcomes(const ObservedDistribution& obs);

/// Outcome permutation: index i maps to perm[i].
using Permutation = std::vector<std::size_t>;

bool is_valid_permutation(const Permutation& perm, std::size_t n);
Permutation identity_permutation(std::size_t n);
Permutation compose(const Permutation& first, const Permutation& then);
Permutation inverse(const Permutation& perm);
Event apply_permutation(const Permutation& perm, const Event& e);

/// Checks that perm carries each ensemble's partition onto some
/// ensemble's partition with matching part probabilities — exactly the
/// property needed for group-averaging to preserve observed
/// probabilities. The report names the first ensemble that breaks it.
ValidationReport check_automorphism(const ObservedDistribution& obs, const Permutation& perm);

bool is_automorphism(const ObservedDistribution& obs, const Permutation& perm);

/// All automorphisms, by exhaustive search over permutations; requires
/// |space| <= cap (throws std::length_error otherwise). The result is
/// verified to be a group before returning.
std::vector<Permutation> enumerate_automorphisms(const ObservedDistribution& obs,
                                                 std::size_t cap = 10);

/// Closure / identity / inverses over {0..n-1} permutations.
bool is_permutation_group(const std::vector<Permutation>& perms, std::size_t n);

/// Closure of the generators under composition. Throws std::length_error
/// if the group would exceed max_elements.
std::vector<Permutation> generate_group(const std::vector<Permutation>& generators,
                                        std::size_t n, std::size_t max_elements = 10000);

}  // namespace obsprob
