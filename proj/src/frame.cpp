#include "obsprob/frame.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace obsprob {

Partition Partition::of_labels(SpacePtr space,
                               const std::vector<std::vector<std::string>>& part_labels) {
    Partition p;
    p.space = space;
    for (const auto& labels : part_labels) {
        p.parts.push_back(Event::of_labels(space, labels));
    }
    return p;
}

bool same_partition(const Partition& a, const Partition& b) {
    if (!same_space(*a.space, *b.space) || a.parts.size() != b.parts.size()) return false;
    std::set<std::uint64_t> sa, sb;
    for (const Event& e : a.parts) sa.insert(e.bits());
    for (const Event& e : b.parts) sb.insert(e.bits());
    return sa == sb;
}

ValidationReport validate_frame(const Frame& f) {
    if (!f.space) return ValidationReport::bad("frame has no sample space");

    std::set<std::string> names;
    for (const Ensemble& ens : f.ensembles) {
        if (!names.insert(ens.name).second) {
            return ValidationReport::bad("duplicate ensemble name '" + ens.name + "'");
        }
        const Partition& p = ens.partition;
        if (!p.space || !same_space(*p.space, *f.space)) {
            return ValidationReport::bad("ensemble '" + ens.name +
                                         "' partitions a different space");
        }
        if (p.parts.empty()) {
            return ValidationReport::bad("ensemble '" + ens.name + "' has no parts");
        }
        if (p.parts.size() > max_parts_per_ensemble) {
            return ValidationReport::bad("ensemble '" + ens.name + "' exceeds " +
                                         std::to_string(max_parts_per_ensemble) +
                                         " parts (enumeration cap)");
        }
        Event covered = Event::none(f.space);
        for (const Event& part : p.parts) {
            if (part.empty()) {
                return ValidationReport::bad("ensemble '" + ens.name + "' has an empty part");
            }
            if (!covered.disjoint_with(part)) {
                return ValidationReport::bad("ensemble '" + ens.name +
                                             "' has overlapping parts");
            }
            covered = covered | part;
        }
        if (!(covered == Event::all(f.space))) {
            return ValidationReport::bad("ensemble '" + ens.name +
                                         "' does not cover the sample space");
        }
    }

    for (std::size_t i = 0; i < f.ensembles.size(); ++i) {
        for (std::size_t j = i + 1; j < f.ensembles.size(); ++j) {
            if (same_partition(f.ensembles[i].partition, f.ensembles[j].partition)) {
                return ValidationReport::bad("ensembles '" + f.ensembles[i].name +
                                             "' and '" + f.ensembles[j].name +
                                             "' induce the same partition");
            }
        }
    }
    return ValidationReport::good();
}

std::vector<Event> ensemble_algebra(const Partition& p) {
    if (p.parts.size() > max_parts_per_ensemble) {
        throw std::length_error("partition exceeds the " +
                                std::to_string(max_parts_per_ensemble) +
                                "-part enumeration cap");
    }
    std::vector<Event> algebra;
    const std::size_t k = p.parts.size();
    algebra.reserve(std::size_t{1} << k);
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << k); ++subset) {
        Event e = Event::none(p.space);
        for (std::size_t i = 0; i < k; ++i) {
            if ((subset >> i) & 1u) e = e | p.parts[i];
        }
        algebra.push_back(e);
    }
    return algebra;
}

namespace {

/// e is a union of parts of p: every part lies inside e or misses it.
bool in_algebra(const Partition& p, const Event& e) {
    for (const Event& part : p.parts) {
        if (!part.is_subset_of(e) && !part.disjoint_with(e)) return false;
    }
    return true;
}

}  // namespace

bool is_observable(const Frame& f, const Event& e) {
    require_same_space(*f.space, *e.space());
    for (const Ensemble& ens : f.ensembles) {
        if (in_algebra(ens.partition, e)) return true;
    }
    return false;
}

bool is_coobservable(const Frame& f, const std::vector<Event>& events) {
    for (const Event& e : events) require_same_space(*f.space, *e.space());
    if (events.empty()) return true;
    for (const Ensemble& ens : f.ensembles) {
        bool all_in = true;
        for (const Event& e : events) {
            if (!in_algebra(ens.partition, e)) {
                all_in = false;
                break;
            }
        }
        if (all_in) return true;
    }
    return false;
}

Partition common_refinement(const Frame& f) {
    const std::size_t n = f.space->size();

    // Two outcomes fall in the same refinement part exactly when every
    // ensemble files them under the same part.
    std::vector<std::vector<std::size_t>> signature(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Ensemble& ens : f.ensembles) {
            std::size_t part_index = ens.partition.parts.size();  // sentinel
            for (std::size_t k = 0; k < ens.partition.parts.size(); ++k) {
                if (ens.partition.parts[k].contains(i)) {
                    part_index = k;
                    break;
                }
            }
            signature[i].push_back(part_index);
        }
    }

    Partition result;
    result.space = f.space;
    std::vector<bool> placed(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        std::uint64_t bits = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (!placed[j] && signature[j] == signature[i]) {
                bits |= std::uint64_t{1} << j;
                placed[j] = true;
            }
        }
        result.parts.emplace_back(f.space, bits);
    }
    return result;
}

ValidationReport validate_observed(const ObservedDistribution& obs) {
    ValidationReport frame_report = validate_frame(obs.frame);
    if (!frame_report.ok) return frame_report;

    const auto& ensembles = obs.frame.ensembles;
    if (obs.table.size() != ensembles.size()) {
        return ValidationReport::bad("probability table has " +
                                     std::to_string(obs.table.size()) + " rows for " +
                                     std::to_string(ensembles.size()) + " ensembles");
    }
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        const Ensemble& ens = ensembles[i];
        if (obs.table[i].size() != ens.partition.parts.size()) {
            return ValidationReport::bad("ensemble '" + ens.name +
                                         "' has a part/probability count mismatch");
        }
        Scalar total(0);
        for (std::size_t k = 0; k < obs.table[i].size(); ++k) {
            if (obs.table[i][k].is_negative()) {
                return ValidationReport::bad("ensemble '" + ens.name + "' part " +
                                             std::to_string(k) +
                                             " has negative probability " +
                                             format_scalar(obs.table[i][k]));
            }
            total += obs.table[i][k];
        }
        if (total != Scalar(1)) {
            return ValidationReport::bad("ensemble '" + ens.name + "' sums to " +
                                         format_scalar(total) + ", expected 1");
        }
    }

    // Agreement: an event observable through two different ensembles must
    // get the same probability from both tables.
    std::vector<std::map<std::uint64_t, Scalar>> event_probs(ensembles.size());
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        const std::size_t k = ensembles[i].partition.parts.size();
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << k); ++subset) {
            std::uint64_t bits = 0;
            Scalar prob(0);
            for (std::size_t part = 0; part < k; ++part) {
                if ((subset >> part) & 1u) {
                    bits |= ensembles[i].partition.parts[part].bits();
                    prob += obs.table[i][part];
                }
            }
            event_probs[i].emplace(bits, prob);
        }
    }
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        for (std::size_t j = i + 1; j < ensembles.size(); ++j) {
            for (const auto& [bits, prob] : event_probs[i]) {
                auto it = event_probs[j].find(bits);
                if (it != event_probs[j].end() && it->second != prob) {
                    return ValidationReport::bad(
                        "ensembles '" + ensembles[i].name + "' and '" + ensembles[j].name +
                        "' disagree on a shared event (" + format_scalar(prob) + " vs " +
                        format_scalar(it->second) + ")");
                }
            }
        }
    }
    return ValidationReport::good();
}

ObservedDistribution normalize_fat_outcomes(const ObservedDistribution& obs) {
    const Frame& f = obs.frame;
    const Partition refinement = common_refinement(f);

    std::vector<std::string> merged_labels;
    std::vector<std::size_t> new_of_old(f.space->size());
    for (std::size_t k = 0; k < refinement.parts.size(); ++k) {
        std::vector<std::string> labels = refinement.parts[k].labels();
        std::sort(labels.begin(), labels.end());
        std::string merged = labels[0];
        for (std::size_t i = 1; i < labels.size(); ++i) merged += "+" + labels[i];
        merged_labels.push_back(merged);
        for (std::size_t old : refinement.parts[k].indices()) new_of_old[old] = k;
    }

    SpacePtr merged_space = SampleSpace::make(merged_labels);
    Frame merged_frame;
    merged_frame.space = merged_space;
    for (const Ensemble& ens : f.ensembles) {
        Ensemble merged_ens;
        merged_ens.name = ens.name;
        merged_ens.partition.space = merged_space;
        for (const Event& part : ens.partition.parts) {
            std::uint64_t bits = 0;
            for (std::size_t old : part.indices()) {
                bits |= std::uint64_t{1} << new_of_old[old];
            }
            merged_ens.partition.parts.emplace_back(merged_space, bits);
        }
        merged_frame.ensembles.push_back(std::move(merged_ens));
    }
    return ObservedDistribution{std::move(merged_frame), obs.table};
}

bool is_valid_permutation(const Permutation& perm, std::size_t n) {
    if (perm.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t image : perm) {
        if (image >= n || seen[image]) return false;
        seen[image] = true;
    }
    return true;
}

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

Permutation compose(const Permutation& first, const Permutation& then) {
    Permutation out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) out[i] = then.at(first[i]);
    return out;
}

Permutation inverse(const Permutation& perm) {
    Permutation out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = i;
    return out;
}

Event apply_permutation(const Permutation& perm, const Event& e) {
    std::uint64_t bits = 0;
    for (std::size_t i : e.indices()) bits |= std::uint64_t{1} << perm.at(i);
    return Event(e.space(), bits);
}

ValidationReport check_automorphism(const ObservedDistribution& obs, const Permutation& perm) {
    const Frame& f = obs.frame;
    if (!is_valid_permutation(perm, f.space->size())) {
        return ValidationReport::bad("not a permutation of the outcomes");
    }

    for (std::size_t i = 0; i < f.ensembles.size(); ++i) {
        const Partition& source = f.ensembles[i].partition;
        Partition image;
        image.space = f.space;
        for (const Event& part : source.parts) {
            image.parts.push_back(apply_permutation(perm, part));
        }

        // Frames reject duplicate partitions, so at most one ensemble can
        // match the image.
        bool matched = false;
        for (std::size_t j = 0; j < f.ensembles.size() && !matched; ++j) {
            const Partition& target = f.ensembles[j].partition;
            if (!same_partition(image, target)) continue;
            matched = true;
            for (std::size_t k = 0; k < source.parts.size(); ++k) {
                const std::uint64_t image_bits = image.parts[k].bits();
                for (std::size_t t = 0; t < target.parts.size(); ++t) {
                    if (target.parts[t].bits() == image_bits) {
                        if (obs.part_prob(i, k) != obs.part_prob(j, t)) {
                            return ValidationReport::bad(
                                "probabilities of ensemble '" + f.ensembles[i].name +
                                "' are not preserved (part maps into '" +
                                f.ensembles[j].name + "' with a different probability)");
                        }
                        break;
                    }
                }
            }
        }
        if (!matched) {
            return ValidationReport::bad("image of ensemble '" + f.ensembles[i].name +
                                         "' is not an ensemble partition");
        }
    }
    return ValidationReport::good();
}

bool is_automorphism(const ObservedDistribution& obs, const Permutation& perm) {
    return check_automorphism(obs, perm).ok;
}

std::vector<Permutation> enumerate_automorphisms(const ObservedDistribution& obs,
                                                 std::size_t cap) {
    const std::size_t n = obs.frame.space->size();
    if (n > cap) {
        throw std::length_error("automorphism enumeration capped at " +
                                std::to_string(cap) + " outcomes, space has " +
                                std::to_string(n));
    }
    std::vector<Permutation> group;
    Permutation perm = identity_permutation(n);
    do {
        if (is_automorphism(obs, perm)) group.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!is_permutation_group(group, n)) {
        throw std::logic_error("automorphism set failed the group check");
    }
    return group;
}

bool is_permutation_group(const std::vector<Permutation>& perms, std::size_t n) {
    std::set<Permutation> members(perms.begin(), perms.end());
    if (members.size() != perms.size()) return false;  // duplicates
    if (!members.count(identity_permutation(n))) return false;
    for (const Permutation& p : perms) {
        if (!is_valid_permutation(p, n)) return false;
        if (!members.count(inverse(p))) return false;
        for (const Permutation& q : perms) {
            if (!members.count(compose(p, q))) return false;
        }
    }
    return true;
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& generators,
                                        std::size_t n, std::size_t max_elements) {
    for (const Permutation& g : generators) {
        if (!is_valid_permutation(g, n)) {
            throw std::invalid_argument("generator is not a permutation of the outcomes");
        }
    }
    std::set<Permutation> members;
    std::vector<Permutation> frontier{identity_permutation(n)};
    members.insert(frontier.front());
    while (!frontier.empty()) {
        Permutation current = frontier.back();
        frontier.pop_back();
        for (const Permutation& g : generators) {
            Permutation next = compose(current, g);
            if (members.insert(next).second) {
                if (members.size() > max_elements) {
                    throw std::length_error("generated group exceeds " +
                                            std::to_string(max_elements) + " elements");
                }
                frontier.push_back(std::move(next));
            }
        }
    }
    return std::vector<Permutation>(members.begin(), members.end());
}

}  // namespace obsprob
