#pragma once

#include "obsprob/scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace obsprob {

class SampleSpace;
using SpacePtr = std::shared_ptr<const SampleSpace>;

/// A finite, nonempty, ordered set of distinct outcome labels. Capped at
/// 64 outcomes so events can be plain bitmasks.
class SampleSpace {
public:
    static constexpr std::size_t max_outcomes = 64;

    static SpacePtr make(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> find(const std::string& label) const;
    /// Like find, but throws std::invalid_argument for unknown labels.
    std::size_t index_of(const std::string& label) const;

private:
    explicit SampleSpace(std::vector<std::string> labels);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// True when the two spaces list the same labels in the same order.
/// Space identity is structural, so a space re-read from a file is the
/// same space.
bool same_space(const SampleSpace& a, const SampleSpace& b);

void require_same_space(const SampleSpace& a, const SampleSpace& b);

/// A subset of a sample space's outcomes, stored as a bitmask. All set
/// operations require both operands to live over the same space.
class Event {
public:
    Event(SpacePtr space, std::uint64_t bits);

    static Event none(SpacePtr space) { return Event(std::move(space), 0); }
    static Event all(SpacePtr space);
    static Event singleton(SpacePtr space, std::size_t index);
    static Event of_indices(SpacePtr space, const std::vector<std::size_t>& indices);
    static Event of_labels(SpacePtr space, const std::vector<std::string>& labels);

    const SpacePtr& space() const { return space_; }
    std::uint64_t bits() const { return bits_; }

    bool contains(std::size_t index) const { return (bits_ >> index) & 1u; }
    std::size_t count() const;
    bool empty() const { return bits_ == 0; }

    std::vector<std::size_t> indices() const;
    std::vector<std::string> labels() const;

    Event complement() const;

    friend Event operator|(const Event& a, const Event& b);  // union
    friend Event operator&(const Event& a, const Event& b);  // intersection
    friend Event operator-(const Event& a, const Event& b);  // difference

    friend bool operator==(const Event& a, const Event& b);

    bool is_subset_of(const Event& other) const;
    bool disjoint_with(const Event& other) const;

private:
    SpacePtr space_;
    std::uint64_t bits_;
};

/// One exact weight per outcome, summing to 1. Weights may be negative;
/// event probability is the sum over members, so additivity holds by
/// construction.
class SignedDistribution {
public:
    SignedDistribution(SpacePtr space, std::vector<Scalar> weights);

    const SpacePtr& space() const { return space_; }
    const std::vector<Scalar>& weights() const { return weights_; }
    const Scalar& weight(std::size_t index) const { return weights_.at(index); }

    Scalar prob(const Event& e) const;

    /// True iff every outcome weight is >= 0; with additive prob this is
    /// equivalent to nonnegativity on all events.
    bool is_traditional() const;

    /// Total mass of the negative part, sum of max(0, -w).
    Scalar negative_mass() const;

    /// True iff parts partition the space and each part has nonnegative
    /// probability: the partition describes a performable experiment.
    bool is_test(const std::vector<Event>& parts) const;

    friend bool operator==(const SignedDistribution& a, const SignedDistribution& b);

private:
    SpacePtr space_;
    std::vector<Scalar> weights_;
};

}  // namespace obsprob
