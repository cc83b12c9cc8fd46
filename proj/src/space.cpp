#include "obsprob/space.hpp"

#include <bit>
#include <stdexcept>

namespace obsprob {

SampleSpace::SampleSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw std::invalid_argument("sample space must have at least one outcome");
    }
    if (labels_.size() > max_outcomes) {
        throw std::invalid_argument("sample space exceeds " +
                                    std::to_string(max_outcomes) + " outcomes");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second) {
            throw std::invalid_argument("duplicate outcome label '" + labels_[i] + "'");
        }
    }
}

SpacePtr SampleSpace::make(std::vector<std::string> labels) {
    return SpacePtr(new SampleSpace(std::move(labels)));
}

std::optional<std::size_t> SampleSpace::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t SampleSpace::index_of(const std::string& label) const {
    auto found = find(label);
    if (!found) {
        throw std::invalid_argument("unknown outcome label '" + label + "'");
    }
    return *found;
}

bool same_space(const SampleSpace& a, const SampleSpace& b) {
    return &a == &b || a.labels() == b.labels();
}

void require_same_space(const SampleSpace& a, const SampleSpace& b) {
    if (!same_space(a, b)) {
        throw std::invalid_argument("operands belong to different sample spaces");
    }
}

namespace {

std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

Event::Event(SpacePtr space, std::uint64_t bits) : space_(std::move(space)), bits_(bits) {
    if (!space_) throw std::invalid_argument("event requires a sample space");
    if (bits_ & ~full_mask(space_->size())) {
        throw std::invalid_argument("event bitmask has members outside the space");
    }
}

Event Event::all(SpacePtr space) {
    const std::uint64_t bits = full_mask(space->size());
    return Event(std::move(space), bits);
}

Event Event::singleton(SpacePtr space, std::size_t index) {
    if (index >= space->size()) {
        throw std::invalid_argument("outcome index out of range");
    }
    return Event(std::move(space), std::uint64_t{1} << index);
}

Event Event::of_indices(SpacePtr space, const std::vector<std::size_t>& indices) {
    std::uint64_t bits = 0;
    for (std::size_t i : indices) {
        if (i >= space->size()) {
            throw std::invalid_argument("outcome index out of range");
        }
        bits |= std::uint64_t{1} << i;
    }
    return Event(std::move(space), bits);
}

Event Event::of_labels(SpacePtr space, const std::vector<std::string>& labels) {
    std::uint64_t bits = 0;
    for (const std::string& label : labels) {
        bits |= std::uint64_t{1} << space->index_of(label);
    }
    return Event(std::move(space), bits);
}

std::size_t Event::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> Event::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::vector<std::string> Event::labels() const {
    std::vector<std::string> out;
    for (std::size_t i : indices()) out.push_back(space_->label(i));
    return out;
}

Event Event::complement() const {
    return Event(space_, bits_ ^ full_mask(space_->size()));
}

Event operator|(const Event& a, const Event& b) {
    require_same_space(*a.space_, *b.space_);
    return Event(a.space_, a.bits_ | b.bits_);
}

Event operator&(const Event& a, const Event& b) {
    require_same_space(*a.space_, *b.space_);
    return Event(a.space_, a.bits_ & b.bits_);
}

Event operator-(const Event& a, const Event& b) {
    require_same_space(*a.space_, *b.space_);
    return Event(a.space_, a.bits_ & ~b.bits_);
}

bool operator==(const Event& a, const Event& b) {
    return same_space(*a.space_, *b.space_) && a.bits_ == b.bits_;
}

bool Event::is_subset_of(const Event& other) const {
    require_same_space(*space_, *other.space_);
    return (bits_ & ~other.bits_) == 0;
}

bool Event::disjoint_with(const Event& other) const {
    require_same_space(*space_, *other.space_);
    return (bits_ & other.bits_) == 0;
}

SignedDistribution::SignedDistribution(SpacePtr space, std::vector<Scalar> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw std::invalid_argument("distribution requires a sample space");
    if (weights_.size() != space_->size()) {
        throw std::invalid_argument("distribution needs one weight per outcome");
    }
    Scalar total(0);
    for (const Scalar& w : weights_) total += w;
    if (total != Scalar(1)) {
        throw std::invalid_argument("distribution weights must sum to 1, got " +
                                    format_scalar(total));
    }
}

Scalar SignedDistribution::prob(const Event& e) const {
    require_same_space(*space_, *e.space());
    Scalar total(0);
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (e.contains(i)) total += weights_[i];
    }
    return total;
}

bool SignedDistribution::is_traditional() const {
    for (const Scalar& w : weights_) {
        if (w.is_negative()) return false;
    }
    return true;
}

Scalar SignedDistribution::negative_mass() const {
    Scalar total(0);
    for (const Scalar& w : weights_) {
        if (w.is_negative()) total -= w;
    }
    return total;
}

bool SignedDistribution::is_test(const std::vector<Event>& parts) const {
    Event covered = Event::none(space_);
    for (const Event& part : parts) {
        require_same_space(*space_, *part.space());
        if (!covered.disjoint_with(part)) return false;
        covered = covered | part;
        if (prob(part).is_negative()) return false;
    }
    return covered == Event::all(space_);
}

bool operator==(const SignedDistribution& a, const SignedDistribution& b) {
    return same_space(*a.space_, *b.space_) && a.weights_ == b.weights_;
}

}  // namespace obsprob
