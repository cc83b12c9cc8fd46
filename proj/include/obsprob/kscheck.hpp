#pragma once

#include "obsprob/scalar.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace obsprob {

/// A one-dimensional subspace of C^4 with an integer representative,
/// kept canonical: coordinates share no common factor and the first
/// nonzero one is positive, so proportional vectors compare equal.
struct Ray {
    std::array<long long, 4> coords{};

    /// Canonicalizes; throws std::invalid_argument on the zero vector.
    static Ray canonical(std::array<long long, 4> coords);

    friend bool operator==(const Ray&, const Ray&) = default;
    friend auto operator<=>(const Ray&, const Ray&) = default;
};

/// Exact inner product, wide enough for any 64-bit coordinates.
Integer dot(const Ray& a, const Ray& b);

struct Basis {
    std::array<Ray, 4> rays;

    bool orthogonal() const;
};

struct BasisSystem {
    std::vector<Basis> bases;
};

/// What validate_system reports; nothing is enforced, so callers can
/// surface problems as diagnostics.
struct StructuralReport {
    std::size_t basis_count = 0;
    std::vector<Ray> rays;                       // distinct, in first-appearance order
    std::vector<std::size_t> occurrence_count;   // parallel to rays
    std::vector<bool> basis_orthogonal;          // per basis
    bool all_orthogonal = true;
    bool every_ray_twice = false;
    /// 9 orthogonal bases over 18 distinct rays, each in exactly 2 bases.
    bool eighteen_nine_profile = false;
};

StructuralReport validate_system(const BasisSystem& s);

/// One chosen ray index (0..3) per basis.
using Selection = std::vector<std::size_t>;

/// The search is 4^bases, so systems are capped.
constexpr std::size_t max_selection_bases = 16;

/// All ways to pick one ray per basis such that a ray shared between
/// bases is picked in either both or neither. Depth-first over bases with
/// chosen/excluded propagation; results come out in lexicographic order,
/// at most `limit` of them. Throws std::length_error over the basis cap.
std::vector<Selection> find_selections(const BasisSystem& s,
                                       std::size_t limit = static_cast<std::size_t>(-1));

enum class ParityVerdict {
    not_applicable,  // some ray does not occur in exactly two bases
    obstruction,     // odd basis count: no consistent selection can exist
    no_obstruction,
};

/// When every ray lies in exactly two bases, each consistent selection
/// marks every chosen ray twice, so the basis count is twice the number
/// of chosen rays — an odd count rules selections out with no search.
ParityVerdict parity_obstruction(const BasisSystem& s);

/// True iff a consistent selection exists. By the selection reduction, a
/// false verdict certifies that no assignment of definite values to these
/// observables is possible, whatever the observation frame.
bool model_exists(const BasisSystem& s);

}  // namespace obsprob
