#pragma once

#include "obsprob/frame.hpp"
#include "obsprob/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace obsprob {

/// Equality system A q = b with one variable per outcome. Systems built
/// from observed data have 0/1 coefficients (part-membership indicators);
/// the solvers accept arbitrary exact coefficients.
struct LinearSystem {
    SpacePtr space;
    std::vector<std::vector<Scalar>> coeffs;  // rows x variables
    std::vector<Scalar> rhs;                  // one per row
    std::vector<std::string> row_names;       // diagnostics and certificate display

    std::size_t rows() const { return coeffs.size(); }
    std::size_t vars() const { return space ? space->size() : 0; }
};

/// One row per ensemble part (sum of the part's outcome weights equals
/// the observed probability) plus a final total row summing everything
/// to 1. The total row is redundant but keeps certificates readable.
/// Expects a normalized frame (no two outcomes indistinguishable to
/// every ensemble); throws std::invalid_argument otherwise.
LinearSystem build_system(const ObservedDistribution& obs);

enum class SolveStatus { infeasible, unique, family };

struct ExtensionResult {
    SolveStatus status = SolveStatus::infeasible;

    /// A solution vector (one weight per outcome) when status isn't
    /// infeasible. solve_traditional's witness is componentwise >= 0.
    std::optional<std::vector<Scalar>> witness;

    /// Basis of the homogeneous solutions A v = 0; nonempty iff status
    /// is family. Directions, not distributions (entries sum to 0).
    std::vector<std::vector<Scalar>> nullspace;

    /// On traditional infeasibility: y with yᵀA >= 0 componentwise and
    /// yᵀb < 0, one entry per system row.
    std::optional<std::vector<Scalar>> certificate;

    /// Set by minimize_negativity: the least achievable total negative
    /// mass among all solutions.
    std::optional<Scalar> negative_mass;

    /// Simplex pivots performed (0 for pure elimination); lets tests
    /// assert the anti-cycling bound.
    std::size_t pivot_count = 0;
};

/// Exact Gauss-Jordan elimination. Witness sets every free variable to
/// zero (columns scanned in outcome order), making the output
/// deterministic; the nullspace basis has one vector per free column.
ExtensionResult solve_signed(const LinearSystem& sys);

/// Exact phase-one simplex (Bland's rule) for A q = b, q >= 0. Feasible:
/// witness is a basic feasible solution, status/nullspace report the
/// affine solution set as in solve_signed. Infeasible: Farkas
/// certificate included.
ExtensionResult solve_traditional(const LinearSystem& sys);

/// Minimizes the total negative mass sum(max(0, -q)) over all solutions
/// of A q = b via the split q = u - v with u,v >= 0, minimizing sum(v).
/// Throws std::invalid_argument when no signed solution exists.
ExtensionResult minimize_negativity(const LinearSystem& sys);

/// Exact row-by-row check of A q = b.
bool satisfies(const LinearSystem& sys, const std::vector<Scalar>& q);

/// Exact check of the Farkas conditions yᵀA >= 0 (componentwise) and
/// yᵀb < 0.
bool certifies_infeasibility(const LinearSystem& sys, const std::vector<Scalar>& y);

SignedDistribution to_distribution(const LinearSystem& sys, const std::vector<Scalar>& weights);

/// True iff q reproduces every observed part probability.
bool extends(const ObservedDistribution& obs, const SignedDistribution& q);

/// Group-averages q over automorphisms: result(w) = mean of q(g(w)).
/// Requires group to be a permutation group of automorphisms and q to
/// extend the observed data (std::invalid_argument otherwise); the
/// average provably extends it too, which is re-checked.
SignedDistribution symmetrize(const ObservedDistribution& obs, const SignedDistribution& q,
                              const std::vector<Permutation>& group);

/// For a normalized two-ensemble frame whose parts all intersect: puts
/// weight P(A_i)·P(B_j) on the outcome A_i ∩ B_j, yielding a traditional
/// extension. Throws std::invalid_argument when the preconditions fail.
SignedDistribution product_extension(const ObservedDistribution& obs);

}  // namespace obsprob
