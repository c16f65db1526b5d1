#pragma once

#include "argshift/linalg.hpp"
#include "argshift/multipoly.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace argshift {

/// Raised when a structure table, invariant list, point or basis fails the
/// checks run at construction time. Carries a machine-usable witness.
class validation_error : public std::runtime_error {
public:
    enum class Kind { Structure, Jacobi, Invariant, Basis, Point };

    validation_error(Kind kind, const std::string& message,
                     std::vector<std::size_t> witness = {})
        : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

    Kind kind() const { return kind_; }
    /// Indices identifying the failure, 1-based: (i, j, l, k) for a Jacobi
    /// violation, the invariant's position for an invariant violation.
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    Kind kind_;
    std::vector<std::size_t> witness_;
};

/// Finite-dimensional Lie algebra given by structure constants c_ij^k in a
/// fixed basis. Only i < j entries are stored; the accessor synthesizes the
/// sign, so antisymmetry cannot be violated by construction. The Jacobi
/// identity and the invariance of any attached polynomials are checked
/// exactly when the object is created.
class LieAlgebra {
public:
    /// Keys are (i, j, k) with 0-based indices and i < j.
    using StructureMap = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational>;

    static LieAlgebra create(std::size_t dim, StructureMap structure, std::string name = "");

    /// Copy with polynomial coadjoint invariants attached; each f must
    /// satisfy {f, x_i} = 0 for every coordinate, checked exactly.
    LieAlgebra with_invariants(std::vector<MultiPoly> invariants) const;

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const StructureMap& structure() const { return structure_; }
    const std::vector<MultiPoly>& invariants() const { return invariants_; }

    /// c_ij^k for arbitrary i, j (sign synthesized, zero when i = j).
    Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

    /// Bracket of two coefficient vectors in this basis.
    RatVec bracket(const RatVec& xi, const RatVec& eta) const;

private:
    LieAlgebra() = default;
    std::size_t dim_ = 0;
    StructureMap structure_;
    std::string name_;
    std::vector<MultiPoly> invariants_;
};

/// A subspace of a parent algebra that is closed under the bracket, held as
/// basis vectors in parent coordinates together with the induced structure
/// constants in that basis. Built by Subalgebra::create, which validates
/// independence and closure.
class Subalgebra {
public:
    static Subalgebra create(const LieAlgebra& parent, std::vector<RatVec> basis);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<RatVec>& basis() const { return basis_; }
    const LieAlgebra& induced() const { return induced_; }

private:
    Subalgebra(std::vector<RatVec> basis, LieAlgebra induced)
        : basis_(std::move(basis)), induced_(std::move(induced)) {}
    std::vector<RatVec> basis_;
    LieAlgebra induced_;
};

enum class StabilizerClass { Abelian, HeisenbergPlusAbelian, B2PlusAbelian, Other };

std::string to_string(StabilizerClass c);

/// Catalog entries: "abelian(n)", "b2", "heisenberg(n)", "sl2", "so3",
/// "gl2", and "+"-separated direct sums of these. Classical invariants are
/// attached where available (Casimir of sl2, the so3 sum of squares, the
/// Heisenberg center, trace and determinant for gl2, every coordinate of an
/// abelian algebra).
LieAlgebra catalog(const std::string& name);

/// Block-diagonal structure constants; invariants of both summands lifted.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// The structure matrix evaluated at a point: (A_x)_ij = sum_k c_ij^k x_k.
RatMatrix structure_matrix_at(const LieAlgebra& alg, const RatVec& x);
Eigen::MatrixXcd structure_matrix_at(const LieAlgebra& alg, const Eigen::VectorXcd& x);

/// Coadjoint stabilizer of x: the kernel of A_x with its induced bracket.
Subalgebra stabilizer(const LieAlgebra& alg, const RatVec& x);

/// Discriminates the three stabilizer shapes occurring at generic singular
/// points by the derived algebra: dim [h,h] = 0 is Abelian; dim 1 splits on
/// whether the derived line is central (Heisenberg plus center) or not (b2
/// plus center); anything bigger is Other.
StabilizerClass classify_stabilizer(const LieAlgebra& h);

struct NumericStabilizer {
    std::size_t dim = 0;
    StabilizerClass cls = StabilizerClass::Other;
};

/// Stabilizer dimension and class at a complex point. Kernel via SVD with
/// relative tolerance `rank_tol`; the derived/center rank tests then run at
/// the looser `bracket_tol` since bracket vectors accumulate error.
NumericStabilizer classify_stabilizer_numeric(const LieAlgebra& alg,
                                              const Eigen::VectorXcd& x,
                                              double rank_tol = 1e-9,
                                              double bracket_tol = 1e-7);

} // namespace argshift
