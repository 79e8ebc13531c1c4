#pragma once

#include "pidel/codes.hpp"
#include "pidel/statevec.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace pidel {

/// Logical L-level state alpha_0|0⟩ + ... + alpha_{L-1}|L-1⟩.
class LogicalState {
  public:
    explicit LogicalState(std::vector<Complex> amps, const Tolerances& tol = {});

    static LogicalState basis(int level_count, int index);
    static LogicalState uniform(int level_count);

    int level_count() const { return static_cast<int>(amps_.size()); }
    const std::vector<Complex>& amplitudes() const { return amps_; }

  private:
    std::vector<Complex> amps_;
};

/// Permutation-invariant pure state stored by its weight coefficients:
/// amplitude c(w) on every basis string of Hamming weight w. Absent weights
/// are zero. Not necessarily normalized (deletion branches are not).
class SymmetricState {
  public:
    SymmetricState(int n_qubits, std::map<int, Complex> coeffs);

    int n_qubits() const { return n_qubits_; }
    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int w) const;

    /// sum_w |c(w)|^2 C(n, w)
    double norm_sq() const;

  private:
    int n_qubits_;
    std::map<int, Complex> coeffs_;  // zero entries pruned
};

/// Mixture after t deletions of a PI state: sum_k C(t,k) |Psi_k⟩⟨Psi_k|
/// with branch coefficients c_k(w) = c(w + k) on n - t qubits.
struct DeletionMixture {
    struct Branch {
        Integer multiplicity;  // C(t, k)
        SymmetricState state;  // |Psi_k⟩, possibly unnormalized
    };
    int t = 0;
    std::vector<Branch> branches;  // index k = 0..t
};

/// Per-outcome correction data: the common norm l_k of the post-deletion
/// level vectors and the orthonormal vectors u_1^k..u_L^k they normalize to.
struct CorrectionData {
    int k = 0;
    Rational l_sq;                          // exact l_k^2 (the common D2 sum)
    double l = 0.0;                         // sqrt(l_sq)
    std::vector<SymmetricState> u_vectors;  // on N - t qubits
};

struct DecodeResult {
    Outcome outcome;
    double probability = 0.0;
    Matrix logical;  // L x L density matrix sigma
};

SymmetricState encode(const CodeSpec& spec, const LogicalState& psi);

/// Dense expansion: amplitude c(wt(x)) at every index x. Requires a
/// normalized state within the dense cap.
PureState to_dense(const SymmetricState& s);

/// Dense expansion without the normalization check (deletion branches).
Vector dense_vector(const SymmetricState& s);

/// Inverse of to_dense; throws if amplitudes of equal-weight strings differ
/// by more than tol.structural (the state is not permutation-invariant).
SymmetricState from_dense(const PureState& psi, const Tolerances& tol = {});

DeletionMixture deleted_mixture(const SymmetricState& s, int t);

/// Dense sum_k C(t,k) |Psi_k⟩⟨Psi_k| of a mixture (oracle cross-checks).
Matrix mixture_density(const DeletionMixture& mixture);

CorrectionData correction_data(const CodeSpec& spec, int k);

/// Dense completed unitary whose leading rows are ⟨u_1^k|..⟨u_L^k|.
Matrix correction_unitary(const CorrectionData& data);

/// The measurement {P_0..P_t, P_empty} with P_k projecting onto strings x
/// of length N-t with wt(x)+k in the union of weight classes. Requires the
/// weight-gap condition (otherwise the index sets would overlap).
ProjectorSet build_measurement(const CodeSpec& spec);

/// Completes pairwise-orthonormal vectors to a dim x dim unitary whose
/// m-th row is the conjugate of the m-th input. Remaining rows come from
/// Gram-Schmidt over the standard basis in index order, skipping candidates
/// whose residual norm falls below 1e-8.
Matrix complete_unitary(const std::vector<Vector>& rows, Eigen::Index dim,
                        const Tolerances& tol = {});

/// Precomputed decoding pipeline for one code spec: measurement set,
/// correction data and completed unitaries are built once.
class Decoder {
  public:
    explicit Decoder(CodeSpec spec);

    /// One decode with pseudorandomly selected outcome (Step 1..3).
    DecodeResult decode(const DensityMatrix& rho, std::uint64_t seed = 0) const;

    /// Deterministic enumeration of every outcome with probability > 1e-12.
    std::vector<DecodeResult> branches(const DensityMatrix& rho) const;

    const CodeSpec& spec() const { return spec_; }
    const ProjectorSet& measurement() const { return measurement_; }
    const CorrectionData& correction(int k) const;
    const Matrix& unitary(int k) const;

  private:
    DecodeResult finish_branch(const MeasurementBranch& branch) const;

    CodeSpec spec_;
    ProjectorSet measurement_;
    std::vector<CorrectionData> corrections_;
    std::vector<Matrix> unitaries_;
    int logical_qubits_;  // ceil(log2 L)
};

DecodeResult decode(const CodeSpec& spec, const DensityMatrix& rho, std::uint64_t seed = 0);
std::vector<DecodeResult> decode_branches(const CodeSpec& spec, const DensityMatrix& rho);

/// Corrects s <= t deletions by deleting t-s further qubits at positions
/// 1..t-s and decoding.
DecodeResult correct_fewer_deletions(const CodeSpec& spec, const DensityMatrix& rho, int s,
                                     std::uint64_t seed = 0);
std::vector<DecodeResult> correct_fewer_deletions_branches(const CodeSpec& spec,
                                                           const DensityMatrix& rho, int s);

/// ⟨psi|sigma|psi⟩ for an L x L decoded density matrix.
double logical_fidelity(const Matrix& sigma, const LogicalState& psi);

}  // namespace pidel
