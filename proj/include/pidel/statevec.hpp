#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pidel {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Dense density matrices are capped at this many qubits (256 MB at 12).
/// Larger states must stay in the weight-coefficient representation
/// provided by encdec.hpp.
inline constexpr int kMaxDenseQubits = 12;

struct Tolerances {
    double structural = 1e-10;  // hermiticity / trace / norm / projector checks
    double psd_slack = 1e-8;    // smallest eigenvalue may dip this far below 0
};

/// 2^n as a vector/matrix dimension. Throws std::invalid_argument when n is
/// negative or past the dense cap.
Eigen::Index checked_dim(int n_qubits);

/// Bit x_p of an n-bit basis index, 1-based position, x_1 most significant.
inline int bit_at(std::size_t index, int p, int n) {
    return static_cast<int>((index >> (n - p)) & 1u);
}

/// Hamming weight of a basis index.
inline int weight_of(std::size_t index) {
    return static_cast<int>(__builtin_popcountll(index));
}

/// Pure n-qubit state. Index i of the amplitude vector is read big-endian
/// as the bit string x_1...x_n (x_1 most significant).
class PureState {
  public:
    PureState(int n_qubits, Vector amplitudes, const Tolerances& tol = {});

    /// |x⟩ for a bit string x_1...x_n.
    static PureState basis(const std::vector<int>& bits);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Vector& amplitudes() const { return amps_; }

  private:
    int n_qubits_;
    Vector amps_;
};

/// Density matrix on n qubits. Construction checks hermiticity and unit
/// trace; positive semi-definiteness is O(dim^3) and is left to
/// min_eigenvalue(), which validation paths and tests call explicitly.
class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, Matrix entries, const Tolerances& tol = {});

    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& entries() const { return mat_; }

    double min_eigenvalue() const;

  private:
    int n_qubits_;
    Matrix mat_;
};

/// Measurement outcome label: an integer k >= 0 or the complement outcome.
class Outcome {
  public:
    static Outcome empty() { return Outcome(-1); }
    static Outcome k(int value);

    bool is_empty() const { return value_ < 0; }
    int value() const;
    std::string str() const;

    friend bool operator==(const Outcome& a, const Outcome& b) { return a.value_ == b.value_; }

  private:
    explicit Outcome(int v) : value_(v) {}
    int value_;
};

/// Labeled complete set of projectors. Elements are either dense matrices
/// (validated as hermitian idempotents summing to the identity) or 0/1
/// diagonal masks, for which the same checks reduce to disjointness and
/// coverage of the index set.
class ProjectorSet {
  public:
    ProjectorSet(int n_qubits, std::vector<std::pair<Outcome, Matrix>> elements,
                 const Tolerances& tol = {});

    static ProjectorSet diagonal(int n_qubits,
                                 std::vector<std::pair<Outcome, std::vector<bool>>> masks);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return labels_.size(); }
    const Outcome& label(std::size_t i) const { return labels_[i]; }

    /// Dense form of element i (materialized for mask-backed elements).
    Matrix matrix(std::size_t i) const;

    /// Diagonal mask of element i, or nullptr when the element is dense.
    const std::vector<bool>* mask(std::size_t i) const;

  private:
    ProjectorSet(int n_qubits) : n_qubits_(n_qubits) {}
    int n_qubits_;
    std::vector<Outcome> labels_;
    std::vector<Matrix> dense_;               // empty matrix when mask-backed
    std::vector<std::vector<bool>> masks_;    // empty vector when dense
};

struct MeasurementBranch {
    Outcome label;
    double probability;
    std::optional<DensityMatrix> post_state;  // absent below the probability threshold
};

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Tr_p: discards qubit p (1-based) from an n-qubit density matrix,
/// n >= 2. Output indices keep the remaining qubits in order.
DensityMatrix partial_trace(const DensityMatrix& rho, int position);

/// Deletion channel D_P: the composition of partial traces over the given
/// positions, applied in decreasing order so earlier indices stay valid.
/// Requires a nonempty proper subset of [n] with no duplicates.
DensityMatrix delete_qubits(const DensityMatrix& rho, const std::vector<int>& positions);

/// Projective measurement. Probabilities are Tr(P_k rho) and sum to 1 for
/// a complete set; post-states P_k rho P_k / p are materialized only when
/// p > post_threshold.
std::vector<MeasurementBranch> measure(const DensityMatrix& rho, const ProjectorSet& projs,
                                       double post_threshold = 1e-12);

/// U rho U^dag. U must be unitary within tol.structural.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, const Tolerances& tol = {});

/// ⟨psi|rho|psi⟩ as a real number in [0,1].
double fidelity(const DensityMatrix& rho, const PureState& psi);

/// Exchanges qubit positions p and q (1-based) of a pure state.
PureState swap_qubits(const PureState& psi, int p, int q);

}  // namespace pidel
