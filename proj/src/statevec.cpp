#include "pidel/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pidel {

Eigen::Index checked_dim(int n_qubits) {
    if (n_qubits < 0) {
        throw std::invalid_argument("qubit count must be non-negative, got " +
                                    std::to_string(n_qubits));
    }
    if (n_qubits > kMaxDenseQubits) {
        throw std::invalid_argument(
            "dense engine is capped at " + std::to_string(kMaxDenseQubits) + " qubits (got " +
            std::to_string(n_qubits) + "); use the weight-coefficient representation instead");
    }
    return Eigen::Index(1) << n_qubits;
}

PureState::PureState(int n_qubits, Vector amplitudes, const Tolerances& tol)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits_ < 1) {
        throw std::invalid_argument("a pure state needs at least one qubit");
    }
    if (amps_.size() != checked_dim(n_qubits_)) {
        throw std::invalid_argument("amplitude vector has dimension " +
                                    std::to_string(amps_.size()) + ", expected 2^" +
                                    std::to_string(n_qubits_));
    }
    const double norm_sq = amps_.squaredNorm();
    if (std::abs(norm_sq - 1.0) > tol.structural) {
        throw std::invalid_argument("state is not normalized: |psi|^2 = " +
                                    std::to_string(norm_sq));
    }
}

PureState PureState::basis(const std::vector<int>& bits) {
    if (bits.empty()) {
        throw std::invalid_argument("basis state needs a nonempty bit string");
    }
    const int n = static_cast<int>(bits.size());
    Vector amps = Vector::Zero(checked_dim(n));
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("bit values must be 0 or 1");
        }
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(n, std::move(amps));
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix entries, const Tolerances& tol)
    : n_qubits_(n_qubits), mat_(std::move(entries)) {
    const Eigen::Index dim = checked_dim(n_qubits_);
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument("density matrix has shape " + std::to_string(mat_.rows()) +
                                    "x" + std::to_string(mat_.cols()) + ", expected 2^" +
                                    std::to_string(n_qubits_) + " square");
    }
    const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol.structural) {
        throw std::invalid_argument("matrix is not hermitian, max deviation " +
                                    std::to_string(herm_dev));
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0)) > tol.structural) {
        throw std::invalid_argument("matrix trace is not 1: " + std::to_string(tr.real()));
    }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
    return DensityMatrix(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const Eigen::Index dim = checked_dim(n_qubits);
    return DensityMatrix(n_qubits,
                         Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Outcome Outcome::k(int value) {
    if (value < 0) {
        throw std::invalid_argument("outcome index must be non-negative");
    }
    return Outcome(value);
}

int Outcome::value() const {
    if (is_empty()) {
        throw std::logic_error("the complement outcome has no integer value");
    }
    return value_;
}

std::string Outcome::str() const { return is_empty() ? "empty" : std::to_string(value_); }

ProjectorSet::ProjectorSet(int n_qubits, std::vector<std::pair<Outcome, Matrix>> elements,
                           const Tolerances& tol)
    : n_qubits_(n_qubits) {
    const Eigen::Index dim = checked_dim(n_qubits_);
    if (elements.empty()) {
        throw std::invalid_argument("projector set must be nonempty");
    }
    Matrix sum = Matrix::Zero(dim, dim);
    for (auto& [label, p] : elements) {
        if (p.rows() != dim || p.cols() != dim) {
            throw std::invalid_argument("projector dimension mismatch");
        }
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol.structural) {
            throw std::invalid_argument("projector for outcome " + label.str() +
                                        " is not hermitian");
        }
        if ((p * p - p).cwiseAbs().maxCoeff() > tol.structural) {
            throw std::invalid_argument("projector for outcome " + label.str() +
                                        " is not idempotent");
        }
        sum += p;
        labels_.push_back(label);
        dense_.push_back(std::move(p));
        masks_.emplace_back();
    }
    if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol.structural) {
        throw std::invalid_argument("projectors do not sum to the identity");
    }
}

ProjectorSet ProjectorSet::diagonal(int n_qubits,
                                    std::vector<std::pair<Outcome, std::vector<bool>>> masks) {
    const auto dim = static_cast<std::size_t>(checked_dim(n_qubits));
    if (masks.empty()) {
        throw std::invalid_argument("projector set must be nonempty");
    }
    std::vector<bool> covered(dim, false);
    ProjectorSet set(n_qubits);
    for (auto& [label, mask] : masks) {
        if (mask.size() != dim) {
            throw std::invalid_argument("projector mask dimension mismatch");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (!mask[i]) continue;
            if (covered[i]) {
                throw std::invalid_argument("diagonal projector masks overlap at index " +
                                            std::to_string(i));
            }
            covered[i] = true;
        }
        set.labels_.push_back(label);
        set.dense_.emplace_back();
        set.masks_.push_back(std::move(mask));
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
        throw std::invalid_argument("diagonal projector masks do not cover the index set");
    }
    return set;
}

Matrix ProjectorSet::matrix(std::size_t i) const {
    if (!masks_[i].empty()) {
        const auto dim = static_cast<Eigen::Index>(masks_[i].size());
        Matrix p = Matrix::Zero(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (masks_[i][static_cast<std::size_t>(j)]) p(j, j) = 1.0;
        }
        return p;
    }
    return dense_[i];
}

const std::vector<bool>* ProjectorSet::mask(std::size_t i) const {
    return masks_[i].empty() ? nullptr : &masks_[i];
}

PureState tensor(const PureState& a, const PureState& b) {
    const int n = a.n_qubits() + b.n_qubits();
    checked_dim(n);
    Vector out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()[i] * b.amplitudes();
    }
    return PureState(n, std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const int n = a.n_qubits() + b.n_qubits();
    checked_dim(n);
    return DensityMatrix(n, kron(a.entries(), b.entries()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int position) {
    const int n = rho.n_qubits();
    if (n < 2) {
        throw std::invalid_argument("partial trace needs at least 2 qubits");
    }
    if (position < 1 || position > n) {
        throw std::out_of_range("position " + std::to_string(position) + " outside [1, " +
                                std::to_string(n) + "]");
    }
    const Eigen::Index out_dim = Eigen::Index(1) << (n - 1);
    // Bits strictly below position p stay in the low part of the index.
    const int shift = n - position;
    const std::size_t low_mask = (std::size_t(1) << shift) - 1;
    const auto& in = rho.entries();
    Matrix out(out_dim, out_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r) {
        const std::size_t r_hi = (static_cast<std::size_t>(r) >> shift) << (shift + 1);
        const std::size_t r_lo = static_cast<std::size_t>(r) & low_mask;
        const std::size_t r0 = r_hi | r_lo;
        const std::size_t r1 = r0 | (std::size_t(1) << shift);
        for (Eigen::Index c = 0; c < out_dim; ++c) {
            const std::size_t c_hi = (static_cast<std::size_t>(c) >> shift) << (shift + 1);
            const std::size_t c_lo = static_cast<std::size_t>(c) & low_mask;
            const std::size_t c0 = c_hi | c_lo;
            const std::size_t c1 = c0 | (std::size_t(1) << shift);
            out(r, c) = in(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(c0)) +
                        in(static_cast<Eigen::Index>(r1), static_cast<Eigen::Index>(c1));
        }
    }
    return DensityMatrix(n - 1, std::move(out));
}

DensityMatrix delete_qubits(const DensityMatrix& rho, const std::vector<int>& positions) {
    const int n = rho.n_qubits();
    if (positions.empty()) {
        throw std::invalid_argument("deletion position set must be nonempty");
    }
    std::set<int> unique(positions.begin(), positions.end());
    if (unique.size() != positions.size()) {
        throw std::invalid_argument("deletion positions contain duplicates");
    }
    if (static_cast<int>(unique.size()) >= n) {
        throw std::invalid_argument("cannot delete all " + std::to_string(n) + " qubits");
    }
    for (int p : unique) {
        if (p < 1 || p > n) {
            throw std::out_of_range("deletion position " + std::to_string(p) + " outside [1, " +
                                    std::to_string(n) + "]");
        }
    }
    DensityMatrix result = rho;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
        result = partial_trace(result, *it);
    }
    return result;
}

std::vector<MeasurementBranch> measure(const DensityMatrix& rho, const ProjectorSet& projs,
                                       double post_threshold) {
    if (projs.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("projector set acts on " + std::to_string(projs.n_qubits()) +
                                    " qubits, state has " + std::to_string(rho.n_qubits()));
    }
    const auto& m = rho.entries();
    std::vector<MeasurementBranch> branches;
    branches.reserve(projs.size());
    for (std::size_t i = 0; i < projs.size(); ++i) {
        double p;
        Matrix post;
        if (const auto* mask = projs.mask(i)) {
            p = 0.0;
            for (std::size_t j = 0; j < mask->size(); ++j) {
                if ((*mask)[j]) p += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
            }
            if (p > post_threshold) {
                post = Matrix::Zero(m.rows(), m.cols());
                for (Eigen::Index r = 0; r < m.rows(); ++r) {
                    if (!(*mask)[static_cast<std::size_t>(r)]) continue;
                    for (Eigen::Index c = 0; c < m.cols(); ++c) {
                        if ((*mask)[static_cast<std::size_t>(c)]) post(r, c) = m(r, c);
                    }
                }
            }
        } else {
            const Matrix proj = projs.matrix(i);
            p = proj.cwiseProduct(m.transpose()).sum().real();
            if (p > post_threshold) {
                post = proj * m * proj;
            }
        }
        MeasurementBranch branch{projs.label(i), p, std::nullopt};
        if (p > post_threshold) {
            branch.post_state = DensityMatrix(rho.n_qubits(), post / p);
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, const Tolerances& tol) {
    if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
        throw std::invalid_argument("unitary dimension mismatch");
    }
    const double dev = (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > tol.structural) {
        throw std::invalid_argument("matrix is not unitary, |UU^dag - I| = " +
                                    std::to_string(dev));
    }
    return DensityMatrix(rho.n_qubits(), u * rho.entries() * u.adjoint());
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (psi.dim() != rho.dim()) {
        throw std::invalid_argument("fidelity dimension mismatch");
    }
    const Complex value = psi.amplitudes().dot(rho.entries() * psi.amplitudes());
    const Tolerances tol;
    if (std::abs(value.imag()) > tol.structural) {
        throw std::runtime_error("fidelity has non-real value, imag = " +
                                 std::to_string(value.imag()));
    }
    if (value.real() < -tol.structural || value.real() > 1.0 + tol.structural) {
        throw std::runtime_error("fidelity outside [0,1]: " + std::to_string(value.real()));
    }
    return std::clamp(value.real(), 0.0, 1.0);
}

PureState swap_qubits(const PureState& psi, int p, int q) {
    const int n = psi.n_qubits();
    if (p < 1 || p > n || q < 1 || q > n) {
        throw std::out_of_range("swap positions outside [1, n]");
    }
    if (p == q) return psi;
    Vector out(psi.dim());
    const int sp = n - p;
    const int sq = n - q;
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const std::size_t bp = (idx >> sp) & 1u;
        const std::size_t bq = (idx >> sq) & 1u;
        std::size_t j = idx & ~((std::size_t(1) << sp) | (std::size_t(1) << sq));
        j |= (bq << sp) | (bp << sq);
        out[static_cast<Eigen::Index>(j)] = psi.amplitudes()[i];
    }
    return PureState(n, std::move(out));
}

}  // namespace pidel
