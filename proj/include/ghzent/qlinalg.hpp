#pragma once

// Dense complex linear algebra over multi-qubit Hilbert spaces.
//
// Qubit q (1-based) of an N-qubit register is bit N-q of the computational
// basis index, so qubit 1 is the most significant bit and |q1 q2 ... qN>
// reads left to right.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ghzent/common.hpp"

namespace ghzent {

using complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
  }
  ComplexMatrix(std::size_t dim, std::vector<complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
    if (data_.size() != dim * dim)
      throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries, got " +
                                  std::to_string(data_.size()));
  }
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) throw std::invalid_argument("matrix dimension must be positive");
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw std::invalid_argument("matrix rows must be square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const { return dim_; }
  complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const complex> entries() const { return data_; }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  // Largest entrywise |M - M^dagger|.
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c) d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b);
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const complex ark = a(r, k);
        if (ark == complex{}) continue;
        for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

 private:
  void check_same(const ComplexMatrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<complex> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  return d;
}

namespace detail {

inline void check_qubit_budget(int n_qubits, int max_qubits) {
  if (n_qubits > max_qubits)
    throw capacity_error(std::to_string(n_qubits) + " qubits exceeds the configured maximum of " +
                         std::to_string(max_qubits));
}

inline int qubits_for_dim(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  return std::countr_zero(dim);
}

// Bit position of qubit q (1-based) in an n-qubit basis index.
inline std::size_t qubit_bit(int q, int n_qubits) { return std::size_t{1} << (n_qubits - q); }

inline std::size_t qubit_mask(PartySet qubits, int n_qubits) {
  std::size_t mask = 0;
  for (int q : qubits.to_vector()) {
    if (q > n_qubits) throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
    mask |= qubit_bit(q, n_qubits);
  }
  return mask;
}

}  // namespace detail

class StateVector {
 public:
  StateVector(int n_qubits, std::vector<complex> amplitudes, double norm_tol = 1e-12)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1) throw std::invalid_argument("state vector needs at least one qubit");
    if (amps_.size() != (std::size_t{1} << n_qubits))
      throw std::invalid_argument("amplitude count does not match 2^n_qubits");
    double norm2 = 0.0;
    for (const auto& a : amps_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > norm_tol) throw std::invalid_argument("state vector is not normalized");
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amplitudes() const { return amps_; }
  const complex& operator[](std::size_t i) const { return amps_[i]; }

  complex inner(const StateVector& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("state dimension mismatch");
    complex s = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  ComplexMatrix projector() const {
    ComplexMatrix p(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
      if (amps_[r] == complex{}) continue;
      for (std::size_t c = 0; c < dim(); ++c) p(r, c) = amps_[r] * std::conj(amps_[c]);
    }
    return p;
  }

  // <psi| m |psi>
  complex expectation(const ComplexMatrix& m) const {
    if (m.dim() != dim()) throw std::invalid_argument("operator dimension mismatch");
    complex s = 0.0;
    for (std::size_t r = 0; r < dim(); ++r) {
      if (amps_[r] == complex{}) continue;
      complex row = 0.0;
      for (std::size_t c = 0; c < dim(); ++c) row += m(r, c) * amps_[c];
      s += std::conj(amps_[r]) * row;
    }
    return s;
  }

 private:
  int n_qubits_;
  std::vector<complex> amps_;
};

// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol = 1e-12) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_defect() > herm_tol * scale)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::Map<const Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      m.entries().data(), dim, dim);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double min_eigenvalue(const ComplexMatrix& m, double herm_tol = 1e-12) {
  return hermitian_eigenvalues(m, herm_tol).front();
}

enum class Check { full, structural };

// Hermitian, unit-trace, positive semidefinite operator on n qubits.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix m, const Tolerances& tol = {}, Check check = Check::full,
                int max_qubits = kDefaultMaxQubits)
      : n_qubits_(detail::qubits_for_dim(m.dim())), m_(std::move(m)) {
    if (n_qubits_ < 1) throw std::invalid_argument("density matrix needs at least one qubit");
    detail::check_qubit_budget(n_qubits_, max_qubits);
    if (m_.hermiticity_defect() > tol.herm) throw std::invalid_argument("density matrix is not Hermitian");
    const complex tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > tol.trace || std::abs(tr.imag()) > tol.trace)
      throw std::invalid_argument("density matrix trace is not 1");
    if (check == Check::full && min_eigenvalue(m_, tol.herm) < -tol.psd)
      throw std::invalid_argument("density matrix is not positive semidefinite");
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    return DensityMatrix(psi.projector(), {}, Check::structural, psi.n_qubits());
  }

  static DensityMatrix maximally_mixed(int n_qubits, int max_qubits = kDefaultMaxQubits) {
    detail::check_qubit_budget(n_qubits, max_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    return DensityMatrix(ComplexMatrix::identity(dim) * complex(1.0 / static_cast<double>(dim)), {},
                         Check::structural, max_qubits);
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  int n_qubits_;
  ComplexMatrix m_;
};

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                                    int max_qubits = kDefaultMaxQubits) {
  const std::size_t limit = std::size_t{1} << max_qubits;
  if (a.dim() > limit / b.dim() || a.dim() * b.dim() > limit)
    throw capacity_error("tensor product dimension exceeds the configured maximum of 2^" +
                         std::to_string(max_qubits));
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  ComplexMatrix out(n);
  for (std::size_t ar = 0; ar < na; ++ar)
    for (std::size_t ac = 0; ac < na; ++ac) {
      const complex s = a(ar, ac);
      if (s == complex{}) continue;
      for (std::size_t br = 0; br < nb; ++br)
        for (std::size_t bc = 0; bc < nb; ++bc) out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
    }
  return out;
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b,
                                    int max_qubits = kDefaultMaxQubits) {
  return DensityMatrix(tensor_product(a.matrix(), b.matrix(), max_qubits), {}, Check::structural, max_qubits);
}

// Reduced state on the qubits in `keep`, in the listed order (keep[0]
// becomes qubit 1 of the result).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::size_t seen = 0;
  for (int q : keep) {
    if (q < 1 || q > n) throw std::invalid_argument("partial_trace: qubit index " + std::to_string(q) + " out of range");
    const std::size_t bit = detail::qubit_bit(q, n);
    if (seen & bit) throw std::invalid_argument("partial_trace: duplicate qubit index " + std::to_string(q));
    seen |= bit;
  }
  const int m = static_cast<int>(keep.size());
  const std::size_t kept_dim = std::size_t{1} << m;
  std::vector<std::size_t> kept_index(kept_dim, 0);
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (int t = 0; t < m; ++t)
      if ((a >> (m - 1 - t)) & 1u) kept_index[a] |= detail::qubit_bit(keep[t], n);

  std::vector<std::size_t> traced_index{0};
  for (int q = 1; q <= n; ++q) {
    const std::size_t bit = detail::qubit_bit(q, n);
    if (seen & bit) continue;
    const std::size_t cur = traced_index.size();
    for (std::size_t i = 0; i < cur; ++i) traced_index.push_back(traced_index[i] | bit);
  }

  ComplexMatrix out(kept_dim);
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (std::size_t b = 0; b < kept_dim; ++b) {
      complex s = 0.0;
      for (std::size_t t : traced_index) s += rho(kept_index[a] | t, kept_index[b] | t);
      out(a, b) = s;
    }
  return DensityMatrix(std::move(out), {}, Check::structural, m);
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

// Transposition of the listed qubits' indices only. Works on any
// 2^n-dimensional operator so the map can be applied twice.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, PartySet qubits) {
  const int n = detail::qubits_for_dim(m.dim());
  if (qubits.max_party() > n)
    throw std::invalid_argument("partial_transpose: qubit index " + std::to_string(qubits.max_party()) +
                                " out of range");
  const std::size_t mask = detail::qubit_mask(qubits, n);
  const std::size_t dim = m.dim();
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t r2 = (r & ~mask) | (c & mask);
      const std::size_t c2 = (c & ~mask) | (r & mask);
      out(r, c) = m(r2, c2);
    }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, PartySet qubits) {
  return partial_transpose(rho.matrix(), qubits);
}

inline double min_pt_eigenvalue(const DensityMatrix& rho, PartySet qubits) {
  return min_eigenvalue(partial_transpose(rho, qubits));
}

inline bool is_npt(const DensityMatrix& rho, PartySet qubits, const Tolerances& tol = {}) {
  return min_pt_eigenvalue(rho, qubits) < -tol.psd;
}

namespace pauli {
inline ComplexMatrix I() { return ComplexMatrix::identity(2); }
inline ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix Y() { return {{0.0, complex(0.0, -1.0)}, {complex(0.0, 1.0), 0.0}}; }
inline ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

inline StateVector basis_state(int n_qubits, std::size_t index) {
  std::vector<complex> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw std::invalid_argument("basis index out of range");
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

// The four two-qubit Bell states: Phi+, Phi-, Psi+, Psi-.
inline std::vector<StateVector> bell_states() {
  const double h = 1.0 / std::sqrt(2.0);
  return {StateVector(2, {h, 0.0, 0.0, h}), StateVector(2, {h, 0.0, 0.0, -h}),
          StateVector(2, {0.0, h, h, 0.0}), StateVector(2, {0.0, h, -h, 0.0})};
}

}  // namespace ghzent
