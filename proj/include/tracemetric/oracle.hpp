#pragma once

// Coordinate differential geometry of (GLSym_n(p), g) computed from the raw
// metric alone: finite-difference Christoffel symbols, RK4 geodesics and a
// finite-difference Riemann tensor. Nothing here calls the closed-form
// geodesic or curvature code; only matrix arithmetic is shared.

#include <cstddef>
#include <vector>

#include "tracemetric/matrix.hpp"

namespace tracemetric::oracle {

inline constexpr double kDefaultStep = 1e-4;
inline constexpr int kDefaultSteps = 2000;

using Coords = std::vector<double>;

/// Global chart of Sym_n by the upper triangle, row by row:
/// slot(i, j) for i <= j. The coordinate field of slot (i, i) is E^(i,i), of
/// slot (i, j), i < j, is E^(i,j) + E^(j,i).
class Chart {
 public:
  explicit Chart(std::size_t n);

  std::size_t order() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::size_t slot(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> entry(std::size_t slot) const { return index_[slot]; }

  Coords encode(const SymMatrix& a) const;
  SymMatrix decode(const Coords& x) const;
  // Coordinate field for a slot.
  const SymMatrix& field(std::size_t slot) const { return fields_[slot]; }

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::size_t>> index_;
  std::vector<SymMatrix> fields_;
};

/// dim x dim Gram matrix of g over the coordinate fields at the decoded point.
/// Throws DomainError when the point is singular.
Matrix metric_gram_at(const Chart& chart, const Coords& x);

/// Flat dim^3 array, symbols(k, i, j) = Gamma^k_ij.
class Christoffel {
 public:
  explicit Christoffel(std::size_t dim) : dim_(dim), v_(dim * dim * dim, 0.0) {}
  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t k, std::size_t i, std::size_t j) { return v_[(k * dim_ + i) * dim_ + j]; }
  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return v_[(k * dim_ + i) * dim_ + j]; }

  // Gamma^k_ij u^i v^j
  Coords contract(const Coords& u, const Coords& v) const;

 private:
  std::size_t dim_;
  std::vector<double> v_;
};

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), metric derivatives by
/// central differences with step h.
Christoffel christoffel_fd(const Chart& chart, const Coords& x, double h = kDefaultStep);

struct ODEState {
  Coords position;
  Coords velocity;
  double t = 0.0;
};

/// How the Christoffel step h is applied along a trajectory. relative uses
/// h * lmin / sqrt(lmax / lmin), lmin and lmax the extreme |eigenvalues| of
/// the current point; it equals h at the identity.
enum class StepScale { absolute, relative };

/// Classical RK4 on x'' = -Gamma(x)(x', x') from state.t to t_end. Throws
/// IntegrationError if the trajectory approaches the singular set.
ODEState integrate_geodesic(const Chart& chart, const ODEState& start, double t_end, int steps,
                            double h = kDefaultStep, StepScale scale = StepScale::absolute);

/// Same integration, returning the state after every step (front() = start).
std::vector<ODEState> integrate_geodesic_path(const Chart& chart, const ODEState& start, double t_end, int steps,
                                              double h = kDefaultStep, StepScale scale = StepScale::absolute);

/// Flat dim^4 array, tensor(a, b, c, d) = R_abcd = g_al R^l_bcd with
/// R^l_bcd = d_c Gamma^l_db - d_d Gamma^l_cb + Gamma^l_cm Gamma^m_db - Gamma^l_dm Gamma^m_cb.
class RiemannTensor {
 public:
  explicit RiemannTensor(std::size_t dim) : dim_(dim), v_(dim * dim * dim * dim, 0.0) {}
  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return v_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return v_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double max_abs() const;

 private:
  std::size_t dim_;
  std::vector<double> v_;
};

RiemannTensor riemann_fd(const Chart& chart, const Coords& x, double h = kDefaultStep);

}  // namespace tracemetric::oracle
