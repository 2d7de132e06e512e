#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "loopsoup/decomposition.hpp"
#include "loopsoup/graph.hpp"
#include "loopsoup/rng.hpp"

namespace loopsoup::oracle {

// Exact diagonalization of the spin-1/2 Heisenberg Hamiltonians on tiny
// graphs. Ground truth for the probabilistic representation identities, not
// a production solver: dense matrices of dimension 2^|V|, capped at |V|=12.

using Operator = Eigen::MatrixXcd;

constexpr int kMaxVertices = 12;

enum class Kind : std::uint8_t { ferro, anti };

// S^(dir) at site x embedded into the 2^n dimensional space (dir in 1..3).
// Site 0 is the least significant bit; bit 0 means spin +1/2.
Operator spin_op(int dir, int site, int n_vertices);
// Transposition of the spins at x and y.
Operator transposition_op(int x, int y, int n_vertices);
// S_x . S_y.
Operator coupling_op(int x, int y, int n_vertices);
Operator identity_op(int n_vertices);
// M = sum_x S_x^(3); diagonal in the computational basis.
Operator magnetization_op(int n_vertices);

// H = -/+ sum_edges S_x.S_y - h sum_x S_x^(3).
Operator hamiltonian(const Graph& g, Kind kind, double h);

bool is_hermitian(const Operator& a, double tol = 1e-12);

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Spectrum diagonalize(const Operator& hermitian);

// log Tr e^{-beta H}, evaluated stably from the spectrum.
double log_partition_function(const Spectrum& spec, double beta);
// F = -log(Z)/beta.
double free_energy(const Spectrum& spec, double beta);
// <A> = Tr A e^{-beta H} / Z; the imaginary part (zero for observables)
// is discarded.
double gibbs_expectation(const Operator& a, const Spectrum& spec, double beta);

// <Psi_Neel, H^anti Psi_Neel> = -|E|/4; requires a bipartition.
double neel_energy(const Graph& g);

struct IdentityReport {
  std::string graph_json;
  double beta = 0.0;
  double h = 0.0;
  std::size_t n_samples = 0;
  double exact = 0.0;        // Z(2 beta, h)
  double mc_estimate = 0.0;  // e^{beta |E| / 2} * mean of the cycle/loop weight
  double mc_stderr = 0.0;
  double z_score = 0.0;
  // Correlation identity <S_x^3 S_y^3> = 1/4 P(gamma_x = gamma_y) (times the
  // staggered sign for loops), checked at h = 0.
  bool has_correlation = false;
  int corr_x = 0, corr_y = 0;
  double corr_exact = 0.0;
  double corr_estimate = 0.0;
  double corr_stderr = 0.0;
  double corr_z = 0.0;
  std::string to_json() const;
};

// Toth's identity: Z^ferro(2 beta, h) = e^{-beta|E|/2} E_rho[ prod_gamma
// 2 cosh(h L(gamma)) ] with rho the probability measure of the bridge
// process; the Monte Carlo side therefore carries e^{+beta|E|/2}.
IdentityReport verify_cycle_identity(const Graph& g, double beta, double h,
                                     std::size_t n_samples, Rng& rng);
// Aizenman-Nachtergaele: same with loops and 2 cosh(beta h w(gamma)).
IdentityReport verify_loop_identity(const Graph& g, double beta, double h,
                                    std::size_t n_samples, Rng& rng);

}  // namespace loopsoup::oracle
