#include "loopsoup/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace loopsoup::oracle {

namespace {

using Complex = std::complex<double>;

Eigen::Matrix2cd pauli(int dir) {
  Eigen::Matrix2cd s;
  switch (dir) {
    case 1:
      s << 0.0, 0.5, 0.5, 0.0;
      break;
    case 2:
      s << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
      break;
    case 3:
      s << 0.5, 0.0, 0.0, -0.5;
      break;
    default:
      throw std::invalid_argument("spin direction must be 1, 2 or 3");
  }
  return s;
}

std::int64_t dim_for(int n_vertices) {
  if (n_vertices < 1 || n_vertices > kMaxVertices)
    throw std::invalid_argument("oracle is capped at 12 vertices");
  return std::int64_t{1} << n_vertices;
}

// Bit x of a basis index: 0 encodes spin +1/2, 1 encodes -1/2.
int bit(std::int64_t state, int x) { return static_cast<int>((state >> x) & 1); }

}  // namespace

Operator identity_op(int n_vertices) {
  const auto dim = dim_for(n_vertices);
  return Operator::Identity(dim, dim);
}

Operator spin_op(int dir, int site, int n_vertices) {
  const auto dim = dim_for(n_vertices);
  if (site < 0 || site >= n_vertices) throw std::invalid_argument("site out of range");
  const auto s = pauli(dir);
  Operator op = Operator::Zero(dim, dim);
  const std::int64_t mask = std::int64_t{1} << site;
  for (std::int64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Complex val = s(a, b);
        if (val != 0.0) op(base | (a ? mask : 0), base | (b ? mask : 0)) += val;
      }
  }
  return op;
}

Operator transposition_op(int x, int y, int n_vertices) {
  const auto dim = dim_for(n_vertices);
  if (x == y) throw std::invalid_argument("transposition needs distinct sites");
  Operator op = Operator::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    std::int64_t row = col;
    if (bit(col, x) != bit(col, y)) row = col ^ ((std::int64_t{1} << x) | (std::int64_t{1} << y));
    op(row, col) = 1.0;
  }
  return op;
}

Operator coupling_op(int x, int y, int n_vertices) {
  Operator op = spin_op(1, x, n_vertices) * spin_op(1, y, n_vertices);
  op += spin_op(2, x, n_vertices) * spin_op(2, y, n_vertices);
  op += spin_op(3, x, n_vertices) * spin_op(3, y, n_vertices);
  return op;
}

Operator magnetization_op(int n_vertices) {
  const auto dim = dim_for(n_vertices);
  Operator op = Operator::Zero(dim, dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    double m = 0.0;
    for (int x = 0; x < n_vertices; ++x) m += bit(s, x) ? -0.5 : 0.5;
    op(s, s) = m;
  }
  return op;
}

Operator hamiltonian(const Graph& g, Kind kind, double h) {
  const int n = g.vertex_count();
  const auto dim = dim_for(n);
  const double sign = kind == Kind::ferro ? -1.0 : 1.0;
  Operator op = Operator::Zero(dim, dim);
  for (const auto& e : g.edges()) op += sign * coupling_op(e.u, e.v, n);
  if (h != 0.0) op -= h * magnetization_op(n);
  return op;
}

bool is_hermitian(const Operator& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Spectrum diagonalize(const Operator& hermitian) {
  if (!is_hermitian(hermitian, 1e-10)) throw std::invalid_argument("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double log_partition_function(const Spectrum& spec, double beta) {
  const double e0 = spec.values.minCoeff();
  double z = 0.0;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i)
    z += std::exp(-beta * (spec.values[i] - e0));
  return -beta * e0 + std::log(z);
}

double free_energy(const Spectrum& spec, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return -log_partition_function(spec, beta) / beta;
}

double gibbs_expectation(const Operator& a, const Spectrum& spec, double beta) {
  const double e0 = spec.values.minCoeff();
  double z = 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    const double w = std::exp(-beta * (spec.values[i] - e0));
    z += w;
    const Complex diag = spec.vectors.col(i).dot(a * spec.vectors.col(i));
    acc += w * diag.real();
  }
  return acc / z;
}

double neel_energy(const Graph& g) {
  if (!g.bipartite()) throw std::invalid_argument("Neel state needs a bipartition");
  const int n = g.vertex_count();
  const auto dim = dim_for(n);
  // |Psi> = tensor of |+1/2> on A and |-1/2> on B: a single basis vector.
  std::int64_t idx = 0;
  for (int x = 0; x < n; ++x)
    if (g.side(x) == Sublattice::B) idx |= std::int64_t{1} << x;
  const Operator h = hamiltonian(g, Kind::anti, 0.0);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi[idx] = 1.0;
  return psi.dot(h * psi).real();
}

std::string IdentityReport::to_json() const {
  nlohmann::json j;
  j["graph"] = nlohmann::json::parse(graph_json);
  j["beta"] = beta;
  j["h"] = h;
  j["n_samples"] = n_samples;
  j["exact"] = exact;
  j["mc_estimate"] = mc_estimate;
  j["mc_stderr"] = mc_stderr;
  j["z_score"] = z_score;
  if (has_correlation) {
    j["correlation"] = {{"x", corr_x},       {"y", corr_y},           {"exact", corr_exact},
                        {"estimate", corr_estimate}, {"stderr", corr_stderr}, {"z_score", corr_z}};
  }
  return j.dump();
}

namespace {

IdentityReport verify_identity(const Graph& g, double beta, double h, std::size_t n_samples,
                               Rng& rng, Model model) {
  if (g.vertex_count() > 8)
    throw std::invalid_argument("identity checks are capped at 8 vertices");
  if (model == Model::loops && !g.bipartite())
    throw std::invalid_argument("loop identity needs a bipartite graph");

  IdentityReport rep;
  rep.graph_json = g.to_json();
  rep.beta = beta;
  rep.h = h;
  rep.n_samples = n_samples;

  const Kind kind = model == Model::cycles ? Kind::ferro : Kind::anti;
  const auto spec = diagonalize(hamiltonian(g, kind, h));
  rep.exact = std::exp(log_partition_function(spec, 2.0 * beta));

  // Correlation between the two ends of the edge list (h = 0 only).
  const int x = 0;
  const int y = g.vertex_count() - 1;
  rep.has_correlation = h == 0.0 && g.vertex_count() >= 2;
  if (rep.has_correlation) {
    const Operator sxsy = spin_op(3, x, g.vertex_count()) * spin_op(3, y, g.vertex_count());
    // staggered sign (-1)^x (-1)^y for the antiferromagnet
    const double sign =
        model == Model::loops && g.side(x) != g.side(y) ? -1.0 : 1.0;
    rep.corr_exact = sign * gibbs_expectation(sxsy, spec, 2.0 * beta);
    rep.corr_x = x;
    rep.corr_y = y;
  }

  // Monte Carlo side: weights of the Poisson bridge measure.
  double sum_w = 0.0, sum_w2 = 0.0, sum_wi = 0.0, sum_wi2 = 0.0, sum_w_wi = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto w = sample_rho(g, beta, rng);
    const auto dec = decompose(w, g, model);
    double weight = 1.0;
    for (const auto& obj : dec.objects()) {
      const double arg = model == Model::cycles ? h * obj.length : beta * h * obj.winding;
      weight *= 2.0 * std::cosh(arg);
    }
    sum_w += weight;
    sum_w2 += weight * weight;
    if (rep.has_correlation) {
      const double ind =
          dec.object_containing(x) == dec.object_containing(y) ? weight : 0.0;
      sum_wi += ind;
      sum_wi2 += ind * ind;
      sum_w_wi += weight * ind;
    }
  }
  const auto n = static_cast<double>(n_samples);
  const double mean_w = sum_w / n;
  const double var_w = (sum_w2 / n - mean_w * mean_w) * n / (n - 1.0);
  const double prefactor = std::exp(0.5 * beta * static_cast<double>(g.edge_count()));
  rep.mc_estimate = prefactor * mean_w;
  rep.mc_stderr = prefactor * std::sqrt(var_w / n);
  rep.z_score = rep.mc_stderr > 0.0 ? (rep.mc_estimate - rep.exact) / rep.mc_stderr : 0.0;

  if (rep.has_correlation) {
    // Ratio estimator of P(gamma_x = gamma_y) under the weighted measure;
    // the quantum side is 4 <S_x S_y> (with the staggered sign for loops).
    const double mean_wi = sum_wi / n;
    const double ratio = mean_wi / mean_w;
    rep.corr_estimate = 0.25 * ratio;
    // delta method on (sum_wi / sum_w)
    const double var_wi = (sum_wi2 / n - mean_wi * mean_wi) * n / (n - 1.0);
    const double cov = (sum_w_wi / n - mean_w * mean_wi) * n / (n - 1.0);
    const double var_ratio = (var_wi - 2.0 * ratio * cov + ratio * ratio * var_w) /
                             (mean_w * mean_w) / n;
    rep.corr_stderr = 0.25 * std::sqrt(std::max(0.0, var_ratio));
    rep.corr_z = rep.corr_stderr > 0.0 ? (rep.corr_estimate - rep.corr_exact) / rep.corr_stderr
                                       : 0.0;
  }
  return rep;
}

}  // namespace

IdentityReport verify_cycle_identity(const Graph& g, double beta, double h,
                                     std::size_t n_samples, Rng& rng) {
  return verify_identity(g, beta, h, n_samples, rng, Model::cycles);
}

IdentityReport verify_loop_identity(const Graph& g, double beta, double h,
                                    std::size_t n_samples, Rng& rng) {
  return verify_identity(g, beta, h, n_samples, rng, Model::loops);
}

}  // namespace loopsoup::oracle
