#include "graphcorr/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "graphcorr/rng.hpp"

namespace graphcorr {

namespace {

constexpr double kPmfTol = 1e-12;

// Sub-stream tags for derive_seed.
constexpr std::uint64_t kStreamMembership = 1;
constexpr std::uint64_t kStreamLatent = 2;
constexpr std::uint64_t kStreamSecondLatent = 3;
constexpr std::uint64_t kStreamEdges = 4;

std::string describe(double p, double q, double r) {
  std::ostringstream os;
  os.precision(17);
  os << "correlation r=" << r << " is not admissible for marginals p=" << p << ", q=" << q;
  return os.str();
}

bool degenerate(double x) { return x <= 0.0 || x >= 1.0; }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

Matrix standard_normal(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
  }
  return m;
}

Matrix evaluate_link(const LinkFunction& link, const Matrix& latent, std::size_t n) {
  const auto en = static_cast<Eigen::Index>(n);
  Matrix h(en, en);
  switch (link.kind) {
    case LinkKind::Cosine: {
      const Vector norms = latent.rowwise().norm();
      const Matrix gram = latent * latent.transpose();
      for (Eigen::Index i = 0; i < en; ++i) {
        for (Eigen::Index j = 0; j < en; ++j) {
          const double denom = norms(i) * norms(j);
          h(i, j) = denom > 0.0 ? std::abs(gram(i, j)) / denom : 0.0;
        }
      }
      break;
    }
    case LinkKind::Gaussian:
      for (Eigen::Index i = 0; i < en; ++i) {
        for (Eigen::Index j = 0; j < en; ++j) {
          h(i, j) = std::exp(-(latent.row(i) - latent.row(j)).squaredNorm());
        }
      }
      break;
    case LinkKind::Table:
      if (link.table.rows() != en || link.table.cols() != en) {
        throw std::invalid_argument("link table must be n x n");
      }
      h = link.table;
      break;
  }
  return link.scale * h;
}

}  // namespace

InvalidCorrelation::InvalidCorrelation(double p, double q, double r)
    : std::invalid_argument(describe(p, q, r)) {}

InvalidCorrelation::InvalidCorrelation(std::size_t i, std::size_t j, double p, double q, double r)
    : std::invalid_argument("pair (" + std::to_string(i) + "," + std::to_string(j) +
                            "): " + describe(p, q, r)) {}

double JointEdgeDistribution::correlation() const noexcept {
  const double pa = marginal_a();
  const double pb = marginal_b();
  const double var = pa * (1.0 - pa) * pb * (1.0 - pb);
  if (var <= 0.0) return 0.0;
  return (p11 - pa * pb) / std::sqrt(var);
}

std::optional<JointEdgeDistribution> try_joint_pmf(double p, double q, double r) noexcept {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0 && r >= -1.0 && r <= 1.0)) {
    return std::nullopt;
  }
  if ((degenerate(p) || degenerate(q)) && r != 0.0) return std::nullopt;
  const double shared = r * std::sqrt(p * (1.0 - p) * q * (1.0 - q));
  JointEdgeDistribution d{p * q + shared, p * (1.0 - q) - shared, (1.0 - p) * q - shared,
                          (1.0 - p) * (1.0 - q) + shared};
  for (double* v : {&d.p11, &d.p10, &d.p01, &d.p00}) {
    if (*v < -kPmfTol || *v > 1.0 + kPmfTol) return std::nullopt;
    *v = clamp01(*v);
  }
  return d;
}

JointEdgeDistribution joint_pmf(double p, double q, double r) {
  if (auto d = try_joint_pmf(p, q, r)) return *d;
  throw InvalidCorrelation(p, q, r);
}

CorrelationBounds correlation_bounds(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("correlation_bounds: marginals must lie in [0, 1]");
  }
  if (degenerate(p) || degenerate(q)) return {0.0, 0.0};
  const double same = (p * q) / ((1.0 - p) * (1.0 - q));
  const double cross = (p * (1.0 - q)) / (q * (1.0 - p));
  return {-std::sqrt(std::min(same, 1.0 / same)), std::sqrt(std::min(cross, 1.0 / cross))};
}

GraphPair sample_pair(const ProbMatrix& p, const ProbMatrix& q, const CorrMatrix& r,
                      std::uint64_t seed) {
  const std::size_t n = p.size();
  if (q.size() != n) throw DimensionMismatch(n, q.size());
  if (r.size() != n) throw DimensionMismatch(n, r.size());

  // Cumulative thresholds (p11, p11+p10, p11+p10+p01) per upper-triangular pair.
  std::vector<double> cuts;
  cuts.reserve(3 * n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto d = try_joint_pmf(p(i, j), q(i, j), r(i, j));
      if (!d) throw InvalidCorrelation(i, j, p(i, j), q(i, j), r(i, j));
      cuts.push_back(d->p11);
      cuts.push_back(d->p11 + d->p10);
      cuts.push_back(d->p11 + d->p10 + d->p01);
    }
  }

  Rng rng = make_rng(seed);
  AdjacencyMatrix a(n);
  AdjacencyMatrix b(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, k += 3) {
      const double u = uniform01(rng);
      if (u < cuts[k]) {
        a.set_edge(i, j);
        b.set_edge(i, j);
      } else if (u < cuts[k + 1]) {
        a.set_edge(i, j);
      } else if (u < cuts[k + 2]) {
        b.set_edge(i, j);
      }
    }
  }
  return GraphPair(std::move(a), std::move(b));
}

GraphPair sample_pair(const ProbMatrix& p, const CorrMatrix& r, std::uint64_t seed) {
  return sample_pair(p, p, r, seed);
}

AdjacencyMatrix sample_graph(const ProbMatrix& p, std::uint64_t seed) {
  const std::size_t n = p.size();
  Rng rng = make_rng(seed);
  AdjacencyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p(i, j)) g.set_edge(i, j);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

SbmSpec SbmSpec::banded(std::size_t n, std::size_t blocks, double r) {
  if (blocks == 0) throw std::invalid_argument("SbmSpec::banded: need at least one block");
  SbmSpec spec;
  spec.n = n;
  spec.blocks = blocks;
  const auto k = static_cast<Eigen::Index>(blocks);
  const double kd = static_cast<double>(blocks);
  spec.theta_p.resize(k, k);
  spec.theta_q.resize(k, k);
  spec.theta_r.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double gap = static_cast<double>(std::abs(i - j));
      spec.theta_p(i, j) = 0.45 - gap / (2.0 * kd);
      spec.theta_q(i, j) = 0.4 - gap / (2.0 * kd + 2.0);
      spec.theta_r(i, j) = r * (1.0 - gap / kd);
    }
  }
  return spec;
}

void SbmSpec::validate() const {
  const auto k = static_cast<Eigen::Index>(blocks);
  if (blocks == 0) throw std::invalid_argument("SbmSpec: need at least one block");
  for (const Matrix* m : {&theta_p, &theta_q, &theta_r}) {
    if (m->rows() != k || m->cols() != k) {
      throw std::invalid_argument("SbmSpec: block matrices must be blocks x blocks");
    }
    if ((*m - m->transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("SbmSpec: block matrices must be symmetric");
    }
  }
  if (theta_p.minCoeff() < 0.0 || theta_p.maxCoeff() > 1.0 || theta_q.minCoeff() < 0.0 ||
      theta_q.maxCoeff() > 1.0) {
    throw std::invalid_argument("SbmSpec: block probabilities must lie in [0, 1]");
  }
  if (theta_r.minCoeff() < -1.0 || theta_r.maxCoeff() > 1.0) {
    throw std::invalid_argument("SbmSpec: block correlations must lie in [-1, 1]");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("SbmSpec: rho must lie in [0, 1]");
  if (membership) {
    if (membership->size() != n) throw DimensionMismatch(n, membership->size());
    for (auto label : *membership) {
      if (label >= blocks) throw std::invalid_argument("SbmSpec: membership label out of range");
    }
  }
}

SbmModel expand_sbm(const SbmSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::vector<std::size_t> labels;
  if (spec.membership) {
    labels = *spec.membership;
  } else {
    Rng rng = make_rng(derive_seed(seed, kStreamMembership));
    std::uniform_int_distribution<std::size_t> pick(0, spec.blocks - 1);
    labels.resize(spec.n);
    for (auto& l : labels) l = pick(rng);
  }
  const auto en = static_cast<Eigen::Index>(spec.n);
  Matrix p(en, en), q(en, en), r(en, en);
  for (Eigen::Index i = 0; i < en; ++i) {
    const auto ki = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < en; ++j) {
      const auto kj = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(j)]);
      p(i, j) = spec.rho * spec.theta_p(ki, kj);
      q(i, j) = spec.rho * spec.theta_q(ki, kj);
      r(i, j) = i == j ? 0.0 : spec.theta_r(ki, kj);
    }
  }
  return {ProbMatrix(std::move(p)), ProbMatrix(std::move(q)), CorrMatrix(std::move(r)),
          std::move(labels)};
}

SbmDraw sample_sbm_pair(const SbmSpec& spec, std::uint64_t seed) {
  SbmModel model = expand_sbm(spec, seed);
  return {sample_pair(model.p, model.q, model.r, derive_seed(seed, kStreamEdges)),
          std::move(model.labels)};
}

// ---------------------------------------------------------------------------

GraphonModel build_graphon_model(const GraphonSpec& spec, std::uint64_t seed) {
  if (spec.latent_dim == 0) throw std::invalid_argument("GraphonSpec: latent_dim must be positive");
  if (!(spec.rho >= 0.0 && spec.rho <= 1.0) || !(spec.gamma >= 0.0 && spec.gamma <= 1.0)) {
    throw std::invalid_argument("GraphonSpec: rho and gamma must lie in [0, 1]");
  }
  const std::size_t n = spec.n;
  const auto en = static_cast<Eigen::Index>(n);

  Rng latent_rng = make_rng(derive_seed(seed, kStreamLatent));
  const Matrix latent = standard_normal(n, spec.latent_dim, latent_rng);
  ProbMatrix p(spec.rho * evaluate_link(spec.link, latent, n));

  ProbMatrix q = p;
  if (spec.second_link) {
    if (spec.independent_second_latent) {
      Rng second_rng = make_rng(derive_seed(seed, kStreamSecondLatent));
      const Matrix second = standard_normal(n, spec.latent_dim, second_rng);
      q = ProbMatrix(spec.rho * evaluate_link(*spec.second_link, second, n));
    } else {
      q = ProbMatrix(spec.rho * evaluate_link(*spec.second_link, latent, n));
    }
  }

  Matrix r(en, en);
  const auto& g = spec.correlation;
  if (g.kind == CorrelationFunction::Kind::Table &&
      (g.table.rows() != en || g.table.cols() != en)) {
    throw std::invalid_argument("correlation table must be n x n");
  }
  for (Eigen::Index i = 0; i < en; ++i) {
    for (Eigen::Index j = 0; j < en; ++j) {
      if (i == j) {
        r(i, j) = 0.0;
        continue;
      }
      double value = spec.gamma * (g.kind == CorrelationFunction::Kind::Constant ? g.value
                                                                                : g.table(i, j));
      if (spec.clamp_correlation) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        const auto bounds = correlation_bounds(p(ui, uj), q(ui, uj));
        value = std::clamp(value, bounds.lo, bounds.hi);
      } else if (i < j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        if (!try_joint_pmf(p(ui, uj), q(ui, uj), value)) {
          throw InvalidCorrelation(ui, uj, p(ui, uj), q(ui, uj), value);
        }
      }
      r(i, j) = value;
    }
  }
  return {std::move(p), std::move(q), CorrMatrix(std::move(r))};
}

GraphonDraw sample_graphon_pair(const GraphonSpec& spec, std::uint64_t seed) {
  GraphonModel model = build_graphon_model(spec, seed);
  GraphPair pair = sample_pair(model.p, model.q, model.r, derive_seed(seed, kStreamEdges));
  return {std::move(pair), std::move(model)};
}

// ---------------------------------------------------------------------------

PlantedClique sample_planted_clique(std::size_t n, double p, std::size_t s0, std::uint64_t seed) {
  if (s0 > n) throw std::invalid_argument("sample_planted_clique: clique larger than graph");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_planted_clique: p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  AdjacencyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) g.set_edge(i, j);
    }
  }
  std::vector<std::size_t> vertices(n);
  std::iota(vertices.begin(), vertices.end(), std::size_t{0});
  std::vector<std::size_t> clique;
  clique.reserve(s0);
  std::sample(vertices.begin(), vertices.end(), std::back_inserter(clique), s0, rng);
  std::sort(clique.begin(), clique.end());
  for (std::size_t x = 0; x < clique.size(); ++x) {
    for (std::size_t y = x + 1; y < clique.size(); ++y) g.set_edge(clique[x], clique[y]);
  }
  return {std::move(g), std::move(clique)};
}

GraphPair planted_clique_to_pair(const AdjacencyMatrix& s, std::uint64_t seed) {
  const std::size_t n = s.size();
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  AdjacencyMatrix a(n);
  AdjacencyMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool heads = coin(rng);
      if (s(i, j)) {
        (heads ? a : b).set_edge(i, j);
      } else if (heads) {
        a.set_edge(i, j);
        b.set_edge(i, j);
      }
    }
  }
  return GraphPair(std::move(a), std::move(b));
}

AdjacencyMatrix pair_to_clique_instance(const GraphPair& pair) { return abs_diff(pair.a, pair.b); }

CorrMatrix planted_clique_correlation(std::size_t n, const std::vector<std::size_t>& clique) {
  const auto en = static_cast<Eigen::Index>(n);
  Matrix r = Matrix::Zero(en, en);
  for (auto u : clique) {
    if (u >= n) throw std::out_of_range("planted_clique_correlation: vertex out of range");
    for (auto v : clique) {
      if (u != v) r(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = -1.0;
    }
  }
  return CorrMatrix(std::move(r));
}

CorrMatrix rademacher_R(std::size_t n, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("rademacher_R: eps must lie in [0, 1]");
  const auto en = static_cast<Eigen::Index>(n);
  Matrix r = Matrix::Zero(en, en);
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (Eigen::Index i = 0; i < en; ++i) {
    for (Eigen::Index j = i + 1; j < en; ++j) {
      const double v = coin(rng) ? eps : -eps;
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return CorrMatrix(std::move(r));
}

CorrMatrix two_group_correlation(std::size_t n, double r, std::uint64_t seed) {
  if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("two_group_correlation: r must lie in [-1, 1]");
  std::vector<int> sigma(n, -1);
  std::fill(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
  Rng rng = make_rng(seed);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  const auto en = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(en, en);
  for (Eigen::Index i = 0; i < en; ++i) {
    for (Eigen::Index j = 0; j < en; ++j) {
      if (i != j && sigma[static_cast<std::size_t>(i)] == sigma[static_cast<std::size_t>(j)]) {
        m(i, j) = r;
      }
    }
  }
  return CorrMatrix(std::move(m));
}

}  // namespace graphcorr
