#include "drsplit/mono_check.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "drsplit/errors.hpp"
#include "drsplit/operator_json.hpp"

namespace drsplit {

double cycle_sum(const std::vector<Vector>& points, const std::vector<Vector>& values) {
  if (points.size() != values.size() || points.size() < 2) {
    throw Error(ErrorCode::LengthMismatch, "cycle needs n >= 2 points and as many values");
  }
  const Index dim = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim || values[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "cycle points and values must share one dimension");
    }
  }
  double sum = 0.0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum += (points[(i + 1) % n] - points[i]).dot(values[i]);
  }
  return sum;
}

CycleWitness skew_three_cycle(const Matrix& C, const Vector& a1, const Vector& b1) {
  if (C.size() == 0 || C.isZero(0.0)) throw Error(ErrorCode::ZeroCoupling, "coupling C must be nonzero");
  if (a1.size() != C.cols() || b1.size() != C.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "a1 must match columns of C and b1 its rows");
  }
  const Index n1 = C.cols();
  const Index n2 = C.rows();
  auto stack = [&](const Vector& a, const Vector& b) {
    Vector x(n1 + n2);
    x << a, b;
    return x;
  };
  // S x = (-C^T b, C a) for the A = B = 0 block operator.
  auto apply = [&](const Vector& x) { return stack(-C.transpose() * x.tail(n2), C * x.head(n1)); };

  const Vector ca = C * a1;
  const Vector ctca = C.transpose() * ca;
  const Vector ctb = C.transpose() * b1;
  const Vector cctb = C * ctb;

  CycleWitness w;
  w.points = {stack(a1, b1), stack(-ctb, ca), stack(-ctca, -cctb)};
  for (const Vector& x : w.points) w.values.push_back(apply(x));
  w.cycle_sum = cycle_sum(w.points, w.values);
  w.xi = ca.squaredNorm() + ctca.squaredNorm() + ctb.squaredNorm() + cctb.squaredNorm();
  return w;
}

namespace {

// Independent stream per (seed, cycle length, trial).
std::mt19937_64 substream(std::uint64_t seed, int length, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(length), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

CycleWitness sample_one(const OperatorSpec& op, Index dim, int length, int trial, std::uint64_t seed) {
  auto rng = substream(seed, length, trial);
  std::normal_distribution<double> gauss;
  CycleWitness w;
  for (int i = 0; i < length; ++i) {
    Vector z(dim);
    for (Index k = 0; k < dim; ++k) z(k) = gauss(rng);
    Vector p = resolve(op, 1.0, z);
    w.values.push_back(z - p);
    w.points.push_back(std::move(p));
  }
  w.cycle_sum = cycle_sum(w.points, w.values);
  return w;
}

// First violating trial in [begin, end), if any.
std::optional<std::pair<int, CycleWitness>> scan(const OperatorSpec& op, Index dim, int length, int begin,
                                                 int end, std::uint64_t seed) {
  for (int t = begin; t < end; ++t) {
    CycleWitness w = sample_one(op, dim, length, t, seed);
    if (w.certifies_violation()) return std::make_pair(t, std::move(w));
  }
  return std::nullopt;
}

}  // namespace

std::optional<CycleWitness> sample_cycles(const OperatorSpec& op, int n_max, int trials, std::uint64_t seed,
                                          const SamplingOptions& options) {
  if (n_max < 2 || trials <= 0) throw Error(ErrorCode::InvalidArgument, "need n_max >= 2 and trials > 0");
  const auto own = op.dimension();
  if (own && options.dim && *own != *options.dim) {
    throw Error(ErrorCode::DimensionMismatch, "sampling dimension disagrees with operator");
  }
  if (!own && !options.dim) {
    throw Error(ErrorCode::UnsupportedSampling, "dimension-agnostic operator needs a sampling dimension");
  }
  const Index dim = own ? *own : *options.dim;
  const unsigned workers = std::max(1u, options.workers);

  for (int length = 2; length <= n_max; ++length) {
    if (workers == 1) {
      if (auto hit = scan(op, dim, length, 0, trials, seed)) return std::move(hit->second);
      continue;
    }
    std::vector<std::future<std::optional<std::pair<int, CycleWitness>>>> jobs;
    const int chunk = (trials + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (int begin = 0; begin < trials; begin += chunk) {
      const int end = std::min(trials, begin + chunk);
      jobs.push_back(std::async(std::launch::async, scan, std::cref(op), dim, length, begin, end, seed));
    }
    std::optional<std::pair<int, CycleWitness>> best;
    for (auto& job : jobs) {
      auto hit = job.get();
      if (hit && (!best || hit->first < best->first)) best = std::move(hit);
    }
    if (best) return std::move(best->second);
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Proximal: return "Proximal";
    case Verdict::NotProximal: return "NotProximal";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

ResolventClassification classify_resolvent(const Matrix& T) {
  if (T.rows() != T.cols() || T.size() == 0) throw Error(ErrorCode::DimensionMismatch, "T must be square");
  auto t_inv = try_inverse(T);
  if (!t_inv) throw Error(ErrorCode::SingularMatrix, "T is singular and cannot be a resolvent of a linear map");
  const Index n = T.rows();

  ResolventClassification c;
  c.recovered_M = *t_inv - Matrix::Identity(n, n);
  c.symmetry_defect = symmetry_defect(c.recovered_M);
  c.min_sym_eigenvalue = min_symmetric_eigenvalue(c.recovered_M);
  if (!has_psd_symmetric_part(c.recovered_M, 1e-8, 1.0)) {
    throw Error(ErrorCode::NonMonotone, "T^{-1} - I has an indefinite symmetric part");
  }
  if (n == 1 || c.symmetry_defect <= 1e-8) {
    c.verdict = Verdict::Proximal;
  } else if (c.symmetry_defect > 1e-6) {
    c.verdict = Verdict::NotProximal;
  } else {
    c.verdict = Verdict::Inconclusive;
  }
  return c;
}

Matrix drs_map_matrix(const DrsProblem& p, std::optional<Index> dim) {
  p.validate();
  const auto own = p.dimension();
  if (own && dim && *own != *dim) throw Error(ErrorCode::DimensionMismatch, "dimension disagrees with problem");
  if (!own && !dim) throw Error(ErrorCode::InvalidArgument, "dimension-agnostic problem needs an explicit dimension");
  const Index n = own ? *own : *dim;

  Matrix T(n, n);
  for (Index j = 0; j < n; ++j) T.col(j) = drs_step(p, Vector::Unit(n, j));

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> gauss(0.0, 10.0);
  for (int probe = 0; probe < 10; ++probe) {
    Vector x(n);
    for (Index k = 0; k < n; ++k) x(k) = gauss(rng);
    if ((drs_step(p, x) - T * x).norm() > 1e-10 * std::max(1.0, x.norm())) {
      throw Error(ErrorCode::NotLinear, "DRS map is not linear for this operator pair");
    }
  }
  return T;
}

bool inverse_preserves_cyclic(const Matrix& M) {
  if (M.rows() != M.cols() || M.size() == 0) throw Error(ErrorCode::NotSymmetricPD, "M must be square");
  if ((M - M.transpose()).norm() > 1e-10 * std::max(1.0, M.norm())) {
    throw Error(ErrorCode::NotSymmetricPD, "M is not symmetric");
  }
  if (!(min_symmetric_eigenvalue(M) > 0.0)) throw Error(ErrorCode::NotSymmetricPD, "M is not positive definite");
  auto inv = try_inverse(M);
  if (!inv) throw Error(ErrorCode::NotSymmetricPD, "M is numerically singular");
  return symmetry_defect(*inv) <= 1e-8 && min_symmetric_eigenvalue(*inv) > 0.0;
}

nlohmann::json to_json(const CycleWitness& w) {
  nlohmann::json points = nlohmann::json::array();
  nlohmann::json values = nlohmann::json::array();
  for (const Vector& x : w.points) points.push_back(vector_to_json(x));
  for (const Vector& u : w.values) values.push_back(vector_to_json(u));
  nlohmann::json j{{"n", w.n()}, {"points", std::move(points)}, {"values", std::move(values)},
                   {"cycle_sum", w.cycle_sum}};
  if (w.xi) j["xi"] = *w.xi;
  return j;
}

nlohmann::json to_json(const ResolventClassification& c) {
  return {{"recovered_M", matrix_to_json(c.recovered_M)},
          {"symmetry_defect", c.symmetry_defect},
          {"min_sym_eigenvalue", c.min_sym_eigenvalue},
          {"verdict", std::string(to_string(c.verdict))}};
}

}  // namespace drsplit
