#include "geoprod/ode_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace geoprod {

namespace {

Vector bracket_coeffs(const LieAlgebraBasis& alg, const Vector& x, const Vector& y) {
  Vector out = Vector::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * (alg.ad_of_basis(i) * y);
  }
  return out;
}

Matrix polar_factor(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

OrbitMap::OrbitMap(int ambient, int stabilizer_block,
                   const std::vector<Matrix>& stabilizer_generators)
    : ambient_(ambient), block_(stabilizer_block) {
  if (ambient < 1 || stabilizer_block < 0 || stabilizer_block >= ambient) {
    throw DimensionError("OrbitMap: need 0 <= block < ambient");
  }
  const int anchored = ambient_ - block_;
  for (const auto& gen : stabilizer_generators) {
    if (gen.rows() != ambient_ || gen.cols() != ambient_) {
      throw DimensionError("OrbitMap: stabilizer generator has wrong size");
    }
    const Matrix h = mat_exp(gen);
    const double moved =
        (h.leftCols(anchored) - Matrix::Identity(ambient_, ambient_).leftCols(anchored))
            .cwiseAbs()
            .maxCoeff();
    if (moved > 1e-11) {
      throw DomainError("OrbitMap: stabilizer moves an anchored column by " +
                        std::to_string(moved));
    }
  }
}

double OrbitMap::coset_distance(const Matrix& a, const Matrix& b) const {
  if (a.rows() != ambient_ || b.rows() != ambient_) {
    throw ComparisonError("OrbitMap: matrices from a different space");
  }
  const int anchored = anchored_columns();
  return (a.leftCols(anchored) - b.leftCols(anchored)).cwiseAbs().maxCoeff();
}

OrbitMap orbit_map_for_split(const ReductiveSplit& split) {
  const auto& alg = *split.form.algebra();
  const int n = alg.ambient();
  // Infer the stabilizer block from the h-basis footprint: rows/columns
  // outside the trailing block must vanish on every h element.
  int block = 0;
  std::vector<Matrix> gens;
  gens.reserve(split.h_dim());
  for (int a = 0; a < split.h_dim(); ++a) {
    const Matrix ha = alg.from_coeffs(split.h_basis.col(a));
    gens.push_back(ha);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (std::abs(ha(r, c)) > 1e-14) {
          block = std::max(block, n - std::min(r, c));
        }
      }
    }
  }
  return OrbitMap(n, block, gens);
}

OdePath integrate_horizontal(const ChainMetric& cm, const Vector& v, const OdeConfig& cfg) {
  const auto& split = cm.split();
  const auto algebra = split.form.algebra();
  if (!(cfg.step > 0.0) || !(cfg.t_max >= 0.0)) {
    throw ConfigError("integrate_horizontal: step and horizon must be positive");
  }
  if (cfg.step * split.form.norm(v) > 0.1) {
    throw ConfigError("integrate_horizontal: stability guard step * |v| <= 0.1 violated");
  }
  // Domain check (and h-component rejection) up front.
  Vector w = split.proj_m * v;
  if (split.form.norm(w - v) > tol::domain * std::max(1.0, split.form.norm(v))) {
    throw DomainError("integrate_horizontal: velocity must lie in m");
  }

  const int amb = algebra->ambient();
  const Matrix& pm = split.proj_m;

  auto omega_rhs = [&](const Vector& wm) -> Vector {
    return apply_A_inv(cm, pm * bracket_coeffs(*algebra, apply_A(cm, wm), wm));
  };

  const long full_steps = static_cast<long>(std::floor(cfg.t_max / cfg.step + 1e-9));
  const double tail = cfg.t_max - static_cast<double>(full_steps) * cfg.step;

  OdePath path;
  path.ts.reserve(full_steps + 2);
  path.alphas.reserve(full_steps + 2);
  path.omegas.reserve(full_steps + 2);

  Matrix alpha = Matrix::Identity(amb, amb);
  double t = 0.0;
  path.ts.push_back(t);
  path.alphas.push_back(alpha);
  path.omegas.push_back(w);

  auto rk4_step = [&](double h) {
    const Vector k1w = omega_rhs(w);
    const Matrix k1a = alpha * algebra->from_coeffs(w);

    const Vector w2 = w + 0.5 * h * k1w;
    const Vector k2w = omega_rhs(w2);
    const Matrix k2a = (alpha + 0.5 * h * k1a) * algebra->from_coeffs(w2);

    const Vector w3 = w + 0.5 * h * k2w;
    const Vector k3w = omega_rhs(w3);
    const Matrix k3a = (alpha + 0.5 * h * k2a) * algebra->from_coeffs(w3);

    const Vector w4 = w + h * k3w;
    const Vector k4w = omega_rhs(w4);
    const Matrix k4a = (alpha + h * k3a) * algebra->from_coeffs(w4);

    w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    alpha += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
  };

  for (long s = 1; s <= full_steps; ++s) {
    rk4_step(cfg.step);
    t = static_cast<double>(s) * cfg.step;
    if (cfg.reorth_interval > 0 && s % cfg.reorth_interval == 0) {
      alpha = polar_factor(alpha);
    }
    path.ts.push_back(t);
    path.alphas.push_back(alpha);
    path.omegas.push_back(w);
  }
  if (tail > 1e-12) {
    rk4_step(tail);
    path.ts.push_back(cfg.t_max);
    path.alphas.push_back(alpha);
    path.omegas.push_back(w);
  }
  return path;
}

PathComparison compare_paths(const ProductCurve& pc, const OdePath& path, const OrbitMap& om) {
  const auto algebra = pc.generators().metric.split().form.algebra();
  if (algebra->ambient() != om.ambient() ||
      (!path.alphas.empty() && path.alphas.front().rows() != om.ambient())) {
    throw ComparisonError("compare_paths: curve, path and orbit map live in different spaces");
  }
  PathComparison result;
  result.per_sample.reserve(path.ts.size());
  for (size_t s = 0; s < path.ts.size(); ++s) {
    const double d = om.coset_distance(pc.eval(path.ts[s]).matrix, path.alphas[s]);
    result.per_sample.emplace_back(path.ts[s], d);
    result.max_deviation = std::max(result.max_deviation, d);
  }
  return result;
}

BenchResult bench(const ChainMetric& cm, const OrbitMap& om, const Vector& v,
                  const std::vector<double>& t_samples, const OdeConfig& cfg) {
  using clock = std::chrono::steady_clock;
  BenchResult result;
  result.samples = static_cast<int>(t_samples.size());

  const auto t0 = clock::now();
  const ProductCurve curve(generators_from_velocity(cm, v));
  double sink = 0.0;
  for (double t : t_samples) sink += curve.eval(t).matrix(0, 0);
  const auto t1 = clock::now();
  result.closed_form_seconds = std::chrono::duration<double>(t1 - t0).count();
  (void)sink;

  double horizon = 0.0;
  for (double t : t_samples) horizon = std::max(horizon, t);
  OdeConfig run = cfg;
  run.t_max = horizon;

  const auto t2 = clock::now();
  const OdePath path = integrate_horizontal(cm, v, run);
  const auto t3 = clock::now();
  result.ode_seconds = std::chrono::duration<double>(t3 - t2).count();

  // Deviation is measured at the path samples nearest the requested times,
  // with the closed form evaluated at the exact same instants.
  for (double t : t_samples) {
    const long k = std::lround(t / run.step);
    const size_t idx = static_cast<size_t>(std::clamp<long>(k, 0, static_cast<long>(path.ts.size()) - 1));
    const double snapped = path.ts[idx];
    result.deviation = std::max(
        result.deviation, om.coset_distance(curve.eval(snapped).matrix, path.alphas[idx]));
  }
  return result;
}

}  // namespace geoprod
