#include "congruent/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace congruent::kernels {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

namespace {

DirectionOutcome certify_one(const BodyPair& pair, const Vec& xi, Group group,
                             const SubsphereLattice& lattice) {
  DirectionOutcome out;
  try {
    out.certificate = certify_direction(pair, xi, group, lattice);
  } catch (const Error& e) {
    out.error_kind = e.kind();
    out.error = e.what();
  }
  return out;
}

// Boundary points and outward unit normals of a radial-flavor body, stored
// row-major as [i * n + k].
struct BoundaryCloud {
  int n = 0;
  std::vector<double> points;
  std::vector<double> normals;
};

double gauge(const BodySpec& body, const Vec& x) {
  const double r = norm(x);
  return r / body.value((1.0 / r) * x);
}

void fill_boundary_point(const BodySpec& body, const Vec& theta, BoundaryCloud& cloud,
                         std::size_t i) {
  const int n = cloud.n;
  const Vec p = body.value(theta) * theta;
  const double h = 1e-6 * norm(p);
  Vec grad(n);
  for (int k = 0; k < n; ++k) {
    Vec plus = p;
    Vec minus = p;
    plus[k] += h;
    minus[k] -= h;
    grad[k] = (gauge(body, plus) - gauge(body, minus)) / (2.0 * h);
  }
  const Vec nu = (1.0 / norm(grad)) * grad;
  for (int k = 0; k < n; ++k) {
    cloud.points[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = p[k];
    cloud.normals[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = nu[k];
  }
}

// max_j ⟨p_j − p_i, ν_i⟩ for one i.
double support_excess(const BoundaryCloud& c, std::size_t i, std::size_t count) {
  const auto n = static_cast<std::size_t>(c.n);
  const double* nu = c.normals.data() + i * n;
  const double* pi = c.points.data() + i * n;
  double self = 0.0;
  for (std::size_t k = 0; k < n; ++k) self += pi[k] * nu[k];
  double best = self;
  for (std::size_t j = 0; j < count; ++j) {
    const double* pj = c.points.data() + j * n;
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += pj[k] * nu[k];
    best = std::max(best, s);
  }
  return best - self;
}

// max_{j > i} H(u_i + u_j) − h(u_i) − h(u_j) for one i.
double subadditivity_excess(const BodySpec& body, std::span<const Vec> dirs,
                            std::span<const double> values, std::size_t i) {
  double worst = 0.0;
  for (std::size_t j = i + 1; j < dirs.size(); ++j) {
    const Vec w = dirs[i] + dirs[j];
    const double len = norm(w);
    if (len < 1e-12) continue;
    const double sum = len * body.value((1.0 / len) * w);
    worst = std::max(worst, sum - values[i] - values[j]);
  }
  return worst;
}

}  // namespace

std::vector<DirectionOutcome> sweep_directions_serial(const BodyPair& pair,
                                                      std::span<const Vec> directions,
                                                      Group group,
                                                      const SubsphereLattice& lattice) {
  std::vector<DirectionOutcome> out(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    out[i] = certify_one(pair, directions[i], group, lattice);
  }
  return out;
}

std::vector<DirectionOutcome> sweep_directions_omp(const BodyPair& pair,
                                                   std::span<const Vec> directions, Group group,
                                                   const SubsphereLattice& lattice, int threads) {
  std::vector<DirectionOutcome> out(directions.size());
  const auto count = static_cast<std::int64_t>(directions.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        certify_one(pair, directions[static_cast<std::size_t>(i)], group, lattice);
  }
  return out;
}

double radial_convexity_serial(const BodySpec& body, std::span<const Vec> directions) {
  BoundaryCloud cloud{body.dim(), std::vector<double>(directions.size() * body.dim()),
                      std::vector<double>(directions.size() * body.dim())};
  for (std::size_t i = 0; i < directions.size(); ++i) {
    fill_boundary_point(body, directions[i], cloud, i);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    worst = std::max(worst, support_excess(cloud, i, directions.size()));
  }
  return worst;
}

double radial_convexity_omp(const BodySpec& body, std::span<const Vec> directions, int threads) {
  BoundaryCloud cloud{body.dim(), std::vector<double>(directions.size() * body.dim()),
                      std::vector<double>(directions.size() * body.dim())};
  const auto count = static_cast<std::int64_t>(directions.size());
  const int nt = resolve_threads(threads);
  double worst = 0.0;
#pragma omp parallel num_threads(nt)
  {
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      fill_boundary_point(body, directions[static_cast<std::size_t>(i)], cloud,
                          static_cast<std::size_t>(i));
    }
#pragma omp for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < count; ++i) {
      worst = std::max(worst, support_excess(cloud, static_cast<std::size_t>(i),
                                             directions.size()));
    }
  }
  return worst;
}

double support_convexity_serial(const BodySpec& body, std::span<const Vec> directions) {
  std::vector<double> values(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) values[i] = body.value(directions[i]);
  double worst = 0.0;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    worst = std::max(worst, subadditivity_excess(body, directions, values, i));
  }
  return worst;
}

double support_convexity_omp(const BodySpec& body, std::span<const Vec> directions, int threads) {
  std::vector<double> values(directions.size());
  const auto count = static_cast<std::int64_t>(directions.size());
  const int nt = resolve_threads(threads);
  double worst = 0.0;
#pragma omp parallel num_threads(nt)
  {
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      values[static_cast<std::size_t>(i)] = body.value(directions[static_cast<std::size_t>(i)]);
    }
#pragma omp for schedule(dynamic, 16) reduction(max : worst)
    for (std::int64_t i = 0; i < count; ++i) {
      worst = std::max(worst,
                       subadditivity_excess(body, directions, values, static_cast<std::size_t>(i)));
    }
  }
  return worst;
}

}  // namespace congruent::kernels
