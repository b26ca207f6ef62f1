#pragma once

// Data-parallel hot loops. Each kernel has a serial reference and an OpenMP
// version; both produce bit-identical results for any thread count (per-item
// work is independent and reductions are max, which is order-free).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "congruent/congruence.hpp"
#include "congruent/error.hpp"

namespace congruent::kernels {

/// Either a certificate or the error that stopped this direction.
struct DirectionOutcome {
  std::optional<CongruenceCertificate> certificate;
  ErrorKind error_kind = ErrorKind::kInvalidInput;
  std::string error;
};

std::vector<DirectionOutcome> sweep_directions_serial(const BodyPair& pair,
                                                      std::span<const Vec> directions,
                                                      Group group,
                                                      const SubsphereLattice& lattice);

/// threads ≤ 0 uses the OpenMP default.
std::vector<DirectionOutcome> sweep_directions_omp(const BodyPair& pair,
                                                   std::span<const Vec> directions, Group group,
                                                   const SubsphereLattice& lattice, int threads);

double radial_convexity_serial(const BodySpec& body, std::span<const Vec> directions);
double radial_convexity_omp(const BodySpec& body, std::span<const Vec> directions, int threads);

double support_convexity_serial(const BodySpec& body, std::span<const Vec> directions);
double support_convexity_omp(const BodySpec& body, std::span<const Vec> directions, int threads);

/// Thread count actually used by the OpenMP kernels for a `threads` request.
int resolve_threads(int threads);

}  // namespace congruent::kernels
