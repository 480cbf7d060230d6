#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmf/rational_matrix.hpp"
#include "rmf/refactorization.hpp"

namespace rmf {

struct InvariantReport {
  std::string invariant;
  double max_residual = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  uint64_t seed = 20240801;
  int rank2_instances = 60;
  int high_dim_instances = 12;
  int divisor_instances = 120;
  int factorization_instances = 24;
  int dpv_states = 10;
  int dpv_steps = 3;
  EtaForm eta_form = EtaForm::lemma33;
};

// Scales the per-section instance counts from a single headline count.
VerifyOptions scaled_options(int rank2_instances, uint64_t seed, EtaForm eta_form);

// Deterministic randomized battery over every module invariant. Single
// threaded; identical options give an identical report.
std::vector<InvariantReport> verify_random_suite(const VerifyOptions& opt);

// Invariants applicable to one given instance. Chart-dependent rows are
// omitted when the instance sits outside the chart (degenerate coordinates).
std::vector<InvariantReport> verify_instance(const RationalMatrixFunction& L,
                                             const VerifyOptions& opt);

}  // namespace rmf
