#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsk/field.hpp"

namespace bsk {

/// Sampling resolution for the grid-based suprema and outer integrals.
struct ModulusGrid {
  int window_points = 257;  // samples per axis of a local-modulus window
  int h_points = 65;        // shift samples per axis on [0, delta]
  int x_cells = 64;         // composite pieces per axis of outer integrals
  int x_order = 4;          // Gauss nodes per piece

  /// Defaults shrink with d so d = 2, 3 stay at desk scale.
  static ModulusGrid for_dimension(int d);
  /// Every resolution doubled.
  ModulusGrid refined() const;
};

/// omega_1(f; delta)_p: the largest L^p norm of f(. + h) - f over the shift
/// lattice {h : 0 < |h|_inf <= delta} with grid.h_points samples per half
/// axis. Requires 0 < delta <= 1.
double lp_modulus(const ScalarField& f, double delta, double p, const ModulusGrid& grid);

/// lp_modulus at each of the ascending `deltas`, where the shift set for
/// delta_j is the union of the lattices of delta_1..delta_j, so the curve is
/// non-decreasing.
std::vector<double> lp_modulus_curve(const ScalarField& f, std::span<const double> deltas, double p,
                                     const ModulusGrid& grid);

/// omega_1(f, x; delta): oscillation of f over the window
/// {t in Q_d : |t - x|_inf <= delta/2}, sampled on a tensor grid that always
/// contains the declared singularities and extrema.
double local_modulus(const ScalarField& f, std::span<const double> x, double delta, const ModulusGrid& grid);

/// tau_1(f, delta)_p = || omega_1(f, .; delta) ||_p.
double tau_modulus(const ScalarField& f, double delta, double p, const ModulusGrid& grid);

/// D^alpha f: the exact partial when f carries one, otherwise nested
/// finite differences (step 1e-5 for first order). Throws
/// DerivativeUnavailable when alpha differentiates across a jump or kink.
ScalarField mixed_partial(const ScalarField& f, const MultiIndexAlpha& alpha);

/// True when every D^alpha, alpha in {0,1}^d \ {0}, can be produced.
bool has_all_mixed_partials(const ScalarField& f);

/// |f|_{W_1^p} = sum_i || D_i f ||_p.
double sobolev_seminorm(const ScalarField& f, double p, const ModulusGrid& grid);

struct KFunctionalEstimate {
  double value = 0.0;
  /// Steklov radius of the winning candidate; empty when g = f won.
  std::optional<double> radius;
};

/// Geometric radii from 1e-3 to 0.25.
std::vector<double> default_smoothing_radii(int count = 12);

/// Upper estimate of K_{1,p}(f; t): min over g in {f (if differentiable)} and
/// the window means of f at each radius of ||f - g||_p + t |g|_{W_1^p}.
KFunctionalEstimate kfunctional_upper(const ScalarField& f, double t, double p, std::span<const double> radii,
                                      const ModulusGrid& grid);

struct TauPropertyReport {
  std::vector<double> deltas;
  std::vector<double> tau;                 // tau_1(f, delta)_p
  bool monotone = true;                    // tau1)
  std::vector<double> scaled_tau;          // tau_1(f, lambda delta)_p
  double scaling_factor = 0.0;             // (2 floor(lambda) + 2)^(d+1)
  bool scaling = true;                     // tau2)
  std::vector<double> derivative_bound;    // 2 sum delta^|alpha| ||D^alpha f||_p
  std::optional<bool> derivative = {};     // tau3), empty when partials are unavailable
};

TauPropertyReport tau_property_check(const ScalarField& f, double p, std::span<const double> deltas, double lambda,
                                     const ModulusGrid& grid);

enum class ModulusKind { omega_lp, local, tau, sobolev_seminorm, kfunctional_upper };

std::string to_string(ModulusKind kind);
ModulusKind modulus_kind_from_string(const std::string& name);

struct ModulusReport {
  ModulusKind kind = ModulusKind::omega_lp;
  double delta = 0.0;  // step, or t for the K-functional; unused for the seminorm
  double p = 1.0;
  double value = 0.0;
  ModulusGrid grid;
  std::vector<double> point;  // evaluation point of the local modulus
};

/// Dispatches to the operation named by `kind`; `point` is only used by local.
ModulusReport compute_modulus(ModulusKind kind, const ScalarField& f, double delta, double p,
                              const ModulusGrid& grid, std::span<const double> point = {});

}  // namespace bsk
