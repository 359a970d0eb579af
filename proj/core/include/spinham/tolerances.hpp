#pragma once

namespace spinham {

/// Default numerical thresholds. Every contract tolerance used by the library
/// and the CLI is read from here so overrides have a single source.
struct Tolerances {
  // Input validation.
  static constexpr double unit_axis = 1e-12;
  static constexpr double hermitian = 1e-10;
  static constexpr double unitary_input = 1e-10;
  static constexpr double orthogonal_input = 1e-10;
  static constexpr double normalized_input = 1e-10;
  static constexpr double kramers_structure = 1e-8;

  // Time-reversal constructions.
  static constexpr double nonzero_remainder = 1e-8;  // relative to max input norm
  static constexpr double fixed_point = 1e-10;       // K w = w, K phi = phi_bar
  static constexpr double overlap_switch = 1e-10;    // |<Kv|v>| below this uses r = 1/sqrt(2)
  static constexpr double antisymmetric = 1e-10;

  // g-tensor procedures.
  static constexpr double zero_row = 1e-12;          // G_v <= zero_row * max(1, max G)
  static constexpr double closed_form_pole = 1e-12;
  static constexpr double diagonal_g_frame = 1e-8;   // alt-diag precondition on G off-diagonals
  static constexpr double model_span = 1e-10;        // linear-in-S residual
  static constexpr double super_diagonal = 1e-8;     // |C^T h_x C| pattern vs S_x
  static constexpr double vanishing_row = 1e-10;     // relative to the largest row
  static constexpr double principal_residual = 1e-9; // CLI exit threshold
  static constexpr double alt_residual = 1e-9;
  static constexpr double cross_validate = 1e-9;
  static constexpr double irrep_membership = 1e-8;
  static constexpr double eta_consistency = 1e-9;
};

} // namespace spinham
