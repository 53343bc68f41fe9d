#pragma once

#include <vector>

namespace wsspline {

/// A published nonzero Hermite value rho_j(B_i) (or of B-tilde_i), 1-based.
struct HermiteEntry {
  int basis = 0;
  bool tilde = false;
  int rho = 0;
  long num = 0;
  long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Nonzero entries for rho_1..rho_28 of B_1..B_28 and B-tilde_22..B-tilde_28.
const std::vector<HermiteEntry>& hermite_table_main();
/// Nonzero entries for rho_29..rho_34 (B-tilde numbering).
const std::vector<HermiteEntry>& hermite_table_extra();

}  // namespace wsspline
