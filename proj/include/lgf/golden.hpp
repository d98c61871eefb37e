#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/holonomic.hpp"
#include "lgf/poly.hpp"

// Reference data for the fcc lattices, embedded so that every check
// runs offline. Each object is validated by its own module on first use.
namespace lgf::golden {

// z(z^2-1)P'' + (3z^2-1)P' + zP = 0 (square lattice).
const LinearODE& ode_2d();
// Order 4, annihilates the 4D fcc lattice Green's function.
const LinearODE& ode_4d();
// Order 6, annihilates the 5D fcc lattice Green's function.
const LinearODE& ode_5d();

// Order 6 recurrence of the 4D partial sums f(n) = sum_{k<=n} p_k(0), and
// f(0..5).
const LinearRecurrence& partial_sum_recurrence_4d();
const std::vector<Rat>& partial_sum_initials_4d();

// The 6D ODE is not printed in full; a supplied file must match the order,
// degree and leading-coefficient factors below.
constexpr int ode_6d_order = 8;
constexpr int ode_6d_degree = 43;
// Leading coefficient without the degree-25 factor q(z), expanded.
IntPoly ode_6d_leading_known_part();
// Reads and validates an ODE file for d=6 (ValidationError on mismatch).
LinearODE load_ode_6d(const std::string& path);

// Digit strings of P(1) and R.
struct ReturnDigits {
  int d;
  std::string p1;
  std::string r;
};
const std::vector<ReturnDigits>& reference_digits();  // d = 4, 5, 6
// R for d = 2..6 (d=2 is exactly 1).
const std::vector<std::pair<int, std::string>>& return_probability_table();

// The 2D creative-telescoping example in the variables x1, x2, z.
struct TwoDimExample {
  std::string g1, g2, g3;
  // A + D_x1 B1 + D_x2 B2 annihilating the integrand.
  std::string telescoper, delta_x1, delta_x2;
  // cofactor_1 * G1 + cofactor_23 * (z*G2 + G3) equals the operator above.
  std::string cofactor_1, cofactor_23;
};
const TwoDimExample& two_dim_example();

// Certificate files (see certificate.hpp): the full 2D certificate, the two
// x1-stage certificates, and the x2 stage over the x1-integral.
const std::string& certificate_2d();
const std::string& certificate_2d_stage_z();
const std::string& certificate_2d_stage_x2();
const std::string& certificate_2d_second_stage();

}  // namespace lgf::golden
