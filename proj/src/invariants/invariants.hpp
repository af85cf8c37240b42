// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynamics/state.hpp"
#include "grid_calculus/forms.hpp"

namespace liedrag {

/// dD/dt + div F = Q on one grid.
struct ConsLaw {
  std::string name;
  ScalarField density;
  VectorField flux;
  ScalarField source;

  double integral() const;
};

ConsLaw fluid_helicity(const MhdState& s);
ConsLaw cross_helicity(const MhdState& s);

struct MagneticHelicity {
  ConsLaw law;
  double hopf_defect = 0.0;   // |int A.curl A - int A.B|
  double max_e_dot_b = 0.0;   // E = -u x B
};
MagneticHelicity magnetic_helicity(const MhdState& s);

ScalarField ertel(const MhdState& s);
/// -(curl Gamma) x B / rho - Gamma div B / rho
VectorField magnetic_velocity(const MhdState& s);

struct ErtelMhd {
  VectorField u_M;
  ScalarField value;
};
ErtelMhd ertel_mhd(const MhdState& s);

ScalarField hollmann(const MhdState& s, bool mhd);

struct ClebschCheck {
  VectorField u_rec;
  double velocity_residual = 0.0;   // |u_rec - u|_2 / |u|_2
  double weber_residual = 0.0;      // |w + lt grad mu|_2 / |lt grad mu|_2
};
ClebschCheck clebsch_velocity(const MhdState& s);

/// w = u - grad phi + r grad S - u_M
VectorField weber_w(const MhdState& s);

struct NonlocalHelicity {
  ConsLaw law;              // density Omega.(u + r grad S)
  ConsLaw potential_form;   // density Omega.grad phi
  double split_defect = 0.0;   // max |D - (u.Omega + r rho I_e)| / max |D|
  double w_dot_omega = 0.0;    // max |w.Omega| / max(|w||Omega|)
};
NonlocalHelicity nonlocal_helicity(const MhdState& s);

ConsLaw nonlocal_cross_helicity(const MhdState& s);

struct GvOptions {
  double floor = 1e-6;       // minimum |A|
  double tolerance = 1e-6;   // integrability defect above which GV is undefined
};

struct GodbillonVey {
  VectorField eta;
  ScalarField alpha;
  ScalarField psi;
  double Ig = 0.0;
  double defect = 0.0;            // max |A.curl A|
  double integrability = 0.0;     // max |curl A - eta x A|
  double integrability_perp = 0.0;   // same with the part along A removed
  ConsLaw law;
  std::vector<std::string> warnings;
};
GodbillonVey godbillon_vey(const MhdState& s, const GvOptions& opts = {});

/// Axis-aligned region [lo, hi) inside the box.
struct SubBox {
  Vec3 lo{};
  Vec3 hi{};
};
SubBox full_box(const Grid& g);

/// Integral of div(a x b) over the grid points inside box.
double topological_charge(const OneForm& a, const OneForm& b, const SubBox& box);
/// Presets "ertel" (grad S, u - grad phi) and "entropy-B" (A, grad S).
double topological_charge(const MhdState& s, const std::string& preset, const SubBox& box);

/// Polynomial in the advected scalars ab_rho = A.B/rho, S,
/// b_grad_ab = (B/(A.B)).grad(A.B/rho) and b_grad_ib = (B/rho).grad(B.grad S/rho).
struct Polynomial {
  struct Term {
    double coeff = 0.0;
    std::map<std::string, int> powers;
  };
  std::vector<Term> terms;

  static Polynomial parse(const std::string& text);
  std::string str() const;
};

/// "I32": int Phi A.B;  "I43": int Phi A.(grad S x grad(A.B/rho)).
double generalized_integral(const MhdState& s, const std::string& family, const Polynomial& phi);
const std::vector<std::string>& polynomial_arguments();

double total_energy(const MhdState& s);

struct ResidualNorms {
  double l2 = 0.0;
  double linf = 0.0;
};

struct LawSnapshot {
  double t;
  ConsLaw law;
};

/// Centered-difference residual of dD/dt + div F - Q at every interior
/// snapshot, normalized by max(|div F|_2, floor). Returns the worst.
ResidualNorms conservation_residual(const std::vector<LawSnapshot>& series, double dt_obs, double floor = 1e-12);

struct FormSnapshot {
  double t;
  FormField form;
  VectorField u;
};

/// Same for (d/dt + L_u) w = 0, normalized by max(|L_u w|_2, floor).
ResidualNorms advection_residual(const std::vector<FormSnapshot>& series, double dt_obs, double floor = 1e-12);

}  // namespace liedrag
