// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>

#include "grid_calculus/fields.hpp"

namespace liedrag {

/// Any differential form of rank 0..3.
using FormField = std::variant<ScalarField, OneForm, TwoForm, ThreeForm>;

int rank_of(const FormField& f);
const Grid& grid_of(const FormField& f);

// Exterior derivative under the R^3 correspondences.
OneForm d0(const ScalarField& f);    // grad
TwoForm d1(const OneForm& a);        // curl
ThreeForm d2(const TwoForm& b);      // div

TwoForm wedge11(const OneForm& a, const OneForm& b);     // a x b
ThreeForm wedge12(const OneForm& a, const TwoForm& b);   // a . b

ScalarField interior1(const VectorField& x, const OneForm& a);   // X . a
OneForm interior2(const VectorField& x, const TwoForm& b);       // -(X x B)
TwoForm interior3(const VectorField& x, const ThreeForm& t);     // t X

// Lie derivative from the vector-calculus formulas:
//   rank 0: u.grad f
//   rank 1: -u x curl V + grad(u.V)
//   rank 2: -curl(u x B) + u div B
//   rank 3: div(u f)
ScalarField lie_direct(const VectorField& u, const ScalarField& f);
OneForm lie_direct(const VectorField& u, const OneForm& a);
TwoForm lie_direct(const VectorField& u, const TwoForm& b);
ThreeForm lie_direct(const VectorField& u, const ThreeForm& t);
FormField lie_direct(const VectorField& u, const FormField& w);

// Lie derivative from u _| dw + d(u _| w), composed from d and interior.
ScalarField lie_cartan(const VectorField& u, const ScalarField& f);
OneForm lie_cartan(const VectorField& u, const OneForm& a);
TwoForm lie_cartan(const VectorField& u, const TwoForm& b);
ThreeForm lie_cartan(const VectorField& u, const ThreeForm& t);
FormField lie_cartan(const VectorField& u, const FormField& w);

/// [X, Y] = X.grad Y - Y.grad X
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Cell sum times cell volume, accumulated in storage order.
double volume_integral(const Array& values, const Grid& g);
double volume_integral(const ScalarField& f);
double volume_integral(const ThreeForm& t);

}  // namespace liedrag
