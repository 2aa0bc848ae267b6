#pragma once

#include "bsq/operators.hpp"

namespace bsq {

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool symmetric = true;
};

inline constexpr double kMassRtol = 1e-10;
inline constexpr int kMassMaxIter = 500;

// u with ||(1 - eps/2 P1) u - f|| <= rtol ||f|| over the dealiased band of f.
// Conjugate gradients when the operator is symmetric (a2 = 0), BiCGSTAB otherwise.
VectorField invert_mass1(const OperatorContext& ctx, const VectorField& f, SolveStats* stats = nullptr);
ScalarField invert_mass2(const OperatorContext& ctx, const ScalarField& f, SolveStats* stats = nullptr);

VectorField invert_mass1(const Bathymetry& b, const CoefficientSet& c, double epsilon, const VectorField& f);
ScalarField invert_mass2(const Bathymetry& b, const CoefficientSet& c, double epsilon, const ScalarField& f);

}  // namespace bsq
