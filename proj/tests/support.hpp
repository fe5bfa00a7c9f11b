#pragma once

#include "pdwg/analysis.hpp"
#include "pdwg/assembly.hpp"
#include "pdwg/fields.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/solver.hpp"
#include "pdwg/weakspace.hpp"

#include <memory>

namespace pdwg::test {

/// Single triangle (0,0),(1,0),(0,1); local edge 1 is the hypotenuse.
inline Mesh reference_mesh() {
  return Mesh({Point(0, 0), Point(1, 0), Point(0, 1)}, {{0, 1, 2}}, DomainTag::UnitSquare, 0);
}

inline ProblemSpec constant_problem(Point beta, double c, double tau, ScalarField exact = constant_field(1.0)) {
  ProblemSpec spec;
  spec.beta = constant_convection(beta.x(), beta.y());
  spec.c = constant_field(c);
  spec.tau = tau;
  spec.exact_u = std::move(exact);
  return spec;
}

/// Everything needed to assemble one problem on one mesh.
struct Setup {
  ProblemSpec spec;
  Mesh mesh;
  BoundCoefficients coeffs;
  BoundaryClassification boundary;
  DofMap dofs;

  Setup(ProblemSpec s, Mesh m)
      : spec(std::move(s)),
        mesh(std::move(m)),
        coeffs(spec, mesh),
        boundary(classify_boundary(mesh, coeffs.beta_function())),
        dofs(mesh, spec.k, spec.j, boundary) {}

  Setup(const Setup&) = delete;
  Setup& operator=(const Setup&) = delete;

  SaddleSystem system() const { return assemble(mesh, dofs, coeffs, boundary); }
};

inline std::unique_ptr<Setup> make_setup(ProblemSpec spec, DomainTag domain, int level,
                                         Diagonal diagonal = Diagonal::Main) {
  spec.domain = domain;
  spec.diagonal = diagonal;
  return std::make_unique<Setup>(std::move(spec), build_mesh(domain, level, diagonal));
}

}  // namespace pdwg::test
