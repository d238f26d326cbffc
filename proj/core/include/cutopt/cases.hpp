#pragma once

#include <string>

#include "cutopt/interface.hpp"
#include "cutopt/mesh.hpp"

namespace cutopt {

/// A benchmark problem with a prescribed optimal triple (y*, p*, u*) and the
/// data (f, g, y_d) derived from it in closed form. The exact co-state
/// carries the factor alpha so that the projection identity
/// u* = clamp(-p*|_Gamma / alpha) pins the same u* for every alpha.
///
/// The star-interface case has no exact triple: has_exact is false and only
/// the data fields are populated.
struct ManufacturedCase {
    std::string id;
    Square domain;
    LevelSet level_set;
    double a1 = 1.0, a2 = 1.0;
    double alpha = 1.0;

    ScalarField u_lower, u_upper;  // box bounds on the interface

    bool has_exact = false;
    SideField y_exact, p_exact;
    SideVecField grad_y_exact, grad_p_exact;
    ScalarField u_exact;  // on the interface

    SideField f, y_d;
    ScalarField g;   // interface flux data
    SideField y_bc;  // Dirichlet values of the state on the outer boundary
};

/// Builds one of the benchmark cases ("5.1" segment interface, "5.2"
/// polygonal interface, "5.3" five-star interface). Throws for unknown ids.
ManufacturedCase make_example(const std::string& id, double alpha = 1.0);

/// Validates the hand-derived data against a 4th-order finite-difference
/// oracle: f against -div(a grad y*) and y_d against y* + div(a grad p*),
/// sampled away from the interface and the boundary. Returns the max
/// relative defect.
double derive_sources_check(const ManufacturedCase& mc, int min_samples_per_side = 100,
                            unsigned seed = 20240801);

}  // namespace cutopt
