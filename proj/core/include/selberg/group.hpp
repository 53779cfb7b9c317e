// Fuchsian group presentations for compact genus-2 surfaces: the regular
// octagon side-pairing group and the two-pants Fenchel-Nielsen gluing.
#pragma once

#include <string>
#include <vector>

#include "selberg/moebius.hpp"

namespace selberg {

// Signed generator indices: k > 0 means generator k, k < 0 its inverse (1-based).
using Word = std::vector<int>;

struct GroupPresentation {
    std::vector<MoebiusElement> generators;
    std::vector<Word> relators;
    int genus = 2;
    std::string label;

    // generator (letter > 0) or inverse (letter < 0); letter is 1-based
    MoebiusElement letter(int signed_index) const;
    MoebiusElement evaluate(const Word& w) const;

    // largest relator residual min(|R - Id|, |R + Id|) over all relators
    double relator_residual() const;
    // throws validation_error when generators are non-hyperbolic or a relator
    // fails to close up within tol
    void validate(double tol = 1e-9) const;
};

// Genus-2 group from the regular hyperbolic octagon's side pairings; the four
// generators share one trace (2 + 2 sqrt 2) and satisfy a single length-8 relator.
GroupPresentation builtin_octagon();

// Two pairs of pants with cuff lengths (l1, l2, l3) glued along all three cuffs
// with twists (theta1, theta2, theta3). Generators: the first pants' cuffs
// A1, A2 and the gluing displacements S2, S3; one length-8 relator. Boundary
// representatives have |trace| = 2 cosh(l_i / 2).
GroupPresentation build_genus2_from_fn(double l1, double l2, double l3, double theta1,
                                       double theta2, double theta3);

// The second reference surface next to the octagon: the degeneration family's
// base point, build_genus2_from_fn(1, 2, 2, 0, 0, 0).
GroupPresentation builtin_fn_base();

}  // namespace selberg
