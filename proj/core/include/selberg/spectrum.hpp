// Primitive length spectrum enumeration: breadth-first walk over group
// elements (deduplicated by matrix) with orbit-displacement pruning, conjugacy
// canonicalization in the one-relator quotient, clustering into
// (length, multiplicity) entries, and the geodesic counting bound.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selberg/extended_log.hpp"
#include "selberg/group.hpp"

namespace selberg {

struct ConjugacyClass {
    Word canonical;            // cyclically reduced, minimal necklace form
    MoebiusElement representative;
    double length = 0.0;
    bool primitive = true;
    int power_index = 1;       // canonical = (primitive word)^power_index
};

struct SpectrumEntry {
    double length = 0.0;
    int multiplicity = 0;  // oriented primitive classes in the cluster
};

struct LengthSpectrum {
    std::vector<SpectrumEntry> entries;  // strictly increasing lengths
    std::vector<ConjugacyClass> classes; // all classes <= cutoff, incl. imprimitive
    double cutoff = 0.0;
    int word_depth = 0;
    int genus = 2;
    bool stabilized = false;
    std::uint64_t words_visited = 0;
};

struct EnumerationOptions {
    std::uint64_t budget = 200'000'000;  // element expansions before a resource error
    // visit only elements that displace the base point by at most
    // cutoff + prune_slack; non-positive slack picks max(4, largest generator
    // displacement) automatically
    double prune_slack = 0.0;
    bool prune = true;  // false explores everything reachable within max_depth
    int threads = 1;
};

// Walk the group breadth-first by word length up to max_depth, keep hyperbolic
// elements with translation length <= cutoff, fold them into conjugacy classes
// of the quotient, and cluster primitive classes into the oriented spectrum.
// stabilized means no class was first discovered at the final depth.
LengthSpectrum enumerate_spectrum(const GroupPresentation& g, double cutoff,
                                  int max_depth, const EnumerationOptions& opts = {});

// Oriented-multiplicity count of entries with length <= u.
int count_geodesics(const LengthSpectrum& spec, double u);

// log of the geodesic counting envelope 80 pi (g-1) / l_X + u (constant 1).
ExtendedLog pgt_log_bound(int genus, double ell_x, double u);

// --- word utilities shared with tests ---

Word free_reduce(Word w);
Word cyclic_reduce(Word w);
// lexicographically least rotation under the letter order 1 < -1 < 2 < -2 < ...
Word min_rotation(const Word& w);
// power_index > 1 when w is a proper power of a shorter cyclic word
int cyclic_power_index(const Word& w);
// canonical necklace of the conjugacy class of w in the quotient defined by the
// relators of g (small-cancellation substitution closure)
Word conjugacy_canonical(const Word& w, const GroupPresentation& g);

}  // namespace selberg
