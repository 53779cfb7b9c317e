#pragma once

#include <string>

#include "selberg/group.hpp"

namespace selberg {

// On-disk group description:
//   {
//     "label": "octagon",
//     "genus": 2,
//     "generators": [[a, b, c, d], ...],   // row-major, det ~ +1
//     "relators": [[1, -2, 3, -4, ...], ...]
//   }
// Loading validates determinants and relator residuals and reports the
// offending index, so a mistyped matrix fails loudly instead of producing a
// quietly wrong spectrum.
GroupPresentation load_group(const std::string& path);
void save_group(const std::string& path, const GroupPresentation& g);

GroupPresentation group_from_json_text(const std::string& text);
std::string group_to_json_text(const GroupPresentation& g);

}  // namespace selberg
