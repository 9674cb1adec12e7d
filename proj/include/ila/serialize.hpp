#pragma once

#include "json.hpp"

#include "ila/space.hpp"

namespace ila {

// {"labels":[...], "basis":[[...]], "offset":[...]|null, "void":bool} with
// every scalar rendered as its canonical literal string.
nlohmann::json space_json(const IndexedVectorSpace& v);
nlohmann::json space_json(const IndexedAffineSpace& a);

nlohmann::json scalar_strings(const std::vector<Scalar>& xs);
nlohmann::json label_strings(const LabelList& ls);

}  // namespace ila
