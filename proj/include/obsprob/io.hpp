#pragma once

#include "obsprob/frame.hpp"
#include "obsprob/kscheck.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace obsprob {

/// Key order is kept as written so emitted files are deterministic and
/// golden-file friendly.
using Json = nlohmann::ordered_json;

/// Anything that stops a file from being understood: unreadable path,
/// malformed JSON, schema violations, unparsable scalars, labels that
/// don't resolve. Semantic problems with well-formed content (a part
/// summing to 3/2, say) are deliberately NOT FileErrors; they surface
/// through validate_observed and friends.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Whole-file read; FileError when the path can't be opened.
std::string read_text_file(const std::string& path);

/// JSON syntax errors become FileErrors with the parser's diagnostics.
Json parse_json_text(const std::string& text);

/// Observation-space file:
///   { "outcomes": ["00", ...],
///     "ensembles": [ { "name": "...",
///                      "parts": [ { "outcomes": [...], "prob": "1/2" }, ... ] }, ... ] }
/// Scalars travel as grammar strings, never as floats.
ObservedDistribution observed_from_json(const Json& file);
Json observed_to_json(const ObservedDistribution& obs);

/// Extension file: { "weights": { "00": "-1/2", ... } }, every outcome of
/// the space exactly once. Weights come back in outcome order.
std::vector<Scalar> weights_from_json(const Json& file, const SpacePtr& space);
Json weights_to_json(const SignedDistribution& q);

/// Basis-system file: { "bases": [ [ [a,b,c,d] x4 ] xN ] }, integer
/// coordinates. Rays are canonicalized on the way in.
BasisSystem bases_from_json(const Json& file);
Json bases_to_json(const BasisSystem& s);

/// The bundled 18-ray, 9-basis system, compiled in from
/// data/cabello18.json.
BasisSystem cabello18();

}  // namespace obsprob
