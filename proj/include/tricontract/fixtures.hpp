#pragma once

#include <string>

#include "tricontract/io.hpp"

namespace tricontract {

// Two bundled five- and four-point instances used by the demos, the CLI
// `examples` verb, and the test suite. Both are valid metrics (checked by
// the test suite); the documents are also shipped under data/ in the repo.

// Five points; the map sends A -> C, B -> D, and C, D, E -> E. E is the
// unique fixed point and there are no period-2 points.
inline const std::string& example_2_1_document() {
  static const std::string doc = R"({
  "points": ["A", "B", "C", "D", "E"],
  "distances": [
    [0, 4, 2, 4, 4],
    [4, 0, 4, 2, 4],
    [2, 4, 0, 2, 3],
    [4, 2, 2, 0, 3],
    [4, 4, 3, 3, 0]
  ],
  "map": {"A": "C", "B": "D", "C": "E", "D": "E", "E": "E"}
})";
  return doc;
}

// Four points; the map sends A, C -> C and B, D -> D. Two fixed points (the
// admissible maximum), no period-2 points. Under the perimeter functional the
// best constant is exactly 1, so the map narrowly fails to contract.
inline const std::string& example_2_2_document() {
  static const std::string doc = R"({
  "points": ["A", "B", "C", "D"],
  "distances": [
    [0, 2, 2, 2],
    [2, 0, 2, 2],
    [2, 2, 0, 3],
    [2, 2, 3, 0]
  ],
  "map": {"A": "C", "B": "D", "C": "C", "D": "D"}
})";
  return doc;
}

inline ParsedDocument example_2_1() { return parse_space(example_2_1_document()); }
inline ParsedDocument example_2_2() { return parse_space(example_2_2_document()); }

}  // namespace tricontract
