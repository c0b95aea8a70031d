#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobius/diagram.hpp"

namespace mobius {

// Byte string with lexicographic order; equal codes <=> equivalent diagrams
// (equivalence = dart relabeling plus any set of vertex flips, which covers
// both orientation classes of strip homeomorphisms; flow reversal is NOT
// included and is tracked separately).
using CanonicalCode = std::string;

std::string to_hex(const CanonicalCode& code);
CanonicalCode code_from_hex(const std::string& hex);

// Lexicographic minimum of a flip-normalized rooted serialization over all
// (root dart, root side) choices.  With marked_edge set, the mark is carried
// in the edge tokens, canonicalizing (diagram, marked edge) pairs.
// Requires a connected diagram.
CanonicalCode canonical_code(const SeparatrixDiagram& d,
                             std::optional<int> marked_edge = std::nullopt);

// Exhaustive oracle, independent of canonical_code: applies every subset of
// vertex flips to b and tries every image for dart 0 of a, propagating
// rigidly through rotations and the edge pairing.  On success returns the
// dart bijection a -> b.
std::optional<std::vector<int>> isomorphism_witness(
    const SeparatrixDiagram& a, const SeparatrixDiagram& b,
    std::optional<int> mark_a = std::nullopt, std::optional<int> mark_b = std::nullopt);

bool isomorphic(const SeparatrixDiagram& a, const SeparatrixDiagram& b,
                std::optional<int> mark_a = std::nullopt,
                std::optional<int> mark_b = std::nullopt);

bool is_self_reverse(const SeparatrixDiagram& d);

}  // namespace mobius
