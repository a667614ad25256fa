#pragma once

// Versioned JSON for rings, polynomials and presentations.  Objects are
// written with keys in a fixed order so that equal values give equal bytes.

#include <string>
#include <variant>

#include <json.hpp>

#include "chromatic/presentation.hpp"

namespace chromatic {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPresentationSchema = "chromatic.presentation/1";

Json monomial_to_json(const Ring& ring, const Monomial& m);
Monomial monomial_from_json(const Ring& ring, const Json& j);

Json ring_to_json(const Ring& ring);
RingPtr ring_from_json(const Json& j);

template <class Field>
Json poly_to_json(const GradedPoly<Field>& f);
template <class Field>
GradedPoly<Field> poly_from_json(const RingPtr& ring, const Json& j);

template <class Field>
Json presentation_to_json(const Presentation<Field>& p);

using AnyPresentation = std::variant<QPresentation, FpPresentation>;
AnyPresentation presentation_from_json(const Json& j);

/// Canonical text: two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

}  // namespace chromatic
