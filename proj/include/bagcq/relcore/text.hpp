#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

struct QueryParseOptions {
  /// Accept variables named x1, x2, ... (output of CQ-ization).
  bool allow_aliens = false;
};

/// Parses `UCQ := CQ ('|' CQ)*` where `CQ := 'true' | Atom ('&' Atom)*`.
///
/// An optional leading `sig ... ; const ...` header declares the signature.
/// Without a header and without `sig`, relations and constants are inferred
/// from first use. Wildcards `_` become fresh variables `_w1`, `_w2`, ...
UCQ parse_query(std::string_view text, const std::optional<Signature>& sig = std::nullopt,
                const QueryParseOptions& options = {});

/// Convenience for single-disjunct input.
CQ parse_cq(std::string_view text, const std::optional<Signature>& sig = std::nullopt,
            const QueryParseOptions& options = {});

Structure parse_structure(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const CQ& cq);
std::string to_string(const UCQ& q);

/// Query text with a `sig` header so that the signature survives a round trip.
std::string to_text_with_signature(const UCQ& q);

std::string to_string(const Structure& d);

}  // namespace bagcq
