#pragma once

#include <string>
#include <string_view>

#include "crn/network.hpp"

namespace crn {

/// Parse failure with position info. `kind` is one of SyntaxError,
/// DuplicateReaction, SelfLoop, UnboundCoefficient.
struct ParseError : std::runtime_error {
    ParseError(std::string kind, int line, int col, const std::string& message);
    std::string kind;
    int line;
    int col;
};

/// Grammar, one statement per line:
///   statement   := complex ("->" | "<->") complex ";" label ("," label)?
///   binding     := label "=" nonneg-rational
///   declaration := "species" identifier ("," identifier)*
///   complex     := "0" | term ("+" term)*
///   term        := [coefficient] identifier
/// "#" starts a comment. Reversible statements expand to two reactions,
/// forward label first. Species order is first-appearance order; an
/// optional species declaration pins the order explicitly.
ReactionNetwork parse(std::string_view text, const std::string& name = "network");

ReactionNetwork parse_file(const std::string& path);

/// One reaction per line plus the rate bindings; parse(serialize(net)) is
/// structurally identical to net.
std::string serialize(const ReactionNetwork& net);

}  // namespace crn
