#pragma once

// JSON documents for profiles, bodies and verification reports. Numbers are
// written in shortest round-trip form, so equal inputs give identical bytes.

#include "revolv/body.hpp"
#include "revolv/counterexamples.hpp"
#include "revolv/profile.hpp"

#include <string>
#include <string_view>

namespace revolv {

/// {"variant": "term_sum" | "level_branch", "base": "semicircle",
///  "terms": [{center, half_width, amplitude, sign, reflected}, ...],
///  "shift": {center, half_width, amplitude}}
std::string profile_to_json(const Profile& profile, int indent = 2);

/// Inverse of profile_to_json. Throws DomainError on malformed input or an
/// invalid profile.
Profile profile_from_json(std::string_view text);

/// {"d": ..., "lambda": ..., "profile": {...}}
std::string body_to_json(const BodyOfRevolution& body, int indent = 2);
BodyOfRevolution body_from_json(std::string_view text);

/// {"eps", "coefficients", "plus": body, "minus": body, ...}
std::string pair_to_json(const BonnesenPair& pair, int indent = 2);

std::string report_to_json(const VerificationReport& report, int indent = 2);
std::string report_to_json(const KleeReport& report, int indent = 2);

}  // namespace revolv
