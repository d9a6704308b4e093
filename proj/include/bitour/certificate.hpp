#pragma once

#include <string>

#include "bitour/engine.hpp"

namespace bitour {

// {"k","p","cycle_2p","cycle_rest","f_avoided","witness":[4]|null,"provenance":[...]}
std::string certificate_to_json(const TwoFactorCertificate& cert, bool with_provenance = true);
// Throws InvalidInput on malformed documents.
TwoFactorCertificate certificate_from_json(const std::string& text);

}  // namespace bitour
