#pragma once

#include <string>

#include "ticknoise/channels.hpp"

namespace ticknoise {

// JSON dump of a channel: dim, energies, eigenvectors and filter as
// row-major [re, im] pairs, tau. Round-trips through channel_from_json_text.
std::string channel_to_json_text(const DephasedGateChannel& ch);
DephasedGateChannel channel_from_json_text(const std::string& text);
DephasedGateChannel channel_from_json_file(const std::string& path);

// Structural and CPTP checks on a (possibly reloaded) channel: unit filter
// diagonal, entries bounded by 1, conjugate symmetry, orthonormal basis, and
// a PSD Choi matrix for dim <= 8. Throws std::runtime_error on violation.
void validate_channel(const DephasedGateChannel& ch);

}  // namespace ticknoise
