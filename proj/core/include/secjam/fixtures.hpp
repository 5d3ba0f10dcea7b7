#pragma once

#include <string>

#include "secjam/channel.hpp"

namespace secjam {

/// Built-in three-user, five-subcarrier example (sigma^2 = 1), exposed to the
/// CLI under the fixture name "paper3x5".
ChannelRealization example3x5();
std::string example3x5_text();

}  // namespace secjam
