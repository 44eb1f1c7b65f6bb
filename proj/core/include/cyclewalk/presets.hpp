#pragma once

#include <string>
#include <vector>

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/evolution.hpp"

namespace cyclewalk {

// Places coin amplitudes onto one cell of a window (t = 0).
WalkState make_coin_state(const ArcSpace& space, const CoinAmplitudes& a, std::int32_t cell = 0);

// Named one-cell initial states shared by the tools and tests:
//   case-i   delta on coin 0, the tail arc entering the cycle from the left
//   case-ii  delta on coin 4, a cycle arc (fully reflected family)
//   fig3a    (d7 + d8 + d9)/sqrt(3) - no trapped component
//   fig3b    (d3 + i d4)/sqrt(2)  - trapped probability 1/2
// "uniform" (the ten-basis-state ensemble) is not a single state and is
// handled by callers.
CoinAmplitudes preset_amplitudes(const std::string& name);
bool is_preset(const std::string& name);
const std::vector<std::string>& preset_names();

}  // namespace cyclewalk
