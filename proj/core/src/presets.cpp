#include "cyclewalk/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclewalk {

WalkState make_coin_state(const ArcSpace& space, const CoinAmplitudes& a, std::int32_t cell) {
  WalkState st = WalkState::zero(space);
  for (int c = 0; c < 10; ++c) {
    if (a[c] == cplx{}) continue;
    st.amps[static_cast<std::size_t>(space.coin_arc(c, cell))] = a[c];
  }
  return st;
}

CoinAmplitudes preset_amplitudes(const std::string& name) {
  CoinAmplitudes a;
  if (name == "case-i") {
    a[0] = 1.0;
  } else if (name == "case-ii") {
    a[4] = 1.0;
  } else if (name == "fig3a") {
    const double r = 1.0 / std::sqrt(3.0);
    a[7] = r;
    a[8] = r;
    a[9] = r;
  } else if (name == "fig3b") {
    const double r = 1.0 / std::sqrt(2.0);
    a[3] = r;
    a[4] = cplx{0.0, r};
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return a;
}

bool is_preset(const std::string& name) {
  for (const std::string& p : preset_names())
    if (p == name) return true;
  return false;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"case-i", "case-ii", "fig3a", "fig3b"};
  return names;
}

}  // namespace cyclewalk
