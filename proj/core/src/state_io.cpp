#include "cyclewalk/state_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace cyclewalk {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open state file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw io_error("state file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw io_error("state file must hold a JSON object");
  return doc;
}

StateHeader header_of(const json& doc) {
  if (!doc.contains("graph") || !doc["graph"].is_string())
    throw io_error("state file needs a string field 'graph'");
  const std::string g = doc["graph"].get<std::string>();
  StateHeader h{};
  if (g == "tilde-c4")
    h.kind = GraphKind::TildeC4;
  else if (g == "c4-prime")
    h.kind = GraphKind::C4Prime;
  else
    throw io_error("unknown graph kind '" + g + "' (expected tilde-c4 or c4-prime)");
  if (!doc.contains("radius") || !doc["radius"].is_number_integer())
    throw io_error("state file needs an integer field 'radius'");
  h.radius = doc["radius"].get<std::int32_t>();
  return h;
}

std::int32_t arc_of_entry(const json& ent, const ArcSpace& space) {
  if (!ent.is_object()) throw io_error("amplitude entries must be objects");
  const bool chain = space.kind() == GraphKind::C4Prime;
  if (ent.contains("coin")) {
    if (!ent["coin"].is_number_integer()) throw io_error("'coin' must be an integer");
    const int coin = ent["coin"].get<int>();
    if (coin < 0 || coin > 9) throw io_error("'coin' must lie in 0..9");
    std::int32_t cell = 0;
    if (ent.contains("cell")) {
      if (!ent["cell"].is_number_integer()) throw io_error("'cell' must be an integer");
      cell = ent["cell"].get<std::int32_t>();
    } else if (chain) {
      throw io_error("chain entries need a 'cell'");
    }
    if (!chain && cell != 0) throw io_error("the tailed graph has a single cell 0");
    if (chain && std::abs(cell) > space.radius())
      throw io_error("cell " + std::to_string(cell) + " outside the window");
    try {
      return space.coin_arc(coin, cell);
    } catch (const std::out_of_range& e) {
      throw io_error(std::string("bad coin entry: ") + e.what());
    }
  }
  if (ent.contains("tail")) {
    if (chain) throw io_error("'tail' entries belong to the tailed graph");
    if (!ent["tail"].is_number_integer()) throw io_error("'tail' must be an integer");
    const std::int32_t n = ent["tail"].get<std::int32_t>();
    if (!ent.contains("moving") || !ent["moving"].is_string())
      throw io_error("tail entries need 'moving': inward or outward");
    const std::string mv = ent["moving"].get<std::string>();
    TailDir dir;
    if (mv == "inward")
      dir = TailDir::Inward;
    else if (mv == "outward")
      dir = TailDir::Outward;
    else
      throw io_error("'moving' must be inward or outward");
    try {
      return space.tail_arc(n, dir);
    } catch (const std::out_of_range& e) {
      throw io_error(std::string("bad tail entry: ") + e.what());
    }
  }
  throw io_error("amplitude entry needs 'coin' or 'tail'");
}

cplx amp_of_entry(const json& ent) {
  double re = 0.0, im = 0.0;
  if (ent.contains("re")) {
    if (!ent["re"].is_number()) throw io_error("'re' must be a number");
    re = ent["re"].get<double>();
  }
  if (ent.contains("im")) {
    if (!ent["im"].is_number()) throw io_error("'im' must be a number");
    im = ent["im"].get<double>();
  }
  return {re, im};
}

}  // namespace

StateHeader peek_state_header(const std::string& path) { return header_of(parse_file(path)); }

LoadedState read_state(const std::string& path, const ArcSpace& space) {
  const json doc = parse_file(path);
  const StateHeader h = header_of(doc);
  if (h.kind != space.kind()) throw io_error("state file graph kind does not match the window");
  if (h.radius > space.radius())
    throw io_error("window radius " + std::to_string(space.radius()) +
                   " smaller than the file's " + std::to_string(h.radius));
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
    throw io_error("state file needs an array field 'amplitudes'");

  LoadedState out{WalkState::zero(space), 1.0};
  std::vector<bool> seen(static_cast<std::size_t>(space.arc_count()), false);
  for (const json& ent : doc["amplitudes"]) {
    const std::int32_t a = arc_of_entry(ent, space);
    if (seen[static_cast<std::size_t>(a)]) throw io_error("duplicate amplitude entry");
    seen[static_cast<std::size_t>(a)] = true;
    out.state.amps[static_cast<std::size_t>(a)] = amp_of_entry(ent);
  }
  if (out.state.norm2() == 0.0) throw io_error("state file holds no amplitude");
  out.norm_before = out.state.normalize();
  return out;
}

void write_state(const std::string& path, const WalkState& st) {
  const ArcSpace& sp = *st.space;
  json doc;
  doc["graph"] = sp.kind_name();
  doc["radius"] = sp.radius();
  json arr = json::array();
  for (std::int32_t a = 0; a < sp.arc_count(); ++a) {
    const cplx& z = st.amps[static_cast<std::size_t>(a)];
    if (z == cplx{}) continue;
    json ent;
    const int coin = sp.coin_of(a);
    if (coin >= 0) {
      ent["coin"] = coin;
      if (sp.kind() == GraphKind::C4Prime) ent["cell"] = sp.cell_of_arc(a);
    } else {
      const Arc& arc = sp.arc(a);
      const VertexInfo o = sp.vertex(arc.origin);
      const VertexInfo t = sp.vertex(arc.terminus);
      ent["tail"] = o.coord;
      const bool inward = t.site == LocalSite::Tail && std::abs(t.coord) > std::abs(o.coord);
      ent["moving"] = inward ? "inward" : "outward";
    }
    // json serializes doubles shortest-round-trip; exact on reload.
    ent["re"] = z.real();
    ent["im"] = z.imag();
    arr.push_back(std::move(ent));
  }
  doc["amplitudes"] = std::move(arr);
  std::ofstream outf(path);
  if (!outf) throw io_error("cannot write state file: " + path);
  outf << doc.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace cyclewalk
