#include <algorithm>

#include "mbanach/cli.hpp"
#include "mbanach/errors.hpp"
#include "mbanach/parse.hpp"

namespace mbanach {
namespace {

std::vector<Complex> parse_vector(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& t : split(text, '|')) out.push_back(parse_complex(t));
  return out;
}

WeightedSet parse_weighted(const std::string& body) {
  WeightedSet s;
  for (const auto& item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("weighted point '" + item + "' needs label=weight");
    s.labels.push_back(trim(item.substr(0, eq)));
    const Complex w = parse_complex(item.substr(eq + 1));
    if (w.imag() != 0.0) throw InputError("weights must be real");
    s.weights.push_back(w.real());
  }
  s.validate();
  return s;
}

// Labels that all read as numbers double as scalar payloads.
std::optional<std::vector<Complex>> numeric_labels(const WeightedSet& s) {
  std::vector<Complex> out;
  for (const auto& l : s.labels) {
    try {
      out.push_back(parse_complex(l));
    } catch (const InputError&) {
      return std::nullopt;
    }
  }
  return out;
}

std::vector<Point> parse_vector_points(const std::string& body) {
  std::vector<Point> pts;
  for (const auto& item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("vector point '" + item + "' needs label=c1|c2|...");
    pts.push_back(Point::vector(trim(item.substr(0, eq)), parse_vector(item.substr(eq + 1))));
  }
  return pts;
}

std::vector<Complex> parse_scalars(const std::string& body) {
  std::vector<Complex> out;
  for (const auto& t : split(body, ',')) out.push_back(parse_complex(t));
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> alphabet_presets() {
  return {
      {"pm1-min", "min:1,-1"},        {"one-min", "min:1"},        {"one-zero-min", "min:1,0"},
      {"pm1-amax", "amax:1,-1"},      {"one-amax", "amax:1"},      {"pm1-ma", "ma:1=1,-1=1"},
      {"ma23", "ma:a=2,b=3"},         {"one-mina", "mina:s=1"},    {"one-zx", "zx:min:1"},
  };
}

std::shared_ptr<const AWSet> parse_alphabet(const std::string& descriptor, const EnumCaps& caps) {
  const std::string d = trim(descriptor);
  for (const auto& [name, expansion] : alphabet_presets()) {
    if (d == name) return parse_alphabet(expansion, caps);
  }
  const auto colon = d.find(':');
  if (colon == std::string::npos) throw InputError("unknown alphabet '" + d + "'");
  const std::string kind = d.substr(0, colon);
  const std::string body = d.substr(colon + 1);
  if (kind == "min") return min_scalar_set(parse_scalars(body));
  if (kind == "amax") return amax_scalar_set(parse_scalars(body));
  if (kind == "ma") {
    const WeightedSet s = parse_weighted(body);
    return ma_set(s, numeric_labels(s));
  }
  if (kind == "mina") {
    const WeightedSet s = parse_weighted(body);
    return min_array_set(s, numeric_labels(s));
  }
  if (kind == "minl1" || kind == "minlinf") {
    auto pts = parse_vector_points(body);
    if (pts.empty()) throw InputError("empty alphabet");
    const int dim = static_cast<int>(pts.front().payload.size());
    auto norm = std::make_shared<const PolyhedralMinNorm>(kind == "minl1" ? PolyhedralMinNorm::l1(dim)
                                                                           : PolyhedralMinNorm::linf(dim));
    return polyhedral_min_set(std::move(pts), std::move(norm));
  }
  if (kind == "amaxl1") {
    const auto second = body.find(':');
    if (second == std::string::npos) throw InputError("amaxl1 needs weights:points");
    std::vector<double> w;
    for (Complex c : parse_vector(body.substr(0, second))) {
      if (c.imag() != 0.0) throw InputError("weights must be real");
      w.push_back(c.real());
    }
    return weighted_l1_set(parse_vector_points(body.substr(second + 1)), std::move(w));
  }
  if (kind == "zx") return zx_set(parse_alphabet(body, caps));
  if (kind == "scaled") {
    const auto second = body.find(':');
    if (second == std::string::npos) throw InputError("scaled needs factor:descriptor");
    const Complex t = parse_complex(body.substr(0, second));
    if (t.imag() != 0.0) throw InputError("scale factor must be real");
    return scaled_set(parse_alphabet(body.substr(second + 1), caps), t.real());
  }
  if (kind == "zero") return zero_point_set(trim(body));
  throw InputError("unknown alphabet kind '" + kind + "'");
}

FreeVector parse_free_vector(const AWSet& x, const std::string& text) {
  FreeVector v;
  v.coeffs.assign(static_cast<std::size_t>(x.size()), 0.0);
  for (const auto& item : split(text, ',')) {
    // Labels may start with '-', so split on the last ':'.
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw InputError("vector entry '" + item + "' needs label:coeff");
    const int idx = x.index_of(trim(item.substr(0, colon)));
    v.coeffs[static_cast<std::size_t>(idx)] += parse_complex(item.substr(colon + 1));
  }
  return v;
}

EnumCaps parse_caps(const std::string& text, EnumCaps base) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw InputError("caps must be R,C,P");
  int vals[3];
  for (int k = 0; k < 3; ++k) {
    const std::string t = trim(parts[static_cast<std::size_t>(k)]);
    std::size_t used = 0;
    try {
      vals[k] = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw InputError("caps must be three integers, got '" + text + "'");
  }
  base.max_rows = vals[0];
  base.max_cols = vals[1];
  base.max_cells = vals[2];
  validate(base);
  return base;
}

}  // namespace mbanach
