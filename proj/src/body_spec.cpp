#include "njump/body_spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace njump {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw SpecError(path + "." + key, "unknown field");
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw SpecError(path + "." + key, "missing field");
  return obj.at(key);
}

Rational rational_at(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(std::to_string(v.get<std::int64_t>()));
  if (!v.is_string()) throw SpecError(path, "expected a rational string such as \"3/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  }
}

ExactReal exact_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw SpecError(path, "expected an exact number string");
  try {
    return parse_exact(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  }
}

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) throw SpecError(path, "expected an array");
  return v;
}

Point point_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw SpecError(path, "expected a pair [x, y]");
  return {exact_at(v[0], path + "[0]"), exact_at(v[1], path + "[1]")};
}

bool bool_at(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw SpecError(path, "expected true or false");
  return v.get<bool>();
}

template <typename Fn>
NewtonBody guarded(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  } catch (const std::domain_error& e) {
    throw SpecError(path, e.what());
  }
}

NewtonBody canonical_from_json(const json& spec, const std::string& path) {
  expect_keys(spec, path, {"kind", "asymptotes", "pieces"});
  const std::string apath = path + ".asymptotes";
  const json& a = field(spec, path, "asymptotes");
  if (!a.is_object()) throw SpecError(apath, "expected an object");
  expect_keys(a, apath, {"x0", "y0", "attained_x", "attained_y"});
  Asymptotes asym{exact_at(field(a, apath, "x0"), apath + ".x0"), exact_at(field(a, apath, "y0"), apath + ".y0"),
                  bool_at(field(a, apath, "attained_x"), apath + ".attained_x"),
                  bool_at(field(a, apath, "attained_y"), apath + ".attained_y")};
  std::vector<BoundaryPiece> pieces;
  const json& list = array_at(field(spec, path, "pieces"), path + ".pieces");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ppath = path + ".pieces[" + std::to_string(i) + "]";
    const json& p = list[i];
    if (!p.is_object()) throw SpecError(ppath, "expected an object");
    const json& type = field(p, ppath, "type");
    if (type == "segment") {
      expect_keys(p, ppath, {"type", "start", "end"});
      pieces.emplace_back(Segment{point_at(field(p, ppath, "start"), ppath + ".start"),
                                  point_at(field(p, ppath, "end"), ppath + ".end")});
    } else if (type == "arc") {
      expect_keys(p, ppath, {"type", "a", "b", "s", "xlo", "xhi"});
      Arc arc{exact_at(field(p, ppath, "a"), ppath + ".a"), exact_at(field(p, ppath, "b"), ppath + ".b"),
              exact_at(field(p, ppath, "s"), ppath + ".s"), exact_at(field(p, ppath, "xlo"), ppath + ".xlo"),
              std::nullopt};
      const json& xhi = field(p, ppath, "xhi");
      if (!xhi.is_null()) arc.xhi = exact_at(xhi, ppath + ".xhi");
      pieces.emplace_back(std::move(arc));
    } else {
      throw SpecError(ppath + ".type", "expected \"segment\" or \"arc\"");
    }
  }
  return guarded(path, [&] { return NewtonBody::from_pieces(std::move(pieces), std::move(asym)); });
}

}  // namespace

NewtonBody body_from_json(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw SpecError(path, "expected a body object");
  const json& kind_value = field(spec, path, "kind");
  if (!kind_value.is_string()) throw SpecError(path + ".kind", "expected a string");
  const std::string kind = kind_value.get<std::string>();
  if (kind == "polyhedral") {
    expect_keys(spec, path, {"kind", "vertices"});
    const std::string vpath = path + ".vertices";
    const json& list = array_at(field(spec, path, "vertices"), vpath);
    if (list.empty()) throw SpecError(vpath, "needs at least one vertex");
    std::vector<std::pair<Rational, Rational>> vertices;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string ipath = vpath + "[" + std::to_string(i) + "]";
      if (!list[i].is_array() || list[i].size() != 2) throw SpecError(ipath, "expected a pair [x, y]");
      vertices.emplace_back(rational_at(list[i][0], ipath + "[0]"), rational_at(list[i][1], ipath + "[1]"));
    }
    return guarded(path, [&] { return NewtonBody::polyhedral(vertices); });
  }
  if (kind == "hyperbola") {
    expect_keys(spec, path, {"kind", "a", "b", "s"});
    const Rational a = rational_at(field(spec, path, "a"), path + ".a");
    const Rational b = rational_at(field(spec, path, "b"), path + ".b");
    const Rational s = rational_at(field(spec, path, "s"), path + ".s");
    if (sgn(s) <= 0) throw SpecError(path + ".s", "must be positive");
    return guarded(path, [&] { return NewtonBody::hyperbola(a, b, s); });
  }
  if (kind == "diagonal") {
    expect_keys(spec, path, {"kind", "m"});
    const json& m = array_at(field(spec, path, "m"), path + ".m");
    if (m.size() != 2) throw SpecError(path + ".m", "a body needs exactly two exponents");
    const Rational m1 = rational_at(m[0], path + ".m[0]");
    const Rational m2 = rational_at(m[1], path + ".m[1]");
    if (sgn(m1) <= 0) throw SpecError(path + ".m[0]", "must be positive");
    if (sgn(m2) <= 0) throw SpecError(path + ".m[1]", "must be positive");
    return NewtonBody::diagonal(m1, m2);
  }
  if (kind == "scale") {
    expect_keys(spec, path, {"kind", "c", "body"});
    const Rational c = rational_at(field(spec, path, "c"), path + ".c");
    if (sgn(c) <= 0) throw SpecError(path + ".c", "must be positive");
    const NewtonBody inner = body_from_json(field(spec, path, "body"), path + ".body");
    return scale(inner, c);
  }
  if (kind == "sum") {
    expect_keys(spec, path, {"kind", "bodies"});
    const json& list = array_at(field(spec, path, "bodies"), path + ".bodies");
    if (list.empty()) throw SpecError(path + ".bodies", "needs at least one body");
    NewtonBody acc = body_from_json(list[0], path + ".bodies[0]");
    for (std::size_t i = 1; i < list.size(); ++i) {
      const NewtonBody next = body_from_json(list[i], path + ".bodies[" + std::to_string(i) + "]");
      acc = guarded(path, [&] { return minkowski_sum(acc, next); });
    }
    return acc;
  }
  if (kind == "canonical") return canonical_from_json(spec, path);
  throw SpecError(path + ".kind", "unknown kind \"" + kind + "\"");
}

NewtonBody parse_body_spec(std::string_view text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("$", std::string("malformed JSON: ") + e.what());
  }
  return body_from_json(spec);
}

NewtonBody load_body_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SpecError(file.string(), "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_body_spec(text.str());
  } catch (const SpecError& e) {
    throw SpecError(file.string() + ":" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

json canonical_json(const NewtonBody& body) {
  const auto point = [](const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); };
  json pieces = json::array();
  for (const auto& piece : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      pieces.push_back({{"type", "segment"}, {"start", point(seg->start)}, {"end", point(seg->end)}});
    } else {
      const auto& arc = std::get<Arc>(piece);
      pieces.push_back({{"type", "arc"},
                        {"a", to_string(arc.a)},
                        {"b", to_string(arc.b)},
                        {"s", to_string(arc.s)},
                        {"xlo", to_string(arc.xlo)},
                        {"xhi", arc.xhi ? json(to_string(*arc.xhi)) : json(nullptr)}});
    }
  }
  const auto& a = body.asymptotes();
  return {{"kind", "canonical"},
          {"asymptotes",
           {{"x0", to_string(a.x0)}, {"y0", to_string(a.y0)}, {"attained_x", a.attained_x}, {"attained_y", a.attained_y}}},
          {"pieces", pieces}};
}

}  // namespace njump
