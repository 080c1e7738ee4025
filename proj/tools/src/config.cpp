#include "semiaut_tools/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace semiaut::tools {

namespace {

using Triples = std::vector<CircleTriple>;

KnobSpec integer_knob(std::string s, std::string k, std::int64_t v, std::string doc, std::int64_t floor = 1,
                      bool resolution = false) {
  return {std::move(s), std::move(k), KnobType::integer, v, std::move(doc), resolution, floor};
}
KnobSpec resolution_knob(std::string s, std::string k, std::int64_t v, std::string doc, std::int64_t floor) {
  return integer_knob(std::move(s), std::move(k), v, std::move(doc), floor, true);
}
KnobSpec real_knob(std::string s, std::string k, double v, std::string doc) {
  return {std::move(s), std::move(k), KnobType::real, v, std::move(doc)};
}
KnobSpec text_knob(std::string s, std::string k, std::string v, std::string doc) {
  return {std::move(s), std::move(k), KnobType::text, std::move(v), std::move(doc)};
}
KnobSpec list_knob(std::string s, std::string k, std::vector<double> v, std::string doc) {
  return {std::move(s), std::move(k), KnobType::real_list, std::move(v), std::move(doc)};
}
KnobSpec circle_knob(std::string s, std::string k, CircleTriple v, std::string doc) {
  return {std::move(s), std::move(k), KnobType::circle, v, std::move(doc)};
}
KnobSpec circles_knob(std::string s, std::string k, Triples v, std::string doc) {
  return {std::move(s), std::move(k), KnobType::circle_list, std::move(v), std::move(doc)};
}

std::vector<KnobSpec> build_schema() {
  const CircleTriple unit{0.0, 0.0, 1.0};
  const Triples generic{{0.45, 0.1, 0.12}, {-0.3, -0.2, 0.18}};
  const Triples symmetric{{0.5, 0.0, 0.15}, {-0.5, 0.0, 0.15}};
  return {
      text_knob("run", "experiment", "", "subcommand this file targets; must match the invoked one when set"),
      text_knob("run", "out", "results", "output directory, overridden by --out"),
      integer_knob("run", "seed", 20240601, "seed of every pseudo-random probe set", 0),

      integer_knob("bumps", "center_levels", 12, "bump centers c_k checked on the sphere for k = 1..center_levels"),
      real_knob("bumps", "center_tol", 1e-12, "allowed | |c_k| - 1 |"),
      integer_knob("bumps", "J", 12, "orbit truncation: level-i pieces at powers |m| <= J 2^(i-1)"),
      integer_knob("bumps", "levi_levels", 4, "Levi form sampled on the boundary of U_k for k = 1..levi_levels"),
      resolution_knob("bumps", "levi_points", 20, "boundary points per level (plus the cap over the bump)", 4),
      integer_knob("bumps", "distance_levels", 4, "stage pairs (k, k+1) compared for k = 1..distance_levels"),
      resolution_knob("bumps", "slice_resolution", 65, "nodes per axis of each default slice grid", 9),
      integer_knob("bumps", "orbit_exponent", 20, "orbit reach checked at powers +-2^orbit_exponent"),
      integer_knob("bumps", "orbit_levels", 3, "levels whose orbit reach is checked"),
      real_knob("bumps", "orbit_tol", 1e-3, "required distance of the orbit first coordinate to +-1"),
      integer_knob("bumps", "table_span", 12, "orbit-center table covers j = -span..span per level"),
      integer_knob("bumps", "containment_levels", 3, "levels whose generator images are checked"),
      resolution_knob("bumps", "containment_points", 200, "sampled stage points per level", 10),

      circle_knob("uniformize", "outer", unit, "outer boundary circle [x, y, r]"),
      circles_knob("uniformize", "holes", {{0.3, 0.0, 0.2}}, "hole circles [[x, y, r], ...]"),
      text_knob("uniformize", "file", "", "sampled-domain file; replaces outer/holes when set"),
      list_knob("uniformize", "basepoint", {-0.4, 0.0}, "interior basepoint [x, y] (ignored for files)"),
      resolution_knob("uniformize", "nodes", 256, "boundary samples per curve", 32),
      real_knob("uniformize", "tol", 1e-10, "circularity tolerance of the iteration"),
      integer_knob("uniformize", "max_sweeps", 40, "sweep limit"),

      circle_knob("autgroup", "outer", unit, "outer circle; must be the unit circle"),
      circles_knob("autgroup", "holes", symmetric, "hole circles"),
      real_knob("autgroup", "tol", 1e-9, "circle-image acceptance tolerance"),
      real_knob("autgroup", "axiom_tol", 1e-6, "allowed closure and inverse defects of the element list"),
      resolution_knob("autgroup", "theta_steps", 720, "rotation samples of the seed search", 90),
      resolution_knob("autgroup", "alpha_grid", 41, "radial and angular samples of the seed search", 11),
      integer_knob("autgroup", "samples", 8, "elements listed for continuous groups"),

      text_knob("semicont", "family", "symmetric", "perturbation family: symmetric or asymmetric"),
      list_knob("semicont", "epsilons", {0.02, 0.01, 0.005}, "perturbation sizes, decreasing"),
      resolution_knob("semicont", "nodes", 256, "boundary samples per curve", 64),
      real_knob("semicont", "tol", 1e-6, "injectivity and composition-table tolerance"),

      circle_knob("bergman", "outer", unit, "outer circle"),
      circles_knob("bergman", "holes", {{0.0, 0.0, 0.4}}, "hole circles"),
      integer_knob("bergman", "N", 30, "basis truncation per boundary circle"),
      resolution_knob("bergman", "probes", 50, "interior probe points", 8),
      real_knob("bergman", "margin", 0.2, "probe boundary distance as a fraction of the smallest gap"),

      circle_knob("stability", "outer", unit, "outer circle of the base domain"),
      circles_knob("stability", "holes", {{0.0, 0.0, 0.4}}, "hole circles of the base domain"),
      list_knob("stability", "epsilons", {0.01, 0.005}, "hole radii scaled by 1 + eps; successive ratios checked"),
      integer_knob("stability", "N", 60, "basis truncation"),
      resolution_knob("stability", "probes", 40, "probe pairs", 8),
      list_knob("stability", "ratio_window", {1.6, 2.4}, "allowed kernel-distance ratio when eps halves"),

      real_knob("curvature", "annulus_radius", 0.4, "inner radius of the annulus case"),
      integer_knob("curvature", "annulus_outer_degree", 500, "outer truncation for the annulus"),
      integer_knob("curvature", "annulus_hole_degree", 300, "hole truncation for the annulus"),
      circles_knob("curvature", "triple_holes", generic, "holes of the triply connected case"),
      integer_knob("curvature", "triple_outer_degree", 800, "outer truncation for the triple domain"),
      integer_knob("curvature", "triple_hole_degree", 200, "hole truncation for the triple domain"),
      resolution_knob("curvature", "probes", 64, "near-boundary probes per domain", 8),
      list_knob("curvature", "band", {0.04, 0.05}, "probe boundary distance range as a fraction of the local gap"),

      real_knob("wongrosay", "annulus_radius", 0.4, "inner radius of case (b)"),
      circles_knob("wongrosay", "generic_holes", generic, "holes of the generic case"),
      circles_knob("wongrosay", "symmetric_holes", symmetric, "holes of the symmetric case"),
      list_knob("wongrosay", "point", {0.0, 0.6}, "orbit base point X, inside every case"),
      resolution_knob("wongrosay", "orbit_samples", 64, "sampled elements of continuous groups", 8),
      integer_knob("wongrosay", "escape_steps", 30, "length of the disc sequence a_j = 1 - 2^-j"),
      real_knob("wongrosay", "tol", 1e-9, "automorphism search tolerance"),
      real_knob("wongrosay", "accumulation_tol", 1e-6, "disc orbit must come this close to the boundary"),
      real_knob("wongrosay", "compact_ratio", 0.05, "compact cases keep min orbit boundary distance above this "
                                                     "fraction of dist(X, boundary)"),
  };
}

std::string join_key(const std::string& s, const std::string& k) { return s + "." + k; }

const KnobSpec* find_spec(const std::string& s, const std::string& k) {
  for (const auto& spec : knob_schema()) {
    if (spec.section == s && spec.key == k) return &spec;
  }
  return nullptr;
}

// shortest text that reads back to the same double
std::string real_text(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double as_real(const YAML::Node& n, const std::string& file, const std::string& what) {
  if (!n.IsScalar()) throw ConfigError(file, n.Mark().line + 1, what + ": expected a number");
  double v = 0.0;
  if (!YAML::convert<double>::decode(n, v) || !std::isfinite(v)) {
    throw ConfigError(file, n.Mark().line + 1, what + ": '" + n.Scalar() + "' is not a finite number");
  }
  return v;
}

CircleTriple as_circle(const YAML::Node& n, const std::string& file, const std::string& what) {
  if (!n.IsSequence() || n.size() != 3) {
    throw ConfigError(file, n.Mark().line + 1, what + ": expected a circle [x, y, r]");
  }
  CircleTriple c{as_real(n[0], file, what), as_real(n[1], file, what), as_real(n[2], file, what)};
  if (!(c[2] > 0.0)) throw ConfigError(file, n.Mark().line + 1, what + ": circle radius must be positive");
  return c;
}

KnobValue convert(const KnobSpec& spec, const YAML::Node& n, const std::string& file) {
  const std::string what = join_key(spec.section, spec.key);
  const int line = n.Mark().line + 1;
  switch (spec.type) {
    case KnobType::integer: {
      std::int64_t v = 0;
      if (!n.IsScalar() || !YAML::convert<std::int64_t>::decode(n, v)) {
        throw ConfigError(file, line, what + ": expected an integer");
      }
      if (v < spec.floor) throw ConfigError(file, line, what + ": must be at least " + std::to_string(spec.floor));
      return v;
    }
    case KnobType::real:
      return as_real(n, file, what);
    case KnobType::boolean: {
      bool v = false;
      if (!n.IsScalar() || !YAML::convert<bool>::decode(n, v)) {
        throw ConfigError(file, line, what + ": expected true or false");
      }
      return v;
    }
    case KnobType::text:
      if (!n.IsScalar()) throw ConfigError(file, line, what + ": expected a string");
      return n.Scalar();
    case KnobType::real_list: {
      if (!n.IsSequence()) throw ConfigError(file, line, what + ": expected a list of numbers");
      std::vector<double> v;
      for (const auto& e : n) v.push_back(as_real(e, file, what));
      return v;
    }
    case KnobType::circle:
      return as_circle(n, file, what);
    case KnobType::circle_list: {
      if (!n.IsSequence()) throw ConfigError(file, line, what + ": expected a list of circles");
      Triples v;
      for (const auto& e : n) v.push_back(as_circle(e, file, what));
      return v;
    }
  }
  throw ConfigError(file, line, what + ": unsupported knob type");
}

// knob-specific rules beyond the type
void check_semantics(const KnobSpec& spec, const KnobValue& v, const std::string& file, int line) {
  const std::string what = join_key(spec.section, spec.key);
  if (spec.section == "semicont" && spec.key == "family") {
    const auto& s = std::get<std::string>(v);
    if (s != "symmetric" && s != "asymmetric") {
      throw ConfigError(file, line, what + ": expected symmetric or asymmetric, got '" + s + "'");
    }
  }
  if (spec.type == KnobType::real_list) {
    const auto& l = std::get<std::vector<double>>(v);
    if (spec.key == "epsilons") {
      if (l.empty()) throw ConfigError(file, line, what + ": needs at least one value");
      for (double e : l) {
        if (!(e > 0.0)) throw ConfigError(file, line, what + ": values must be positive");
      }
    }
    const bool pair = spec.key == "basepoint" || spec.key == "point" || spec.key == "band" || spec.key == "ratio_window";
    if (pair && l.size() != 2) throw ConfigError(file, line, what + ": expected exactly two numbers");
    if ((spec.key == "band" || spec.key == "ratio_window") && !(l[0] > 0.0 && l[0] < l[1])) {
      throw ConfigError(file, line, what + ": expected 0 < low < high");
    }
  }
  if (spec.type == KnobType::real && !(std::get<double>(v) > 0.0)) {
    throw ConfigError(file, line, what + ": must be positive");
  }
}

}  // namespace

const std::vector<KnobSpec>& knob_schema() {
  static const std::vector<KnobSpec> schema = build_schema();
  return schema;
}

std::vector<std::string> schema_sections() {
  std::vector<std::string> out;
  for (const auto& s : knob_schema()) {
    if (std::find(out.begin(), out.end(), s.section) == out.end()) out.push_back(s.section);
  }
  return out;
}

std::string describe_schema() {
  std::ostringstream os;
  for (const auto& sec : schema_sections()) {
    os << sec << ":\n";
    for (const auto& s : knob_schema()) {
      if (s.section != sec) continue;
      os << "  " << s.key << ": " << format_knob(s.fallback) << "\n      " << s.doc;
      if (s.resolution) os << " (halved by --quick, minimum " << s.floor << ")";
      os << "\n";
    }
  }
  return os.str();
}

std::string format_knob(const KnobValue& v) {
  struct Visitor {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return real_text(d); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
    std::string operator()(const std::vector<double>& l) const {
      std::string out = "[";
      for (std::size_t i = 0; i < l.size(); ++i) out += (i ? ", " : "") + real_text(l[i]);
      return out + "]";
    }
    std::string operator()(const CircleTriple& c) const {
      return "[" + real_text(c[0]) + ", " + real_text(c[1]) + ", " + real_text(c[2]) + "]";
    }
    std::string operator()(const Triples& l) const {
      std::string out = "[";
      for (std::size_t i = 0; i < l.size(); ++i) out += (i ? ", " : "") + (*this)(l[i]);
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

ConfigError::ConfigError(std::string file, int line, std::string msg) : line_(line) {
  text_ = file;
  if (line > 0) text_ += ":" + std::to_string(line);
  text_ += ": " + msg;
}

ExperimentConfig::ExperimentConfig() {
  for (const auto& s : knob_schema()) {
    values_[join_key(s.section, s.key)] = s.fallback;
    set_[join_key(s.section, s.key)] = false;
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source, e.mark.line + 1, e.msg);
  }
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError(source, root.Mark().line + 1, "expected a mapping of sections");
  const auto sections = schema_sections();
  std::set<std::string> seen_sections;
  for (const auto& entry : root) {
    const std::string sec = entry.first.Scalar();
    const int line = entry.first.Mark().line + 1;
    if (std::find(sections.begin(), sections.end(), sec) == sections.end()) {
      throw ConfigError(source, line, "unknown section '" + sec + "'");
    }
    if (!seen_sections.insert(sec).second) throw ConfigError(source, line, "duplicate section '" + sec + "'");
    if (entry.second.IsNull()) continue;
    if (!entry.second.IsMap()) throw ConfigError(source, line, "section '" + sec + "' must hold key: value pairs");
    std::set<std::string> seen;
    for (const auto& kv : entry.second) {
      const std::string key = kv.first.Scalar();
      const int kline = kv.first.Mark().line + 1;
      const KnobSpec* spec = find_spec(sec, key);
      if (spec == nullptr) throw ConfigError(source, kline, "unknown key '" + key + "' in section '" + sec + "'");
      if (!seen.insert(key).second) throw ConfigError(source, kline, "duplicate key '" + join_key(sec, key) + "'");
      KnobValue v = convert(*spec, kv.second, source);
      check_semantics(*spec, v, source, kline);
      cfg.values_[join_key(sec, key)] = std::move(v);
      cfg.set_[join_key(sec, key)] = true;
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const KnobValue& ExperimentConfig::value(const std::string& section, const std::string& key, KnobType type) const {
  const KnobSpec* spec = find_spec(section, key);
  if (spec == nullptr || spec->type != type) {
    throw ConfigError("<schema>", 0, "no knob " + join_key(section, key) + " of the requested type");
  }
  return values_.at(join_key(section, key));
}

std::int64_t ExperimentConfig::integer(const std::string& section, const std::string& key) const {
  const auto v = std::get<std::int64_t>(value(section, key, KnobType::integer));
  const KnobSpec* spec = find_spec(section, key);
  if (quick_ && spec->resolution) return std::max(spec->floor, v / 2);
  return v;
}

double ExperimentConfig::real(const std::string& section, const std::string& key) const {
  return std::get<double>(value(section, key, KnobType::real));
}

bool ExperimentConfig::boolean(const std::string& section, const std::string& key) const {
  return std::get<bool>(value(section, key, KnobType::boolean));
}

const std::string& ExperimentConfig::text(const std::string& section, const std::string& key) const {
  return std::get<std::string>(value(section, key, KnobType::text));
}

const std::vector<double>& ExperimentConfig::real_list(const std::string& section, const std::string& key) const {
  return std::get<std::vector<double>>(value(section, key, KnobType::real_list));
}

Circle ExperimentConfig::circle(const std::string& section, const std::string& key) const {
  const auto& c = std::get<CircleTriple>(value(section, key, KnobType::circle));
  return Circle{cplx(c[0], c[1]), c[2]};
}

std::vector<Circle> ExperimentConfig::circle_list(const std::string& section, const std::string& key) const {
  std::vector<Circle> out;
  for (const auto& c : std::get<Triples>(value(section, key, KnobType::circle_list))) {
    out.push_back(Circle{cplx(c[0], c[1]), c[2]});
  }
  return out;
}

bool ExperimentConfig::is_set(const std::string& section, const std::string& key) const {
  const auto it = set_.find(join_key(section, key));
  return it != set_.end() && it->second;
}

std::vector<std::string> ExperimentConfig::effective(const std::string& section) const {
  std::vector<std::string> out;
  for (const auto& s : knob_schema()) {
    if (s.section != section) continue;
    KnobValue v = values_.at(join_key(s.section, s.key));
    if (s.type == KnobType::integer) v = integer(s.section, s.key);
    out.push_back(join_key(s.section, s.key) + " = " + format_knob(v));
  }
  return out;
}

}  // namespace semiaut::tools
