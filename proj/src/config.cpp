#include "holoschwarz/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/fixtures.hpp"

namespace holoschwarz {

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::CheckCriterion, "check-criterion"}, {Command::ExtremalProfile, "extremal-profile"},
    {Command::Covering, "covering"},              {Command::VerifyIdentities, "verify-identities"},
    {Command::Injectivity, "injectivity"},        {Command::ReproduceExample, "reproduce-example"},
    {Command::Boundary, "boundary"},
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

[[noreturn]] void invalid(int line, const std::string& key, const std::string& why) {
  throw ConfigError("invalid-value", line, key + ": " + why);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) invalid(line, key, "not a number: '" + v + "'");
  return out;
}

long long to_int(const std::string& v, int line, const std::string& key) {
  long long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end) invalid(line, key, "not an integer: '" + v + "'");
  return out;
}

cplx to_complex(const std::string& v, int line, const std::string& key) {
  const auto colon = v.find(':');
  if (colon == std::string::npos) return {to_double(v, line, key), 0.0};
  return {to_double(trim(v.substr(0, colon)), line, key), to_double(trim(v.substr(colon + 1)), line, key)};
}

std::vector<double> to_doubles(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split(v, ',')) out.push_back(to_double(part, line, key));
  if (out.empty()) invalid(line, key, "empty list");
  return out;
}

double positive(double x, int line, const std::string& key) {
  if (!(x > 0.0)) invalid(line, key, "must be positive");
  return x;
}

int count_at_least(long long x, long long lo, int line, const std::string& key) {
  if (x < lo || x > 100'000'000) invalid(line, key, "must be an integer in [" + std::to_string(lo) + ", 1e8]");
  return static_cast<int>(x);
}

using Setter = std::function<void(RunConfig&, const std::string&, int, const std::string&)>;

const std::map<std::string, std::pair<std::string, Setter>>& setters() {
  static const std::map<std::string, std::pair<std::string, Setter>> table = {
      {"run.command", {"check-criterion", [](RunConfig& c, const std::string& v, int, const std::string&) {
                         c.command = parse_command(v);
                       }}},
      {"run.seed", {"0", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                      const long long s = to_int(v, l, k);
                      if (s < 0) invalid(l, k, "must be nonnegative");
                      c.seed = static_cast<std::uint64_t>(s);
                    }}},
      {"curve.kind", {"identity", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                        static const char* kinds[] = {"identity", "polynomial", "exponential", "mobius",
                                                      "tan",      "example1",   "example2"};
                        bool ok = false;
                        for (const char* s : kinds) ok = ok || v == s;
                        if (!ok) invalid(l, k, "unknown curve kind '" + v + "'");
                        c.curve.kind = v;
                        c.curve.explicit_kind = true;
                      }}},
      {"curve.c", {"fixture default", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                     c.curve.c = positive(to_double(v, l, k), l, k);
                   }}},
      {"curve.coeffs", {"(none)", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          c.curve.coeffs.clear();
                          for (const auto& comp : split(v, ';')) {
                            std::vector<cplx> row;
                            for (const auto& part : split(comp, ',')) row.push_back(to_complex(part, l, k));
                            if (row.empty()) invalid(l, k, "empty component");
                            c.curve.coeffs.push_back(std::move(row));
                          }
                          if (c.curve.coeffs.empty()) invalid(l, k, "no coefficients");
                        }}},
      {"nehari.kind", {"constant", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                         if (v != "constant" && v != "inverse_square" && v != "half_strip" && v != "tabulated")
                           invalid(l, k, "unknown weight kind '" + v + "'");
                         c.nehari.kind = v;
                       }}},
      {"nehari.value", {"2.4674011002723395", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          c.nehari.value = positive(to_double(v, l, k), l, k);
                        }}},
      {"nehari.scale", {"1", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          c.nehari.scale = positive(to_double(v, l, k), l, k);
                        }}},
      {"nehari.table_x", {"(none)", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                            c.nehari.table_x = to_doubles(v, l, k);
                          }}},
      {"nehari.table_p", {"(none)", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                            c.nehari.table_p = to_doubles(v, l, k);
                          }}},
      {"grid.n_r", {"64", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                      c.grid.n_r = count_at_least(to_int(v, l, k), 8, l, k);
                    }}},
      {"grid.n_theta", {"64", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          c.grid.n_theta = count_at_least(to_int(v, l, k), 8, l, k);
                        }}},
      {"grid.r_max", {"0.99", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                        const double r = to_double(v, l, k);
                        if (!(r > 0.0) || r > 1.0 - 1e-6) invalid(l, k, "must lie in (0, 1 - 1e-6]");
                        c.grid.r_max = r;
                      }}},
      {"grid.refine", {"0", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                         c.grid.refine_levels = count_at_least(to_int(v, l, k), 0, l, k);
                       }}},
      {"output.dir", {"(none)", [](RunConfig& c, const std::string& v, int, const std::string&) {
                        c.output_dir = v;
                      }}},
      {"profile.eps", {"1e-6", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                         const double e = to_double(v, l, k);
                         if (!(e > 0.0 && e < 0.1)) invalid(l, k, "must lie in (0, 0.1)");
                         c.profile_eps = e;
                       }}},
      {"injectivity.samples", {"10000", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                 c.injectivity_samples = count_at_least(to_int(v, l, k), 2, l, k);
                               }}},
      {"injectivity.delta", {"0.05", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                               const double d = to_double(v, l, k);
                               if (!(d > 0.0 && d < 1.0)) invalid(l, k, "must lie in (0, 1)");
                               c.injectivity_delta = d;
                             }}},
      {"injectivity.r_min", {"0", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                               const double r = to_double(v, l, k);
                               if (!(r >= 0.0 && r < 0.99)) invalid(l, k, "must lie in [0, 0.99)");
                               c.injectivity_r_min = r;
                             }}},
      {"covering.radii", {"0.3,0.5,0.7,0.9", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                            c.covering_radii = to_doubles(v, l, k);
                            for (double r : c.covering_radii)
                              if (!(r > 0.0 && r < 1.0)) invalid(l, k, "radii must lie in (0, 1)");
                          }}},
      {"covering.resolution", {"200", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                 c.covering_resolution = count_at_least(to_int(v, l, k), 16, l, k);
                               }}},
      {"covering.tolerance", {"0.002", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                c.covering_tolerance = positive(to_double(v, l, k), l, k);
                              }}},
      {"boundary.eps", {"0.001", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          const double e = to_double(v, l, k);
                          if (!(e >= 1e-4 && e <= 1e-2)) invalid(l, k, "must lie in [1e-4, 1e-2]");
                          c.boundary_eps = e;
                        }}},
      {"boundary.samples", {"2048", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                              c.boundary_samples = count_at_least(to_int(v, l, k), 16, l, k);
                            }}},
      {"boundary.rays", {"32", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                           c.boundary_rays = count_at_least(to_int(v, l, k), 1, l, k);
                         }}},
      {"boundary.s_points", {"100", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                               c.boundary_s_points = count_at_least(to_int(v, l, k), 1, l, k);
                             }}},
      {"example.which", {"1", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                           const long long w = to_int(v, l, k);
                           if (w != 1 && w != 2) invalid(l, k, "must be 1 or 2");
                           c.example = static_cast<int>(w);
                         }}},
      {"example.c", {"fixture default", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                       c.example_c = positive(to_double(v, l, k), l, k);
                     }}},
      {"suite.points", {"16", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                          c.suite_points = count_at_least(to_int(v, l, k), 1, l, k);
                        }}},
      {"tolerance.second_form", {"1e-8", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                   c.tol_second_form = positive(to_double(v, l, k), l, k);
                                 }}},
      {"tolerance.lemma2", {"1e-5", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                              c.tol_lemma2 = positive(to_double(v, l, k), l, k);
                            }}},
      {"tolerance.precomposition", {"1e-8", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                      c.tol_precomposition = positive(to_double(v, l, k), l, k);
                                    }}},
      {"tolerance.s1_range_mobius", {"1e-4", [](RunConfig& c, const std::string& v, int l, const std::string& k) {
                                       c.tol_s1_range_mobius = positive(to_double(v, l, k), l, k);
                                     }}},
  };
  return table;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommands)
    if (name == n) return cmd;
  throw ConfigError("invalid-value", 0, "unknown subcommand '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("syntax", line, "expected 'section.key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || key.find('.') == std::string::npos || key.find(' ') != std::string::npos)
      throw ConfigError("syntax", line, "malformed key '" + key + "'");
    if (value.empty()) throw ConfigError("syntax", line, "missing value for '" + key + "'");
    const auto& table = setters();
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown-key", line, "'" + key + "'");
    try {
      it->second.second(cfg, value, line, key);
    } catch (const ConfigError& e) {
      if (e.line() > 0) throw;
      throw ConfigError(e.kind(), line, e.what());
    }
    seen[key] = line;
  }

  auto line_of = [&](const std::string& key) {
    auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };

  // cross-field checks
  const std::string& kind = cfg.curve.kind;
  const int kl = line_of("curve.kind");
  if (kind == "example1") {
    Example1Params p;
    if (cfg.curve.c > 0.0) p.c = cfg.curve.c;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ConfigError("invalid-value", line_of("curve.c") ? line_of("curve.c") : kl, e.what());
    }
  } else if (kind == "example2") {
    Example2Params p;
    if (cfg.curve.c > 0.0) p.c = cfg.curve.c;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ConfigError("invalid-value", line_of("curve.c") ? line_of("curve.c") : kl, e.what());
    }
  } else if (kind != "identity") {
    const int cl = line_of("curve.coeffs") ? line_of("curve.coeffs") : kl;
    if (cfg.curve.coeffs.empty()) throw ConfigError("invalid-value", cl, "curve.coeffs required for kind " + kind);
    if (kind != "polynomial") {
      const std::size_t want = kind == "mobius" ? 4 : 2;
      for (const auto& row : cfg.curve.coeffs)
        if (row.size() != want)
          throw ConfigError("invalid-value", cl, kind + " components take " + std::to_string(want) + " values");
    }
    try {
      build_curve(cfg.curve);
    } catch (const DomainError& e) {
      throw ConfigError("invalid-value", cl, e.what());
    }
  }
  if (cfg.nehari.kind == "tabulated") {
    try {
      build_nehari(cfg.nehari);
    } catch (const DomainError& e) {
      const int tl = line_of("nehari.table_x") ? line_of("nehari.table_x") : line_of("nehari.kind");
      throw ConfigError("invalid-value", tl, e.what());
    }
  }
  if (cfg.example == 1 && cfg.example_c > 0.0) {
    try {
      Example1Params{cfg.example_c}.validate();
    } catch (const DomainError& e) {
      throw ConfigError("invalid-value", line_of("example.c"), e.what());
    }
  } else if (cfg.example == 2 && cfg.example_c > 0.0) {
    try {
      Example2Params{cfg.example_c}.validate();
    } catch (const DomainError& e) {
      throw ConfigError("invalid-value", line_of("example.c"), e.what());
    }
  }
  return cfg;
}

std::string config_reference() {
  std::ostringstream os;
  for (const auto& [key, entry] : setters()) os << key << " = " << entry.first << '\n';
  return os.str();
}

HoloCurve build_curve(const CurveConfig& c) {
  using namespace component;
  if (c.kind == "identity") return HoloCurve::identity();
  if (c.kind == "example1") return example1_curve(Example1Params{c.c > 0.0 ? c.c : Example1Params{}.c});
  if (c.kind == "example2") return example2_curve(Example2Params{c.c > 0.0 ? c.c : Example2Params{}.c});
  if (c.kind == "polynomial") return HoloCurve::polynomial(c.coeffs, "polynomial");
  std::vector<ComponentFn> comps;
  for (const auto& row : c.coeffs) {
    if (c.kind == "exponential") comps.emplace_back(Exponential{row.at(0), row.at(1)});
    else if (c.kind == "tan") comps.emplace_back(Tangent{row.at(0), row.at(1)});
    else if (c.kind == "mobius") comps.emplace_back(Mobius{row.at(0), row.at(1), row.at(2), row.at(3)});
    else throw DomainError("unknown curve kind '" + c.kind + "'");
  }
  return HoloCurve::from_components(std::move(comps), c.kind);
}

NehariFunction build_nehari(const NehariConfig& n) {
  NehariFunction p = NehariFunction::constant(n.value);
  if (n.kind == "inverse_square") p = NehariFunction::inverse_square();
  else if (n.kind == "half_strip") p = NehariFunction::half_strip();
  else if (n.kind == "tabulated") p = NehariFunction::tabulated(n.table_x, n.table_p);
  else if (n.kind != "constant") throw DomainError("unknown weight kind '" + n.kind + "'");
  return n.scale == 1.0 ? p : p.scaled(n.scale);
}

}  // namespace holoschwarz
