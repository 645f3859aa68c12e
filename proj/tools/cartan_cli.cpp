// cartan: batch JSON front end for the library.
//
// Exit status: 0 verdict produced (including negative verdicts), 2 malformed
// input or violated precondition, 3 cap exceeded or undecided, 1 anything else.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cartan.hpp"
#include "cartan/json_io.hpp"

namespace {

using namespace cartan;
using io::Json;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCap = 3;

struct Options {
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultCrossRatioCap;
  double tolerance = 1e-12;
  std::string output;
};

class InputHash {
 public:
  void add(const std::string& bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Run {
  std::string command;
  InputHash hash;
  int status = kExitOk;

  Json read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    hash.add(ss.str());
    try {
      return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
      throw Error(Errc::ParseError, path + ": " + e.what());
    }
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> v;
  for (const auto& part : split(s, ',')) v.push_back(Rational::parse(part));
  return v;
}

Json affine_values(const std::vector<ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(io::affine_json(p));
  return a;
}

Json uc_json(const UnorderedCrossRatio& uc) {
  Json j{{"size", uc.size()}, {"tuples", io::to_json(uc)}};
  if (!uc.tuples.empty() && uc.tuples.front().entries.size() == 1 && uc.tuples.front().entries[0].size() == 2) {
    std::vector<ProjPoint> singles;
    for (const auto& t : uc.tuples) singles.push_back(t.entries[0]);
    j["affine"] = affine_values(singles);
  }
  return j;
}

// ---- verbs --------------------------------------------------------------------

Json cross_ratio_cmd(Run& run, const Options& opt, const std::string& path) {
  const AugmentedBasis basis(io::points_from(run.read(path)));
  const auto ordered = ordered_cross_ratio(basis.points());
  Json j{{"n", basis.n()}, {"m", basis.m()}, {"ordered", io::to_json(ordered)}};
  if (basis.n() == 2) j["ordered_affine"] = affine_values(ordered.entries);
  j["unordered"] = uc_json(unordered_cross_ratio(basis.points(), opt.cap));
  return j;
}

Json equivalent_cmd(Run& run, const Options& opt, const std::string& left, const std::string& right) {
  const auto a = io::points_from(run.read(left));
  const auto b = io::points_from(run.read(right));
  const auto uca = unordered_cross_ratio(a, opt.cap);
  const auto ucb = unordered_cross_ratio(b, opt.cap);
  const auto q = projectively_equivalent(a, b);
  return Json{{"conjugate", q.has_value()},
              {"witness", q ? io::to_json(q->matrix()) : Json(nullptr)},
              {"uc_left", uc_json(uca)},
              {"uc_right", uc_json(ucb)}};
}

Json seed_conjugate_cmd(Run& run, const Options& opt, const std::string& left, const std::string& right) {
  const auto t = io::seed_from(run.read(left));
  const auto s = io::seed_from(run.read(right));
  const auto w = are_conjugate(t, s);
  Json j{{"conjugate", w.has_value()}, {"witness", w ? io::to_json(w->conjugator) : Json(nullptr)}};
  if (w) {
    Json rows = Json::array();
    for (auto r : w->row_map) rows.push_back(r + 1);
    j["row_map"] = rows;
    j["dual_map"] = io::to_json(w->dual_map.matrix());
  }
  j["uc_left"] = uc_json(unordered_cross_ratio(exceptional_dual_basis(t).points(), opt.cap));
  j["uc_right"] = uc_json(unordered_cross_ratio(exceptional_dual_basis(s).points(), opt.cap));
  return j;
}

Json orbit_dim_cmd(Run& run, const std::string& path, const std::string& point) {
  const auto t = io::seed_from(run.read(path));
  run.hash.add(point);
  const ProjPoint x(rational_list(point));
  return Json{{"seed", io::to_json(t)},
              {"point", io::to_json(x)},
              {"max_dim", t.m() + 1},
              {"orbit", io::to_json(orbit_dimension(t, x))}};
}

Json alpha_orbit_cmd(Run& run, const std::string& alpha_text) {
  run.hash.add(alpha_text);
  const auto alpha = Rational::parse(alpha_text);
  const auto orbit = alpha_orbit(alpha);
  return Json{{"alpha", io::to_json(alpha)},
              {"orbit", affine_values(orbit)},
              {"size", orbit.size()},
              {"conjugate_alphas", io::to_json(conjugate_alphas(alpha))}};
}

Json converge_cmd(Run& run, const Options& opt, const std::string& path, const std::string& a_text,
                  const std::string& b_text, const std::string& schedule_text) {
  const auto t = io::seed_from(run.read(path));
  run.hash.add(a_text);
  run.hash.add(b_text);
  run.hash.add(schedule_text);
  GroupElementParams p = GroupElementParams::zero(t);
  SeededRng rng(opt.seed);
  for (auto& v : p.a) v = rng.rational(9, 4);
  for (auto& v : p.b) v = rng.rational(9, 4);
  if (!a_text.empty()) p.a = rational_list(a_text);
  if (!b_text.empty()) p.b = rational_list(b_text);
  check_params(t, p);
  const auto schedule = rational_list(schedule_text);

  const auto trace = convergence_report(t, p, schedule);
  const std::size_t m = t.m(), piv = trace.pivot_cols.empty() ? 0 : trace.pivot_cols.front();
  double identity_error = 0.0;
  for (const auto& r : schedule) {
    const auto g = conjugated_element(t, p, r);
    for (std::size_t i = 0; i < t.n(); ++i)
      identity_error = std::max(identity_error, std::abs(g(m, m + 1 + i) - p.b[i].to_double()));
    for (std::size_t j = 0; j < m; ++j)
      identity_error =
          std::max(identity_error, std::abs(g(j, m + 1 + piv) - (t.matrix()(j, piv) * p.a[j]).to_double()));
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < trace.distances.size(); ++k) decreasing &= trace.distances[k] < trace.distances[k - 1];

  Json j{{"seed_matrix", io::to_json(t)}, {"target", io::to_json(p)}, {"pivot_col", piv + 1}};
  j["trace"] = io::to_json(trace);
  j["decreasing"] = decreasing;
  j["identity_error"] = identity_error;
  j["identities_hold"] = identity_error <= opt.tolerance;
  return j;
}

Json flat_cmd(Run& run, const std::string& path) {
  const auto g = io::group_from(run.read(path));
  const auto r = flatness_check(g);
  return Json{{"verdict", r.verdict == Flatness::Flat ? "flat" : "not-flat"},
              {"hull_dim", r.hull_dim},
              {"dim_params", r.dim_params},
              {"sample_kind", r.sample_kind},
              {"sample_size", r.sample.size()}};
}

Json tier_cmd(Run& run, const Options& opt, const std::string& path) {
  const auto g = io::group_from(run.read(path));
  const auto r = tier(g, opt.seed);
  return Json{{"tier", r.tier}, {"witness", io::to_json(r.witness)}, {"samples", r.samples}, {"seed", r.seed}};
}

Json tier_one_cmd(Run& run, const Options& opt, const std::string& path) {
  const auto f = io::family_from(run.read(path));
  const auto r = has_tier_one_element(f, opt.seed);
  Json cert = Json::array();
  for (const auto& s : r.certificate) cert.push_back(io::to_json(s));
  Json j{{"verdict", io::verdict_name(r.verdict)},
         {"certificate", cert},
         {"certificate_replays", r.verdict == TierOneVerdict::No && replay_certificate(f, r.certificate)},
         {"witness", r.verdict == TierOneVerdict::Witness ? io::to_json(r.witness) : Json(nullptr)},
         {"search_attempts", r.search_attempts}};
  if (r.verdict == TierOneVerdict::Undecided) run.status = kExitCap;
  return j;
}

Json flag_cmd(Run& run, const Options& opt, const std::string& path) {
  const auto t = io::seed_from(run.read(path));
  const auto prof = flag_tier_profile(t, opt.seed);
  return Json{{"tiers", prof.tiers}, {"bound_holds", prof.bound_holds}};
}

Json bounds_cmd(Run& run, const std::string& range) {
  run.hash.add(range);
  const auto parts = split(range, ':');
  if (parts.size() > 2 || parts.front().empty()) throw Error(Errc::ParseError, "k-range must be K or LO:HI");
  std::int64_t lo = 0, hi = 0;
  try {
    lo = std::stoll(parts.front());
    hi = parts.size() == 2 ? std::stoll(parts.back()) : lo;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "k-range must be integers");
  }
  const auto reports = verify_bounds(lo, hi);
  Json arr = Json::array();
  bool all_ok = true;
  for (const auto& r : reports) {
    arr.push_back(io::to_json(r));
    all_ok &= r.ok;
  }
  return Json{{"k_lo", lo}, {"k_hi", hi}, {"all_ok", all_ok}, {"reports", arr}};
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::CapExceeded:
    case Errc::SampleCapExceeded:
      return kExitCap;
    default:
      return kExitBadInput;
  }
}

void emit(const Options& opt, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + opt.output + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limits of Cartan subgroups: cross ratios, L_T conjugacy, convergence, obstructions, bounds"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--cap", opt.cap, "Largest point set for unordered cross ratios")->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "Tolerance for the numeric identities in converge")
      ->capture_default_str();
  app.add_option("--output,-o", opt.output, "Write the document here instead of stdout");

  std::string in1, in2, point, alpha, a_text, b_text, schedule = "10,100,1000", k_range = "7:200";

  auto* cross = app.add_subcommand("cross-ratio", "Ordered and unordered cross ratio of a point set");
  cross->add_option("points", in1, "Point-set JSON")->required();
  auto* equiv = app.add_subcommand("equivalent", "Projective equivalence of two point sets");
  equiv->add_option("left", in1)->required();
  equiv->add_option("right", in2)->required();
  auto* seedc = app.add_subcommand("seed-conjugate", "Conjugacy of L_T and L_S");
  seedc->add_option("left", in1)->required();
  seedc->add_option("right", in2)->required();
  auto* orbit = app.add_subcommand("orbit-dim", "Orbit-closure dimension of a point under L_T");
  orbit->add_option("seed", in1)->required();
  orbit->add_option("--point", point, "Comma-separated homogeneous coordinates")->required();
  auto* alpha_cmd = app.add_subcommand("alpha-orbit", "Cross-ratio values and conjugate parameters of L_alpha");
  alpha_cmd->add_option("--alpha", alpha)->required();
  auto* conv = app.add_subcommand("converge", "Diagonal conjugates approaching rho_T(a, b)");
  conv->add_option("seed", in1)->required();
  conv->add_option("--a", a_text, "Comma-separated a_1..a_m (default: seeded random)");
  conv->add_option("--b", b_text, "Comma-separated b_1..b_n (default: seeded random)");
  conv->add_option("--r-schedule", schedule)->capture_default_str();
  auto* obs = app.add_subcommand("obstruct", "Flatness and tier obstructions");
  obs->require_subcommand(1);
  auto* flat = obs->add_subcommand("flat", "Flatness of a polynomial group");
  flat->add_option("group", in1)->required();
  auto* tier_sub = obs->add_subcommand("tier", "Tier of a polynomial group");
  tier_sub->add_option("group", in1)->required();
  auto* tone = obs->add_subcommand("tier-one", "Rank-one elements of a linear block family");
  tone->add_option("family", in1)->required();
  auto* flag = obs->add_subcommand("flag", "Tiers along the coordinate flag of L_T");
  flag->add_option("seed", in1)->required();
  auto* bnd = app.add_subcommand("bounds", "Integer optimization behind the dimension bounds");
  bnd->add_option("--k-range", k_range, "K or LO:HI")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  Run run;
  try {
    Json result;
    if (*cross) {
      run.command = "cross-ratio";
      result = cross_ratio_cmd(run, opt, in1);
    } else if (*equiv) {
      run.command = "equivalent";
      result = equivalent_cmd(run, opt, in1, in2);
    } else if (*seedc) {
      run.command = "seed-conjugate";
      result = seed_conjugate_cmd(run, opt, in1, in2);
    } else if (*orbit) {
      run.command = "orbit-dim";
      result = orbit_dim_cmd(run, in1, point);
    } else if (*alpha_cmd) {
      run.command = "alpha-orbit";
      result = alpha_orbit_cmd(run, alpha);
    } else if (*conv) {
      run.command = "converge";
      result = converge_cmd(run, opt, in1, a_text, b_text, schedule);
    } else if (*flat) {
      run.command = "obstruct flat";
      result = flat_cmd(run, in1);
    } else if (*tier_sub) {
      run.command = "obstruct tier";
      result = tier_cmd(run, opt, in1);
    } else if (*tone) {
      run.command = "obstruct tier-one";
      result = tier_one_cmd(run, opt, in1);
    } else if (*flag) {
      run.command = "obstruct flag";
      result = flag_cmd(run, opt, in1);
    } else {
      run.command = "bounds";
      result = bounds_cmd(run, k_range);
    }
    run.hash.add(std::to_string(opt.seed) + "|" + std::to_string(opt.cap));
    Json doc{{"tool", "cartan"},
             {"version", kVersion},
             {"command", run.command},
             {"seed", opt.seed},
             {"cap", opt.cap},
             {"input_hash", run.hash.hex()},
             {"result", result}};
    emit(opt, doc);
    return run.status;
  } catch (const Error& e) {
    std::cerr << Json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    std::cerr << Json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitInternal;
  }
}
