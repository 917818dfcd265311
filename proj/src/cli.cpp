#include "exptop/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "exptop/complexes.hpp"
#include "exptop/config.hpp"
#include "exptop/finite_group.hpp"
#include "exptop/groups.hpp"

namespace exptop::cli {

using Json = nlohmann::ordered_json;

namespace {

// Values below 1e-14 in magnitude are treated as rounding noise around 0.
double round12(double x) {
  if (std::abs(x) < 1e-14) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json number(double x) {
  double r = round12(x);
  if (std::abs(r) < 1e15 && r == std::floor(r)) return Json(static_cast<long long>(r));
  return Json(r);
}

Json complex_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

struct RunConfig {
  double tol = kDistinctTol;
  std::string format;
  std::string out_path;
};

/// Raised for failed internal certificates; maps to exit code 1.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, else to the primary stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw CLI::ValidationError("--out", "cannot open '" + path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---- coord ---------------------------------------------------------------

Json coord_record(const FiniteSubset& s) {
  Exp3Coord c = exp3_coord(s);
  Json j;
  if (auto* c1 = std::get_if<C1Coord>(&c)) {
    j["tag"] = "C1";
    j["alpha"] = number(c1->alpha);
  } else if (auto* c2 = std::get_if<C2Coord>(&c)) {
    j["tag"] = "C2";
    j["phi"] = number(c2->phi);
    j["theta"] = number(c2->theta);
  } else {
    const auto& c3 = std::get<C3Coord>(c);
    j["tag"] = "C3";
    j["z"] = complex_json(c3.z);
    j["theta"] = number(c3.theta);
    Json orbit = Json::array();
    for (const Frame& f : c3_orbit(s)) orbit.push_back(Json{{"z", complex_json(f.z)}, {"theta", number(f.theta)}});
    j["orbit"] = std::move(orbit);
  }
  return j;
}

int cmd_coord(const RunConfig& cfg, const std::vector<double>& points, std::ostream& out) {
  if (points.empty() || points.size() > FiniteSubset::kMaxSize) {
    throw CLI::ValidationError("points", "coord takes 1 to 3 angles");
  }
  if (!cfg.format.empty() && cfg.format != "json") throw CLI::ValidationError("--format", "coord prints json only");
  FiniteSubset s(points, cfg.tol);
  Sink sink(cfg.out_path, out);
  sink.stream() << coord_record(s).dump() << '\n';
  return kExitOk;
}

// ---- knot ----------------------------------------------------------------

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

int cmd_knot(const RunConfig& cfg, const std::string& curve, double eps, std::size_t samples, std::ostream& out) {
  SampledLoop loop;
  if (curve == "torus") {
    if (!(eps > 0.0 && eps < kPi / 4)) throw CLI::ValidationError("--eps", "must lie in (0, pi/4)");
    loop = boundary_torus_curve(eps, samples);
  } else if (curve == "core") {
    loop = core_circle(samples);
  } else {
    loop = loop_a(FiniteSubset{0.0}, samples);
  }
  std::string format = cfg.format.empty() ? "csv" : cfg.format;

  Winding w{};
  bool undersampled = false;
  std::string problem;
  try {
    w = winding_diagnostic(loop);
  } catch (const UndersampledLoop& e) {
    undersampled = true;
    problem = e.what();
  }

  Sink sink(cfg.out_path, out);
  std::ostream& data = sink.stream();
  if (format == "csv" || sink.to_file()) {
    data << "index,angle1,angle2,phi,theta\n";
    for (std::size_t i = 0; i < loop.samples.size(); ++i) {
      const FiniteSubset& s = loop.samples[i];
      data << i << ',' << csv_number(s[0]) << ',';
      if (s.size() == 2) {
        C2Coord c = c2_coord(s);
        data << csv_number(s[1]) << ',' << csv_number(c.phi) << ',' << csv_number(c.theta);
      } else {
        data << ",,";
      }
      data << '\n';
    }
  }
  if (undersampled) {
    out.flush();
    throw VerificationFailure(problem);
  }
  if (format == "json") {
    Json j{{"curve", curve}, {"eps", number(eps)}, {"samples", samples},
           {"windings", Json::array({w.longitudinal, w.meridional})}};
    out << j.dump() << '\n';
  } else {
    out << "windings: (" << w.longitudinal << ", " << w.meridional << ")\n";
  }
  return kExitOk;
}

// ---- homology --------------------------------------------------------------

int cmd_homology(const RunConfig& cfg, int k, int n, bool relative, std::ostream& out) {
  if (relative && k != 3) throw CLI::ValidationError("--relative", "requires --k 3");
  std::string format = cfg.format.empty() ? "json" : cfg.format;
  SimplicialComplex complex = build_exp_complex(k, n);
  bool squared_zero = ChainComplexZ::from_complex(complex).boundary_squared_zero();
  HomologyResult h = relative ? relative_quotient_homology(n) : homology(complex);

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  if (format == "csv") {
    os << "dim,betti,torsion\n";
    for (std::size_t d = 0; d < h.groups.size(); ++d) {
      os << d << ',' << h.groups[d].rank << ',';
      for (std::size_t i = 0; i < h.groups[d].torsion.size(); ++i) os << (i ? " " : "") << h.groups[d].torsion[i];
      os << '\n';
    }
  } else {
    Json counts = Json::array();
    for (int d = 0; d <= complex.dimension(); ++d) counts.push_back(complex.count(d));
    Json groups = Json::array();
    for (std::size_t d = 0; d < h.groups.size(); ++d) {
      Json torsion = Json::array();
      for (const Integer& t : h.groups[d].torsion) torsion.push_back(t.str());
      groups.push_back(Json{{"dim", d}, {"betti", h.groups[d].rank}, {"torsion", torsion}});
    }
    Json j{{"k", k},
           {"n", n},
           {"relative", relative},
           {"simplices", counts},
           {"boundary_squared_zero", squared_zero},
           {"groups", groups}};
    os << j.dump() << '\n';
  }
  if (!squared_zero) throw VerificationFailure("boundary of boundary is nonzero");
  return kExitOk;
}

// ---- pi1 -----------------------------------------------------------------

// Z^2 = <a, b | [a, b]>, the group of the torus along which pieces are glued.
Presentation torus_group() { return Presentation::parse("gens: a b; rels: [a,b]"); }

struct Record {
  std::vector<std::pair<std::string, Json>> fields;
  void add(std::string key, Json value) { fields.emplace_back(std::move(key), std::move(value)); }
};

std::string hom_check_name(HomCheck c) {
  switch (c) {
    case HomCheck::Verified:
      return "verified";
    case HomCheck::Failed:
      return "failed";
    case HomCheck::Unchecked:
      break;
  }
  return "unchecked";
}

void check_maps(const PushoutData& d, Record& rec, bool& ok) {
  HomCheck left = GroupHom{d.c, d.a, d.c_to_a}.check();
  HomCheck right = GroupHom{d.c, d.b, d.c_to_b}.check();
  rec.add("maps", hom_check_name(left) + "," + hom_check_name(right));
  ok = ok && left != HomCheck::Failed && right != HomCheck::Failed;
}

PushoutData bprime_data() {
  // Boundary circle t of the thickened core, sent to a in the torus and to
  // c^2 in the core circle group.
  return PushoutData{torus_group(), Presentation({"c"}, {}), Presentation({"t"}, {}), {{1}}, {{1, 1}}};
}

Presentation bprime_expected() { return Presentation::parse("gens: b c; rels: [c^2,b]"); }

int cmd_pi1(const RunConfig& cfg, const std::string& which, std::ostream& out) {
  Record rec;
  bool ok = true;
  if (which == "exp3") {
    PushoutData d{Presentation({"s"}, {}), Presentation({"t"}, {}), torus_group(), {{1, 1, 1}, {1}}, {{1, 1}, {1}}};
    Presentation p = pushout(d);
    check_maps(d, rec, ok);
    rec.add("assembled", p.pretty());
    rec.add("simplified", tietze_simplify(p).presentation.pretty());
    CosetResult c = coset_enumeration(p, 100);
    bool verified = c.order && verify_coset_table(p, c.table);
    rec.add("order", c.order ? Json(*c.order) : Json("inconclusive"));
    rec.add("cosets_defined", c.cosets_defined);
    rec.add("table_verified", verified);
    ok = ok && verified && *c.order == 1;
  } else if (which == "Bprime") {
    PushoutData d = bprime_data();
    Presentation p = pushout(d);
    check_maps(d, rec, ok);
    rec.add("assembled", p.pretty());
    TietzeResult t = tietze_simplify(p);
    bool match = equal_up_to_renaming(t.presentation, bprime_expected());
    rec.add("presentation", t.presentation.pretty());
    rec.add("matches", match);
    rec.add("abelianization", to_string(abelianization(t.presentation)));
    ok = ok && t.final && match;
  } else {
    // B' with generators renamed u for b, t for c.
    Presentation bprime = tietze_simplify(pushout(bprime_data())).presentation.renamed({"u", "t"});
    PushoutData d{Presentation({"s"}, {}), bprime, torus_group(), {{1, 1, 1}, {1}}, {{2, 2}, {1}}};
    Presentation p = pushout(d);
    check_maps(d, rec, ok);
    rec.add("assembled", p.pretty());
    TietzeResult t = tietze_simplify(p);
    Presentation trefoil = Presentation::parse("gens: s t; rels: s^3 t^-2");
    bool match = equal_up_to_renaming(t.presentation, trefoil);
    AbelianGroup ab = abelianization(t.presentation);
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    std::uint64_t homs = count_homs(t.presentation, s3);
    std::uint64_t homs_z = count_homs(Presentation({"a"}, {}), s3);
    rec.add("presentation", t.presentation.pretty());
    rec.add("abelianization", to_string(ab));
    rec.add("homs_to_S3", homs);
    rec.add("homs_Z_to_S3", homs_z);
    ok = ok && t.final && match && ab == AbelianGroup{1, {}} && homs != homs_z;
  }
  std::string format = cfg.format.empty() ? "text" : cfg.format;
  Sink sink(cfg.out_path, out);
  if (format == "json") {
    Json j{{"case", which}};
    for (auto& [k, v] : rec.fields) j[k] = v;
    j["certified"] = ok;
    sink.stream() << j.dump() << '\n';
  } else {
    for (auto& [k, v] : rec.fields) {
      sink.stream() << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    sink.stream() << "certified: " << (ok ? "true" : "false") << '\n';
  }
  if (!ok) throw VerificationFailure("pi1 " + which + ": certificate check failed");
  return kExitOk;
}

}  // namespace

std::string format_number(double x) { return number(x).dump(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coordinates, homology and fundamental-group certificates for exp_3 of the circle", "exptop"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Distinctness tolerance for angles")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out_path, "Write the primary output to this file");

  std::vector<double> points;
  auto* coord = app.add_subcommand("coord", "Chart coordinate of a subset of 1 to 3 angles");
  coord->add_option("points", points, "Angles in radians")->required();

  double eps = 0.1;
  std::size_t samples = 720;
  std::string curve = "torus";
  auto* knot = app.add_subcommand("knot", "Sample a loop and report its winding pair");
  knot->add_option("--eps", eps, "Distance from the core, in (0, pi/4)");
  knot->add_option("--samples", samples, "Number of samples")->check(CLI::Range(std::size_t{8}, std::size_t{10'000'000}));
  knot->add_option("--curve", curve, "torus | core | exp1")->check(CLI::IsMember({"torus", "core", "exp1"}));

  int k = 3;
  int mesh_n = 3;
  bool relative = false;
  auto* hom = app.add_subcommand("homology", "Integer homology of the exp_k complex");
  hom->add_option("--k", k, "2 or 3")->check(CLI::IsMember({2, 3}));
  hom->add_option("--mesh-n", mesh_n, "Subdivisions per circle")->check(CLI::Range(3, 12));
  hom->add_flag("--relative", relative, "Homology of exp_3 with exp_2 collapsed");

  std::string which;
  auto* pi1 = app.add_subcommand("pi1", "Fundamental-group certificate");
  pi1->add_option("case", which, "exp3 | Bprime | complement")
      ->required()
      ->check(CLI::IsMember({"exp3", "Bprime", "complement"}));

  // Global options may follow the subcommand.
  for (auto* sub : {coord, knot, hom, pi1}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (cfg.format == "csv" && (*coord || *pi1)) {
      throw CLI::ValidationError("--format", "csv is only available for knot and homology");
    }
    if (cfg.format == "text" && (*coord || *hom)) {
      throw CLI::ValidationError("--format", "text is only available for knot and pi1");
    }
    if (*coord) return cmd_coord(cfg, points, out);
    if (*knot) return cmd_knot(cfg, curve, eps, samples, out);
    if (*hom) return cmd_homology(cfg, k, mesh_n, relative, out);
    return cmd_pi1(cfg, which, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace exptop::cli
