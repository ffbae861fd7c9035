#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tropadic/json_io.hpp"
#include "tropadic/parse.hpp"
#include "tropadic/transcendence.hpp"

namespace tropadic::cli {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::parse_error, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PrimeCongruence load_prime(const std::string& path) {
  return parse_prime(slurp(path));
}

// @refs inside a series file resolve relative to the directory of the file
// itself, so a directory of samples stays relocatable.
inline TruncatedSeries load_series(const std::string& path) {
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  PrimeLoader loader = [dir](const std::string& ref) {
    return slurp((dir / ref).string());
  };
  return parse_series(slurp(path), loader);
}

inline SeriesStream load_stream(const std::string& path) {
  return parse_stream(slurp(path));
}

namespace detail {

inline double approx_double(const FieldScalar& x) {
  auto [lo, hi] = x.enclosure(32);
  return mpq_class((lo + hi) / 2).get_d();
}

inline std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return std::string(buf);
}

struct PlotPoint {
  double x = 0;
  double y = 0;
};

// Finite plane coordinates of a residue point; rejects points that sit on a
// proper stratum since those have no finite position in the figure.
inline PlotPoint plot_coords(const TropicalPoint& t) {
  PlotPoint w;
  double* coords[2] = {&w.x, &w.y};
  for (size_t i = 0; i < 2; ++i) {
    ZVec u(2, 0);
    u[i] = 1;
    ExtScalar v = t.eval(u);
    require(!v.is_bottom(), errc::not_in_cont_interior,
            "plot marks only residue points with finite coordinates");
    *coords[i] = approx_double(v.value());
  }
  return w;
}

// Clip a convex polygon against the half plane a*x + b*y <= c.
inline std::vector<PlotPoint> clip_half_plane(std::vector<PlotPoint> poly,
                                              double a, double b, double c) {
  std::vector<PlotPoint> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    PlotPoint s = poly[i], e = poly[(i + 1) % n];
    double ds = a * s.x + b * s.y - c, de = a * e.x + b * e.y - c;
    if (ds <= 0) out.push_back(s);
    if ((ds < 0 && de > 0) || (ds > 0 && de < 0)) {
      double t = ds / (ds - de);
      out.push_back(PlotPoint{s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
    }
  }
  return out;
}

// Figure emitter: the window is the fixed world square [-8, 8]^2 mapped onto
// a 480 px viewport. The shaded region is omega + cone(sigma rays), i.e. the
// locus whose points are the residues of primes passing (*) against P, and
// each sample prime P' is marked at Phi(P') in green or red by its actual
// prop_star verdict.
inline std::string render_plot(const PrimeCongruence& p,
                               const std::vector<PrimeCongruence>& samples) {
  require(p.rank() == 2, errc::invalid_argument,
          "plot renders rank-2 monoids only");
  TropicalPoint base = phi(p);
  PlotPoint w = plot_coords(base);

  const double kWorld = 8.0, kSize = 480.0;
  auto sx = [&](double x) { return (x + kWorld) / (2 * kWorld) * kSize; };
  auto sy = [&](double y) { return (kWorld - y) / (2 * kWorld) * kSize; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" "
         "height=\"480\" viewBox=\"0 0 480 480\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" "
         "fill=\"#ffffff\"/>\n";
  for (int g = -8; g <= 8; g += 2) {
    const char* tone = g == 0 ? "#b0b0b0" : "#e4e4e4";
    svg << "<line x1=\"" << fixed3(sx(g)) << "\" y1=\"0\" x2=\""
        << fixed3(sx(g)) << "\" y2=\"480\" stroke=\"" << tone << "\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << fixed3(sy(g)) << "\" x2=\"480\" y2=\""
        << fixed3(sy(g)) << "\" stroke=\"" << tone << "\"/>\n";
  }

  ZMat rays = p.monoid().effective_sigma().rays();
  if (rays.size() == 1) {
    double rx = mpq_class(rays[0][0]).get_d();
    double ry = mpq_class(rays[0][1]).get_d();
    svg << "<line x1=\"" << fixed3(sx(w.x)) << "\" y1=\"" << fixed3(sy(w.y))
        << "\" x2=\"" << fixed3(sx(w.x + 64 * rx)) << "\" y2=\""
        << fixed3(sy(w.y + 64 * ry))
        << "\" stroke=\"#4a90d9\" stroke-width=\"3\" opacity=\"0.6\"/>\n";
  } else if (rays.size() >= 2) {
    // Extreme rays of the pointed wedge: signed angles relative to ray 0
    // stay inside (-pi, pi), so min and max pick the boundary pair.
    std::vector<std::pair<double, size_t>> angles;
    double r0x = mpq_class(rays[0][0]).get_d();
    double r0y = mpq_class(rays[0][1]).get_d();
    for (size_t i = 0; i < rays.size(); ++i) {
      double rx = mpq_class(rays[i][0]).get_d();
      double ry = mpq_class(rays[i][1]).get_d();
      angles.push_back(
          {std::atan2(r0x * ry - r0y * rx, r0x * rx + r0y * ry), i});
    }
    std::sort(angles.begin(), angles.end());
    const ZVec& rf = rays[angles.front().second];
    const ZVec& rl = rays[angles.back().second];
    double fx = mpq_class(rf[0]).get_d(), fy = mpq_class(rf[1]).get_d();
    double lx = mpq_class(rl[0]).get_d(), ly = mpq_class(rl[1]).get_d();
    // Wedge = two half planes through w; clip the window square to it.
    std::vector<PlotPoint> poly = {{-kWorld, -kWorld},
                                   {kWorld, -kWorld},
                                   {kWorld, kWorld},
                                   {-kWorld, kWorld}};
    poly = clip_half_plane(std::move(poly), -fy, fx, -fy * w.x + fx * w.y);
    poly = clip_half_plane(std::move(poly), ly, -lx, ly * w.x - lx * w.y);
    if (poly.size() >= 3) {
      svg << "<polygon points=\"";
      for (size_t i = 0; i < poly.size(); ++i) {
        if (i) svg << " ";
        svg << fixed3(sx(poly[i].x)) << "," << fixed3(sy(poly[i].y));
      }
      svg << "\" fill=\"#cfe3f7\" stroke=\"#4a90d9\" opacity=\"0.8\"/>\n";
    }
  }

  auto marker = [&](PlotPoint q, const char* color, const std::string& tag) {
    svg << "<circle cx=\"" << fixed3(sx(q.x)) << "\" cy=\"" << fixed3(sy(q.y))
        << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fixed3(sx(q.x) + 8) << "\" y=\""
        << fixed3(sy(q.y) - 8)
        << "\" font-family=\"monospace\" font-size=\"13\">" << tag
        << "</text>\n";
  };
  for (size_t i = 0; i < samples.size(); ++i) {
    PlotPoint q = plot_coords(phi(samples[i]));
    bool ok = prop_star(samples[i], p).value;
    marker(q, ok ? "#2a7d4f" : "#c0392b", "P'" + std::to_string(i + 1));
  }
  marker(w, "#111111", "P");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detail

// Entry point shared by the binary and the tests: parses one verb, runs the
// wrapped module operation, prints a single JSON line (or help text) on out.
// Decision verbs exit 0 whatever the verdict; only errors are nonzero.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"exact kernel for matrix-defined prime congruences"};
  app.require_subcommand(1);

  std::string p_path, pp_path, p1_path, p2_path, f_path, g_path;
  std::string stream_path, out_path;
  std::string m1_text, m2_text, f_text, g_text, monoid_text, gamma_text;
  std::vector<std::string> gen_texts, sample_paths;
  long horizon = 64;

  Json result;

  auto* c_norm = app.add_subcommand("normalize", "canonical defining matrix");
  c_norm->add_option("--p", p_path, "prime file")->required();
  c_norm->callback([&] {
    result["prime"] = prime_json(normalize(load_prime(p_path)));
  });

  auto* c_cmp =
      app.add_subcommand("compare", "order two monomials under Psi_P");
  c_cmp->add_option("--p", p_path, "prime file")->required();
  c_cmp->add_option("--m1", m1_text, "first monomial")->required();
  c_cmp->add_option("--m2", m2_text, "second monomial")->required();
  c_cmp->callback([&] {
    PrimeCongruence p = load_prime(p_path);
    int c = compare_terms(p, parse_term(m1_text, p.rank()),
                          parse_term(m2_text, p.rank()));
    result["order"] = c < 0 ? "<" : (c > 0 ? ">" : "=");
  });

  auto* c_cont = app.add_subcommand("cont-check", "membership in Cont");
  c_cont->add_option("--p", p_path, "prime file")->required();
  c_cont->callback([&] { result["verdict"] = in_cont(load_prime(p_path)); });

  auto* c_sub =
      app.add_subcommand("contains", "decide P' subset of P with witness");
  c_sub->add_option("--p", p_path, "coarse prime file")->required();
  c_sub->add_option("--pprime", pp_path, "fine prime file")->required();
  c_sub->callback([&] {
    ContainsResult r = contains(load_prime(pp_path), load_prime(p_path));
    result["verdict"] = r.value;
    if (r.witness)
      result["witness"] = Json{{"m1", term_json(r.witness->first)},
                               {"m2", term_json(r.witness->second)}};
  });

  auto* c_max =
      app.add_subcommand("maximal-above", "smallest maximal prime above P");
  c_max->add_option("--p", p_path, "prime file")->required();
  c_max->callback([&] {
    result["prime"] = prime_json(maximal_above(load_prime(p_path)));
  });

  auto* c_phi = app.add_subcommand("phi", "residue point of P");
  c_phi->add_option("--p", p_path, "prime file")->required();
  c_phi->callback([&] {
    TropicalPoint t = phi(load_prime(p_path));
    Json vals = Json::array();
    for (const FieldScalar& v : t.values) vals.push_back(scalar_json(v));
    result["face"] = face_json(t.face);
    result["basis"] = zmat_json(t.basis);
    result["values"] = std::move(vals);
  });

  auto* c_crown =
      app.add_subcommand("crown", "property (*) of P' against P");
  c_crown->add_option("--p", p_path, "base prime file")->required();
  c_crown->add_option("--pprime", pp_path, "candidate prime file")->required();
  c_crown->callback([&] {
    PropStarResult r = prop_star(load_prime(pp_path), load_prime(p_path));
    result["verdict"] = r.value;
    if (r.witness) result["witness"] = term_json(*r.witness);
  });

  auto* c_spec =
      app.add_subcommand("specializes", "Phi(P1) specializes to Phi(P2)");
  c_spec->add_option("--p1", p1_path, "prime file")->required();
  c_spec->add_option("--p2", p2_path, "prime file")->required();
  c_spec->callback([&] {
    result["verdict"] = specializes(load_prime(p1_path), load_prime(p2_path));
  });

  auto* c_open = app.add_subcommand(
      "open-member", "membership of Phi(P) in the basic open U(f, g)");
  c_open->add_option("--p", p_path, "prime file")->required();
  c_open->add_option("--f", f_text, "numerator polynomial")->required();
  c_open->add_option("--g", g_text, "denominator polynomial")->required();
  c_open->callback([&] {
    PrimeCongruence p = load_prime(p_path);
    result["verdict"] = basic_open_member(p, parse_poly(f_text, p.monoid()),
                                          parse_poly(g_text, p.monoid()));
  });

  auto* c_dist =
      app.add_subcommand("series-dist", "distance of two truncated series");
  c_dist->add_option("--f", f_path, "series file")->required();
  c_dist->add_option("--g", g_path, "series file")->required();
  c_dist->callback([&] {
    DistanceResult d = distance(load_series(f_path), load_series(g_path));
    result["outcome"] =
        d.kind == DistanceKind::kExact ? "exact" : "below-precision";
    result["value"] = lex_json(d.value);
  });

  auto* c_mul =
      app.add_subcommand("series-mul", "product of two truncated series");
  c_mul->add_option("--f", f_path, "series file")->required();
  c_mul->add_option("--g", g_path, "series file")->required();
  c_mul->callback([&] {
    result["series"] =
        series_json(series_mul(load_series(f_path), load_series(g_path)));
  });

  auto* c_eval =
      app.add_subcommand("series-eval", "norm of a series at a prime P'");
  c_eval->add_option("--f", f_path, "series file")->required();
  c_eval->add_option("--pprime", pp_path, "evaluation prime file")->required();
  c_eval->callback([&] {
    EvalResult r = eval_at(load_series(f_path), load_prime(pp_path));
    Json lead = Json::array();
    for (const Term& t : r.leading) lead.push_back(term_json(t));
    result["value"] = lex_json(r.value);
    result["leading"] = std::move(lead);
  });

  auto* c_conv =
      app.add_subcommand("series-converges", "convergence of a term stream");
  c_conv->add_option("--stream", stream_path, "stream file")->required();
  c_conv->add_option("--p", p_path, "base prime file")->required();
  c_conv->add_option("--horizon", horizon, "verification window (default 64)");
  c_conv->callback([&] {
    ConvergesVerdict v =
        converges(load_stream(stream_path), load_prime(p_path), horizon);
    switch (v.kind) {
      case ConvergesKind::kCertified: result["kind"] = "certified"; break;
      case ConvergesKind::kVerifiedToHorizon:
        result["kind"] = "verified-to-horizon";
        break;
      case ConvergesKind::kDiverges: result["kind"] = "diverges"; break;
    }
    if (v.threshold) result["threshold"] = v.threshold->get_str();
    result["exceeding"] = v.exceeding;
  });

  auto* c_dim = app.add_subcommand("dim", "dimension report of S[M]/P");
  c_dim->add_option("--p", p_path, "prime file")->required();
  c_dim->callback(
      [&] { result = dim_report_json(dim_top_report(load_prime(p_path))); });

  auto* c_height = app.add_subcommand("height", "height of the prime");
  c_height->add_option("--p", p_path, "prime file")->required();
  c_height->callback(
      [&] { result["height"] = height(load_prime(p_path)); });

  auto* c_chain =
      app.add_subcommand("chain", "maximal chain of primes above P");
  c_chain->add_option("--p", p_path, "prime file")->required();
  c_chain->callback([&] {
    PrimeCongruence p = load_prime(p_path);
    Json links = Json::array();
    for (const PrimeCongruence& q : build_maximal_chain(p))
      links.push_back(matrix_json(q.matrix()));
    result["monoid"] = p.monoid().str();
    result["gamma"] = p.gamma().str();
    result["chain"] = std::move(links);
  });

  auto* c_trdeg = app.add_subcommand(
      "trdeg", "transcendence degree of adjoined lex tuples over Gamma");
  c_trdeg->add_option("--gamma", gamma_text, "coefficient group spec")
      ->required();
  c_trdeg->add_option("--gen", gen_texts, "generator tuple (repeatable)");
  c_trdeg->callback([&] {
    std::vector<LexTuple> gens;
    for (const std::string& s : gen_texts) gens.push_back(parse_tuple(s));
    result["trdeg"] =
        trdeg(ExtensionSpec(parse_gamma(gamma_text), std::move(gens)));
  });

  auto* c_hilb =
      app.add_subcommand("hilbert", "generating set of a toric monoid");
  c_hilb->add_option("--m", monoid_text, "monoid spec")->required();
  c_hilb->callback([&] {
    result["generators"] =
        zmat_json(parse_monoid(monoid_text).generating_set());
  });

  auto* c_strata =
      app.add_subcommand("strata", "kernel face and stratum restriction");
  c_strata->add_option("--p", p_path, "prime file")->required();
  c_strata->callback([&] {
    PrimeCongruence q = normalize(load_prime(p_path));
    require(in_cont(q), errc::not_in_cont,
            "stratification is read off inside Cont");
    result["face"] = face_json(q.ideal_kernel_face());
    result["restriction"] = prime_json(stratum_restrict(q));
  });

  auto* c_plot = app.add_subcommand(
      "plot", "SVG of the omega + sigma-bar region with sample residues");
  c_plot->add_option("--p", p_path, "base prime file")->required();
  c_plot->add_option("--pprime", sample_paths, "sample prime file (repeatable)");
  c_plot->add_option("--out", out_path, "output SVG path")->required();
  c_plot->callback([&] {
    PrimeCongruence p = load_prime(p_path);
    std::vector<PrimeCongruence> samples;
    for (const std::string& s : sample_paths) samples.push_back(load_prime(s));
    std::string svg = detail::render_plot(p, samples);
    std::ofstream file(out_path, std::ios::binary);
    require(file.good(), errc::invalid_argument,
            "cannot open output file: " + out_path);
    file << svg;
    file.flush();
    require(file.good(), errc::invalid_argument,
            "failed writing output file: " + out_path);
    result["written"] = out_path;
  });

  std::vector<const char*> argv;
  argv.push_back("tropadic");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    Json err;
    err["v"] = 1;
    err["error"] = Json{{"code", "ParseError"}, {"what", std::string(e.what())}};
    out << err.dump() << "\n";
    return 1;
  } catch (const tropadic_error& e) {
    Json err;
    err["v"] = 1;
    err["error"] =
        Json{{"code", e.code_name()}, {"what", std::string(e.what())}};
    out << err.dump() << "\n";
    return 1;
  }

  result["v"] = 1;
  out << result.dump() << "\n";
  return 0;
}

}  // namespace tropadic::cli
