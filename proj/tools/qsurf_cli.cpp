#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "qsurf/continuum.hpp"
#include "qsurf/geodesic.hpp"
#include "qsurf/io.hpp"
#include "qsurf/sampler.hpp"

using namespace qsurf;

namespace {

struct Options {
  std::string command;
  int genus = 0;
  std::vector<double> holes;
  int n = 10;
  int samples = 1;
  std::uint64_t seed = 1;
  double delta = 1e-4;
  double epsilon = 0;
  double sep_delta = 1;
  long budget = 20000;
  int grid = 64;
  int orientation = 0;
  int iterations = 300;
  std::string input;
  std::string out;

  std::vector<std::string> echo() const {
    std::ostringstream s;
    s << "config command=" << command << " genus=" << genus << " holes=";
    for (std::size_t i = 0; i < holes.size(); ++i) s << (i ? "," : "") << holes[i];
    s << " n=" << n << " samples=" << samples << " seed=" << seed << " delta=" << delta << " epsilon=" << epsilon
      << " budget=" << budget << " grid=" << grid << " sep_delta=" << sep_delta;
    if (!input.empty()) s << " input=" << input;
    return {s.str()};
  }

  std::vector<int> int_holes() const {
    std::vector<int> v;
    for (double h : holes) {
      if (h != std::floor(h) || h < 1) throw Error(Errc::ConfigError, "discrete hole half-perimeters must be positive integers");
      v.push_back(static_cast<int>(h));
    }
    return v;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(Errc::ConfigError, "cannot open " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<io::MapDoc> read_input(const std::string& path) {
  if (path.empty() || path == "-") return io::parse_all(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open " + path);
  return io::parse_all(in);
}

Sampler make_sampler(const Options& o) {
  SamplerConfig c;
  c.n = o.n;
  c.g = o.genus;
  c.sigma = o.int_holes();
  c.seed = o.seed;
  return Sampler(c);
}

void cmd_sample(const Options& o) {
  Sampler s = make_sampler(o);
  Output out(o.out);
  for (int k = 0; k < o.samples; ++k) {
    auto d = io::quad_doc(s.sample_quadrangulation());
    d.comments = {" " + o.echo()[0]};
    io::emit(out.get(), d);
  }
}

void cmd_encode(const Options& o) {
  Output out(o.out);
  for (const auto& d : read_input(o.input)) {
    auto e = io::labeled_doc(encode(io::to_quad(d)), d.n);
    e.comments = {" " + o.echo()[0]};
    io::emit(out.get(), e);
  }
}

void cmd_decode(const Options& o) {
  Output out(o.out);
  for (const auto& d : read_input(o.input)) {
    auto q = io::quad_doc(decode(io::to_labeled(d), o.orientation));
    q.comments = {" " + o.echo()[0]};
    io::emit(out.get(), q);
  }
}

void cmd_stats(const Options& o) {
  Sampler s = make_sampler(o);
  Output out(o.out);
  io::CsvWriter csv(out.get(), {"sample", "vertices", "edges", "faces", "radius", "dist_uniform", "backbone", "boundary"},
                    o.echo());
  for (int k = 0; k < o.samples; ++k) {
    auto pq = s.sample_quadrangulation();
    const Map& q = pq.quad;
    auto d = bfs(q, pq.vdot);
    int u = std::uniform_int_distribution<int>(0, q.num_vertices() - 1)(s.rng());
    std::size_t bb = 0;
    if (q.genus() > 0 || q.num_holes() > 0) bb = backbone(q, pq.vdot).size();
    csv.row(k, q.num_vertices(), q.num_edges(), q.num_faces(), *std::max_element(d.begin(), d.end()), d[u], bb,
            boundary_vertices(q).size());
  }
}

void cmd_geodesics(const Options& o) {
  Output out(o.out);
  auto docs = read_input(o.input);
  std::mt19937_64 rng(o.seed);
  io::CsvWriter csv(out.get(),
                    {"map", "target", "distance", "geodesics", "mult_lo", "mult_hi", "hmult_lo", "hmult_hi"}, o.echo());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Map& q = docs[i].map;
    const int src = std::max(docs[i].vdot, 0);
    const int faces = q.num_faces() - q.num_holes();
    const int sep = std::max(1, static_cast<int>(std::ceil(o.sep_delta * std::pow(faces, 0.25) - 1e-9)));
    auto d = bfs(q, src);
    std::vector<int> targets;
    if (o.samples <= 0 || o.samples >= q.num_vertices()) {
      for (int v = 0; v < q.num_vertices(); ++v) targets.push_back(v);
    } else {
      std::uniform_int_distribution<int> U(0, q.num_vertices() - 1);
      for (int k = 0; k < o.samples; ++k) targets.push_back(U(rng));
    }
    for (int v : targets) {
      long cnt = count_geodesics(q, src, v);
      auto mb = mult(q, src, v, o.epsilon, sep, o.budget);
      auto hb = hmult(q, src, v, o.epsilon);
      csv.row(i, v, d[v], cnt, mb.lower, mb.upper, hb.lower, hb.upper);
    }
  }
}

void cmd_continuum(const Options& o) {
  continuum::ContinuumConfig c;
  c.g = o.genus;
  c.sigma = o.holes;
  c.delta = o.delta;
  c.seed = o.seed;
  continuum::ContinuumSampler cs(c);
  auto v = cs.sample();
  continuum::LabelField f(cs, v);
  std::string base = o.out.empty() ? "continuum" : o.out;
  std::ofstream field(base + "_field.csv"), geo(base + "_geodesics.csv");
  if (!field || !geo) throw Error(Errc::ConfigError, "cannot write under " + base);
  auto echo = o.echo();
  {
    io::CsvWriter csv(field, {"index", "s", "label", "segment"}, echo);
    const int stride = std::max(1, f.size() / 100000);
    for (int i = 0; i < f.size(); i += stride)
      csv.row(i, static_cast<double>(i) / f.size(), f[i], f.segment(i));
  }
  io::CsvWriter csv(geo, {"geodesic", "source", "w", "index"}, echo);
  std::uniform_int_distribution<int> U(0, f.size() - 1);
  for (int k = 0; k < o.samples; ++k) {
    int s = U(cs.rng());
    double top = f[s] - f.min();
    std::vector<double> ws;
    for (int j = 0; j < o.grid; ++j) ws.push_back(top * j / o.grid);
    ws.push_back(top);
    auto idx = f.simple_geodesic(s, ws);
    for (std::size_t j = 0; j < ws.size(); ++j) csv.row(k, s, ws[j], idx[j]);
  }
  std::cout << "scheme " << v.scheme_index << " of " << cs.schemes().size() << ", grid " << f.size() << ", min label "
            << f.min() << " at " << f.argmin() << '\n';
}

void cmd_export_mesh(const Options& o) {
  auto docs = read_input(o.input);
  if (docs.empty()) throw Error(Errc::ConfigError, "no map in input");
  Output out(o.out);
  io::export_obj(out.get(), docs[0].map, o.iterations, o.seed, o.echo());
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::ConfigError:
    case Errc::ParseError:
    case Errc::LambdaOutOfRange:
    case Errc::EmptyFamily:
    case Errc::DegenerateTreeCase:
    case Errc::UnknownHoleFace:
    case Errc::NotInvolution:
    case Errc::NotPermutation:
    case Errc::Disconnected:
    case Errc::NonOrientableInconsistency:
    case Errc::InvalidQuadrangulation:
    case Errc::NotSimpleLoop:
    case Errc::InsufficientData:
      return 2;
    case Errc::BudgetExceeded:
    case Errc::WorkBudgetExceeded:
    case Errc::CapExceeded:
    case Errc::RejectionBudgetExceeded:
    case Errc::MCMCDiagnosticsFailed:
      return 3;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random quadrangulations with boundaries: sampling, bijections, geodesics, continuum fields"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool family, bool file) {
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--out", o.out, "output path (stdout when absent)");
    if (family) {
      c->add_option("--genus", o.genus, "genus")->check(CLI::NonNegativeNumber);
      c->add_option("--holes", o.holes, "hole half-perimeters, comma separated")->delimiter(',');
      c->add_option("--n", o.n, "number of inner faces")->check(CLI::NonNegativeNumber);
      c->add_option("--samples", o.samples, "number of samples")->check(CLI::NonNegativeNumber);
    }
    if (file) c->add_option("input", o.input, "map file (stdin when absent)");
  };
  auto* sample = app.add_subcommand("sample", "draw uniform pointed quadrangulations");
  common(sample, true, false);
  auto* enc = app.add_subcommand("encode", "pointed quadrangulation to labeled map");
  common(enc, false, true);
  auto* dec = app.add_subcommand("decode", "labeled map to pointed quadrangulation");
  common(dec, false, true);
  dec->add_option("--orientation", o.orientation, "orientation coin")->check(CLI::Range(0, 1));
  auto* st = app.add_subcommand("stats", "distance statistics of sampled maps as csv");
  common(st, true, false);
  auto* geo = app.add_subcommand("geodesics", "geodesic counts and multiplicities from the distinguished vertex");
  common(geo, false, true);
  geo->add_option("--samples", o.samples, "number of random targets, 0 for all")->check(CLI::NonNegativeNumber);
  geo->add_option("--epsilon", o.epsilon, "length slack for approximate geodesics")->check(CLI::NonNegativeNumber);
  geo->add_option("--budget", o.budget, "clique search budget")->check(CLI::PositiveNumber);
  geo->add_option("--delta", o.sep_delta, "separation scale: paths count as distinct at d_path >= delta n^{1/4}")
      ->check(CLI::PositiveNumber);
  auto* con = app.add_subcommand("continuum", "label field and simple geodesics of a continuum vector");
  common(con, true, false);
  con->add_option("--delta", o.delta, "mass grid step")->check(CLI::PositiveNumber);
  con->add_option("--grid", o.grid, "w-grid points per geodesic")->check(CLI::PositiveNumber);
  auto* mesh = app.add_subcommand("export-mesh", "OBJ mesh with a force-directed layout");
  common(mesh, false, true);
  mesh->add_option("--iterations", o.iterations, "layout iterations")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }
  try {
    auto* sub = app.get_subcommands().front();
    o.command = sub->get_name();
    if (sub == sample) cmd_sample(o);
    else if (sub == enc) cmd_encode(o);
    else if (sub == dec) cmd_decode(o);
    else if (sub == st) cmd_stats(o);
    else if (sub == geo) cmd_geodesics(o);
    else if (sub == con) cmd_continuum(o);
    else cmd_export_mesh(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
