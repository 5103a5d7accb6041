#include <lat40/enumeration.hpp>
#include <lat40/pipeline.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace lat40;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, claim_failed = 1, bad_input = 2, internal = 3 };

struct Common {
  std::string lattice, vecs, out, format = "text", fixtures, cache;
  unsigned threads = 1;
  std::uint64_t node_limit = 5000;
  bool quiet = false;
};

PipelineOptions options_of(const Common& c) {
  PipelineOptions o;
  o.cache_dir = c.cache;
  if (!c.fixtures.empty()) o.fixture_dir = c.fixtures;
  o.lattice_path = c.lattice;
  o.vecs_path = c.vecs;
  o.threads = c.threads;
  o.node_limit = c.node_limit;
  if (!c.quiet) o.log = &std::cerr;
  return o;
}

// Writes to --out when given, stdout otherwise.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw FormatError("cannot write " + c.out);
  f << text;
}

json matrix_json(const Mat64& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string rows_text(const IntMatrix& m) {
  std::ostringstream s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s << (j ? " " : "") << m(i, j);
    s << '\n';
  }
  return s.str();
}

json partition_json(const Partition& p) {
  json rows = json::array();
  for (const Block& b : p.blocks)
    rows.push_back({{"label", b.label()},
                    {"type", {b.type.t0, b.type.t1, b.type.t2, b.type.t4}},
                    {"size", b.size()}});
  return rows;
}

int cmd_build(const Common& c) {
  Pipeline p(options_of(c));
  const Lattice& l = p.o40();
  if (!c.out.empty()) save_lattice(c.out, l);
  const bool matches = l.hnf_basis() == Lattice(l.frame(), fixture_glue_matrix(p.fixtures())).hnf_basis();
  if (c.format == "json") {
    json j{{"rank", l.rank()},
           {"even", l.is_even()},
           {"unimodular", l.is_unimodular()},
           {"equals_fixture_glue_matrix", matches}};
    std::cout << j.dump(2) << '\n';
  } else {
    if (c.out.empty()) write_lattice(std::cout, l);
    std::cerr << "rank " << l.rank() << ", even " << l.is_even() << ", unimodular "
              << l.is_unimodular() << ", equals fixture glue matrix " << matches << '\n';
  }
  return ok;
}

int cmd_minvec(const Common& c, int norm) {
  if (norm <= 0 || norm % 2) throw FormatError("--norm must be a positive even integer");
  Pipeline p(options_of(c));
  const Lattice& l = p.o40();
  std::string path = c.out;
  std::size_t count = 0;
  if (norm == 4) {
    // The minimum: goes through the cache, which is also the default output.
    const VectorSet& s = p.minimal_vectors();
    count = 2 * s.size();
    if (path.empty()) path = p.cache().path(enumeration_key(l, "norm<=4"), "vecs");
    else save_vector_set(path, s);
  } else {
    EnumerationOptions eo;
    eo.modulo_sign = true;
    eo.threads = p.threads();
    const VectorSet all = vectors_of_norm_at_most(l, Rational(norm), eo);
    VectorSet exact(all.dim(), all.frame_id(), true);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all.norm(i) == norm) exact.push_back(all[i], all.norm(i));
    count = 2 * exact.size();
    if (path.empty()) {
      std::filesystem::create_directories(p.cache().dir());
      path = p.cache().path(enumeration_key(l, "norm=" + std::to_string(norm)), "vecs");
    }
    save_vector_set(path, exact);
  }
  if (c.format == "json")
    std::cout << json{{"norm", norm}, {"count", count}, {"path", path}}.dump() << '\n';
  else
    std::cout << "norm=" << norm << " count=" << count << " path=" << path << '\n';
  return ok;
}

int cmd_types(const Common& c) {
  Pipeline p(options_of(c));
  const Partition& l1 = p.level1();
  const Partition& irr = p.irreducible();
  const auto& st = p.refine_stats();
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    std::ofstream(c.out + "/level1.csv") << partition_csv(l1);
    std::ofstream(c.out + "/irreducible.csv") << partition_csv(irr);
  }
  if (c.format == "json") {
    json j{{"level1", partition_json(l1)},
           {"irreducible", partition_json(irr)},
           {"passes", st.passes},
           {"final_pass_split", st.final_pass_split},
           {"frame_signature", frame_signature_present(irr)}};
    std::cout << j.dump(2) << '\n';
  } else if (c.out.empty()) {
    std::cout << "# level 1\n" << partition_csv(l1) << "# irreducible\n" << partition_csv(irr);
  } else {
    std::cout << "level1=" << l1.blocks.size() << " irreducible=" << irr.blocks.size()
              << " passes=" << st.passes << " frame_signature=" << frame_signature_present(irr)
              << '\n';
  }
  return ok;
}

int cmd_frames(const Common& c) {
  Pipeline p(options_of(c));
  const FrameCensus& fc = p.census();
  const OrbitPartition& orb = p.gamma_orbits();
  const std::size_t rank = p.o40().rank();
  std::size_t starts = 0, exhausted = 0, found = 0;
  for (std::size_t o = 0; o < orb.orbits.size(); ++o) {
    if (fc.m_of_orbit[o] < 28) continue;
    ++starts;
    const CliqueCertificate cert = certify_no_frame(p.graph(), orb.orbits[o].rep, rank, c.node_limit);
    exhausted += cert.exhausted;
    found += cert.found;
  }
  const bool frame = fc.n_max == rank || found > 0;
  if (c.format == "json") {
    json table = json::object();
    for (auto [m, n] : fc.table) table[std::to_string(m)] = n;
    json j{{"census", table},
           {"n_max", fc.n_max},
           {"frame", frame},
           {"certified_starts", exhausted},
           {"starts", starts}};
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, census_csv(fc));
    std::cout << "n_max=" << fc.n_max << " frame=" << (frame ? "true" : "false")
              << " certified=" << exhausted << "/" << starts << '\n';
  }
  return ok;
}

int cmd_aut(const Common& c) {
  Pipeline p(options_of(c));
  const AutGroup& a = p.aut();
  const SemidirectReport sd = verify_semidirect(a.group);
  json census = json::object();
  for (auto [k, n] : sd.order_census) census[std::to_string(k)] = n;
  json j{{"order", a.group.order()},
         {"gamma_order", a.gamma_order},
         {"isometry_solutions", a.solutions},
         {"semidirect", sd.ok},
         {"g1_order", sd.order_g1},
         {"g2_order", sd.order_g2},
         {"exponent", sd.exponent},
         {"normal", sd.normal},
         {"trivial_intersection", sd.trivial_intersection},
         {"full_product", sd.full_product},
         {"element_orders", census},
         {"g1", matrix_json(sd.g1)},
         {"g2", matrix_json(sd.g2)}};
  emit(c, j.dump(c.format == "json" ? 2 : -1) + "\n");
  return ok;
}

int cmd_glue(const Common& c) {
  Pipeline p(options_of(c));
  const SublatticeM& m = p.sublattice_m();
  const Lattice l = build_L();
  const bool gram_ok = m.gram == m_target_gram();
  const bool t3 = verify_theorem3(l, m.lattice, p.o40());
  std::string root = "S";
  for (std::size_t i = 0; i < m.root_block.size(); ++i)
    root += (i ? "." : "") + std::to_string(m.root_block[i]);
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < m.chosen.rows(); ++i) {
      json r = json::array();
      for (std::size_t k = 0; k < m.chosen.cols(); ++k) r.push_back(m.chosen(i, k).get_si());
      rows.push_back(r);
    }
    emit(c, json{{"root_block", root},
                 {"vectors", rows},
                 {"gram_is_A1(2)^2+A19(2)^2", gram_ok},
                 {"theorem3", t3}}
                .dump(2) + "\n");
  } else {
    emit(c, rows_text(m.chosen));
    std::cout << "root_block=" << root << " gram=diag(4,4)+A19(2)+A19(2) match="
              << (gram_ok ? "true" : "false") << " theorem3=" << (t3 ? "true" : "false") << '\n';
  }
  return t3 && gram_ok ? ok : claim_failed;
}

int cmd_verify(const Common& c, bool no_timings) {
  Pipeline p(options_of(c));
  const VerificationReport r = verify_all(p);
  emit(c, c.format == "json" ? report_json(r, !no_timings) : report_text(r));
  return r.all_passed() ? ok : claim_failed;
}

std::array<int, 6> parse_params(const std::string& text, int n) {
  CodeSpec s = CodeSpec::parse(text);
  if (s.modulus != n) throw FormatError("expected a code over Z/" + std::to_string(n) + ": " + text);
  return s.params;
}

int cmd_search(const Common& c, const std::string& p3, const std::string& p21, int min_norm,
               std::size_t cap, bool unit_reduce, bool no_index) {
  SearchOptions o;
  o.min_norm = min_norm;
  o.cap = cap;
  o.unit_reduce = unit_reduce;
  o.check_index = !no_index;
  if (!p3.empty()) o.fixed_p3 = parse_params(p3, 3);
  if (!p21.empty()) o.fixed_p21 = parse_params(p21, 21);
  const SearchReport r = search_params(o);
  std::ostringstream s;
  for (const SearchHit& h : r.hits) s << to_json_line(h) << '\n';
  emit(c, s.str());
  std::cerr << json{{"space", r.space},
                    {"admissible_mod7", r.admissible_mod7},
                    {"admissible_mod3", r.admissible_mod3},
                    {"isotropic", r.isotropic},
                    {"index_ok", r.index_ok},
                    {"enumerated", r.enumerated},
                    {"min_ok", r.min_ok},
                    {"hits", r.hits.size()}}
                   .dump()
            << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construction and verification of a 40-dimensional even unimodular lattice"};
  app.require_subcommand(1);
  Common c;

  auto common = [&](CLI::App* sub, bool lattice, bool vecs) {
    if (lattice) sub->add_option("--lattice", c.lattice, "lattice file (default: build it)");
    if (vecs) sub->add_option("--vecs", c.vecs, "minimal vectors file (default: cache)");
    sub->add_option("--out", c.out, "output file or directory");
    sub->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--threads", c.threads, "worker threads, 0 for all cores");
    sub->add_option("--fixtures", c.fixtures, "fixture directory");
    sub->add_option("--cache", c.cache, "cache directory");
    sub->add_flag("--quiet", c.quiet, "no progress lines");
  };

  auto* build = app.add_subcommand("build", "glue the lattice from the two codes");
  common(build, false, false);

  int norm = 4;
  auto* minvec = app.add_subcommand("minvec", "enumerate vectors of a given norm");
  common(minvec, true, false);
  minvec->add_option("--norm", norm);

  auto* types = app.add_subcommand("types", "type partition of the minimal vectors");
  common(types, true, true);

  auto* frames = app.add_subcommand("frames", "orthogonal-set census and 4-frame verdict");
  common(frames, true, true);
  frames->add_option("--node-limit", c.node_limit, "branch-and-bound nodes per start vector");

  auto* aut = app.add_subcommand("aut", "automorphism group");
  common(aut, true, true);

  auto* glue = app.add_subcommand("glue", "the sublattice A1(2)^2 + A19(2)^2 and the sum L + M");
  common(glue, true, true);

  bool no_timings = false;
  auto* verify = app.add_subcommand("verify-all", "check every claim and print a report");
  common(verify, false, false);
  verify->add_option("--node-limit", c.node_limit, "branch-and-bound nodes per start vector");
  verify->add_flag("--no-timings", no_timings, "omit timings from JSON");

  std::string p3, p21;
  int min_norm = 0;
  std::size_t cap = 100;
  bool unit_reduce = false, no_index = false;
  auto* search = app.add_subcommand("search", "sweep code parameters, JSON lines");
  search->add_option("--p3", p3, "fix the mod-3 code, e.g. 3:0,1,0,1,2,0");
  search->add_option("--p21", p21, "fix the mod-21 code");
  search->add_option("--min-norm", min_norm, "require this minimum (enumerates)");
  search->add_option("--cap", cap, "stop after this many hits");
  search->add_flag("--unit-reduce", unit_reduce, "one representative per unit scaling");
  search->add_flag("--no-index", no_index, "skip the index condition");
  search->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (*build) return cmd_build(c);
    if (*minvec) return cmd_minvec(c, norm);
    if (*types) return cmd_types(c);
    if (*frames) return cmd_frames(c);
    if (*aut) return cmd_aut(c);
    if (*glue) return cmd_glue(c);
    if (*verify) return cmd_verify(c, no_timings);
    if (*search) return cmd_search(c, p3, p21, min_norm, cap, unit_reduce, no_index);
  } catch (const FormatError& e) {
    std::cerr << "lat40: " << e.what() << '\n';
    return bad_input;
  } catch (const ConstructionError& e) {
    std::cerr << "lat40: " << e.what() << '\n';
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "lat40: internal error: " << e.what() << '\n';
    return internal;
  }
  return internal;
}
