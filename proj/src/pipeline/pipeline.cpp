#include <lat40/checksum.hpp>
#include <lat40/enumeration.hpp>
#include <lat40/pipeline.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace lat40 {

namespace fs = std::filesystem;

std::string default_cache_dir() {
  if (const char* c = std::getenv("LAT40_CACHE"); c && *c) return c;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/lat40";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/lat40";
  return ".lat40-cache";
}

namespace {

class FileLock {
 public:
  explicit FileLock(const std::string& path) : fd_(::open(path.c_str(), O_CREAT | O_RDWR, 0644)) {
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

bool entry_intact(const std::string& file) {
  std::error_code ec;
  if (!fs::exists(file, ec) || !fs::exists(file + ".sha256", ec)) return false;
  std::string want = read_file(file + ".sha256");
  while (!want.empty() && (want.back() == '\n' || want.back() == ' ')) want.pop_back();
  return sha256_file(file) == want;
}

}  // namespace

Cache::Cache(std::string dir) : dir_(std::move(dir)) {}

std::string Cache::path(const std::string& key, const std::string& ext) const {
  return dir_ + "/" + key + "." + ext;
}

VectorSet Cache::vectors(const std::string& key, const std::function<VectorSet()>& make,
                         bool* hit) const {
  fs::create_directories(dir_);
  const std::string file = path(key, "vecs");
  FileLock lock(path(key, "lock"));
  if (entry_intact(file)) {
    try {
      VectorSet s = load_vector_set(file);
      if (hit) *hit = true;
      return s;
    } catch (const FormatError&) {
      // fall through and rebuild
    }
  }
  if (hit) *hit = false;
  VectorSet s = make();
  const std::string tmp = file + ".tmp";
  save_vector_set(tmp, s);
  fs::rename(tmp, file);
  std::ofstream(file + ".sha256") << sha256_file(file) << '\n';
  return s;
}

std::string enumeration_key(const Lattice& l, const std::string& params) {
  std::ostringstream s;
  s << "frame " << l.frame()->gram << "basis " << l.hnf_basis() << "params " << params << '\n';
  return sha256_hex(s.str());
}

struct Pipeline::State {
  std::optional<Fixtures> fixtures;
  std::optional<Lattice> o40;
  std::optional<VectorSet> s;
  bool s_hit = false;
  std::unique_ptr<Typer> typer;
  std::optional<Partition> level1, irreducible;
  Typer::RefineStats stats;
  std::optional<MatrixGroup> gamma;
  std::optional<OrbitPartition> orbits;
  std::unique_ptr<OrthoGraph> graph;
  std::optional<FrameCensus> census;
  std::optional<BasisSelection> basis;
  std::optional<IsometryResult> iso;
  std::optional<AutGroup> aut;
  std::optional<SublatticeM> m;
};

Pipeline::Pipeline(PipelineOptions options)
    : opt_(std::move(options)),
      cache_(opt_.cache_dir.empty() ? default_cache_dir() : opt_.cache_dir),
      st_(std::make_unique<State>()) {}

Pipeline::~Pipeline() = default;

unsigned Pipeline::threads() const {
  if (opt_.threads > 0) return opt_.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void Pipeline::note(const std::string& line) {
  if (opt_.log) *opt_.log << line << std::endl;
}

const Fixtures& Pipeline::fixtures() {
  if (!st_->fixtures) st_->fixtures = load_fixtures(opt_.fixture_dir);
  return *st_->fixtures;
}

const Lattice& Pipeline::o40() {
  if (!st_->o40) st_->o40 = opt_.lattice_path.empty() ? build_O40(fixtures()) : load_lattice(opt_.lattice_path);
  return *st_->o40;
}

const VectorSet& Pipeline::minimal_vectors() {
  if (!st_->s && !opt_.vecs_path.empty()) {
    VectorSet s = load_vector_set(opt_.vecs_path);
    if (s.common_norm() != Rational(4)) throw FormatError(opt_.vecs_path + ": expected vectors of norm 4");
    st_->s = s.modulo_sign() ? std::move(s) : s.folded();
    st_->s_hit = true;
  }
  if (!st_->s) {
    const Lattice& l = o40();
    note("minimal vectors: enumerating or loading from " + cache_.dir());
    VectorSet s = cache_.vectors(
        enumeration_key(l, "norm<=4"),
        [&] {
          EnumerationOptions eo;
          eo.modulo_sign = true;
          eo.threads = threads();
          return vectors_of_norm_at_most(l, Rational(4), eo);
        },
        &st_->s_hit);
    st_->s = s.modulo_sign() ? std::move(s) : s.folded();
  }
  return *st_->s;
}

bool Pipeline::minimal_vectors_from_cache() {
  minimal_vectors();
  return st_->s_hit;
}

const Typer& Pipeline::typer() {
  if (!st_->typer) st_->typer = std::make_unique<Typer>(minimal_vectors(), *o40().frame(), threads());
  return *st_->typer;
}

const Partition& Pipeline::level1() {
  if (!st_->level1) {
    note("typing: level 1");
    st_->level1 = typer().partition_by_type();
  }
  return *st_->level1;
}

const Partition& Pipeline::irreducible() {
  if (!st_->irreducible) {
    const Partition& p1 = level1();
    note("typing: refining to irreducible blocks");
    st_->irreducible = typer().refine_to_irreducible(p1, &st_->stats);
  }
  return *st_->irreducible;
}

const Typer::RefineStats& Pipeline::refine_stats() {
  irreducible();
  return st_->stats;
}

const MatrixGroup& Pipeline::gamma() {
  if (!st_->gamma) st_->gamma = gamma_group(o40());
  return *st_->gamma;
}

const OrbitPartition& Pipeline::gamma_orbits() {
  if (!st_->orbits) st_->orbits = orbits(minimal_vectors(), gamma().generators);
  return *st_->orbits;
}

const OrthoGraph& Pipeline::graph() {
  if (!st_->graph) {
    note("orthogonality graph");
    st_->graph = std::make_unique<OrthoGraph>(minimal_vectors(), *o40().frame(), threads());
  }
  return *st_->graph;
}

const FrameCensus& Pipeline::census() {
  if (!st_->census) {
    note("greedy orthogonal sets from every orbit representative");
    st_->census = frame_census(graph(), gamma_orbits(), threads());
  }
  return *st_->census;
}

const BasisSelection& Pipeline::basis() {
  if (!st_->basis) {
    const Partition& p = irreducible();
    const Block* anchor = p.find({7, 7});
    if (!anchor) throw AutError("block S7.7 is missing");
    std::vector<std::size_t> preferred{anchor->members.front()};
    st_->basis = four_vector_basis(o40(), minimal_vectors(), p, preferred);
  }
  return *st_->basis;
}

const IsometryResult& Pipeline::isometries() {
  if (!st_->iso) {
    const Partition& p = irreducible();
    const BasisSelection& b = basis();
    const Block* anchor = p.find({7, 7});
    const std::size_t anchor_index = std::size_t(anchor - p.blocks.data());
    IsometryProblem prob;
    prob.target = b.gram;
    for (auto k : b.block) prob.allowed.push_back(p.blocks[k].members);
    prob.anchor = SIZE_MAX;
    for (std::size_t i = 0; i < b.block.size(); ++i)
      if (b.block[i] == anchor_index) {
        prob.anchor = i;
        break;
      }
    if (prob.anchor == SIZE_MAX) throw AutError("the norm-4 basis has no vector in S7.7");
    prob.anchor_choices = block_transversal(minimal_vectors(), anchor->members, gamma());
    note("isometry search");
    st_->iso = isometry_search(prob, minimal_vectors(), graph());
  }
  return *st_->iso;
}

const AutGroup& Pipeline::aut() {
  if (!st_->aut) st_->aut = full_aut(o40(), gamma(), basis().vectors, isometries().solutions);
  return *st_->aut;
}

const SublatticeM& Pipeline::sublattice_m() {
  if (!st_->m) st_->m = find_sublattice_M(minimal_vectors(), irreducible(), o40().frame());
  return *st_->m;
}

}  // namespace lat40
