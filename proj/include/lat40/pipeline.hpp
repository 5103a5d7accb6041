#pragma once

#include <lat40/aut.hpp>
#include <lat40/construction.hpp>
#include <lat40/glue.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <ostream>

namespace lat40 {

/// $LAT40_CACHE, else $XDG_CACHE_HOME/lat40, else ~/.cache/lat40.
std::string default_cache_dir();

/// Content-addressed files under one directory. Each entry `<key>.<ext>` has
/// a `.sha256` sidecar; an entry whose bytes no longer match it is treated
/// as missing. Writers hold an advisory lock on `<key>.lock`.
class Cache {
 public:
  explicit Cache(std::string dir);
  const std::string& dir() const { return dir_; }
  std::string path(const std::string& key, const std::string& ext) const;
  /// Loads the entry or, when it is missing or corrupt, runs `make` and
  /// stores its result. `hit` reports which happened.
  VectorSet vectors(const std::string& key, const std::function<VectorSet()>& make,
                    bool* hit = nullptr) const;

 private:
  std::string dir_;
};

/// Cache key of a vector enumeration: hash of the lattice (frame Gram and
/// HNF basis) and the parameters.
std::string enumeration_key(const Lattice& l, const std::string& params);

struct PipelineOptions {
  std::string cache_dir;                   // empty: default_cache_dir()
  std::string fixture_dir = default_fixture_dir();
  std::string lattice_path;                // empty: build O40 from the codes
  std::string vecs_path;                   // empty: enumerate (through the cache)
  unsigned threads = 1;                    // 0: hardware concurrency
  std::uint64_t node_limit = 5000;         // per start vector in the frame certification
  std::ostream* log = nullptr;             // progress lines, if set
};

/// Lazily computed objects shared by the CLI commands and verify-all.
/// Every accessor computes its inputs on first use.
class Pipeline {
 public:
  explicit Pipeline(PipelineOptions options);
  ~Pipeline();

  const PipelineOptions& options() const { return opt_; }
  const Cache& cache() const { return cache_; }
  unsigned threads() const;

  const Fixtures& fixtures();
  const Lattice& o40();
  /// Norm-4 vectors of O40, sign-folded; cached on disk.
  const VectorSet& minimal_vectors();
  bool minimal_vectors_from_cache();
  const Typer& typer();
  const Partition& level1();
  const Partition& irreducible();
  const Typer::RefineStats& refine_stats();
  const MatrixGroup& gamma();
  const OrbitPartition& gamma_orbits();
  const OrthoGraph& graph();
  const FrameCensus& census();
  const BasisSelection& basis();
  const IsometryResult& isometries();
  const AutGroup& aut();
  const SublatticeM& sublattice_m();

 private:
  struct State;
  void note(const std::string& line);

  PipelineOptions opt_;
  Cache cache_;
  std::unique_ptr<State> st_;
};

enum class ClaimStatus { pass, fail, blocked };
std::string to_string(ClaimStatus s);

struct ClaimResult {
  int id = 0;
  std::string key;        // short machine name
  std::string topic;      // what is being reproduced
  std::string expected;
  std::string computed;
  ClaimStatus status = ClaimStatus::blocked;
  double seconds = 0;
  std::vector<std::string> notes;
};

struct VerificationReport {
  static constexpr int schema_version = 1;
  std::vector<ClaimResult> claims;
  bool all_passed() const;
};

/// Runs every claim in dependency order. A stage that throws marks the
/// claims depending on it as blocked; the run always continues.
VerificationReport verify_all(Pipeline& p);

/// Reference rows used by the claims (type, size).
struct TypeRow {
  TypeSig type;
  std::size_t size = 0;
  auto operator<=>(const TypeRow&) const = default;
};
std::vector<TypeRow> reference_level1();
std::vector<TypeRow> reference_irreducible();
std::map<std::size_t, std::size_t> reference_census();

/// The property suites that do not depend on O40 beyond S and the blocks.
struct PropertyOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::vector<PropertyOutcome> random_lattice_suite(std::uint64_t seed = 20240611, int count = 50);
std::vector<PropertyOutcome> linalg_invariant_suite(std::uint64_t seed = 7, int count = 40);

/// Report serializations. Timings appear only in text and in the JSON
/// "seconds" fields; everything else is deterministic.
std::string report_json(const VerificationReport& r, bool with_timings = true);
std::string report_text(const VerificationReport& r);

}  // namespace lat40
