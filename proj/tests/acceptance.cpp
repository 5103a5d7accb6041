// Runs every claim against the real lattice and prints one line per claim.
// Exit status is nonzero unless all of them pass.

#include <lat40/pipeline.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  lat40::PipelineOptions o;
  o.threads = 0;
  o.log = &std::cerr;
  if (const char* n = std::getenv("LAT40_NODE_LIMIT")) o.node_limit = std::strtoull(n, nullptr, 10);
  const lat40::VerificationReport r = [&] {
    lat40::Pipeline p(o);
    return lat40::verify_all(p);
  }();

  for (const auto& c : r.claims)
    std::cout << (c.status == lat40::ClaimStatus::pass ? "PASS" : "FAIL") << "  criterion " << c.id
              << " (" << c.key << ")" << (c.status == lat40::ClaimStatus::blocked ? " blocked" : "")
              << "\n";
  std::cout << "\n" << lat40::report_text(r);
  if (argc > 1) std::ofstream(argv[1]) << lat40::report_json(r);
  return r.all_passed() ? 0 : 1;
}
