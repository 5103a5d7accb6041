#pragma once

#include <lat40/qr_codes.hpp>

#include <string>

namespace lat40 {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Transcribed matrices: B1 (20×20) and B3 (10×10) of the glue basis, and the
/// reference Gram matrix with the two automorphism generators (40×40 each).
struct Fixtures {
  IntMatrix b1, b3, gram_o40, g1, g2;
};

std::string default_fixture_dir();

/// Reads b1.mat, b3.mat, gram_o40.mat, g1.mat, g2.mat from `dir`. When
/// `verify` is set every file must match the SHA256SUMS manifest there;
/// a mismatch throws ConstructionError naming the file.
Fixtures load_fixtures(const std::string& dir = default_fixture_dir(), bool verify = true);

/// [[I, B1], [0, B2]] with B2 = [[3I, B3], [0, 21I]].
IntMatrix fixture_glue_matrix(const Fixtures& f);

CodeSpec reference_spec3();
CodeSpec reference_spec21();

/// Twenty copies of [[6,3],[3,12]], in the glue frame. Basis rows are
/// 6e_i - 21e_{20+i} and 3e_i, whose Gram is [[6I,3I],[3I,12I]] exactly.
Lattice build_L();

/// The lattice glued from the two reference codes. Throws ConstructionError when
/// it differs from the lattice spanned by fixture_glue_matrix(f).
Lattice build_O40(const Fixtures& f);

/// The glued lattice alone, without the fixture comparison.
Lattice glue_reference_codes();

/// Dual-basis frame of twenty copies of a binary form R together with the
/// elementary divisors (d1, d2) of R: in this frame the copies of R have
/// basis diag(d1·I, d2·I).
struct VariantFrame {
  FramePtr frame;
  int d1 = 1, d2 = 1;
};
VariantFrame variant_frame(const IntMatrix& r_gram);

/// Glue twenty copies of R along the two codes (moduli must be d1 and d2).
/// Throws ConstructionError naming the failed stage.
Lattice build_variant(const IntMatrix& r_gram, const CodeSpec& spec1, const CodeSpec& spec2);

}  // namespace lat40
