#include <lat40/pipeline.hpp>

namespace lat40 {

namespace {

TypeRow row(std::uint32_t t0, std::uint32_t t1, std::uint32_t t2, std::uint32_t t4, std::size_t size) {
  return {{t0, t1, t2, t4}, size};
}

}  // namespace

// Level-1 types against all of S, with block sizes (both signs counted).
std::vector<TypeRow> reference_level1() {
  return {
      row(24018, 7752, 38, 1, 4),
      row(24234, 7608, 74, 1, 304),
      row(24270, 7584, 80, 1, 684),
      row(24342, 7536, 92, 1, 912),
      row(24378, 7512, 98, 1, 2736),
      row(24414, 7488, 104, 1, 5472),
      row(24450, 7464, 110, 1, 9576),
      row(24486, 7440, 116, 1, 4788),
      row(24522, 7416, 122, 1, 4788),
      row(24558, 7392, 128, 1, 5016),
      row(24594, 7368, 134, 1, 1368),
      row(24630, 7344, 140, 1, 2052),
      row(24666, 7320, 146, 1, 228),
      row(24738, 7272, 158, 1, 684),
      row(24810, 7224, 170, 1, 152),
      row(24918, 7152, 188, 1, 684),
      row(24990, 7104, 200, 1, 76),
      row(25206, 6960, 236, 1, 76),
  };
}

// Irreducible blocks: type against the block itself, block size.
std::vector<TypeRow> reference_irreducible() {
  return {
      row(2, 0, 0, 1, 4),  // 1.1
      row(38, 18, 0, 1, 76),  // 2.1
      row(162, 32, 0, 1, 228),  // 2.2
      row(434, 120, 4, 1, 684),  // 3.1
      row(114, 56, 0, 1, 228),  // 4.1
      row(422, 128, 2, 1, 684),  // 4.2
      row(362, 154, 6, 1, 684),  // 5.1
      row(402, 138, 2, 1, 684),  // 5.2
      row(414, 130, 4, 1, 684),  // 5.3
      row(438, 120, 2, 1, 684),  // 5.4
      row(330, 168, 8, 1, 684),  // 6.1
      row(422, 128, 2, 1, 684),  // 6.2
      row(422, 128, 2, 1, 684),  // 6.3
      row(422, 128, 2, 1, 684),  // 6.4
      row(446, 114, 4, 1, 684),  // 6.5
      row(434, 120, 4, 1, 684),  // 6.6
      row(434, 122, 2, 1, 684),  // 6.7
      row(446, 112, 6, 1, 684),  // 6.8
      row(330, 168, 8, 1, 684),  // 7.1
      row(302, 178, 12, 1, 684),  // 7.2
      row(362, 160, 0, 1, 684),  // 7.3
      row(374, 152, 2, 1, 684),  // 7.4
      row(374, 152, 2, 1, 684),  // 7.5
      row(438, 120, 2, 1, 684),  // 7.6
      row(850, 252, 6, 1, 1368),  // 7.7
      row(426, 128, 0, 1, 684),  // 7.8
      row(840, 260, 3, 1, 1368),  // 7.9
      row(434, 122, 2, 1, 684),  // 7.10
      row(402, 138, 2, 1, 684),  // 7.11
      row(390, 146, 0, 1, 684),  // 7.12
      row(362, 154, 6, 1, 684),  // 8.1
      row(446, 114, 4, 1, 684),  // 8.2
      row(434, 120, 4, 1, 684),  // 8.3
      row(446, 114, 4, 1, 684),  // 8.4
      row(434, 120, 4, 1, 684),  // 8.5
      row(398, 136, 6, 1, 684),  // 8.6
      row(446, 112, 6, 1, 684),  // 8.7
      row(302, 178, 12, 1, 684),  // 9.1
      row(422, 130, 0, 1, 684),  // 9.2
      row(470, 98, 8, 1, 684),  // 9.3
      row(434, 122, 2, 1, 684),  // 9.4
      row(386, 144, 4, 1, 684),  // 9.5
      row(426, 128, 0, 1, 684),  // 9.6
      row(450, 112, 4, 1, 684),  // 9.7
      row(434, 120, 4, 1, 684),  // 10.1
      row(422, 128, 2, 1, 684),  // 10.2
      row(422, 128, 2, 1, 684),  // 10.3
      row(446, 114, 4, 1, 684),  // 10.4
      row(422, 128, 2, 1, 684),  // 10.5
      row(398, 136, 6, 1, 684),  // 10.6
      row(114, 56, 0, 1, 228),  // 10.7
      row(362, 154, 6, 1, 684),  // 10.8
      row(422, 130, 0, 1, 684),  // 11.1
      row(434, 122, 2, 1, 684),  // 11.2
      row(330, 168, 8, 1, 684),  // 12.1
      row(446, 114, 4, 1, 684),  // 12.2
      row(422, 128, 2, 1, 684),  // 12.3
      row(90, 62, 6, 1, 228),  // 13.1
      row(450, 112, 4, 1, 684),  // 14.1
      row(38, 0, 18, 1, 76),  // 15.1
      row(38, 18, 0, 1, 76),  // 15.2
      row(614, 0, 34, 1, 684),  // 16.1
      row(38, 0, 18, 1, 76),  // 17.1
      row(38, 0, 18, 1, 76),  // 18.1
  };
}

// Greedy chain length m → number of Γ-orbit representatives.
std::map<std::size_t, std::size_t> reference_census() {
  return {{19, 6}, {20, 15}, {21, 30}, {22, 12}, {23, 12}, {24, 12}, {25, 15}, {26, 8}, {28, 21}, {32, 1}};
}

}  // namespace lat40
