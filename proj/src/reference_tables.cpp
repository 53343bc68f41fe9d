#include "wsspline/reference_tables.hpp"

namespace wsspline {

namespace {

std::vector<HermiteEntry> main_table() {
  std::vector<HermiteEntry> t;
  auto add = [&t](int b, bool tilde, int rho, long num, long den = 1) { t.push_back({b, tilde, rho, num, den}); };
  // Vertex functions.
  const int vert[3][6] = {{1, 4, 5, 10, 11, 16}, {2, 6, 7, 12, 13, 17}, {3, 8, 9, 14, 15, 18}};
  for (int k = 0; k < 3; ++k) {
    const int* r = vert[k];
    add(k + 1, false, r[0], 1);
    add(k + 1, false, r[1], -9);
    add(k + 1, false, r[2], -9);
    add(k + 1, false, r[3], 54);
    add(k + 1, false, r[4], 54);
    add(k + 1, false, r[5], 54);
  }
  // B4..B9: (own first derivative, own second derivative, mixed, midpoint, edge-knot second).
  const int b49[6][5] = {{4, 10, 16, 19, 22}, {5, 11, 16, 21, 23}, {6, 12, 17, 20, 24},
                         {7, 13, 17, 19, 25}, {8, 14, 18, 21, 26}, {9, 15, 18, 20, 27}};
  for (int i = 0; i < 6; ++i) {
    add(4 + i, false, b49[i][0], 9);
    add(4 + i, false, b49[i][1], -81);
    add(4 + i, false, b49[i][2], -54);
    add(4 + i, false, b49[i][3], -27, 32);
    add(4 + i, false, b49[i][4], 75, 2);
  }
  const int b1015[6][4] = {{10, 19, 22, 25}, {11, 21, 23, 26}, {12, 20, 24, 27},
                           {13, 19, 25, 22}, {14, 21, 26, 23}, {15, 20, 27, 24}};
  for (int i = 0; i < 6; ++i) {
    add(10 + i, false, b1015[i][0], 27);
    add(10 + i, false, b1015[i][1], -189, 32);
    add(10 + i, false, b1015[i][2], 31, 2);
    add(10 + i, false, b1015[i][3], 49);
  }
  const int b1618[3][5] = {{16, 19, 21, 22, 23}, {17, 19, 20, 24, 25}, {18, 20, 21, 26, 27}};
  for (int i = 0; i < 3; ++i) {
    add(16 + i, false, b1618[i][0], 54);
    add(16 + i, false, b1618[i][1], 9, 8);
    add(16 + i, false, b1618[i][2], 9, 8);
    add(16 + i, false, b1618[i][3], -63);
    add(16 + i, false, b1618[i][4], -63);
  }
  const int b1921[3][3] = {{19, 22, 25}, {20, 24, 27}, {21, 23, 26}};
  for (int i = 0; i < 3; ++i) {
    add(19 + i, false, b1921[i][0], 45, 4);
    add(19 + i, false, b1921[i][1], -120);
    add(19 + i, false, b1921[i][2], -120);
  }
  const int pairs[3][2] = {{22, 23}, {24, 25}, {26, 27}};
  for (const auto& p : pairs) {
    add(p[0], false, p[0], 54);
    add(p[0], false, p[1], 27);
    add(p[0], false, 28, 1, 12);
    add(p[1], false, p[0], 27);
    add(p[1], false, p[1], 54);
    add(p[1], false, 28, 1, 12);
  }
  add(28, false, 28, 1, 2);
  for (int i = 22; i <= 27; ++i) {
    add(i, true, i, 81);
    add(i, true, 28, 1, 4);
  }
  add(28, true, 28, -1, 2);
  return t;
}

std::vector<HermiteEntry> extra_table() {
  return {
      {4, true, 29, 27, 2},  {4, true, 30, 54, 1},   {4, true, 31, 27, 1},
      {7, true, 32, 27, 2},  {7, true, 33, 27, 2},   {7, true, 34, -27, 2},
      {10, true, 29, -45, 2}, {10, true, 31, -27, 1}, {10, true, 32, 9, 1}, {10, true, 33, 81, 1}, {10, true, 34, 27, 1},
      {13, true, 29, 9, 1},  {13, true, 30, 36, 1},  {13, true, 31, -18, 1}, {13, true, 32, -45, 2},
      {13, true, 33, 63, 2}, {13, true, 34, 9, 2},
      {16, true, 30, -81, 1}, {16, true, 31, -27, 1},
      {17, true, 33, -27, 1}, {17, true, 34, 27, 1},
      {19, true, 30, -90, 1}, {19, true, 31, 45, 1}, {19, true, 33, -180, 1}, {19, true, 34, -45, 1},
      {22, true, 30, 81, 1},
      {25, true, 33, 81, 1},
  };
}

}  // namespace

const std::vector<HermiteEntry>& hermite_table_main() {
  static const std::vector<HermiteEntry> t = main_table();
  return t;
}

const std::vector<HermiteEntry>& hermite_table_extra() {
  static const std::vector<HermiteEntry> t = extra_table();
  return t;
}

}  // namespace wsspline
