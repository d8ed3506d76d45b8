#include "perconet/pattern.hpp"

namespace perconet {

const MeasurementPattern& builtin_pattern(LatticeKind kind) {
  // measurements on the odd checkerboard sites, pairing the collinear links.
  static const MeasurementPattern square{
      2, 2,
      {{{1, 0, 0}, {0, 0, 0}, {2, 0, 0}},
       {{1, 0, 0}, {1, -1, 0}, {1, 1, 0}},
       {{0, 1, 0}, {-1, 1, 0}, {1, 1, 0}},
       {{0, 1, 0}, {0, 0, 0}, {0, 2, 0}}},
      {}};
  // every B site and half of the A sites are measured.
  static const MeasurementPattern hexagonal{
      2, 2,
      {{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
       {{1, 1, 1}, {1, 1, 0}, {2, 1, 0}},
       {{1, 0, 1}, {2, 0, 0}, {1, 1, 0}},
       {{0, 1, 1}, {1, 1, 0}, {0, 2, 0}},
       {{1, 0, 0}, {1, 0, 1}, {1, -1, 1}},
       {{0, 1, 0}, {0, 1, 1}, {0, 0, 1}}},
      {}};
  // every square keeps one untouched corner.
  static const MeasurementPattern four_eight_eight{
      1, 1,
      {{{0, 0, 1}, {0, 0, 0}, {0, 0, 2}},
       {{0, 0, 2}, {-1, 0, 0}, {0, 0, 3}},
       {{0, 0, 3}, {0, 0, 0}, {0, -1, 1}}},
      {}};
  // sites b and c are measured.
  static const MeasurementPattern kagome{
      1, 1,
      {{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
       {{0, 0, 2}, {0, 0, 0}, {0, 1, 0}},
       {{0, 0, 1}, {0, 0, 2}, {1, -1, 2}}},
      {}};
  // three of the four sites in a 2x2 block are measured.
  static const MeasurementPattern triangular{
      2, 2,
      {{{1, 0, 0}, {0, 0, 0}, {2, 0, 0}},
       {{0, 1, 0}, {0, 0, 0}, {0, 2, 0}},
       {{1, 1, 0}, {0, 0, 0}, {2, 2, 0}},
       {{1, 0, 0}, {1, 1, 0}, {1, -1, 0}},
       {{1, 0, 0}, {2, 1, 0}, {0, -1, 0}},
       {{0, 1, 0}, {1, 1, 0}, {-1, 1, 0}}},
      {}};
  // one hub in three is measured and pairs opposite rim links; every rim site joins its two remaining hubs.
  static const MeasurementPattern dice{
      3, 3,
      {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
       {{0, 0, 2}, {1, 0, 0}, {0, 1, 0}},
       {{0, 0, 0}, {0, 0, 1}, {-1, -1, 2}},
       {{0, 0, 0}, {-1, 0, 2}, {0, -1, 1}},
       {{0, 0, 0}, {-1, 0, 1}, {0, -1, 2}},
       {{0, 1, 1}, {0, 1, 0}, {0, 2, 0}},
       {{0, 1, 2}, {0, 2, 0}, {1, 2, 0}},
       {{0, 2, 1}, {0, 2, 0}, {1, 2, 0}},
       {{0, 2, 2}, {1, 2, 0}, {1, 3, 0}},
       {{1, 0, 1}, {1, 0, 0}, {2, 0, 0}},
       {{1, 0, 2}, {2, 0, 0}, {2, 1, 0}},
       {{1, 1, 1}, {2, 1, 0}, {1, 2, 0}},
       {{1, 1, 2}, {2, 1, 0}, {1, 2, 0}},
       {{1, 1, 0}, {1, 1, 1}, {0, 0, 2}},
       {{1, 1, 0}, {0, 1, 2}, {1, 0, 1}},
       {{1, 1, 0}, {0, 1, 1}, {1, 0, 2}},
       {{1, 2, 1}, {1, 2, 0}, {1, 3, 0}},
       {{1, 2, 2}, {1, 3, 0}, {2, 3, 0}},
       {{2, 0, 1}, {2, 0, 0}, {2, 1, 0}},
       {{2, 0, 2}, {2, 1, 0}, {3, 1, 0}},
       {{2, 1, 1}, {2, 1, 0}, {3, 1, 0}},
       {{2, 1, 2}, {3, 1, 0}, {3, 2, 0}},
       {{2, 2, 1}, {3, 2, 0}, {2, 3, 0}},
       {{2, 2, 2}, {3, 2, 0}, {2, 3, 0}},
       {{2, 2, 0}, {2, 2, 1}, {1, 1, 2}},
       {{2, 2, 0}, {1, 2, 2}, {2, 1, 1}},
       {{2, 2, 0}, {1, 2, 1}, {2, 1, 2}}},
      {}};
  // all coordination-4 sites and one of the two coordination-6 sites are measured.
  static const MeasurementPattern bowtie{
      1, 1,
      {{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
       {{0, 0, 1}, {0, 0, 3}, {0, -1, 3}},
       {{0, 0, 2}, {0, 0, 3}, {-1, 0, 3}},
       {{0, 0, 2}, {0, 0, 0}, {0, 1, 0}},
       {{0, 0, 3}, {0, 0, 0}, {1, 1, 0}}},
      {}};
  // two of the four sites are measured; two links per cell remain Bell pairs.
  static const MeasurementPattern snub_square{
      1, 1,
      {{{0, 0, 0}, {0, 0, 1}, {1, 0, 1}},
       {{0, 0, 0}, {0, 0, 3}, {0, 1, 3}},
       {{0, 0, 2}, {0, 0, 1}, {0, -1, 1}},
       {{0, 0, 2}, {-1, 0, 3}, {0, 0, 3}}},
      {{{0, 0, 0}, {0, 1, 2}},
       {{0, 0, 1}, {-1, 0, 3}}}};
  switch (kind) {
    case LatticeKind::square: return square;
    case LatticeKind::hexagonal: return hexagonal;
    case LatticeKind::four_eight_eight: return four_eight_eight;
    case LatticeKind::kagome: return kagome;
    case LatticeKind::triangular: return triangular;
    case LatticeKind::dice: return dice;
    case LatticeKind::bowtie: return bowtie;
    case LatticeKind::snub_square: return snub_square;
  }
  return square;
}

}  // namespace perconet
