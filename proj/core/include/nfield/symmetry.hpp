#pragma once

// Grid-exact elements of E(2): node translations combined with the eight
// symmetries of the square.

#include "nfield/grid.hpp"

namespace nfield {

class GroupElement {
 public:
  /// Identity.
  GroupElement() = default;

  static GroupElement translation(int t1, int t2);
  static GroupElement rotation90(int quarter_turns);
  static GroupElement reflect_x1();  ///< x1 -> -x1
  static GroupElement reflect_x2();  ///< x2 -> -x2
  /// From continuous data: rotation angle (radians), optional reflection of x1
  /// applied first, then translation (a1, a2). Throws UnsupportedElement unless
  /// the angle is a multiple of pi/2 and the translation a multiple of dx.
  static GroupElement from_continuous(double a1, double a2, double angle, bool reflect,
                                      const GridSpec& spec);

  /// g h: apply h first, then g.
  GroupElement operator*(const GroupElement& h) const;
  GroupElement inverse() const;
  bool is_identity() const;

  /// g x in node offsets from the origin.
  void apply(int m1, int m2, int& out1, int& out2) const;

 private:
  int r_[2][2] = {{1, 0}, {0, 1}};
  int t_[2] = {0, 0};
};

/// (T_g u)(x) = u(g^{-1} x), as an exact node permutation with periodic wrap.
Field act(const GroupElement& g, const Field& u);

}  // namespace nfield
