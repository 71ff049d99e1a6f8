#include "nfield/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nfield {

GroupElement GroupElement::translation(int t1, int t2) {
  GroupElement g;
  g.t_[0] = t1;
  g.t_[1] = t2;
  return g;
}

GroupElement GroupElement::rotation90(int quarter_turns) {
  GroupElement g;
  const int q = ((quarter_turns % 4) + 4) % 4;
  const int c[4] = {1, 0, -1, 0};
  const int s[4] = {0, 1, 0, -1};
  g.r_[0][0] = c[q];
  g.r_[0][1] = -s[q];
  g.r_[1][0] = s[q];
  g.r_[1][1] = c[q];
  return g;
}

GroupElement GroupElement::reflect_x1() {
  GroupElement g;
  g.r_[0][0] = -1;
  return g;
}

GroupElement GroupElement::reflect_x2() {
  GroupElement g;
  g.r_[1][1] = -1;
  return g;
}

GroupElement GroupElement::from_continuous(double a1, double a2, double angle, bool reflect,
                                           const GridSpec& spec) {
  const double q = angle / (std::numbers::pi / 2);
  const double qr = std::round(q);
  const double t1 = a1 / spec.dx(), t2 = a2 / spec.dx();
  std::ostringstream os;
  if (std::abs(q - qr) > 1e-12) {
    os << "rotation by " << angle << " rad is not a multiple of pi/2";
  } else if (std::abs(t1 - std::round(t1)) > 1e-9 || std::abs(t2 - std::round(t2)) > 1e-9) {
    os << "translation (" << a1 << ", " << a2 << ") is not a multiple of dx = " << spec.dx();
  } else {
    GroupElement g = rotation90(static_cast<int>(qr));
    if (reflect) g = g * reflect_x1();
    g.t_[0] = static_cast<int>(std::lround(t1));
    g.t_[1] = static_cast<int>(std::lround(t2));
    return g;
  }
  throw UnsupportedElement("GroupElement: " + os.str());
}

GroupElement GroupElement::operator*(const GroupElement& h) const {
  // g(h x) = R_g (R_h x + t_h) + t_g
  GroupElement out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.r_[i][j] = r_[i][0] * h.r_[0][j] + r_[i][1] * h.r_[1][j];
    out.t_[i] = r_[i][0] * h.t_[0] + r_[i][1] * h.t_[1] + t_[i];
  }
  return out;
}

GroupElement GroupElement::inverse() const {
  // Orthogonal integer matrices: R^{-1} = R^T.
  GroupElement out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.r_[i][j] = r_[j][i];
  }
  for (int i = 0; i < 2; ++i) out.t_[i] = -(out.r_[i][0] * t_[0] + out.r_[i][1] * t_[1]);
  return out;
}

bool GroupElement::is_identity() const {
  return r_[0][0] == 1 && r_[0][1] == 0 && r_[1][0] == 0 && r_[1][1] == 1 && t_[0] == 0 &&
         t_[1] == 0;
}

void GroupElement::apply(int m1, int m2, int& out1, int& out2) const {
  out1 = r_[0][0] * m1 + r_[0][1] * m2 + t_[0];
  out2 = r_[1][0] * m1 + r_[1][1] * m2 + t_[1];
}

Field act(const GroupElement& g, const Field& u) {
  const GridSpec& s = u.spec();
  if (s.dim() != 2) throw DimensionError("act: 2D field required");
  const int n = s.n();
  const int o = s.origin_index();
  const GroupElement gi = g.inverse();
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  std::vector<double> out(u.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int m1 = 0, m2 = 0;
      gi.apply(i - o, j - o, m1, m2);
      out[static_cast<std::size_t>(i) * n + j] = u.at(wrap(m1 + o), wrap(m2 + o));
    }
  }
  return Field(s, std::move(out));
}

}  // namespace nfield
