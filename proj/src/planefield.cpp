#include "asymptotica/planefield.hpp"

#include <cmath>

namespace asym {

AmbientField::AmbientField(std::array<Expr, 3> xi) : xi_(std::move(xi)) {
  for (const auto& c : xi_)
    for (Var v : c.free_variables())
      if (v != Var::x && v != Var::y && v != Var::z)
        throw std::invalid_argument("field components may only use x, y, z");
}

AmbientField AmbientField::parse(const std::array<std::string, 3>& xi) {
  return AmbientField({asym::parse(xi[0]), asym::parse(xi[1]), asym::parse(xi[2])});
}

Vec3d AmbientField::operator()(const Vec3d& p) const {
  Bindings<double> b(0.0);
  b.bind(Var::x, p[0]).bind(Var::y, p[1]).bind(Var::z, p[2]);
  const Vec3d r{eval(xi_[0], b), eval(xi_[1], b), eval(xi_[2], b)};
  if (r[0] == 0.0 && r[1] == 0.0 && r[2] == 0.0) throw ZeroField("plane field vanishes at the queried point");
  return r;
}

Vec3<Jet> AmbientField::operator()(const Vec3<Jet>& p) const {
  const JetShape s = common_shape(common_shape(p[0].shape(), p[1].shape()), p[2].shape());
  Bindings<Jet> b(Jet(0.0, s));
  b.bind(Var::x, p[0]).bind(Var::y, p[1]).bind(Var::z, p[2]);
  Vec3<Jet> r{eval(xi_[0], b), eval(xi_[1], b), eval(xi_[2], b)};
  if (r[0].value() == 0.0 && r[1].value() == 0.0 && r[2].value() == 0.0)
    throw ZeroField("plane field vanishes at the queried point");
  return r;
}

std::array<Vec3d, 3> AmbientField::jacobian(const Vec3d& p) const {
  const JetShape s{1, 1};
  const Vec3<Jet> xi = (*this)(Vec3<Jet>{Jet::variable(Slot::x, p[0], s), Jet::variable(Slot::y, p[1], s),
                                         Jet::variable(Slot::z, p[2], s)});
  std::array<Vec3d, 3> cols;
  for (std::size_t i = 0; i < 3; ++i) {
    cols[0][i] = xi[i].partial(1, 0, 0);
    cols[1][i] = xi[i].partial(0, 1, 0);
    cols[2][i] = xi[i].partial(0, 0, 1);
  }
  return cols;
}

double normal_curvature(const AmbientField& field, const Vec3d& p, Vec3d dr, NormalCurvatureOptions opt) {
  if (norm(dr) == 0.0) throw ZeroDirection("normal curvature needs a nonzero direction");
  const Vec3d xi = field(p);
  if (opt.project) {
    dr = dr - xi * (dot(xi, dr) / dot(xi, xi));
    if (norm(dr) == 0.0) throw ZeroDirection("direction is normal to the plane");
  } else if (std::abs(dot(xi, dr)) > opt.plane_tol * norm(xi) * norm(dr)) {
    throw NotInPlane("direction does not lie in the plane of the field");
  }
  const auto J = field.jacobian(p);
  const Vec3d dxi = J[0] * dr[0] + J[1] * dr[1] + J[2] * dr[2];
  return -dot(dxi, dr) / dot(dr, dr);
}

double integrability_defect(const AmbientField& field, const Vec3d& p) {
  const auto J = field.jacobian(p);  // J[j][i] = d xi_i / d x_j
  const Vec3d curl{J[1][2] - J[2][1], J[2][0] - J[0][2], J[0][1] - J[1][0]};
  return dot(field(p), curl);
}

void probe_nonvanishing(const Expr& phi, const Box& box, int lattice, double tol) {
  Bindings<double> b(0.0);
  int sign = 0;
  for (int i = 0; i < lattice; ++i)
    for (int j = 0; j < lattice; ++j)
      for (int k = 0; k < lattice; ++k) {
        const double t = lattice > 1 ? 1.0 / (lattice - 1) : 0.0;
        const Vec3d p{box.lo[0] + (box.hi[0] - box.lo[0]) * i * t, box.lo[1] + (box.hi[1] - box.lo[1]) * j * t,
                      box.lo[2] + (box.hi[2] - box.lo[2]) * k * t};
        b.bind(Var::x, p[0]).bind(Var::y, p[1]).bind(Var::z, p[2]);
        const double v = eval(phi, b);
        // A sign change on the connected box forces a zero of a continuous phi.
        const int sv = v > 0 ? 1 : -1;
        if (std::abs(v) <= tol || !std::isfinite(v) || (sign != 0 && sv != sign))
          throw Vanishing("scale function vanishes near (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                          ", " + std::to_string(p[2]) + ")");
        sign = sv;
      }
}

AmbientField gauge_scale(const AmbientField& field, const Expr& phi, const Box& box) {
  probe_nonvanishing(phi, box);
  const auto& c = field.components();
  return AmbientField({phi * c[0], phi * c[1], phi * c[2]});
}

AmbientField circle_example_field() {
  return AmbientField::parse({"x^2*y*z + y^3*z - x^2*y - y^3 + x*z - 2*y*z + y",
                              "x^3 - x^3*z - x*y^2*z + x*y^2 + 2*x*z + y*z - x", "-x^2 - y^2"});
}

AmbientField builtin_ambient_field(const std::string& name) {
  if (name == "circle-example") return circle_example_field();
  if (name == "flat") return AmbientField::parse({"0", "0", "1"});
  if (name == "zero-monodromy") return AmbientField::parse({"0", "x", "1"});
  if (name == "contact") return AmbientField::parse({"-y", "0", "1"});
  throw std::invalid_argument("unknown built-in ambient field '" + name + "'");
}

}  // namespace asym
