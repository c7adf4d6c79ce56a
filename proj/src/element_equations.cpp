#include <array>

#include "cavneg/dynamics.hpp"

namespace cavneg {

namespace {

constexpr std::array<HoppingCorrection, 85> kCorrections = {{
    {1, 2, 1, 3, Coupling::Xi12, +1.0},
    {1, 4, 1, 3, Coupling::Xi23, +1.0},
    {1, 5, 1, 6, Coupling::Xi23, +1.0},
    {1, 7, 1, 6, Coupling::Xi12, +1.0},
    {2, 1, 3, 1, Coupling::Xi12, -1.0},
    {2, 3, 3, 3, Coupling::Xi12, -1.0},
    {2, 3, 2, 2, Coupling::Xi12, +2.0},
    {2, 4, 2, 3, Coupling::Xi23, +1.0},
    {2, 4, 3, 4, Coupling::Xi12, -1.0},
    {2, 5, 2, 6, Coupling::Xi23, +1.0},
    {2, 5, 3, 5, Coupling::Xi12, -1.0},
    {2, 7, 2, 6, Coupling::Xi12, +1.0},
    {2, 7, 3, 7, Coupling::Xi12, -1.0},
    {2, 8, 3, 8, Coupling::Xi12, -1.0},
    {3, 1, 2, 1, Coupling::Xi12, -1.0},
    {3, 1, 4, 1, Coupling::Xi23, -1.0},
    {3, 2, 3, 3, Coupling::Xi12, +1.0},
    {3, 2, 2, 2, Coupling::Xi12, -1.0},
    {3, 2, 4, 2, Coupling::Xi23, -1.0},
    {3, 4, 3, 3, Coupling::Xi23, +1.0},
    {3, 4, 2, 4, Coupling::Xi12, -1.0},
    {3, 4, 4, 4, Coupling::Xi23, -1.0},
    {3, 5, 3, 6, Coupling::Xi23, +1.0},
    {3, 5, 2, 5, Coupling::Xi12, -1.0},
    {3, 5, 4, 5, Coupling::Xi23, -1.0},
    {3, 6, 4, 6, Coupling::Xi23, -2.0},
    {3, 7, 3, 6, Coupling::Xi12, +1.0},
    {3, 7, 2, 7, Coupling::Xi12, -1.0},
    {3, 7, 4, 7, Coupling::Xi23, -1.0},
    {3, 8, 2, 8, Coupling::Xi12, -1.0},
    {3, 8, 4, 8, Coupling::Xi23, -1.0},
    {4, 1, 3, 1, Coupling::Xi23, -1.0},
    {4, 2, 4, 3, Coupling::Xi12, +1.0},
    {4, 2, 3, 2, Coupling::Xi23, -1.0},
    {4, 4, 4, 3, Coupling::Xi23, +1.0},
    {4, 4, 3, 4, Coupling::Xi23, -1.0},
    {4, 5, 4, 6, Coupling::Xi23, +1.0},
    {4, 5, 3, 5, Coupling::Xi23, -1.0},
    {4, 7, 4, 6, Coupling::Xi12, +1.0},
    {4, 7, 3, 7, Coupling::Xi23, -1.0},
    {4, 8, 3, 8, Coupling::Xi23, -1.0},
    {5, 1, 6, 1, Coupling::Xi23, -1.0},
    {5, 2, 5, 3, Coupling::Xi12, +1.0},
    {5, 2, 6, 2, Coupling::Xi23, -1.0},
    {5, 3, 3, 6, Coupling::Xi23, +1.0},
    {5, 3, 6, 3, Coupling::Xi23, -1.0},
    {5, 4, 5, 3, Coupling::Xi23, +1.0},
    {5, 4, 6, 4, Coupling::Xi23, -1.0},
    {5, 5, 5, 6, Coupling::Xi23, +1.0},
    {5, 5, 6, 5, Coupling::Xi23, -1.0},
    {5, 7, 5, 6, Coupling::Xi12, +1.0},
    {5, 7, 6, 7, Coupling::Xi23, -1.0},
    {5, 8, 6, 8, Coupling::Xi23, -1.0},
    {6, 1, 5, 1, Coupling::Xi23, -1.0},
    {6, 1, 7, 1, Coupling::Xi12, -1.0},
    {6, 2, 6, 3, Coupling::Xi12, +1.0},
    {6, 2, 5, 2, Coupling::Xi23, -1.0},
    {6, 2, 7, 2, Coupling::Xi12, -1.0},
    {6, 4, 6, 3, Coupling::Xi23, +1.0},
    {6, 4, 5, 4, Coupling::Xi23, -1.0},
    {6, 4, 7, 4, Coupling::Xi12, -1.0},
    {6, 5, 6, 6, Coupling::Xi23, +1.0},
    {6, 5, 5, 5, Coupling::Xi23, -1.0},
    {6, 5, 7, 5, Coupling::Xi12, -1.0},
    {6, 7, 6, 6, Coupling::Xi12, +1.0},
    {6, 7, 5, 7, Coupling::Xi23, -1.0},
    {6, 7, 7, 7, Coupling::Xi12, -1.0},
    {6, 8, 5, 8, Coupling::Xi23, -1.0},
    {6, 8, 7, 8, Coupling::Xi12, -1.0},
    {7, 1, 6, 1, Coupling::Xi12, -1.0},
    {7, 2, 7, 3, Coupling::Xi12, +1.0},
    {7, 2, 6, 2, Coupling::Xi12, -1.0},
    {7, 4, 7, 3, Coupling::Xi23, +1.0},
    {7, 4, 6, 4, Coupling::Xi12, -1.0},
    {7, 5, 7, 6, Coupling::Xi23, +1.0},
    {7, 5, 6, 5, Coupling::Xi12, -1.0},
    {7, 6, 7, 5, Coupling::Xi23, +1.0},
    {7, 6, 7, 5, Coupling::Xi12, -1.0},
    {7, 7, 7, 6, Coupling::Xi12, +1.0},
    {7, 7, 6, 7, Coupling::Xi12, -1.0},
    {7, 8, 6, 8, Coupling::Xi12, -1.0},
    {8, 2, 8, 3, Coupling::Xi12, +1.0},
    {8, 4, 8, 3, Coupling::Xi23, +1.0},
    {8, 5, 8, 6, Coupling::Xi23, +1.0},
    {8, 7, 8, 6, Coupling::Xi12, +1.0},
}};

}  // namespace

DensityMatrix rhs_elementwise_printed(const DensityMatrix& rho, Complex alpha, Complex beta,
                                      double x12, double x23) {
  const Complex I{0.0, 1.0};
  const Complex a = alpha;
  const Complex ac = std::conj(alpha);
  const Complex b = beta;
  const Complex bc = std::conj(beta);
  const double ra = alpha.real();
  const double rb = beta.real();
  auto r = [&rho](int j, int k) { return rho(j - 1, k - 1); };
  DensityMatrix out;
  auto d = [&out](int j, int k) -> Complex& { return out(j - 1, k - 1); };

  d(1, 1) = 2.0*rb*(r(2, 2) + r(3, 3) + r(4, 4)) - 6.0*ra*r(1, 1);
  d(1, 2) = r(1, 2)*(a - bc - 6.0*ra) + 2.0*rb*(r(3, 5) + r(4, 6));
  d(1, 3) = I*x12*r(1, 2) + I*x23*r(1, 4) + r(1, 3)*(a - bc - 6.0*ra) + 2.0*rb*(r(2, 5) + r(4, 7));
  d(1, 4) = r(1, 4)*(a - bc - 6.0*ra) + 2.0*rb*(r(2, 6) + r(3, 7));
  d(1, 5) = r(1, 5)*(2.0*a - 2.0*bc - 6.0*ra) + 2.0*rb*r(4, 8);
  d(1, 6) = I*x23*r(1, 5) + I*x12*r(1, 7) + r(1, 6)*(2.0*a - 2.0*bc - 6.0*ra) + 2.0*rb*r(3, 8);
  d(1, 7) = r(1, 7)*(2.0*a - 2.0*bc - 6.0*ra) + 2.0*rb*r(2, 8);
  d(1, 8) = r(1, 8)*(-3.0*ac - 3.0*bc);
  d(2, 1) = r(2, 1)*(-a - b - 4.0*ra) + 2.0*rb*(r(5, 3) + r(6, 4));
  d(2, 2) = I*x12*(r(2, 3) - r(3, 2)) + r(2, 2)*(-4.0*ra - 2.0*rb) + 2.0*ra*r(1, 1) + 2.0*rb*r(5, 5) + 2.0*rb*r(6, 6);
  d(2, 3) = I*x23*r(2, 4) - I*x12*r(2, 2) + r(2, 3)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(6, 7);
  d(2, 4) = r(2, 4)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(5, 7);
  d(2, 5) = r(2, 5)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 3) + 2.0*rb*r(6, 8);
  d(2, 6) = I*x23*r(2, 5) + I*x12*r(2, 7) - I*x12*r(3, 6) + r(2, 6)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 4) + 2.0*rb*r(5, 8);
  d(2, 7) = r(2, 7)*(a + b - 4.0*ra - 4.0*rb);
  d(2, 8) = r(2, 8)*(2.0*b - 2.0*ac - 6.0*rb) + 2.0*ra*r(1, 7);
  d(3, 1) = r(3, 1)*(-a - b - 4.0*ra) + 2.0*rb*(r(5, 2) + r(7, 4));
  d(3, 2) = r(3, 2)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(7, 6);
  d(3, 3) = -I*x12*r(2, 3) + I*x12*r(3, 2) + I*x23*r(3, 4) - I*x23*r(4, 3) + r(3, 3)*(-4.0*ra - 2.0*rb) + 2.0*ra*r(1, 1) + 2.0*rb*r(5, 5) + 2.0*rb*r(7, 7);
  d(3, 4) = r(3, 4)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(5, 6);
  d(3, 5) = r(3, 5)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 2) + 2.0*rb*r(7, 8);
  d(3, 6) = -I*x12*r(2, 6) + I*x23*r(3, 5) + I*x12*r(3, 7) + I*x23*r(4, 6) + r(3, 6)*(a + b - 4.0*ra - 4.0*rb);
  d(3, 7) = r(3, 7)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 4) + 2.0*rb*r(5, 8);
  d(3, 8) = r(3, 8)*(2.0*b - 2.0*ac - 6.0*rb) + 2.0*ra*r(1, 6);
  d(4, 1) = r(4, 1)*(-a - b - 4.0*ra) + 2.0*rb*(r(6, 2) + r(7, 3));
  d(4, 2) = r(4, 2)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(7, 5);
  d(4, 3) = -I*x23*r(3, 3) + I*x12*r(4, 2) + I*x23*r(4, 4) + r(4, 3)*(-4.0*ra - 2.0*rb) + 2.0*rb*r(6, 5);
  d(4, 4) = r(4, 4)*(-4.0*ra - 2.0*rb) + 2.0*ra*r(1, 1) + 2.0*rb*r(6, 6) + 2.0*rb*r(7, 7);
  d(4, 5) = r(4, 5)*(a + b - 4.0*ra - 4.0*rb);
  d(4, 6) = -I*x23*r(3, 6) + I*x23*r(4, 5) + I*x12*r(4, 7) + r(4, 6)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 2) + 2.0*rb*r(7, 8);
  d(4, 7) = r(4, 7)*(a + b - 4.0*ra - 4.0*rb) + 2.0*ra*r(1, 3) + 2.0*rb*r(6, 8);
  d(4, 8) = r(4, 8)*(2.0*b - 2.0*ac - 6.0*rb) + 2.0*ra*r(1, 5);
  d(5, 1) = r(5, 1)*(-2.0*a - 2.0*b - 2.0*ra) + 2.0*rb*r(8, 4);
  d(5, 2) = r(5, 2)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(3, 1) + 2.0*rb*r(8, 6);
  d(5, 3) = -I*x23*r(3, 6) + I*x12*r(5, 2) + I*x23*r(5, 4) + r(5, 3)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(2, 1) + 2.0*rb*r(8, 7);
  d(5, 4) = r(5, 4)*(-a - b - 2.0*ra - 2.0*rb);
  d(5, 5) = r(5, 5)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(2, 2) + 2.0*ra*r(3, 3) + 2.0*rb*r(8, 8);
  d(5, 6) = I*x23*r(5, 5) + I*x12*r(5, 7) - I*x23*r(6, 6) + r(5, 6)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(3, 4);
  d(5, 7) = r(5, 7)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(2, 4);
  d(5, 8) = r(5, 8)*(b - ac - 6.0*rb) + 2.0*ra*(r(2, 6) + r(3, 7));
  d(6, 1) = r(6, 1)*(-2.0*a - 2.0*b - 2.0*ra) + 2.0*rb*r(8, 3);
  d(6, 2) = r(6, 2)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(4, 1) + 2.0*rb*r(8, 5);
  d(6, 3) = -I*x23*r(5, 3) + I*x12*r(6, 2) + I*x23*r(6, 4) - I*x12*r(7, 3) + r(6, 3)*(-a - b - 2.0*ra - 2.0*rb);
  d(6, 4) = r(6, 4)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(2, 1) + 2.0*rb*r(8, 7);
  d(6, 5) = r(6, 5)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(4, 3);
  d(6, 6) = -I*x23*r(5, 6) + I*x23*r(6, 5) + I*x12*r(6, 7) - I*x12*r(7, 6) + r(6, 6)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(2, 2) + 2.0*ra*r(4, 4) + 2.0*rb*r(8, 8);
  d(6, 7) = r(6, 7)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(2, 3);
  d(6, 8) = r(6, 8)*(b - ac - 6.0*rb) + 2.0*ra*(r(2, 5) + r(4, 7));
  d(7, 1) = r(7, 1)*(-2.0*a - 2.0*b - 2.0*ra) + 2.0*rb*r(8, 2);
  d(7, 2) = r(7, 2)*(-a - b - 2.0*ra - 2.0*rb);
  d(7, 3) = -I*x12*r(6, 3) + I*x12*r(7, 2) + I*x23*r(7, 4) + r(7, 3)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(4, 1) + 2.0*rb*r(8, 5);
  d(7, 4) = r(7, 4)*(-a - b - 2.0*ra - 2.0*rb) + 2.0*ra*r(3, 1) + 2.0*rb*r(8, 6);
  d(7, 5) = r(7, 5)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(4, 2);
  d(7, 6) = -I*x12*r(6, 6) + I*x12*r(7, 5) + I*x12*r(7, 7) + r(7, 6)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(3, 2);
  d(7, 7) = r(7, 7)*(-2.0*ra - 4.0*rb) + 2.0*ra*r(3, 3) + 2.0*ra*r(4, 4) + 2.0*rb*r(8, 8);
  d(7, 8) = r(7, 8)*(b - ac - 6.0*rb) + 2.0*ra*(r(3, 5) + r(4, 6));
  d(8, 1) = (-3.0*a - 3.0*b)*r(8, 1);
  d(8, 2) = r(8, 2)*(-2.0*a - 2.0*b - 2.0*rb) + 2.0*ra*r(7, 1);
  d(8, 3) = I*x12*r(8, 2) + I*x23*r(8, 4) + r(8, 3)*(-2.0*a - 2.0*b - 2.0*rb) + 2.0*ra*r(6, 1);
  d(8, 4) = r(8, 4)*(-2.0*a - 2.0*b - 2.0*rb) + 2.0*ra*r(5, 1);
  d(8, 5) = r(8, 5)*(-a - b - 4.0*rb) + 2.0*ra*(r(6, 2) + r(7, 3));
  d(8, 6) = I*x23*r(8, 5) + I*x12*r(8, 7) + r(8, 6)*(-a - b - 4.0*rb) + 2.0*ra*(r(5, 2) + r(7, 4));
  d(8, 7) = r(8, 7)*(-a - b - 4.0*rb) + 2.0*ra*(r(5, 3) + r(6, 4));
  d(8, 8) = 2.0*ra*(r(5, 5) + r(6, 6) + r(7, 7)) - 6.0*rb*r(8, 8);
  return out;
}

std::span<const HoppingCorrection> hopping_corrections() { return kCorrections; }

DensityMatrix rhs_elementwise(const DensityMatrix& rho, Complex alpha, Complex beta, double xi12,
                              double xi23) {
  DensityMatrix out = rhs_elementwise_printed(rho, alpha, beta, xi12, xi23);
  const Complex I{0.0, 1.0};
  for (const auto& c : kCorrections) {
    const double xi = c.coupling == Coupling::Xi12 ? xi12 : xi23;
    out(c.row - 1, c.col - 1) += c.factor * I * xi * rho(c.src_row - 1, c.src_col - 1);
  }
  return out;
}

}  // namespace cavneg
