#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qhjqes/engine/family.hpp"
#include "qhjqes/series/polynomial.hpp"

namespace qhjqes::spectra {

using engine::PotentialFamily;
using series::Complex;
using series::Polynomial;

/// Sextic states split by parity; every other family has a single sector.
enum class Sector { Even, Odd, Chart };

const char* to_string(Sector s);

/// (s - s0)^exponent, written as (s0 - s)^exponent when s0 lies to the right
/// of the physical interval so that the factor is real there.
struct Prefactor {
  double location;
  double exponent;
  bool reflected = false;
};

/// psi = prod(prefactors) * C(s) * exp(-G(s)) in the chart variable s.
struct GaugeSpec {
  std::vector<Prefactor> prefactors;
  Polynomial gauge_polynomial;  // G
  engine::ChartSpec chart;
  /// Recursion variable z = s^variable_power.
  int variable_power = 1;

  Complex prefactor(Complex s) const;
  /// d/ds log of the prefactor product.
  Complex prefactor_log_derivative(Complex s) const;
  Complex prefactor_log_second_derivative(Complex s) const;
};

GaugeSpec gauge_from_residues(const PotentialFamily& family);

/// L[z^k] = lower[k] z^(k-1) + diag[k] z^k + upper[k] z^(k+1); the matrix is the
/// (d x d) block on z^0..z^(d-1), and truncation means upper[d-1] == 0.
struct RecursionMatrix {
  Eigen::MatrixXd entries;
  int dimension = 0;
  Sector sector = Sector::Chart;
  GaugeSpec gauge;
  /// Extra power s^sector_power multiplying P(z) (sextic odd sector).
  int sector_power = 0;
  /// The coefficient that had to vanish for truncation.
  double truncation_residual = 0.0;
};

RecursionMatrix recursion_matrix(const PotentialFamily& family, Sector sector = Sector::Chart);

/// Sectors with an algebraic block for this family (sextic: the parity of n).
std::vector<Sector> algebraic_sectors(const PotentialFamily& family);

std::vector<double> algebraic_spectrum(const RecursionMatrix& m);

struct AlgebraicState {
  double energy = 0.0;
  Polynomial poly;  // monic, in z
  Sector sector = Sector::Chart;
  GaugeSpec gauge;
  PotentialFamily family = engine::Sextic{};
  int n_label = 0;
  int sector_power = 0;
  /// Multiplicity of the energy as an eigenvalue of the recursion block.
  int multiplicity = 1;

  /// C(s) = s^sector_power * P(s^variable_power): the moving-zero polynomial.
  Polynomial census_polynomial() const;
};

/// All algebraic states of the family, ascending in energy.
std::vector<AlgebraicState> algebraic_states(const PotentialFamily& family);
std::vector<AlgebraicState> algebraic_states(const RecursionMatrix& m, const PotentialFamily& family);

using Evaluator = std::function<Complex(Complex)>;

/// x -> psi(x), anywhere off the branch cuts of the prefactors.
Evaluator eigenfunction(const AlgebraicState& state);

struct Jet {
  Complex value;
  Complex first;
  Complex second;
};

/// psi, psi', psi'' in x from the closed form.
Jet eigenfunction_jet(const AlgebraicState& state, Complex x);

/// max |-psi'' + (V - E) psi| / max |psi| over the sample points.
double schrodinger_residual(const AlgebraicState& state, const std::vector<double>& xs);

/// Default real sample points inside the physical x-range of the family.
std::vector<double> residual_sample_points(const PotentialFamily& family, int count = 50);

}  // namespace qhjqes::spectra
