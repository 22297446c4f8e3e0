#pragma once

#include <map>
#include <optional>

#include "folia/hodge.hpp"

namespace folia {

/// Almost contact metric data: Reeb field(s), dual one-form(s) and the
/// structure endomorphism(s). One structure for contact/Sasaki geometry,
/// three for almost 3-contact geometry.
struct ContactData {
  std::vector<VectorField> reeb;
  std::vector<FormField> eta;
  std::vector<MatrixField> phi;

  int count() const { return static_cast<int>(reeb.size()); }
};

struct ResidualSet {
  std::map<std::string, double> values;

  double max() const {
    double m = 0.0;
    for (const auto& [k, v] : values) m = std::max(m, v);
    return m;
  }
};

/// Residuals of the almost contact metric identities: unit Reeb length,
/// eta = g(xi, .), phi xi = 0, phi^2 = -id + xi (x) eta and
/// g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y). For three structures the
/// interrelation identities are included.
ResidualSet almost_contact_check(const FoliatedManifold& fm, const ContactData& cd,
                                 const std::vector<Point>& samples);

/// Sasaki residuals: the Nijenhuis obstruction [phi,phi] + d eta (x) xi and
/// d eta = 2 Phi. Single-structure data only.
ResidualSet sasaki_check(const FoliatedManifold& fm, const ContactData& cd,
                         const std::vector<Point>& samples);

struct EtaEinsteinFit {
  double a = 0.0, b = 0.0;
  double residual = 0.0;  // sup |Ric - a g - b eta (x) eta| after the fit
};

/// Least-squares fit of Ric = a g + b eta (x) eta over sampled frame pairs.
/// Throws when no contact structure is present.
EtaEinsteinFit eta_einstein_fit(const FoliatedManifold& fm,
                                const std::optional<ContactData>& cd,
                                const std::vector<Point>& samples);

struct ThreeAlphaDeltaFit {
  double alpha = 0.0, delta = 0.0;
  double residual = 0.0;
  double interrelation_residual = 0.0;
  bool permutation_consistent = true;
  std::string classification;  // positive / negative / degenerate
};

/// Fits d eta_i = 2 alpha Phi_i + 2 (alpha - delta) eta_j wedge eta_k over
/// the even permutations, classifying by the sign of alpha * delta with a
/// zero band on delta. Requires exactly three structures.
ThreeAlphaDeltaFit three_alpha_delta_check(const FoliatedManifold& fm,
                                           const std::optional<ContactData>& cd,
                                           const std::vector<Point>& samples,
                                           double delta_zero_band = 1e-9);

struct OrientationDensities {
  double ambient_min = 0.0;     // (d eta)^n wedge eta_1 [wedge eta_2 eta_3]
  double transverse_min = 0.0;  // (d eta_1)^n on the transverse frame
};

/// Evaluates the structure volume forms on the (leaf, transverse) frame;
/// both must come out positive for a consistently oriented example.
OrientationDensities structure_orientation_densities(const FoliatedManifold& fm,
                                                     const ContactData& cd,
                                                     const std::vector<Point>& samples);

struct AutomorphismReport {
  bool applicable = false;
  int dim_aut = 0;
  int rank_E = 0;
  int dim_iso = 0;
  int b1 = 0;
  bool iso_bound_holds = false;   // dim_aut <= dim_iso + rk E (unconditional)
  bool b1_bound_applicable = false;  // needs transversally Ricci-flat geometry
  bool b1_bound_holds = false;       // dim_aut <= b1 + rk E when applicable
  bool xi_detected = false;
  double xi_residual = 0.0;
  double projection_killing_residual = 0.0;  // projections are transverse Killing
  double reeb_coefficient_variance = 0.0;    // E-parts are constant Reeb combos
  VectorXd singular_values;
};

/// Computes the infinitesimal-automorphism subspace of the ansatz (kernel of
/// X -> (L_X g, L_X xi_i, L_X eta_i, L_X phi_i) sampled) and the dimension
/// bounds. dim iso and b1 come from the callers' classifiers; the b1 bound
/// is gated on a transversally Ricci-flat certificate.
AutomorphismReport automorphism_bound_report(
    const FoliatedManifold& fm, const std::optional<ContactData>& cd,
    const std::vector<VectorField>& aut_ansatz, const std::vector<int>& reeb_indices,
    int b1, int dim_iso, bool ric_flat, const std::vector<Point>& samples,
    double rel_tol = 1e-7);

/// Ambient Lie derivative (L_X g)(Y, Z) at p.
double lie_derivative_g(const Backend& M, const VectorField& X, const VectorField& Y,
                        const VectorField& Z, const Point& p);

}  // namespace folia
